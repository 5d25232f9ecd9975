// Copyright 2026 The nabla Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nabla/formula.h"

#include <algorithm>

namespace nabla {

std::string Restriction::str() const {
  switch (kind) {
    case Kind::kNone:
      return "";
    case Kind::kSmaller:
      return std::string(static_cast<std::size_t>(level), '*');
    case Kind::kEqual:
      return std::string(static_cast<std::size_t>(level), '@');
  }
  return "";
}

bool satisfies(const Restriction& arg, const Restriction& required) {
  switch (required.kind) {
    case Restriction::Kind::kNone:
      return true;
    case Restriction::Kind::kSmaller:
      return arg.kind == Restriction::Kind::kSmaller && arg.level == required.level;
    case Restriction::Kind::kEqual:
      return arg.kind != Restriction::Kind::kNone && arg.level == required.level;
  }
  return false;
}

struct Formula::Node {
  Kind kind;
  Term a, b;
  Formula f, g;
  Quant quant = Quant::kForall;
  std::vector<BoundVar> vars;
  std::vector<Term> ctx;
  Restriction restriction;
};

namespace {

std::shared_ptr<Formula::Node> make(Formula::Kind k) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = k;
  return n;
}

}  // namespace

Formula Formula::truth() { return Formula(make(Kind::kTrue)); }
Formula Formula::falsity() { return Formula(make(Kind::kFalse)); }

Formula Formula::eq(Term a, Term b) {
  auto n = make(Kind::kEq);
  n->a = normalize(a);
  n->b = normalize(b);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = make(Kind::kAnd);
  n->f = std::move(a);
  n->g = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = make(Kind::kOr);
  n->f = std::move(a);
  n->g = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::imp(Formula a, Formula b) {
  auto n = make(Kind::kImp);
  n->f = std::move(a);
  n->g = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::binding(Quant q, std::vector<BoundVar> vars, Formula body) {
  if (vars.empty()) return body;
  auto n = make(Kind::kBinding);
  n->quant = q;
  n->vars = std::move(vars);
  n->f = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::pred(Term atom, Restriction r) {
  auto n = make(Kind::kPred);
  n->a = normalize(atom);
  n->restriction = r;
  return Formula(std::move(n));
}

Formula Formula::obj(std::vector<Term> ctx, Term goal, Restriction r) {
  auto n = make(Kind::kObj);
  n->ctx = flatten_context(ctx);
  n->a = normalize(goal);
  n->restriction = r;
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Term& Formula::lhs() const { return node_->a; }
const Term& Formula::rhs() const { return node_->b; }
const Formula& Formula::left() const { return node_->f; }
const Formula& Formula::right() const { return node_->g; }
Quant Formula::quant() const { return node_->quant; }
const std::vector<BoundVar>& Formula::vars() const { return node_->vars; }
const Formula& Formula::body() const { return node_->f; }
const Term& Formula::atom() const { return node_->a; }
const std::vector<Term>& Formula::context() const { return node_->ctx; }
const Term& Formula::goal() const { return node_->a; }
const Restriction& Formula::restriction() const { return node_->restriction; }

Formula Formula::with_restriction(Restriction r) const {
  auto n = std::make_shared<Node>(*node_);
  n->restriction = r;
  return Formula(std::move(n));
}

Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& fn) {
  switch (f.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return f;
    case Formula::Kind::kEq:
      return Formula::eq(fn(f.lhs()), fn(f.rhs()));
    case Formula::Kind::kAnd:
      return Formula::conj(map_terms(f.left(), fn), map_terms(f.right(), fn));
    case Formula::Kind::kOr:
      return Formula::disj(map_terms(f.left(), fn), map_terms(f.right(), fn));
    case Formula::Kind::kImp:
      return Formula::imp(map_terms(f.left(), fn), map_terms(f.right(), fn));
    case Formula::Kind::kBinding: {
      Formula body = map_terms(f.body(), fn);
      // A binder must not print like a variable of another kind that the
      // mapping introduced underneath it.
      std::set<std::string> others;
      for (const auto& v : formula_vars(body, {Tag::kEigen, Tag::kLogic, Tag::kNominal})) {
        others.insert(v.name);
      }
      std::vector<BoundVar> vars = f.vars();
      std::map<std::string, Term> renaming;
      for (auto& v : vars) {
        if (!others.count(v.name)) continue;
        std::set<std::string> avoid = formula_names(body);
        for (const auto& w : vars) avoid.insert(w.name);
        NameSupply names(avoid);
        std::string fresh = names.fresh(v.name);
        renaming[v.name] = Term::constant(fresh, v.ty);
        v.name = fresh;
      }
      if (!renaming.empty()) body = subst_bound(body, renaming);
      return Formula::binding(f.quant(), std::move(vars), body);
    }
    case Formula::Kind::kPred:
      return Formula::pred(fn(f.atom()), f.restriction());
    case Formula::Kind::kObj: {
      std::vector<Term> ctx;
      for (const auto& c : f.context()) ctx.push_back(fn(c));
      return Formula::obj(std::move(ctx), fn(f.goal()), f.restriction());
    }
  }
  return f;
}

Formula apply_subst(const Subst& s, const Formula& f) {
  if (s.empty()) return f;
  return map_terms(f, [&s](const Term& t) { return s.apply(t); });
}

Formula apply_perm(const Permutation& p, const Formula& f) {
  if (p.is_identity()) return f;
  return map_terms(f, [&p](const Term& t) { return p.apply(t); });
}

namespace {

void formula_names_impl(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return;
    case Formula::Kind::kEq: {
      auto a = var_names(f.lhs());
      auto b = var_names(f.rhs());
      out.insert(a.begin(), a.end());
      out.insert(b.begin(), b.end());
      return;
    }
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
    case Formula::Kind::kImp:
      formula_names_impl(f.left(), out);
      formula_names_impl(f.right(), out);
      return;
    case Formula::Kind::kBinding:
      for (const auto& v : f.vars()) out.insert(v.name);
      formula_names_impl(f.body(), out);
      return;
    case Formula::Kind::kPred: {
      auto a = var_names(f.atom());
      out.insert(a.begin(), a.end());
      return;
    }
    case Formula::Kind::kObj: {
      for (const auto& c : f.context()) {
        auto a = var_names(c);
        out.insert(a.begin(), a.end());
      }
      auto a = var_names(f.goal());
      out.insert(a.begin(), a.end());
      return;
    }
  }
}

Term replace_constants(const Term& t, const std::map<std::string, Term>& m) {
  return map_vars(t, [&m](const Var& v) -> std::optional<Term> {
    if (v.tag != Tag::kConstant) return std::nullopt;
    auto it = m.find(v.name);
    if (it == m.end()) return std::nullopt;
    return it->second;
  });
}

}  // namespace

std::set<std::string> formula_names(const Formula& f) {
  std::set<std::string> out;
  formula_names_impl(f, out);
  return out;
}

Formula subst_bound(const Formula& f, const std::map<std::string, Term>& m) {
  if (m.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return f;
    case Formula::Kind::kEq:
      return Formula::eq(replace_constants(f.lhs(), m), replace_constants(f.rhs(), m));
    case Formula::Kind::kAnd:
      return Formula::conj(subst_bound(f.left(), m), subst_bound(f.right(), m));
    case Formula::Kind::kOr:
      return Formula::disj(subst_bound(f.left(), m), subst_bound(f.right(), m));
    case Formula::Kind::kImp:
      return Formula::imp(subst_bound(f.left(), m), subst_bound(f.right(), m));
    case Formula::Kind::kPred:
      return Formula::pred(replace_constants(f.atom(), m), f.restriction());
    case Formula::Kind::kObj: {
      std::vector<Term> ctx;
      for (const auto& c : f.context()) ctx.push_back(replace_constants(c, m));
      return Formula::obj(std::move(ctx), replace_constants(f.goal(), m),
                          f.restriction());
    }
    case Formula::Kind::kBinding: {
      std::map<std::string, Term> inner = m;
      for (const auto& v : f.vars()) inner.erase(v.name);
      if (inner.empty()) return f;
      // Names free in the replacements that a binder here would capture.
      std::set<std::string> incoming;
      for (const auto& [k, t] : inner) {
        auto ns = var_names(t);
        incoming.insert(ns.begin(), ns.end());
      }
      std::vector<BoundVar> vars = f.vars();
      Formula body = f.body();
      std::map<std::string, Term> renaming;
      std::set<std::string> avoid = formula_names(body);
      avoid.insert(incoming.begin(), incoming.end());
      for (const auto& [k, t] : inner) avoid.insert(k);
      for (auto& v : vars) {
        if (!incoming.count(v.name)) continue;
        NameSupply names(avoid);
        std::string fresh = names.fresh(v.name);
        avoid.insert(fresh);
        renaming[v.name] = Term::constant(fresh, v.ty);
        v.name = fresh;
      }
      if (!renaming.empty()) body = subst_bound(body, renaming);
      return Formula::binding(f.quant(), std::move(vars), subst_bound(body, inner));
    }
  }
  return f;
}

Formula instantiate_binding(const Formula& f, const std::vector<Term>& values) {
  std::map<std::string, Term> m;
  for (std::size_t i = 0; i < f.vars().size() && i < values.size(); ++i) {
    m[f.vars()[i].name] = values[i];
  }
  Formula body = subst_bound(f.body(), m);
  if (values.size() < f.vars().size()) {
    std::vector<BoundVar> rest(f.vars().begin() + static_cast<long>(values.size()),
                               f.vars().end());
    return Formula::binding(f.quant(), std::move(rest), body);
  }
  return body;
}

namespace {

void formula_vars_impl(const Formula& f, const std::set<Tag>& tags,
                       std::vector<Var>& out) {
  auto add_term = [&](const Term& t) {
    for (auto& v : collect_vars(t, tags)) {
      bool seen = false;
      for (const auto& o : out) seen = seen || o.same(v);
      if (!seen) out.push_back(std::move(v));
    }
  };
  switch (f.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return;
    case Formula::Kind::kEq:
      add_term(f.lhs());
      add_term(f.rhs());
      return;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
    case Formula::Kind::kImp:
      formula_vars_impl(f.left(), tags, out);
      formula_vars_impl(f.right(), tags, out);
      return;
    case Formula::Kind::kBinding:
      formula_vars_impl(f.body(), tags, out);
      return;
    case Formula::Kind::kPred:
      add_term(f.atom());
      return;
    case Formula::Kind::kObj:
      for (const auto& c : f.context()) add_term(c);
      add_term(f.goal());
      return;
  }
}

}  // namespace

std::vector<Var> formula_vars(const Formula& f, const std::set<Tag>& tags) {
  std::vector<Var> out;
  formula_vars_impl(f, tags, out);
  return out;
}

std::vector<Var> formula_support(const Formula& f) {
  std::vector<Var> out;
  for (auto& v : formula_vars(f, {Tag::kNominal})) {
    if (!v.name.empty() && v.name[0] == '%') continue;
    out.push_back(std::move(v));
  }
  sort_nominals(out);
  return out;
}

bool formula_equal(const Formula& a, const Formula& b, bool compare_restrictions) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return true;
    case Formula::Kind::kEq:
      return equal(a.lhs(), b.lhs()) && equal(a.rhs(), b.rhs());
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
    case Formula::Kind::kImp:
      return formula_equal(a.left(), b.left(), compare_restrictions) &&
             formula_equal(a.right(), b.right(), compare_restrictions);
    case Formula::Kind::kBinding: {
      if (a.quant() != b.quant() || a.vars().size() != b.vars().size()) return false;
      std::set<std::string> avoid = formula_names(a);
      auto nb = formula_names(b);
      avoid.insert(nb.begin(), nb.end());
      NameSupply names(avoid);
      std::vector<Term> shared;
      for (std::size_t i = 0; i < a.vars().size(); ++i) {
        if (a.vars()[i].ty != b.vars()[i].ty) return false;
        shared.push_back(Term::constant(names.fresh("%b"), a.vars()[i].ty));
      }
      return formula_equal(instantiate_binding(a, shared),
                           instantiate_binding(b, shared), compare_restrictions);
    }
    case Formula::Kind::kPred:
      if (compare_restrictions && !(a.restriction() == b.restriction())) return false;
      return equal(a.atom(), b.atom());
    case Formula::Kind::kObj: {
      if (compare_restrictions && !(a.restriction() == b.restriction())) return false;
      if (a.context().size() != b.context().size()) return false;
      for (std::size_t i = 0; i < a.context().size(); ++i) {
        if (!equal(a.context()[i], b.context()[i])) return false;
      }
      return equal(a.goal(), b.goal());
    }
  }
  return false;
}

std::string head_name(const Term& atom) {
  const Term& h = atom.spine_head();
  if (!h.is_var() || h.as_var().tag != Tag::kConstant) return "";
  return h.as_var().name;
}

std::vector<Term> flatten_context(const std::vector<Term>& ctx) {
  std::vector<Term> out;
  for (const auto& raw : ctx) {
    Term t = normalize(raw);
    for (;;) {
      const std::string h = head_name(t);
      if (h == builtin::kNil && !t.is_app()) break;
      if (h == builtin::kCons && t.is_app() && t.args().size() == 2) {
        out.push_back(t.args()[0]);
        t = t.args()[1];
        continue;
      }
      out.push_back(t);
      break;
    }
  }
  return out;
}

namespace builtin {

Ty o() { return Ty::base(kO); }
Ty olist() { return Ty::base(kOList); }
Ty prop() { return Ty::base(kProp); }

Term nil() { return Term::constant(kNil, olist()); }

Term cons(Term head, Term tail) {
  return Term::app(Term::constant(kCons, Ty::curry({o(), olist()}, olist())),
                   {std::move(head), std::move(tail)});
}

Term imp(Term a, Term b) {
  return Term::app(Term::constant(kImp, Ty::curry({o(), o()}, o())),
                   {std::move(a), std::move(b)});
}

Term conj(Term a, Term b) {
  return Term::app(Term::constant(kAnd, Ty::curry({o(), o()}, o())),
                   {std::move(a), std::move(b)});
}

Ty pi_type(Ty ty) { return Ty::arrow(Ty::arrow(std::move(ty), o()), o()); }

Term pi(Ty ty, Term abstraction) {
  return Term::app(Term::constant(kPi, pi_type(std::move(ty))), {std::move(abstraction)});
}

Term make_list(const std::vector<Term>& items) {
  Term tail = nil();
  std::size_t n = items.size();
  if (n > 0 && type_of(items.back()) == olist()) {
    tail = items.back();
    --n;
  }
  for (std::size_t i = n; i-- > 0;) tail = cons(items[i], tail);
  return tail;
}

}  // namespace builtin

}  // namespace nabla
