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

#include "nabla/term.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nabla {

// --------------------------------------------------------------------------
// Ty

Ty Ty::base(std::string name) {
  return Ty(std::make_shared<const Node>(Node{Kind::kBase, std::move(name), {}, 0}));
}

Ty Ty::arrow(Ty dom, Ty cod) {
  return Ty(std::make_shared<const Node>(
      Node{Kind::kArrow, "", {std::move(dom), std::move(cod)}, 0}));
}

Ty Ty::var(int id) {
  return Ty(std::make_shared<const Node>(Node{Kind::kVar, "", {}, id}));
}

Ty Ty::curry(const std::vector<Ty>& args, Ty result) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) {
    result = arrow(*it, std::move(result));
  }
  return result;
}

std::vector<Ty> Ty::arg_types() const {
  std::vector<Ty> out;
  const Ty* t = this;
  while (t->is_arrow()) {
    out.push_back(t->dom());
    t = &t->cod();
  }
  return out;
}

Ty Ty::result() const {
  const Ty* t = this;
  while (t->is_arrow()) t = &t->cod();
  return *t;
}

int Ty::arity() const {
  int n = 0;
  for (const Ty* t = this; t->is_arrow(); t = &t->cod()) ++n;
  return n;
}

std::string Ty::str() const {
  switch (node_->kind) {
    case Kind::kBase:
      return node_->name;
    case Kind::kVar:
      return "'" + std::to_string(node_->id);
    case Kind::kArrow: {
      std::string d = dom().str();
      if (dom().is_arrow()) d = "(" + d + ")";
      return d + " -> " + cod().str();
    }
  }
  return "?";
}

bool operator==(const Ty& a, const Ty& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind) return false;
  switch (a.node_->kind) {
    case Ty::Kind::kBase:
      return a.node_->name == b.node_->name;
    case Ty::Kind::kVar:
      return a.node_->id == b.node_->id;
    case Ty::Kind::kArrow:
      return a.dom() == b.dom() && a.cod() == b.cod();
  }
  return false;
}

// --------------------------------------------------------------------------
// Term construction

struct Term::Node {
  Kind kind;
  Var var;
  int index = 0;
  std::vector<Binder> binders;
  Term sub;  // body of an abstraction, head of an application
  std::vector<Term> args;
};

Term Term::var(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->var = std::move(v);
  return Term(std::move(n));
}

Term Term::constant(std::string name, Ty ty) {
  return var(Var{std::move(name), Tag::kConstant, 0, std::move(ty)});
}

Term Term::eigen(std::string name, Ty ty, int ts) {
  return var(Var{std::move(name), Tag::kEigen, ts, std::move(ty)});
}

Term Term::logic(std::string name, Ty ty, int ts) {
  return var(Var{std::move(name), Tag::kLogic, ts, std::move(ty)});
}

Term Term::nominal(std::string name, Ty ty) {
  return var(Var{std::move(name), Tag::kNominal, kMaxTs, std::move(ty)});
}

Term Term::bound(int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kBound;
  n->index = index;
  return Term(std::move(n));
}

Term Term::lam(std::vector<Binder> binders, Term body) {
  if (binders.empty()) return body;
  if (body.is_lam()) {
    binders.insert(binders.end(), body.binders().begin(), body.binders().end());
    body = body.body();
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kLam;
  n->binders = std::move(binders);
  n->sub = std::move(body);
  return Term(std::move(n));
}

Term Term::app(Term head, std::vector<Term> args) {
  if (args.empty()) return head;
  if (head.is_app()) {
    std::vector<Term> all = head.args();
    all.insert(all.end(), args.begin(), args.end());
    args = std::move(all);
    head = head.head();
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kApp;
  n->sub = std::move(head);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const Var& Term::as_var() const { return node_->var; }
int Term::index() const { return node_->index; }
const std::vector<Term::Binder>& Term::binders() const { return node_->binders; }
const Term& Term::body() const { return node_->sub; }
const Term& Term::head() const { return node_->sub; }
const std::vector<Term>& Term::args() const { return node_->args; }

const Term& Term::spine_head() const { return is_app() ? head() : *this; }

std::vector<Term> Term::spine_args() const {
  return is_app() ? args() : std::vector<Term>{};
}

bool same_term(const Term& a, const Term& b) {
  if (a.identity() == b.identity()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::kVar:
      return a.as_var().same(b.as_var());
    case Term::Kind::kBound:
      return a.index() == b.index();
    case Term::Kind::kLam: {
      if (a.binders().size() != b.binders().size()) return false;
      for (std::size_t i = 0; i < a.binders().size(); ++i) {
        if (a.binders()[i].ty != b.binders()[i].ty) return false;
      }
      return same_term(a.body(), b.body());
    }
    case Term::Kind::kApp: {
      if (a.args().size() != b.args().size()) return false;
      if (!same_term(a.head(), b.head())) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (!same_term(a.args()[i], b.args()[i])) return false;
      }
      return true;
    }
  }
  return false;
}

// --------------------------------------------------------------------------
// de Bruijn plumbing

namespace {

Term shift_impl(const Term& t, int by, int cutoff) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t;
    case Term::Kind::kBound:
      return t.index() > cutoff ? Term::bound(t.index() + by) : t;
    case Term::Kind::kLam:
      return Term::lam(t.binders(),
                       shift_impl(t.body(), by,
                                  cutoff + static_cast<int>(t.binders().size())));
    case Term::Kind::kApp: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(shift_impl(a, by, cutoff));
      return Term::app(shift_impl(t.head(), by, cutoff), std::move(args));
    }
  }
  return t;
}

// Index i at depth d: i <= d stays, d < i <= d+k becomes env[i-d-1] shifted
// by d, larger indices drop by k.
Term subst_impl(const Term& t, int depth, const std::vector<Term>& env) {
  const int k = static_cast<int>(env.size());
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t;
    case Term::Kind::kBound: {
      int i = t.index();
      if (i <= depth) return t;
      if (i <= depth + k) return shift_impl(env[i - depth - 1], depth, 0);
      return Term::bound(i - k);
    }
    case Term::Kind::kLam:
      return Term::lam(
          t.binders(),
          subst_impl(t.body(), depth + static_cast<int>(t.binders().size()), env));
    case Term::Kind::kApp: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(subst_impl(a, depth, env));
      return Term::app(subst_impl(t.head(), depth, env), std::move(args));
    }
  }
  return t;
}

bool mentions_bound(const Term& t, int index, int depth) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return false;
    case Term::Kind::kBound:
      return t.index() == index + depth;
    case Term::Kind::kLam:
      return mentions_bound(t.body(), index,
                            depth + static_cast<int>(t.binders().size()));
    case Term::Kind::kApp:
      if (mentions_bound(t.head(), index, depth)) return true;
      for (const auto& a : t.args()) {
        if (mentions_bound(a, index, depth)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

Term shift(const Term& t, int by, int cutoff) {
  if (by == 0) return t;
  return shift_impl(t, by, cutoff);
}

Term instantiate(const Term& body, const std::vector<Term>& env) {
  if (env.empty()) return body;
  return subst_impl(body, 0, env);
}

bool has_loose_bound(const Term& t, int depth) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return false;
    case Term::Kind::kBound:
      return t.index() > depth;
    case Term::Kind::kLam:
      return has_loose_bound(t.body(),
                             depth + static_cast<int>(t.binders().size()));
    case Term::Kind::kApp:
      if (has_loose_bound(t.head(), depth)) return true;
      for (const auto& a : t.args()) {
        if (has_loose_bound(a, depth)) return true;
      }
      return false;
  }
  return false;
}

// --------------------------------------------------------------------------
// Normalization

Term hnorm(const Term& t) {
  if (!t.is_app()) return t;
  Term head = hnorm(t.head());
  if (!head.is_lam()) return Term::app(head, t.args());

  const auto& binders = head.binders();
  const std::size_t n = binders.size();
  const auto& args = t.args();
  const std::size_t m = args.size();
  if (m >= n) {
    std::vector<Term> env(args.rbegin() + static_cast<long>(m - n), args.rend());
    Term reduced = instantiate(head.body(), env);
    std::vector<Term> rest(args.begin() + static_cast<long>(n), args.end());
    return hnorm(Term::app(reduced, std::move(rest)));
  }
  // Partial application: the outer m binders are consumed.
  std::vector<Term> env(args.rbegin(), args.rend());
  Term body = subst_impl(head.body(), static_cast<int>(n - m), env);
  std::vector<Term::Binder> remaining(binders.begin() + static_cast<long>(m),
                                      binders.end());
  return Term::lam(std::move(remaining), body);
}

Term normalize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kBound:
      return t;
    case Term::Kind::kLam:
      return Term::lam(t.binders(), normalize(t.body()));
    case Term::Kind::kApp: {
      Term h = hnorm(t);
      if (h.is_lam()) return Term::lam(h.binders(), normalize(h.body()));
      if (!h.is_app()) return h;
      std::vector<Term> args;
      args.reserve(h.args().size());
      for (const auto& a : h.args()) args.push_back(normalize(a));
      return Term::app(h.head(), std::move(args));
    }
  }
  return t;
}

Term beta(const Term& f, const std::vector<Term>& args) {
  return normalize(Term::app(f, args));
}

namespace {

Term eta_short(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kBound:
      return t;
    case Term::Kind::kApp: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(eta_short(a));
      return Term::app(t.head(), std::move(args));
    }
    case Term::Kind::kLam: {
      Term body = eta_short(t.body());
      std::vector<Term::Binder> binders = t.binders();
      // Strip trailing "x" arguments that match the innermost binders.
      while (!binders.empty() && body.is_app()) {
        const auto& args = body.args();
        const Term& last = args.back();
        if (!last.is_bound() || last.index() != 1) break;
        Term head = body.head();
        std::vector<Term> init(args.begin(), args.end() - 1);
        bool free = mentions_bound(head, 1, 0);
        for (const auto& a : init) free = free || mentions_bound(a, 1, 0);
        if (free) break;
        body = shift(Term::app(head, std::move(init)), -1, 1);
        binders.pop_back();
      }
      return Term::lam(std::move(binders), body);
    }
  }
  return t;
}

}  // namespace

Term eta_contract(const Term& t) { return eta_short(t); }

bool equal(const Term& a, const Term& b) {
  return same_term(eta_short(normalize(a)), eta_short(normalize(b)));
}

Ty type_of(const Term& t, const std::vector<Ty>& ctx) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t.as_var().ty;
    case Term::Kind::kBound: {
      int i = t.index();
      if (i <= 0 || i > static_cast<int>(ctx.size())) {
        throw std::logic_error("type_of: loose bound variable");
      }
      return ctx[ctx.size() - static_cast<std::size_t>(i)];
    }
    case Term::Kind::kLam: {
      std::vector<Ty> inner = ctx;
      std::vector<Ty> doms;
      for (const auto& b : t.binders()) {
        inner.push_back(b.ty);
        doms.push_back(b.ty);
      }
      return Ty::curry(doms, type_of(t.body(), inner));
    }
    case Term::Kind::kApp: {
      Ty f = type_of(t.head(), ctx);
      for (const auto& a : t.args()) {
        if (!f.is_arrow()) throw std::logic_error("type_of: too many arguments");
        f = f.cod();
        (void)a;
      }
      return f;
    }
  }
  return Ty();
}

// --------------------------------------------------------------------------
// Variables

namespace {

void collect_impl(const Term& t, const std::set<Tag>& tags,
                  std::vector<Var>& out) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      const Var& v = t.as_var();
      if (!tags.count(v.tag)) return;
      for (const auto& o : out) {
        if (o.same(v)) return;
      }
      out.push_back(v);
      return;
    }
    case Term::Kind::kBound:
      return;
    case Term::Kind::kLam:
      collect_impl(t.body(), tags, out);
      return;
    case Term::Kind::kApp:
      collect_impl(t.head(), tags, out);
      for (const auto& a : t.args()) collect_impl(a, tags, out);
      return;
  }
}

void names_impl(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      out.insert(t.as_var().name);
      return;
    case Term::Kind::kBound:
      return;
    case Term::Kind::kLam:
      names_impl(t.body(), out);
      return;
    case Term::Kind::kApp:
      names_impl(t.head(), out);
      for (const auto& a : t.args()) names_impl(a, out);
      return;
  }
}

}  // namespace

std::vector<Var> collect_vars(const Term& t, const std::set<Tag>& tags) {
  std::vector<Var> out;
  collect_impl(t, tags, out);
  return out;
}

bool occurs_var(const Var& v, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t.as_var().same(v);
    case Term::Kind::kBound:
      return false;
    case Term::Kind::kLam:
      return occurs_var(v, t.body());
    case Term::Kind::kApp:
      if (occurs_var(v, t.head())) return true;
      for (const auto& a : t.args()) {
        if (occurs_var(v, a)) return true;
      }
      return false;
  }
  return false;
}

std::set<std::string> var_names(const Term& t) {
  std::set<std::string> out;
  names_impl(t, out);
  return out;
}

namespace detail {

Term map_vars_impl(const Term& t, int depth,
                   const std::function<std::optional<Term>(const Var&)>& fn,
                   bool* changed) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      auto r = fn(t.as_var());
      if (!r) return t;
      *changed = true;
      return *r;
    }
    case Term::Kind::kBound:
      return t;
    case Term::Kind::kLam: {
      bool c = false;
      Term body = map_vars_impl(
          t.body(), depth + static_cast<int>(t.binders().size()), fn, &c);
      if (!c) return t;
      *changed = true;
      return Term::lam(t.binders(), body);
    }
    case Term::Kind::kApp: {
      bool c = false;
      Term head = map_vars_impl(t.head(), depth, fn, &c);
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(map_vars_impl(a, depth, fn, &c));
      if (!c) return t;
      *changed = true;
      return Term::app(head, std::move(args));
    }
  }
  return t;
}

}  // namespace detail

// --------------------------------------------------------------------------
// Subst

std::optional<Term> Subst::lookup(const std::string& name) const {
  auto it = map_.find(name);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

Term Subst::apply(const Term& t) const {
  if (map_.empty()) return normalize(t);
  return normalize(map_vars(t, [this](const Var& v) -> std::optional<Term> {
    if (v.tag != Tag::kEigen && v.tag != Tag::kLogic) return std::nullopt;
    return lookup(v.name);
  }));
}

void Subst::bind(const std::string& name, Term t) {
  t = normalize(t);
  Subst single;
  single.map_.emplace(name, t);
  for (auto& [k, v] : map_) v = single.apply(v);
  map_[name] = t;
}

Subst Subst::compose_after(const Subst& other) const {
  Subst out;
  for (const auto& [k, v] : other.map_) out.map_[k] = apply(v);
  for (const auto& [k, v] : map_) {
    if (!out.map_.count(k)) out.map_[k] = v;
  }
  return out;
}

// --------------------------------------------------------------------------
// Permutation

Permutation Permutation::swap(const std::string& a, const std::string& b) {
  Permutation p;
  p.set(a, b);
  p.set(b, a);
  return p;
}

void Permutation::set(const std::string& from, const std::string& to) {
  if (from == to) {
    map_.erase(from);
  } else {
    map_[from] = to;
  }
}

std::string Permutation::operator()(const std::string& n) const {
  auto it = map_.find(n);
  return it == map_.end() ? n : it->second;
}

Permutation Permutation::inverse() const {
  Permutation p;
  for (const auto& [a, b] : map_) p.map_[b] = a;
  return p;
}

bool Permutation::is_identity() const { return map_.empty(); }

Term Permutation::apply(const Term& t) const {
  if (map_.empty()) return t;
  return map_vars(t, [this](const Var& v) -> std::optional<Term> {
    if (v.tag != Tag::kNominal) return std::nullopt;
    auto it = map_.find(v.name);
    if (it == map_.end()) return std::nullopt;
    return Term::nominal(it->second, v.ty);
  });
}

// --------------------------------------------------------------------------
// Nominals and support

bool is_nominal_name(std::string_view s) {
  if (s.size() < 2 || s[0] != 'n') return false;
  if (s[1] == '0') return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool nominal_less(const std::string& a, const std::string& b) {
  if (is_nominal_name(a) && is_nominal_name(b)) {
    if (a.size() != b.size()) return a.size() < b.size();
  }
  return a < b;
}

void sort_nominals(std::vector<Var>& noms) {
  std::sort(noms.begin(), noms.end(),
            [](const Var& a, const Var& b) { return nominal_less(a.name, b.name); });
}

std::vector<Var> support(const Term& t) {
  std::vector<Var> out;
  for (auto& v : collect_vars(normalize(t), {Tag::kNominal})) {
    if (!v.name.empty() && v.name[0] == '%') continue;
    out.push_back(std::move(v));
  }
  sort_nominals(out);
  return out;
}

// --------------------------------------------------------------------------
// Names

std::string NameSupply::fresh(std::string_view base) {
  std::string b(base);
  if (b.empty()) b = "X";
  if (!used_.count(b) && !is_nominal_name(b)) {
    used_.insert(b);
    return b;
  }
  std::string root = b;
  while (root.size() > 1 &&
         std::isdigit(static_cast<unsigned char>(root.back()))) {
    root.pop_back();
  }
  const std::string sep = is_nominal_name(root + "1") ? "_" : "";
  for (int i = 1;; ++i) {
    std::string cand = root + sep + std::to_string(i);
    if (!used_.count(cand) && !is_nominal_name(cand)) {
      used_.insert(cand);
      return cand;
    }
  }
}

std::string NameSupply::fresh_logic() {
  for (;;) {
    std::string cand = "?" + std::to_string(++logic_counter_);
    if (!used_.count(cand)) {
      used_.insert(cand);
      return cand;
    }
  }
}

std::string NameSupply::fresh_nominal() {
  for (int i = 1;; ++i) {
    std::string cand = "n" + std::to_string(i);
    if (!used_.count(cand)) {
      used_.insert(cand);
      return cand;
    }
  }
}

std::string NameSupply::fresh_local() {
  return "%" + std::to_string(++local_counter_);
}

Raised raise(const Var& v, const std::vector<Term>& noms, NameSupply& names) {
  if (noms.empty()) return Raised{v, Term::var(v)};
  std::vector<Ty> tys;
  tys.reserve(noms.size());
  for (const auto& n : noms) tys.push_back(type_of(n));
  Var fresh = v;
  fresh.name = v.tag == Tag::kLogic ? names.fresh_logic() : names.fresh(v.name);
  fresh.ty = Ty::curry(tys, v.ty);
  return Raised{fresh, Term::app(Term::var(fresh), noms)};
}

}  // namespace nabla
