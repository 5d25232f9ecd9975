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

#include "nabla/elaborate.h"

#include <cctype>

#include "nabla/print.h"

namespace nabla {

bool starts_upper(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

namespace {

class Elaborator {
 public:
  explicit Elaborator(const Scope& scope) : scope_(scope) {}

  Term term(const PTerm& t, Ty& ty) {
    switch (t.kind) {
      case PTerm::Kind::kId:
        return ident(t, ty);
      case PTerm::Kind::kLam: {
        check_binder_name(t.name, t.span);
        Ty bt = fresh();
        if (t.ann) {
          scope_.sig->check_ty(*t.ann, t.span);
          bt = *t.ann;
        }
        lams_.emplace_back(t.name, bt);
        Ty body_ty;
        Term body = term(*t.body, body_ty);
        lams_.pop_back();
        ty = Ty::arrow(bt, body_ty);
        return Term::lam({{t.name, bt}}, body);
      }
      case PTerm::Kind::kApp: {
        Ty fty;
        Term head = term(*t.head, fty);
        std::vector<Term> args;
        for (const auto& a : t.args) {
          Ty aty;
          args.push_back(term(*a, aty));
          Ty r = fresh();
          unify(fty, Ty::arrow(aty, r), a->span, [&] {
            return "argument '" + str(*a) + "' does not fit '" + str(*t.head) + "'";
          });
          fty = r;
        }
        ty = fty;
        return Term::app(head, std::move(args));
      }
    }
    throw Error("bad term", t.span);
  }

  Term check_term(const PTerm& t, const Ty& expected) {
    Ty ty;
    Term out = term(t, ty);
    unify(ty, expected, t.span, [&] {
      return "'" + str(t) + "' has type " + print_ty(resolve(ty)) + " but " +
             print_ty(resolve(expected)) + " was expected";
    });
    return out;
  }

  Formula formula(const PFormula& f) {
    switch (f.kind) {
      case PFormula::Kind::kTrue:
        return Formula::truth();
      case PFormula::Kind::kFalse:
        return Formula::falsity();
      case PFormula::Kind::kEq: {
        Ty a;
        Term l = term(*f.a, a);
        Term r = check_term(*f.b, a);
        return Formula::eq(l, r);
      }
      case PFormula::Kind::kAnd:
        return Formula::conj(formula(*f.l), formula(*f.r));
      case PFormula::Kind::kOr:
        return Formula::disj(formula(*f.l), formula(*f.r));
      case PFormula::Kind::kImp:
        return Formula::imp(formula(*f.l), formula(*f.r));
      case PFormula::Kind::kBinding: {
        std::vector<BoundVar> vars;
        for (const auto& v : f.vars) {
          check_binder_name(v.name, f.span);
          Ty ty = fresh();
          if (v.ann) {
            scope_.sig->check_ty(*v.ann, f.span);
            ty = *v.ann;
          }
          vars.push_back({v.name, ty});
        }
        const std::size_t saved = binders_.size();
        for (const auto& v : vars) binders_.emplace_back(v.name, v.ty);
        Formula body = formula(*f.l);
        binders_.resize(saved);
        return Formula::binding(f.quant, std::move(vars), body);
      }
      case PFormula::Kind::kAtom:
        return Formula::pred(check_term(*f.a, builtin::prop()), f.restriction);
      case PFormula::Kind::kObj: {
        std::vector<Term> ctx;
        for (const auto& item : f.ctx) ctx.push_back(context_item(*item));
        Term goal = check_term(*f.a, builtin::o());
        return Formula::obj(std::move(ctx), goal, f.restriction);
      }
    }
    throw Error("bad formula", f.span);
  }

  // Context items are object formulas or olist-typed context variables; a
  // lone identifier of unknown type is taken to be a context variable.
  Term context_item(const PTerm& t) {
    Ty ty;
    Term out = term(t, ty);
    Ty r = resolve(ty);
    if (r.is_var()) {
      unify(ty, t.kind == PTerm::Kind::kId ? builtin::olist() : builtin::o(), t.span,
            [] { return std::string("bad context item"); });
      return out;
    }
    if (r != builtin::o() && r != builtin::olist()) {
      throw Error("context item '" + str(t) + "' has type " + print_ty(r) +
                      " but o or olist was expected",
                  t.span);
    }
    return out;
  }

  void push_binder(const std::string& name, const Ty& ty) { binders_.emplace_back(name, ty); }

  Ty fresh() {
    tvars_.emplace_back();
    return Ty::var(static_cast<int>(tvars_.size()) - 1);
  }

  Ty resolve(const Ty& t) const {
    if (t.is_var()) {
      const auto& b = tvars_[static_cast<std::size_t>(t.var_id())];
      return b ? resolve(*b) : t;
    }
    if (t.is_arrow()) return Ty::arrow(resolve(t.dom()), resolve(t.cod()));
    return t;
  }

  Ty resolve_closed(const Ty& t, const Span& span, const std::string& what) const {
    Ty r = resolve(t);
    if (has_var(r)) throw Error("cannot infer the type of " + what, span);
    return r;
  }

  Term resolve_term(const Term& t, const Span& span) const {
    switch (t.kind()) {
      case Term::Kind::kVar: {
        Var v = t.as_var();
        v.ty = resolve_closed(v.ty, span, "'" + v.name + "'");
        return Term::var(std::move(v));
      }
      case Term::Kind::kBound:
        return t;
      case Term::Kind::kLam: {
        std::vector<Term::Binder> bs = t.binders();
        for (auto& b : bs) b.ty = resolve_closed(b.ty, span, "'" + b.hint + "'");
        return Term::lam(std::move(bs), resolve_term(t.body(), span));
      }
      case Term::Kind::kApp: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(resolve_term(a, span));
        return Term::app(resolve_term(t.head(), span), std::move(args));
      }
    }
    return t;
  }

  Formula resolve_formula(const Formula& f, const Span& span) const {
    switch (f.kind()) {
      case Formula::Kind::kTrue:
      case Formula::Kind::kFalse:
        return f;
      case Formula::Kind::kEq:
        return Formula::eq(resolve_term(f.lhs(), span), resolve_term(f.rhs(), span));
      case Formula::Kind::kAnd:
        return Formula::conj(resolve_formula(f.left(), span), resolve_formula(f.right(), span));
      case Formula::Kind::kOr:
        return Formula::disj(resolve_formula(f.left(), span), resolve_formula(f.right(), span));
      case Formula::Kind::kImp:
        return Formula::imp(resolve_formula(f.left(), span), resolve_formula(f.right(), span));
      case Formula::Kind::kBinding: {
        std::vector<BoundVar> vars = f.vars();
        for (auto& v : vars) v.ty = resolve_closed(v.ty, span, "'" + v.name + "'");
        return Formula::binding(f.quant(), std::move(vars), resolve_formula(f.body(), span));
      }
      case Formula::Kind::kPred:
        return Formula::pred(resolve_term(f.atom(), span), f.restriction());
      case Formula::Kind::kObj: {
        std::vector<Term> ctx;
        for (const auto& c : f.context()) ctx.push_back(resolve_term(c, span));
        return Formula::obj(std::move(ctx), resolve_term(f.goal(), span), f.restriction());
      }
    }
    return f;
  }

  std::vector<Var> implicit(const Span& span) const {
    std::vector<Var> out = implicit_;
    for (auto& v : out) v.ty = resolve_closed(v.ty, span, "'" + v.name + "'");
    return out;
  }

 private:
  static bool has_var(const Ty& t) {
    if (t.is_var()) return true;
    if (t.is_arrow()) return has_var(t.dom()) || has_var(t.cod());
    return false;
  }

  void check_binder_name(const std::string& name, const Span& span) const {
    if (is_reserved_name(name)) throw Error("'" + name + "' is a reserved name", span);
  }

  bool occurs(int id, const Ty& t) const {
    Ty r = resolve(t);
    if (r.is_var()) return r.var_id() == id;
    if (r.is_arrow()) return occurs(id, r.dom()) || occurs(id, r.cod());
    return false;
  }

  template <typename Msg>
  void unify(const Ty& a, const Ty& b, const Span& span, Msg msg) {
    if (!unify_ty(a, b)) throw Error(msg(), span);
  }

  bool unify_ty(const Ty& a0, const Ty& b0) {
    Ty a = resolve(a0);
    Ty b = resolve(b0);
    if (a.is_var() && b.is_var() && a.var_id() == b.var_id()) return true;
    if (a.is_var()) {
      if (occurs(a.var_id(), b)) return false;
      tvars_[static_cast<std::size_t>(a.var_id())] = b;
      return true;
    }
    if (b.is_var()) return unify_ty(b, a);
    if (a.is_arrow() && b.is_arrow()) {
      return unify_ty(a.dom(), b.dom()) && unify_ty(a.cod(), b.cod());
    }
    return a.is_base() && b.is_base() && a.name() == b.name();
  }

  Term ident(const PTerm& t, Ty& ty) {
    Term out = lookup(t);
    ty = out.is_bound() ? lam_type(out.index()) : out.as_var().ty;
    if (t.ann) {
      scope_.sig->check_ty(*t.ann, t.span);
      unify(ty, *t.ann, t.span, [&] {
        return "'" + t.name + "' has type " + print_ty(resolve(ty)) + ", not " +
               print_ty(*t.ann);
      });
    }
    return out;
  }

  Ty lam_type(int index) const {
    return lams_[lams_.size() - static_cast<std::size_t>(index)].second;
  }

  Term lookup(const PTerm& t) {
    const std::string& name = t.name;
    for (std::size_t i = lams_.size(); i-- > 0;) {
      if (lams_[i].first == name) return Term::bound(static_cast<int>(lams_.size() - i));
    }
    for (std::size_t i = binders_.size(); i-- > 0;) {
      if (binders_[i].first == name) return Term::constant(name, binders_[i].second);
    }
    if (auto it = scope_.vars.find(name); it != scope_.vars.end()) return it->second;
    for (const auto& v : implicit_) {
      if (v.name == name) return Term::var(v);
    }
    if (name == builtin::kPi) {
      return Term::constant(name, builtin::pi_type(fresh()));
    }
    if (auto ty = scope_.sig->const_type(name)) return Term::constant(name, *ty);
    if (is_reserved_name(name)) {
      throw Error("'" + name + "' is reserved and not in scope", t.span);
    }
    if (scope_.implicit_tag && starts_upper(name)) {
      Var v{name, *scope_.implicit_tag, 0, fresh()};
      implicit_.push_back(v);
      return Term::var(v);
    }
    throw Error("unknown identifier '" + name + "'", t.span);
  }

  const Scope& scope_;
  std::vector<std::optional<Ty>> tvars_;
  std::vector<std::pair<std::string, Ty>> lams_;
  std::vector<std::pair<std::string, Ty>> binders_;
  std::vector<Var> implicit_;
};

}  // namespace

Elaborated elaborate_term(const PTerm& t, const Scope& scope, const std::optional<Ty>& expected) {
  Elaborator e(scope);
  Term raw;
  if (expected) {
    raw = e.check_term(t, *expected);
  } else {
    Ty ty;
    raw = e.term(t, ty);
  }
  Elaborated out;
  out.term = normalize(e.resolve_term(raw, t.span));
  out.implicit = e.implicit(t.span);
  return out;
}

Elaborated elaborate_formula(const PFormula& f, const Scope& scope) {
  Elaborator e(scope);
  Formula raw = e.formula(f);
  Elaborated out;
  out.formula = e.resolve_formula(raw, f.span);
  out.implicit = e.implicit(f.span);
  return out;
}

ElaboratedTerms elaborate_terms(const std::vector<PTermPtr>& ts, const Scope& scope,
                                const std::vector<Ty>& expected) {
  Elaborator e(scope);
  std::vector<Term> raw;
  for (std::size_t i = 0; i < ts.size(); ++i) raw.push_back(e.check_term(*ts[i], expected[i]));
  ElaboratedTerms out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out.terms.push_back(normalize(e.resolve_term(raw[i], ts[i]->span)));
  }
  if (!ts.empty()) out.implicit = e.implicit(ts[0]->span);
  return out;
}

ElaboratedClause elaborate_clause(const PClause& c, const Scope& scope) {
  Elaborator e(scope);
  std::vector<BoundVar> nablas;
  for (const auto& b : c.nablas) {
    if (is_reserved_name(b.name)) throw Error("'" + b.name + "' is a reserved name", c.span);
    Ty ty = e.fresh();
    if (b.ann) {
      scope.sig->check_ty(*b.ann, c.span);
      ty = *b.ann;
    }
    nablas.push_back({b.name, ty});
    e.push_binder(b.name, ty);
  }
  Term head = e.check_term(*c.head, builtin::prop());
  Formula body = c.body ? e.formula(*c.body) : Formula::truth();
  ElaboratedClause out;
  out.head = normalize(e.resolve_term(head, c.span));
  out.body = e.resolve_formula(body, c.span);
  for (auto& n : nablas) n.ty = e.resolve_closed(n.ty, c.span, "'" + n.name + "'");
  out.nablas = std::move(nablas);
  for (const auto& v : e.implicit(c.span)) out.implicit.push_back(v);
  return out;
}

}  // namespace nabla
