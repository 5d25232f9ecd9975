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

#include "nabla/speclog.h"

#include <algorithm>
#include <map>

#include "nabla/elaborate.h"
#include "nabla/print.h"

namespace nabla {

namespace {

Term replace_names(const Term& t, const std::map<std::string, Term>& m) {
  return map_vars(t, [&m](const Var& v) -> std::optional<Term> {
    if (v.tag != Tag::kConstant) return std::nullopt;
    auto it = m.find(v.name);
    if (it == m.end()) return std::nullopt;
    return it->second;
  });
}

bool is_const(const Term& t, const char* name) {
  return t.is_var() && t.as_var().tag == Tag::kConstant && t.as_var().name == name;
}

std::string next_nominal(std::set<std::string>& avoid) {
  for (int k = 1;; ++k) {
    std::string n = "n" + std::to_string(k);
    if (avoid.insert(n).second) return n;
  }
}

// Body of `pi A` applied to a new nominal.
Term open_pi(const Term& abs, const std::string& nominal) {
  Ty ty = type_of(abs).dom();
  return normalize(Term::app(abs, {Term::nominal(nominal, ty)}));
}

// Antecedents of an implication become context items; & splits them.
void push_hyps(const Term& a, std::vector<Term>& ctx) {
  Term h = hnorm(a);
  if (h.is_app() && is_const(h.head(), builtin::kAnd) && h.args().size() == 2) {
    push_hyps(h.args()[0], ctx);
    push_hyps(h.args()[1], ctx);
    return;
  }
  ctx.push_back(h);
}

void check_goal(const Term& g, const Span& span) {
  Term h = hnorm(g);
  if (h.is_app() && h.head().is_var() && h.head().as_var().tag == Tag::kConstant) {
    const std::string& n = h.head().as_var().name;
    if (n == builtin::kAnd && h.args().size() == 2) {
      check_goal(h.args()[0], span);
      check_goal(h.args()[1], span);
      return;
    }
    if (n == builtin::kImp && h.args().size() == 2) {
      std::vector<Term> hyps;
      push_hyps(h.args()[0], hyps);
      for (const auto& a : hyps) {
        if (spec_pred(a).empty()) {
          throw Error("antecedent of an implication must be atomic: " + print_term(a), span);
        }
      }
      check_goal(h.args()[1], span);
      return;
    }
    if (n == builtin::kPi && h.args().size() == 1) {
      const Term& abs = h.args()[0];
      if (abs.is_lam()) {
        for (const auto& b : abs.binders()) {
          if (type_order(b.ty) > 1) {
            throw Error("pi-bound variable of higher than second order", span);
          }
        }
        check_goal(abs.body(), span);
      }
      return;
    }
  }
}

}  // namespace

int type_order(const Ty& ty) {
  if (!ty.is_arrow()) return 0;
  return std::max(type_order(ty.dom()) + 1, type_order(ty.cod()));
}

std::string spec_pred(const Term& t) {
  Term h = hnorm(t);
  const Term& head = h.spine_head();
  if (!head.is_var() || head.as_var().tag != Tag::kConstant) return "";
  const std::string& n = head.as_var().name;
  if (n == builtin::kAnd || n == builtin::kImp || n == builtin::kPi) return "";
  return n;
}

void SpecDb::load(std::string_view sig_text, std::string_view mod_text, Signature& sig,
                  const std::string& sig_file, const std::string& mod_file) {
  Signature next = sig;
  for (const auto& d : parse_sig(sig_text, sig_file)) {
    for (const auto& n : d.names) {
      if (d.kind == SigDecl::Kind::kKind) {
        next.add_kind(n, d.span);
      } else {
        next.add_const(n, d.ty, d.span);
      }
    }
  }
  std::vector<SpecClause> added;
  Scope scope;
  scope.sig = &next;
  scope.implicit_tag = Tag::kConstant;
  for (const auto& mc : parse_mod(mod_text, mod_file)) {
    std::vector<PTermPtr> ts = {mc.head};
    ts.insert(ts.end(), mc.body.begin(), mc.body.end());
    std::vector<Ty> expected(ts.size(), builtin::o());
    ElaboratedTerms e = elaborate_terms(ts, scope, expected);
    SpecClause c;
    c.span = mc.span;
    c.head = e.terms[0];
    c.body.assign(e.terms.begin() + 1, e.terms.end());
    c.universals = e.implicit;
    if (spec_pred(c.head).empty()) {
      throw Error("clause head must be an atomic formula: " + print_term(c.head), mc.span);
    }
    for (const auto& v : c.universals) {
      if (type_order(v.ty) > 2) {
        throw Error("variable " + v.name + " has a type above second order", mc.span);
      }
    }
    for (const auto& g : c.body) check_goal(g, mc.span);
    added.push_back(std::move(c));
  }
  sig = std::move(next);
  clauses_.insert(clauses_.end(), added.begin(), added.end());
}

std::vector<const SpecClause*> SpecDb::clauses_for(const std::string& pred) const {
  std::vector<const SpecClause*> out;
  for (const auto& c : clauses_) {
    if (spec_pred(c.head) == pred) out.push_back(&c);
  }
  return out;
}

// --------------------------------------------------------------------------
// Interpreter

namespace {

using Cont = std::function<bool(const Subst&)>;

class Solver {
 public:
  Solver(const SpecDb& db, const SolveOptions& opts, NameSupply& names)
      : db_(db), opts_(opts), names_(names) {}

  void avoid(const Term& t) {
    for (const auto& v : support(t)) used_.insert(v.name);
  }

  bool goal(const std::vector<Term>& ctx, const Term& g, int depth, const Subst& s,
            const Cont& k) {
    Term h = hnorm(s.apply(g));
    if (h.is_app() && h.head().is_var() && h.head().as_var().tag == Tag::kConstant) {
      const std::string& n = h.head().as_var().name;
      if (n == builtin::kAnd && h.args().size() == 2) {
        Term b = h.args()[1];
        return goal(ctx, h.args()[0], depth, s, [&, b](const Subst& s1) {
          return goal(ctx, b, depth, s1, k);
        });
      }
      if (n == builtin::kImp && h.args().size() == 2) {
        std::vector<Term> ext = ctx;
        push_hyps(h.args()[0], ext);
        return goal(ext, h.args()[1], depth, s, k);
      }
      if (n == builtin::kPi && h.args().size() == 1) {
        return goal(ctx, open_pi(h.args()[0], next_nominal(used_)), depth, s, k);
      }
    }
    return atom(ctx, h, depth, s, k);
  }

  bool exhausted() const { return exhausted_; }
  int nodes() const { return nodes_; }

 private:
  bool atom(const std::vector<Term>& ctx, const Term& g, int depth, const Subst& s,
            const Cont& k) {
    ++nodes_;
    const std::string pred = spec_pred(g);
    if (pred.empty()) {
      // Flexible goal: nothing sensible to do.
      exhausted_ = true;
      return false;
    }
    for (const auto& a : opts_.assumptions) {
      std::vector<Term> cur;
      for (const auto& c : ctx) cur.push_back(normalize(s.apply(c)));
      Subst sigma = s;
      if (hyp_unify(a, Formula::obj(cur, g), names_, &sigma) && k(sigma)) return true;
    }
    for (const auto& c : ctx) {
      if (type_of(c) == builtin::olist()) continue;
      UnifyResult r = unify(c, g, match_config(), names_, s);
      if (r.status == UnifyStatus::kIndeterminate) exhausted_ = true;
      if (r.ok() && k(r.subst)) return true;
    }
    std::vector<const SpecClause*> clauses = db_.clauses_for(pred);
    if (clauses.empty()) return false;
    if (depth <= 0) {
      exhausted_ = true;
      return false;
    }
    std::vector<Term> noms;
    for (const auto& v : support(g)) noms.push_back(Term::var(v));
    for (const auto& c : ctx) {
      for (const auto& v : support(s.apply(c))) {
        bool seen = false;
        for (const auto& n : noms) seen = seen || n.as_var().name == v.name;
        if (!seen) noms.push_back(Term::var(v));
      }
    }
    std::vector<Ty> tys;
    for (const auto& n : noms) tys.push_back(type_of(n));
    for (const SpecClause* cl : clauses) {
      std::map<std::string, Term> m;
      for (const auto& u : cl->universals) {
        // May mention any variable in scope; nominals only through raising.
        Var v{names_.fresh_logic(), Tag::kLogic, kMaxTs - 1, Ty::curry(tys, u.ty)};
        m[u.name] = Term::app(Term::var(v), noms);
      }
      UnifyResult r = unify(g, replace_names(cl->head, m), match_config(), names_, s);
      if (r.status == UnifyStatus::kIndeterminate) exhausted_ = true;
      if (!r.ok()) continue;
      std::vector<Term> body;
      for (const auto& b : cl->body) body.push_back(replace_names(b, m));
      if (goals(ctx, body, 0, depth - 1, r.subst, k)) return true;
    }
    return false;
  }

  bool goals(const std::vector<Term>& ctx, const std::vector<Term>& gs, std::size_t i,
             int depth, const Subst& s, const Cont& k) {
    if (i == gs.size()) return k(s);
    return goal(ctx, gs[i], depth, s, [&, i](const Subst& s1) {
      return goals(ctx, gs, i + 1, depth, s1, k);
    });
  }

  const SpecDb& db_;
  const SolveOptions& opts_;
  NameSupply& names_;
  std::set<std::string> used_;
  bool exhausted_ = false;
  int nodes_ = 0;
};

}  // namespace

bool solve_k(const SpecDb& db, const std::vector<Term>& ctx, const Term& goal,
             const SolveOptions& opts, NameSupply& names, const Subst& initial,
             const std::function<bool(const Subst&)>& k, bool* exhausted) {
  Solver solver(db, opts, names);
  for (const auto& c : ctx) solver.avoid(initial.apply(c));
  solver.avoid(initial.apply(goal));
  for (const auto& a : opts.assumptions) {
    for (const auto& v : formula_support(a)) solver.avoid(Term::var(v));
  }
  bool ok = solver.goal(ctx, goal, opts.depth, initial, k);
  if (exhausted) *exhausted = solver.exhausted();
  return ok;
}

SolveResult solve(const SpecDb& db, const std::vector<Term>& ctx, const Term& goal,
                  const SolveOptions& opts, NameSupply& names, const Subst& initial) {
  SolveResult out;
  Solver solver(db, opts, names);
  for (const auto& c : ctx) solver.avoid(initial.apply(c));
  solver.avoid(initial.apply(goal));
  for (const auto& a : opts.assumptions) {
    for (const auto& v : formula_support(a)) solver.avoid(Term::var(v));
  }
  bool ok = solver.goal(ctx, goal, opts.depth, initial, [&out](const Subst& s) {
    out.subst = s;
    return true;
  });
  out.nodes = solver.nodes();
  if (ok) {
    out.status = SolveResult::Status::kSuccess;
  } else if (solver.exhausted()) {
    out.status = SolveResult::Status::kDepthExhausted;
  }
  return out;
}

// --------------------------------------------------------------------------
// Reasoning about judgments

void decompose_goal(const std::vector<Term>& ctx, const Term& goal,
                    std::set<std::string>& avoid,
                    std::vector<std::pair<std::vector<Term>, Term>>& out) {
  Term h = hnorm(goal);
  if (h.is_app() && h.head().is_var() && h.head().as_var().tag == Tag::kConstant) {
    const std::string& n = h.head().as_var().name;
    if (n == builtin::kAnd && h.args().size() == 2) {
      decompose_goal(ctx, h.args()[0], avoid, out);
      decompose_goal(ctx, h.args()[1], avoid, out);
      return;
    }
    if (n == builtin::kImp && h.args().size() == 2) {
      std::vector<Term> ext = ctx;
      push_hyps(h.args()[0], ext);
      decompose_goal(ext, h.args()[1], avoid, out);
      return;
    }
    if (n == builtin::kPi && h.args().size() == 1) {
      decompose_goal(ctx, open_pi(h.args()[0], next_nominal(avoid)), avoid, out);
      return;
    }
  }
  out.emplace_back(ctx, h);
}

std::vector<Sequent> spec_case(const Sequent& seq, const std::string& hyp, const SpecDb& db,
                               NameSupply& names, bool keep) {
  const Hyp* hp = seq.find(hyp);
  if (!hp) throw Error("unknown hypothesis " + hyp);
  const Formula f = hp->formula;
  if (f.kind() != Formula::Kind::kObj) throw Error(hyp + " is not a specification judgment");
  const Term a = hnorm(f.goal());
  const std::string pred = spec_pred(a);
  if (pred.empty()) {
    throw Error("cannot analyze a judgment whose goal is not atomic: " + print_term(a));
  }
  reserve_names(seq, names);
  Sequent base = seq;
  if (!keep) base.remove_hyp(hyp);
  const Restriction marked =
      f.restriction().is_none() ? Restriction::none() : Restriction::smaller(f.restriction().level);

  std::vector<Term> noms;
  std::vector<Ty> tys;
  for (const auto& v : formula_support(f)) {
    noms.push_back(Term::var(v));
    tys.push_back(v.ty);
  }

  auto fail_indeterminate = [](const Term& l, const Term& r) {
    throw Error("unification problem outside the supported fragment: " + print_term(l) +
                " = " + print_term(r));
  };

  std::vector<Sequent> out;
  for (const SpecClause* cl : db.clauses_for(pred)) {
    NameSupply local = names;
    std::map<std::string, Term> m;
    for (const auto& u : cl->universals) {
      Var v{local.fresh(u.name), Tag::kEigen, kTsClause, Ty::curry(tys, u.ty)};
      m[u.name] = Term::app(Term::var(v), noms);
    }
    const Term head = replace_names(cl->head, m);
    UnifyResult r = unify(a, head, case_config(), local);
    if (r.status == UnifyStatus::kIndeterminate) fail_indeterminate(a, head);
    if (!r.ok()) continue;
    const Subst subst = keep_names(base, r.subst);
    Sequent s = apply_to_sequent(base, subst);
    std::vector<Term> ctx;
    for (const auto& c : f.context()) ctx.push_back(normalize(subst.apply(c)));
    // Nominals for pi need only be fresh for the analyzed judgment, so
    // parallel analyses of the same binder share names.
    std::set<std::string> avoid;
    for (const auto& v : formula_support(apply_subst(subst, f))) avoid.insert(v.name);
    for (const auto& b : cl->body) {
      std::vector<std::pair<std::vector<Term>, Term>> parts;
      decompose_goal(ctx, normalize(subst.apply(replace_names(b, m))), avoid, parts);
      for (auto& [pc, pg] : parts) {
        s.add_hyp(canonical_ts(Formula::obj(pc, pg, marked)));
      }
    }
    s = apply_to_sequent(s, Subst{});
    out.push_back(std::move(s));
  }

  const Term member =
      Term::constant(builtin::kMember, Ty::curry({builtin::o(), builtin::olist()},
                                                 builtin::prop()));
  for (const auto& c : f.context()) {
    if (type_of(c) == builtin::olist()) {
      Sequent s = base;
      s.add_hyp(Formula::pred(Term::app(member, {a, c})));
      out.push_back(std::move(s));
      continue;
    }
    UnifyResult r = unify(c, a, case_config(), names);
    if (r.status == UnifyStatus::kIndeterminate) fail_indeterminate(c, a);
    if (!r.ok()) continue;
    out.push_back(apply_to_sequent(base, keep_names(base, r.subst)));
  }
  return out;
}

Sequent monotone(const Sequent& seq, const std::string& hyp, const std::vector<Term>& ctx) {
  const Hyp* hp = seq.find(hyp);
  if (!hp) throw Error("unknown hypothesis " + hyp);
  const Formula& f = hp->formula;
  if (f.kind() != Formula::Kind::kObj) throw Error(hyp + " is not a specification judgment");
  std::vector<Term> flat = flatten_context(ctx);
  if (!context_subset(f.context(), flat)) {
    throw Error("the context of " + hyp + " is not contained in the new context");
  }
  Sequent out = seq;
  out.add_hyp(Formula::obj(flat, f.goal(), f.restriction()));
  return out;
}

}  // namespace nabla
