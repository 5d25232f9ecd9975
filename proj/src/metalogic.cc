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

#include "nabla/metalogic.h"

#include <algorithm>
#include <numeric>
#include <set>

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

void check_stratified(const Formula& f, bool negative, const std::set<std::string>& preds,
                      const std::optional<Span>& span) {
  switch (f.kind()) {
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
      check_stratified(f.left(), negative, preds, span);
      check_stratified(f.right(), negative, preds, span);
      return;
    case Formula::Kind::kImp:
      check_stratified(f.left(), !negative, preds, span);
      check_stratified(f.right(), negative, preds, span);
      return;
    case Formula::Kind::kBinding:
      check_stratified(f.body(), negative, preds, span);
      return;
    case Formula::Kind::kPred:
      if (negative && preds.count(head_name(f.atom()))) {
        throw Error("definition is not stratified: " + head_name(f.atom()) +
                        " occurs to the left of an implication",
                    span);
      }
      return;
    default:
      return;
  }
}

std::string nominal_name(int k) { return "n" + std::to_string(k); }

std::string fresh_nominal_name(const std::set<std::string>& avoid) {
  for (int k = 1;; ++k) {
    if (!avoid.count(nominal_name(k))) return nominal_name(k);
  }
}

std::set<std::string> names_of(const std::vector<Var>& vs) {
  std::set<std::string> out;
  for (const auto& v : vs) out.insert(v.name);
  return out;
}

// Marks atoms of the given block in positive positions as smaller.
Formula mark_smaller(const Formula& f, int level, const DefDb& defs, const std::string& pred) {
  switch (f.kind()) {
    case Formula::Kind::kAnd:
      return Formula::conj(mark_smaller(f.left(), level, defs, pred),
                           mark_smaller(f.right(), level, defs, pred));
    case Formula::Kind::kOr:
      return Formula::disj(mark_smaller(f.left(), level, defs, pred),
                           mark_smaller(f.right(), level, defs, pred));
    case Formula::Kind::kImp:
      return Formula::imp(f.left(), mark_smaller(f.right(), level, defs, pred));
    case Formula::Kind::kBinding:
      return Formula::binding(f.quant(), f.vars(), mark_smaller(f.body(), level, defs, pred));
    case Formula::Kind::kPred:
      if (f.restriction().is_none() && defs.same_block(head_name(f.atom()), pred)) {
        return f.with_restriction(Restriction::smaller(level));
      }
      return f;
    default:
      return f;
  }
}

Var new_eigen(const std::string& base, const Ty& ty, const std::vector<Term>& over,
              NameSupply& names, int ts) {
  std::vector<Ty> tys;
  for (const auto& n : over) tys.push_back(type_of(n));
  return Var{names.fresh(base), Tag::kEigen, ts, Ty::curry(tys, ty)};
}

std::vector<Term> as_terms(const std::vector<Var>& vs) {
  std::vector<Term> out;
  for (const auto& v : vs) out.push_back(Term::var(v));
  return out;
}

}  // namespace

void reserve_names(const Sequent& seq, NameSupply& names) {
  for (const auto& v : seq.vars) names.reserve(v.name);
  const std::set<Tag> tags = {Tag::kEigen, Tag::kLogic, Tag::kNominal};
  for (const auto& h : seq.hyps) {
    for (const auto& v : formula_vars(h.formula, tags)) names.reserve(v.name);
  }
  if (seq.goal.valid()) {
    for (const auto& v : formula_vars(seq.goal, tags)) names.reserve(v.name);
  }
}

Subst keep_names(const Sequent& seq, const Subst& s) {
  Subst rename;
  std::set<std::string> taken;
  for (const auto& v : seq.vars) {
    auto t = s.lookup(v.name);
    if (!t || !t->is_var()) continue;
    const Var& w = t->as_var();
    if (w.tag != Tag::kEigen || w.ty != v.ty || rename.binds(w.name)) continue;
    bool old = false;
    for (const auto& o : seq.vars) old = old || o.name == w.name;
    if (old || taken.count(v.name)) continue;
    taken.insert(v.name);
    rename.bind(w.name, Term::var(Var{v.name, Tag::kEigen, kTsVar, v.ty}));
  }
  if (rename.empty()) return s;
  const Subst all = rename.compose_after(s);
  Subst out;
  for (const auto& [k, t] : all.bindings()) {
    if (t.is_var() && t.as_var().name == k) continue;
    out.bind(k, t);
  }
  return out;
}


// --------------------------------------------------------------------------
// Definitions

DefDb::DefDb() {
  const Ty o = builtin::o();
  const Ty olist = builtin::olist();
  Term member = Term::constant(builtin::kMember, Ty::curry({o, olist}, builtin::prop()));
  Var a{"A", Tag::kConstant, 0, o};
  Var b{"B", Tag::kConstant, 0, o};
  Var l{"L", Tag::kConstant, 0, olist};
  Definition d;
  d.name = builtin::kMember;
  d.ty = Ty::curry({o, olist}, builtin::prop());
  d.clauses.push_back(DefClause{
      {a, l},
      {},
      Term::app(member, {Term::var(a), builtin::cons(Term::var(a), Term::var(l))}),
      Formula::truth()});
  d.clauses.push_back(DefClause{
      {a, b, l},
      {},
      Term::app(member, {Term::var(a), builtin::cons(Term::var(b), Term::var(l))}),
      Formula::pred(Term::app(member, {Term::var(a), Term::var(l)}))});
  define({d});
}

void DefDb::define(std::vector<Definition> block, const std::optional<Span>& span) {
  std::set<std::string> preds;
  for (const auto& d : block) {
    if (defs_.count(d.name) || preds.count(d.name)) {
      throw Error("predicate " + d.name + " is already defined", span);
    }
    preds.insert(d.name);
  }
  for (const auto& d : block) {
    for (const auto& c : d.clauses) check_stratified(c.body, false, preds, span);
  }
  const int id = ++blocks_;
  for (auto& d : block) {
    d.block = id;
    order_.push_back(d.name);
    std::string name = d.name;
    defs_.emplace(name, std::move(d));
  }
}

const Definition* DefDb::find(const std::string& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

bool DefDb::same_block(const std::string& a, const std::string& b) const {
  const Definition* da = find(a);
  const Definition* db = find(b);
  return da && db && da->block == db->block;
}

void define_from_command(const Command& cmd, Signature& sig, DefDb& defs) {
  Signature next = sig;
  std::vector<Definition> block;
  for (const auto& [name, ty] : cmd.preds) {
    if (ty.result() != builtin::prop()) {
      throw Error("type of predicate " + name + " must end in prop", cmd.span);
    }
    next.add_const(name, ty, cmd.span);
    Definition d;
    d.name = name;
    d.ty = ty;
    block.push_back(std::move(d));
  }
  Scope scope;
  scope.sig = &next;
  scope.implicit_tag = Tag::kConstant;
  for (const auto& pc : cmd.clauses) {
    ElaboratedClause ec = elaborate_clause(pc, scope);
    const std::string pred = head_name(ec.head);
    auto it = std::find_if(block.begin(), block.end(),
                           [&](const Definition& d) { return d.name == pred; });
    if (it == block.end()) {
      throw Error("clause head " + pred + " is not a predicate of this definition", pc.span);
    }
    it->clauses.push_back(DefClause{ec.implicit, ec.nablas, ec.head, ec.body});
  }
  defs.define(std::move(block), cmd.span);
  sig = std::move(next);
}

// --------------------------------------------------------------------------
// Sequents

const Hyp* Sequent::find(const std::string& name) const {
  for (const auto& h : hyps) {
    if (h.name == name) return &h;
  }
  return nullptr;
}

Hyp* Sequent::find(const std::string& name) {
  for (auto& h : hyps) {
    if (h.name == name) return &h;
  }
  return nullptr;
}

std::string Sequent::add_hyp(Formula f, const std::string& base, bool exact_first) {
  std::string name;
  if (exact_first && !find(base)) {
    name = base;
  } else if (base == "H") {
    do {
      name = "H" + std::to_string(next_hyp++);
    } while (find(name));
  } else {
    for (int k = 1;; ++k) {
      name = base + std::to_string(k);
      if (!find(name)) break;
    }
  }
  hyps.push_back(Hyp{name, std::move(f)});
  return name;
}

void Sequent::remove_hyp(const std::string& name) {
  hyps.erase(std::remove_if(hyps.begin(), hyps.end(),
                            [&](const Hyp& h) { return h.name == name; }),
             hyps.end());
}

std::vector<Var> Sequent::support() const {
  std::vector<Var> out;
  auto add = [&out](const Formula& f) {
    for (auto& v : formula_support(f)) {
      bool seen = false;
      for (const auto& o : out) seen = seen || o.same(v);
      if (!seen) out.push_back(std::move(v));
    }
  };
  for (const auto& h : hyps) add(h.formula);
  if (goal.valid()) add(goal);
  sort_nominals(out);
  return out;
}

Formula canonical_ts(const Formula& f) {
  return map_terms(f, [](const Term& t) {
    return map_vars(t, [](const Var& v) -> std::optional<Term> {
      if (v.tag == Tag::kEigen && v.ts != kTsVar) {
        Var w = v;
        w.ts = kTsVar;
        return Term::var(w);
      }
      if (v.tag == Tag::kNominal && v.ts != kMaxTs) {
        Var w = v;
        w.ts = kMaxTs;
        return Term::var(w);
      }
      return std::nullopt;
    });
  });
}

namespace {

// Appends eigenvariables occurring in the sequent but missing from vars.
void sync_vars(Sequent& seq) {
  auto add = [&seq](const Formula& f) {
    for (auto v : formula_vars(f, {Tag::kEigen})) {
      bool seen = false;
      for (const auto& o : seq.vars) seen = seen || o.same(v);
      if (!seen) {
        v.ts = kTsVar;
        seq.vars.push_back(v);
      }
    }
  };
  for (const auto& h : seq.hyps) add(h.formula);
  if (seq.goal.valid()) add(seq.goal);
}

}  // namespace

Sequent apply_to_sequent(const Sequent& seq, const Subst& s) {
  Sequent out;
  out.next_hyp = seq.next_hyp;
  for (const auto& v : seq.vars) {
    if (!s.binds(v.name)) out.vars.push_back(v);
  }
  for (const auto& h : seq.hyps) {
    out.hyps.push_back(Hyp{h.name, canonical_ts(apply_subst(s, h.formula))});
  }
  out.goal = canonical_ts(apply_subst(s, seq.goal));
  sync_vars(out);
  return out;
}

Term fresh_nominal_for(const Sequent& seq, const Ty& ty, NameSupply& names) {
  (void)names;
  return Term::nominal(fresh_nominal_name(names_of(seq.support())), ty);
}

Sequent intro_nabla_goal(const Sequent& seq, NameSupply& names) {
  (void)names;
  if (seq.goal.kind() != Formula::Kind::kBinding || seq.goal.quant() != Quant::kNabla) {
    throw Error("goal is not a nabla formula");
  }
  std::set<std::string> avoid = names_of(seq.support());
  std::vector<Term> noms;
  for (const auto& v : seq.goal.vars()) {
    std::string n = fresh_nominal_name(avoid);
    avoid.insert(n);
    noms.push_back(Term::nominal(n, v.ty));
  }
  Sequent out = seq;
  out.goal = instantiate_binding(seq.goal, noms);
  return out;
}

Sequent intro_nabla_hyp(const Sequent& seq, const std::string& hyp, NameSupply& names) {
  (void)names;
  const Hyp* h = seq.find(hyp);
  if (!h) throw Error("unknown hypothesis " + hyp);
  if (h->formula.kind() != Formula::Kind::kBinding || h->formula.quant() != Quant::kNabla) {
    throw Error(hyp + " is not a nabla formula");
  }
  std::set<std::string> avoid = names_of(seq.support());
  std::vector<Term> noms;
  for (const auto& v : h->formula.vars()) {
    std::string n = fresh_nominal_name(avoid);
    avoid.insert(n);
    noms.push_back(Term::nominal(n, v.ty));
  }
  Sequent out = seq;
  out.find(hyp)->formula = instantiate_binding(h->formula, noms);
  return out;
}

void add_hyps_split(Sequent& seq, const Formula& f, NameSupply& names) {
  reserve_names(seq, names);
  switch (f.kind()) {
    case Formula::Kind::kTrue:
      return;
    case Formula::Kind::kAnd:
      add_hyps_split(seq, f.left(), names);
      add_hyps_split(seq, f.right(), names);
      return;
    case Formula::Kind::kBinding: {
      if (f.quant() == Quant::kForall) break;
      std::vector<Term> values;
      if (f.quant() == Quant::kExists) {
        std::vector<Term> noms = as_terms(formula_support(f));
        for (const auto& v : f.vars()) {
          Var e = new_eigen(v.name, v.ty, noms, names, kTsVar);
          seq.vars.push_back(e);
          values.push_back(Term::app(Term::var(e), noms));
        }
      } else {
        std::set<std::string> avoid = names_of(seq.support());
        for (const auto& n : formula_support(f)) avoid.insert(n.name);
        for (const auto& v : f.vars()) {
          std::string n = fresh_nominal_name(avoid);
          avoid.insert(n);
          values.push_back(Term::nominal(n, v.ty));
        }
      }
      add_hyps_split(seq, instantiate_binding(f, values), names);
      return;
    }
    default:
      break;
  }
  seq.add_hyp(f);
}

// --------------------------------------------------------------------------
// Matching against definitional clauses

std::vector<CaseSolution> case_unify(const Term& atom, const DefClause& clause,
                                     const CaseUnifyOptions& opts, NameSupply& names) {
  const std::vector<Var> supp = support(atom);
  if (supp.size() > kMaxPermutationNominals) {
    throw Error("too many nominal constants (" + std::to_string(supp.size()) +
                ") for case analysis; the limit is " +
                std::to_string(kMaxPermutationNominals));
  }
  std::set<std::string> avoid = names_of(opts.avoid_nominals);
  for (const auto& n : supp) avoid.insert(n.name);

  std::vector<CaseSolution> out;
  const std::size_t k = clause.nablas.size();
  std::vector<Term> picks;
  std::vector<bool> used(supp.size(), false);

  auto attempt = [&]() {
    std::vector<Term> raise_over;
    for (std::size_t i = 0; i < supp.size(); ++i) {
      if (!used[i]) raise_over.push_back(Term::var(supp[i]));
    }
    std::map<std::string, Term> m;
    std::map<std::string, std::string> origins;
    for (std::size_t i = 0; i < k; ++i) m[clause.nablas[i].name] = picks[i];
    for (const auto& u : clause.universals) {
      std::vector<Ty> tys;
      for (const auto& n : raise_over) tys.push_back(type_of(n));
      Var fresh = opts.instantiate_eigen
                      ? Var{names.fresh(u.name), Tag::kEigen, kTsClause, Ty::curry(tys, u.ty)}
                      : Var{names.fresh_logic(), Tag::kLogic, opts.logic_ts, Ty::curry(tys, u.ty)};
      origins[fresh.name] = u.name;
      m[u.name] = Term::app(Term::var(fresh), raise_over);
    }
    Term head = replace_names(clause.head, m);
    UnifyResult r = opts.instantiate_eigen ? unify(atom, head, case_config(), names)
                                           : unify(atom, head, match_config(), names);
    if (r.status == UnifyStatus::kIndeterminate) {
      std::string what = r.offending ? print_term(r.offending->first) + " = " +
                                           print_term(r.offending->second)
                                     : print_term(atom);
      throw Error("unification problem outside the supported fragment: " + what);
    }
    if (!r.ok()) return;
    out.push_back(CaseSolution{r.subst, subst_bound(clause.body, m), picks, origins});
  };

  // Nabla variables take distinct nominals of the atom, or fresh ones.
  std::function<void(std::size_t, std::set<std::string>&)> choose =
      [&](std::size_t i, std::set<std::string>& taken) {
        if (i == k) {
          attempt();
          return;
        }
        const Ty& ty = clause.nablas[i].ty;
        for (std::size_t j = 0; j < supp.size(); ++j) {
          if (used[j] || supp[j].ty != ty) continue;
          used[j] = true;
          picks.push_back(Term::var(supp[j]));
          choose(i + 1, taken);
          picks.pop_back();
          used[j] = false;
        }
        if (opts.allow_fresh) {
          std::string n = fresh_nominal_name(taken);
          taken.insert(n);
          // Sequent eigenvariables may be instantiated with a nominal that
          // is new to the sequent, clause variables may not.
          picks.push_back(Term::var(Var{n, Tag::kNominal, kTsVar, ty}));
          choose(i + 1, taken);
          picks.pop_back();
          taken.erase(n);
        }
      };
  std::set<std::string> taken = avoid;
  choose(0, taken);
  return out;
}

Sequent unfold(const Sequent& seq, const DefDb& defs, NameSupply& names) {
  if (seq.goal.kind() != Formula::Kind::kPred) throw Error("goal is not an atom");
  const Term& atom = seq.goal.atom();
  reserve_names(seq, names);
  const Definition* def = defs.find(head_name(atom));
  if (!def) throw Error(head_name(atom) + " is not a defined predicate");
  CaseUnifyOptions opts;
  opts.instantiate_eigen = false;
  opts.allow_fresh = false;
  for (const auto& clause : def->clauses) {
    std::vector<CaseSolution> sols = case_unify(atom, clause, opts, names);
    if (sols.empty()) continue;
    const CaseSolution& sol = sols.front();
    Formula body = apply_subst(sol.subst, sol.body);
    // Clause variables not fixed by the head are existential in the body.
    std::vector<Var> open = formula_vars(body, {Tag::kLogic});
    if (!open.empty()) {
      std::set<std::string> avoid = formula_names(body);
      for (const auto& v : seq.vars) avoid.insert(v.name);
      NameSupply local(avoid);
      std::vector<BoundVar> binders;
      std::map<std::string, Term> rename;
      for (const auto& v : open) {
        auto o = sol.origins.find(v.name);
        std::string n = local.fresh(o == sol.origins.end() ? "X" : o->second);
        binders.push_back({n, v.ty});
        rename[v.name] = Term::constant(n, v.ty);
      }
      body = map_terms(body, [&rename](const Term& t) {
        return map_vars(t, [&rename](const Var& v) -> std::optional<Term> {
          if (v.tag != Tag::kLogic) return std::nullopt;
          auto it = rename.find(v.name);
          if (it == rename.end()) return std::nullopt;
          return it->second;
        });
      });
      body = Formula::binding(Quant::kExists, binders, body);
    }
    Sequent out = seq;
    out.goal = canonical_ts(body);
    return out;
  }
  throw Error("no clause of " + def->name + " matches the goal");
}

std::vector<Sequent> case_hyp(const Sequent& seq, const std::string& hyp, const DefDb& defs,
                              NameSupply& names, bool keep) {
  const Hyp* hp = seq.find(hyp);
  if (!hp) throw Error("unknown hypothesis " + hyp);
  reserve_names(seq, names);
  const Formula f = hp->formula;
  Sequent base = seq;
  if (!keep) base.remove_hyp(hyp);
  std::vector<Sequent> out;
  switch (f.kind()) {
    case Formula::Kind::kTrue:
      out.push_back(base);
      return out;
    case Formula::Kind::kFalse:
      return out;
    case Formula::Kind::kAnd:
      base.add_hyp(f.left());
      base.add_hyp(f.right());
      out.push_back(base);
      return out;
    case Formula::Kind::kOr: {
      Sequent a = base;
      a.add_hyp(f.left());
      Sequent b = base;
      b.add_hyp(f.right());
      out.push_back(a);
      out.push_back(b);
      return out;
    }
    case Formula::Kind::kImp:
      throw Error("cannot do case analysis on an implication");
    case Formula::Kind::kBinding: {
      if (f.quant() == Quant::kForall) {
        throw Error("cannot do case analysis on a universal formula");
      }
      Formula g = f;
      std::vector<Term> values;
      if (f.quant() == Quant::kExists) {
        std::vector<Term> noms = as_terms(formula_support(f));
        for (const auto& v : f.vars()) {
          Var e = new_eigen(v.name, v.ty, noms, names, kTsVar);
          base.vars.push_back(e);
          values.push_back(Term::app(Term::var(e), noms));
        }
      } else {
        std::set<std::string> avoid = names_of(seq.support());
        for (const auto& v : f.vars()) {
          std::string n = fresh_nominal_name(avoid);
          avoid.insert(n);
          values.push_back(Term::nominal(n, v.ty));
        }
      }
      add_hyps_split(base, instantiate_binding(f, values), names);
      out.push_back(base);
      return out;
    }
    case Formula::Kind::kEq: {
      UnifyResult r = unify(f.lhs(), f.rhs(), case_config(), names);
      if (r.status == UnifyStatus::kFailure) return out;
      if (r.status == UnifyStatus::kIndeterminate) {
        throw Error("unification problem outside the supported fragment: " +
                    print_term(f.lhs()) + " = " + print_term(f.rhs()));
      }
      out.push_back(apply_to_sequent(base, r.subst));
      return out;
    }
    case Formula::Kind::kPred: {
      const std::string pred = head_name(f.atom());
      const Definition* def = defs.find(pred);
      if (!def) throw Error(pred + " is not a defined predicate");
      CaseUnifyOptions opts;
      opts.avoid_nominals = seq.support();
      for (const auto& clause : def->clauses) {
        // Subgoals are independent, so each clause may reuse names.
        NameSupply local = names;
        for (const auto& sol : case_unify(f.atom(), clause, opts, local)) {
          const Subst subst = keep_names(base, sol.subst);
          Sequent s = apply_to_sequent(base, subst);
          Formula body = canonical_ts(apply_subst(subst, sol.body));
          if (!f.restriction().is_none()) {
            body = mark_smaller(body, f.restriction().level, defs, pred);
          }
          NameSupply split = local;
          add_hyps_split(s, body, split);
          sync_vars(s);
          out.push_back(std::move(s));
        }
      }
      return out;
    }
    case Formula::Kind::kObj:
      throw Error("specification judgments are analyzed by the specification logic");
  }
  return out;
}

// --------------------------------------------------------------------------
// Permutation matching

bool formula_equations(const Formula& a, const Formula& b, std::vector<Equation>& out,
                       NameSupply& names) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return true;
    case Formula::Kind::kEq:
      if (type_of(a.lhs()) != type_of(b.lhs())) return false;
      out.emplace_back(a.lhs(), b.lhs());
      out.emplace_back(a.rhs(), b.rhs());
      return true;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
    case Formula::Kind::kImp:
      return formula_equations(a.left(), b.left(), out, names) &&
             formula_equations(a.right(), b.right(), out, names);
    case Formula::Kind::kBinding: {
      if (a.quant() != b.quant() || a.vars().size() != b.vars().size()) return false;
      std::vector<Term> locals;
      for (std::size_t i = 0; i < a.vars().size(); ++i) {
        if (a.vars()[i].ty != b.vars()[i].ty) return false;
        locals.push_back(Term::nominal(names.fresh_local(), a.vars()[i].ty));
      }
      return formula_equations(instantiate_binding(a, locals),
                               instantiate_binding(b, locals), out, names);
    }
    case Formula::Kind::kPred:
      if (type_of(a.atom()) != type_of(b.atom())) return false;
      out.emplace_back(a.atom(), b.atom());
      return true;
    case Formula::Kind::kObj:
      if (a.context().size() != b.context().size()) return false;
      for (std::size_t i = 0; i < a.context().size(); ++i) {
        if (type_of(a.context()[i]) != type_of(b.context()[i])) return false;
        out.emplace_back(a.context()[i], b.context()[i]);
      }
      out.emplace_back(a.goal(), b.goal());
      return true;
  }
  return false;
}

bool context_subset(const std::vector<Term>& small, const std::vector<Term>& big) {
  for (const auto& s : small) {
    bool found = false;
    for (const auto& b : big) {
      if (equal(s, b)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

// Calls fn with each permutation of the nominals of h and g (identity
// first) until it returns true.
bool for_each_permutation(const Formula& h, const Formula& g,
                          const std::function<bool(const Permutation&)>& fn) {
  std::vector<Var> noms = formula_support(h);
  for (const auto& v : formula_support(g)) {
    bool seen = false;
    for (const auto& o : noms) seen = seen || o.same(v);
    if (!seen) noms.push_back(v);
  }
  sort_nominals(noms);
  if (noms.size() > kMaxPermutationNominals) {
    throw Error("too many nominal constants (" + std::to_string(noms.size()) +
                ") for permutation matching; the limit is " +
                std::to_string(kMaxPermutationNominals));
  }
  std::vector<std::size_t> idx(noms.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    bool typed = true;
    Permutation p;
    for (std::size_t i = 0; i < noms.size(); ++i) {
      if (noms[i].ty != noms[idx[i]].ty) typed = false;
      p.set(noms[i].name, noms[idx[i]].name);
    }
    if (typed && fn(p)) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

bool matches(const Formula& h, const Formula& g) {
  if (h.kind() == Formula::Kind::kObj && g.kind() == Formula::Kind::kObj) {
    return equal(h.goal(), g.goal()) && context_subset(h.context(), g.context());
  }
  return formula_equal(h, g, false);
}

}  // namespace

std::optional<Permutation> hyp_match(const Formula& h, const Formula& g) {
  std::optional<Permutation> out;
  for_each_permutation(h, g, [&](const Permutation& p) {
    if (!matches(apply_perm(p, h), g)) return false;
    out = p;
    return true;
  });
  return out;
}

std::optional<Permutation> hyp_unify(const Formula& h, const Formula& g, NameSupply& names,
                                     Subst* sigma) {
  std::optional<Permutation> out;
  for_each_permutation(h, g, [&](const Permutation& p) {
    Formula ph = apply_subst(*sigma, apply_perm(p, h));
    Formula gg = apply_subst(*sigma, g);
    std::vector<Equation> eqs;
    if (ph.kind() == Formula::Kind::kObj && gg.kind() == Formula::Kind::kObj) {
      eqs.emplace_back(ph.goal(), gg.goal());
      UnifyResult r = unify(eqs, match_config(), names, *sigma);
      if (!r.ok()) return false;
      Formula hh = apply_subst(r.subst, ph);
      Formula g2 = apply_subst(r.subst, gg);
      if (!context_subset(hh.context(), g2.context())) return false;
      *sigma = r.subst;
      out = p;
      return true;
    }
    if (!formula_equations(ph, gg, eqs, names)) return false;
    UnifyResult r = unify(eqs, match_config(), names, *sigma);
    if (!r.ok()) return false;
    *sigma = r.subst;
    out = p;
    return true;
  });
  return out;
}

std::optional<std::string> close_by_hyp(const Sequent& seq) {
  for (const auto& h : seq.hyps) {
    if (hyp_match(h.formula, seq.goal)) return h.name;
  }
  return std::nullopt;
}

// --------------------------------------------------------------------------
// Printing

std::string print_sequent(const Sequent& seq, bool annotate) {
  PrintOptions opts;
  opts.restrictions = annotate;
  std::string out;
  if (!seq.vars.empty()) {
    out += "Variables:";
    for (const auto& v : seq.vars) out += " " + v.name;
    out += "\n";
  }
  for (const auto& h : seq.hyps) {
    out += h.name + " : " + print_formula(h.formula, opts) + "\n";
  }
  out += "============================\n ";
  out += print_formula(seq.goal, opts);
  out += "\n";
  return out;
}

}  // namespace nabla
