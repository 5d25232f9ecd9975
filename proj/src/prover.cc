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

#include "nabla/prover.h"

#include <algorithm>
#include <functional>
#include <set>

#include "nabla/print.h"

namespace nabla {

namespace {

using Cont = std::function<bool(const Subst&)>;

bool is_binding(const Formula& f, Quant q) {
  return f.kind() == Formula::Kind::kBinding && f.quant() == q;
}

std::vector<Term> as_terms(const std::vector<Var>& vs) {
  std::vector<Term> out;
  for (const auto& v : vs) out.push_back(Term::var(v));
  return out;
}

std::vector<Ty> types_of(const std::vector<Term>& ts) {
  std::vector<Ty> out;
  for (const auto& t : ts) out.push_back(type_of(t));
  return out;
}

std::string smallest_nominal(const std::set<std::string>& avoid) {
  for (int k = 1;; ++k) {
    std::string n = "n" + std::to_string(k);
    if (!avoid.count(n)) return n;
  }
}

std::set<std::string> support_names(const Sequent& seq) {
  std::set<std::string> out;
  for (const auto& v : seq.support()) out.insert(v.name);
  return out;
}

// Names an eigenvariable may not take in `seq`.
std::set<std::string> taken_names(const Sequent& seq, const Signature& sig) {
  std::set<std::string> out;
  for (const auto& c : sig.constant_names()) out.insert(c);
  for (const auto& v : seq.vars) out.insert(v.name);
  for (const auto& h : seq.hyps) {
    for (const auto& v : formula_vars(h.formula, {Tag::kEigen})) out.insert(v.name);
  }
  if (seq.goal.valid()) {
    for (const auto& v : formula_vars(seq.goal, {Tag::kEigen})) out.insert(v.name);
  }
  return out;
}

int max_level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
    case Formula::Kind::kImp:
      return std::max(max_level(f.left()), max_level(f.right()));
    case Formula::Kind::kBinding:
      return max_level(f.body());
    case Formula::Kind::kPred:
    case Formula::Kind::kObj:
      return f.restriction().is_none() ? 0 : f.restriction().level;
    default:
      return 0;
  }
}

// Puts the k-th premise (1-based) of a binder/implication chain under r.
Formula mark_premise(const Formula& f, int k, const Restriction& r, const DefDb& defs) {
  if (f.kind() == Formula::Kind::kBinding && f.quant() != Quant::kExists) {
    return Formula::binding(f.quant(), f.vars(), mark_premise(f.body(), k, r, defs));
  }
  if (f.kind() != Formula::Kind::kImp) {
    throw Error("the goal has fewer than " + std::to_string(k) + " premises");
  }
  if (k > 1) return Formula::imp(f.left(), mark_premise(f.right(), k - 1, r, defs));
  const Formula& p = f.left();
  const bool defined = p.kind() == Formula::Kind::kPred && defs.find(head_name(p.atom()));
  if (!defined && p.kind() != Formula::Kind::kObj) {
    throw Error("cannot induct on " + print_formula(p) +
                ": it is neither a defined atom nor a specification judgment");
  }
  if (!p.restriction().is_none()) {
    throw Error("premise " + print_formula(p) + " already carries a restriction");
  }
  return Formula::imp(p.with_restriction(r), f.right());
}

bool flexible(const Term& t) {
  const Term& h = hnorm(t).spine_head();
  return h.is_var() && h.as_var().tag == Tag::kLogic;
}

// Context items with the context variables last, or nullopt when more than
// one context variable occurs.
std::optional<Term> as_list(const std::vector<Term>& items) {
  std::vector<Term> plain;
  std::vector<Term> vars;
  for (const auto& t : items) (type_of(t) == builtin::olist() ? vars : plain).push_back(t);
  if (vars.size() > 1) return std::nullopt;
  plain.insert(plain.end(), vars.begin(), vars.end());
  return builtin::make_list(plain);
}

// Logic variables left in f become eigenvariables named after `origins`.
Formula close_logic_vars(const Formula& f, Sequent& seq, const Signature& sig,
                         const std::map<std::string, std::string>& origins) {
  std::vector<Var> open = formula_vars(f, {Tag::kLogic});
  if (open.empty()) return f;
  NameSupply local(taken_names(seq, sig));
  std::map<std::string, Term> repl;
  for (const auto& v : open) {
    auto o = origins.find(v.name);
    Var e{local.fresh(o == origins.end() ? "X" : o->second), Tag::kEigen, kTsVar, v.ty};
    seq.vars.push_back(e);
    repl[v.name] = Term::var(e);
  }
  return map_terms(f, [&repl](const Term& t) {
    return map_vars(t, [&repl](const Var& v) -> std::optional<Term> {
      if (v.tag != Tag::kLogic) return std::nullopt;
      auto it = repl.find(v.name);
      if (it == repl.end()) return std::nullopt;
      return it->second;
    });
  });
}

Term replace_nominal(const Term& t, const std::string& n, const Term& by) {
  return map_vars(t, [&](const Var& v) -> std::optional<Term> {
    if (v.tag == Tag::kNominal && v.name == n) return by;
    return std::nullopt;
  });
}

// --------------------------------------------------------------------------
// Search

class Searcher {
 public:
  Searcher(const DefDb& defs, const SpecDb& spec, NameSupply& names)
      : defs_(defs), spec_(spec), names_(names) {}

  bool goal(const std::vector<Formula>& hyps, const Formula& g0, int depth, int ts,
            const Subst& s, const Cont& k) {
    const Formula g = apply_subst(s, g0);
    for (const auto& h : hyps) {
      Subst sigma = s;
      if (hyp_unify(apply_subst(s, h), g, names_, &sigma) && k(sigma)) return true;
    }
    switch (g.kind()) {
      case Formula::Kind::kTrue:
        return k(s);
      case Formula::Kind::kFalse:
        return false;
      case Formula::Kind::kEq: {
        UnifyResult r = unify(g.lhs(), g.rhs(), match_config(), names_, s);
        return r.ok() && k(r.subst);
      }
      case Formula::Kind::kAnd: {
        const Formula right = g.right();
        return goal(hyps, g.left(), depth, ts, s, [&, right](const Subst& s1) {
          return goal(hyps, right, depth, ts, s1, k);
        });
      }
      case Formula::Kind::kOr:
        return goal(hyps, g.left(), depth, ts, s, k) || goal(hyps, g.right(), depth, ts, s, k);
      case Formula::Kind::kImp: {
        std::vector<Formula> ext = hyps;
        ext.push_back(g.left());
        return goal(ext, g.right(), depth, ts, s, k);
      }
      case Formula::Kind::kBinding:
        return binding(hyps, g, depth, ts, s, k);
      case Formula::Kind::kPred:
        return unfold(hyps, g, depth, ts, s, k);
      case Formula::Kind::kObj: {
        SolveOptions opts;
        opts.depth = depth;
        for (const auto& h : hyps) {
          if (h.kind() == Formula::Kind::kObj) opts.assumptions.push_back(apply_subst(s, h));
        }
        return solve_k(spec_, g.context(), g.goal(), opts, names_, s, k);
      }
    }
    return false;
  }

 private:
  std::vector<Term> nominals(const std::vector<Formula>& hyps, const Formula& g) {
    std::vector<Var> noms = formula_support(g);
    for (const auto& h : hyps) {
      for (const auto& v : formula_support(h)) {
        bool seen = false;
        for (const auto& o : noms) seen = seen || o.same(v);
        if (!seen) noms.push_back(v);
      }
    }
    sort_nominals(noms);
    return as_terms(noms);
  }

  bool binding(const std::vector<Formula>& hyps, const Formula& g, int depth, int ts,
               const Subst& s, const Cont& k) {
    std::vector<Term> noms = nominals(hyps, g);
    std::vector<Term> values;
    if (g.quant() == Quant::kNabla) {
      std::set<std::string> avoid;
      for (const auto& n : noms) avoid.insert(n.as_var().name);
      for (const auto& v : g.vars()) {
        std::string n = smallest_nominal(avoid);
        avoid.insert(n);
        values.push_back(Term::nominal(n, v.ty));
      }
      return goal(hyps, instantiate_binding(g, values), depth, ts, s, k);
    }
    const std::vector<Ty> tys = types_of(noms);
    const bool forall = g.quant() == Quant::kForall;
    // New eigenvariables sit above every logic variable made so far.
    const int vts = forall ? ts + 1 : ts;
    for (const auto& v : g.vars()) {
      Var x{forall ? names_.fresh(v.name) : names_.fresh_logic(),
            forall ? Tag::kEigen : Tag::kLogic, vts, Ty::curry(tys, v.ty)};
      values.push_back(Term::app(Term::var(x), noms));
    }
    return goal(hyps, instantiate_binding(g, values), depth, vts, s, k);
  }

  bool unfold(const std::vector<Formula>& hyps, const Formula& g, int depth, int ts,
              const Subst& s, const Cont& k) {
    const Definition* def = defs_.find(head_name(g.atom()));
    if (!def || depth <= 0) return false;
    CaseUnifyOptions opts;
    opts.instantiate_eigen = false;
    opts.allow_fresh = false;
    opts.logic_ts = kMaxTs - 1;
    for (const auto& clause : def->clauses) {
      std::vector<CaseSolution> sols;
      try {
        sols = case_unify(g.atom(), clause, opts, names_);
      } catch (const Error&) {
        continue;
      }
      for (const auto& sol : sols) {
        Subst s2 = sol.subst.compose_after(s);
        if (goal(hyps, sol.body, depth - 1, ts, s2, k)) return true;
      }
    }
    return false;
  }

  const DefDb& defs_;
  const SpecDb& spec_;
  NameSupply& names_;
};

}  // namespace

bool search(const Sequent& seq, int depth, const DefDb& defs, const SpecDb& spec,
            NameSupply& names) {
  reserve_names(seq, names);
  std::vector<Formula> hyps;
  for (const auto& h : seq.hyps) hyps.push_back(h.formula);
  Searcher searcher(defs, spec, names);
  return searcher.goal(hyps, seq.goal, depth, kTsVar, Subst{}, [](const Subst&) { return true; });
}

// --------------------------------------------------------------------------
// Lemmas and states

void LemmaDb::add(const std::string& name, Formula f, const std::optional<Span>& span) {
  if (find(name)) throw Error("a theorem named " + name + " already exists", span);
  lemmas_.push_back(Lemma{name, std::move(f)});
}

const Lemma* LemmaDb::find(const std::string& name) const {
  for (const auto& l : lemmas_) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

std::string dump_state(const ProofState& st) {
  PrintOptions opts;
  opts.annotate = true;
  std::string out = st.theorem + "\n";
  for (const auto& g : st.goals) {
    out += "--\n";
    for (const auto& v : g.vars) {
      out += v.name + ":" + print_ty(v.ty) + ":" + std::to_string(v.ts) + "\n";
    }
    for (const auto& h : g.hyps) out += h.name + " : " + print_formula(h.formula, opts) + "\n";
    out += "|- " + print_formula(g.goal, opts) + "\n";
    out += "next " + std::to_string(g.next_hyp) + "\n";
  }
  return out;
}

// --------------------------------------------------------------------------
// Session

Session::Session() = default;

void Session::load_spec(std::string_view sig_text, std::string_view mod_text,
                        const std::string& sig_file, const std::string& mod_file) {
  if (in_proof()) throw Error("cannot load a specification during a proof");
  spec.load(sig_text, mod_text, sig, sig_file, mod_file);
}

void Session::add_kinds(const std::vector<std::string>& names, const std::optional<Span>& span) {
  Signature next = sig;
  for (const auto& n : names) next.add_kind(n, span);
  sig = std::move(next);
}

void Session::add_types(const std::vector<std::string>& names, const Ty& ty,
                        const std::optional<Span>& span) {
  Signature next = sig;
  for (const auto& n : names) next.add_const(n, ty, span);
  sig = std::move(next);
}

void Session::define(const Command& cmd) { define_from_command(cmd, sig, defs); }

void Session::set_option(const std::string& key, const std::string& value) {
  auto as_int = [&]() {
    try {
      std::size_t used = 0;
      int v = std::stoi(value, &used);
      if (used != value.size() || v < 0) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw Error("option " + key + " expects a non-negative number, got " + value);
    }
  };
  if (key == "search_depth") {
    options.search_depth = as_int();
  } else if (key == "query_depth") {
    options.query_depth = as_int();
  } else if (key == "print_annotations") {
    if (value != "on" && value != "off") throw Error("print_annotations expects on or off");
    options.print_annotations = value == "on";
  } else {
    throw Error("unknown option " + key);
  }
}

Formula Session::closed_formula(const PFormula& f) const {
  Scope scope;
  scope.sig = &sig;
  return canonical_ts(elaborate_formula(f, scope).formula);
}

void Session::start_theorem(const std::string& name, const PFormula& statement,
                            const std::optional<Span>& span) {
  if (in_proof()) throw Error("a proof is already in progress", span);
  if (lemmas.find(name)) throw Error("a theorem named " + name + " already exists", span);
  ProofState st;
  st.theorem = name;
  st.statement = closed_formula(statement);
  Sequent seq;
  seq.goal = st.statement;
  st.goals.push_back(seq);
  proof_ = std::move(st);
  history_.clear();
}

const ProofState& Session::state() const {
  if (!proof_) throw Error("no proof in progress");
  return *proof_;
}

const Sequent& Session::current() const {
  const ProofState& st = state();
  return st.goals.front();
}

void Session::undo() {
  if (!proof_) throw Error("no proof in progress");
  if (history_.empty()) throw Error("nothing to undo");
  proof_ = std::move(history_.back());
  history_.pop_back();
}

void Session::abort() {
  if (!proof_) throw Error("no proof in progress");
  proof_.reset();
  history_.clear();
}

bool Session::tactic(const Tactic& t, const std::optional<Span>& span) {
  if (t.kind == Tactic::Kind::kUndo) {
    undo();
    return false;
  }
  if (t.kind == Tactic::Kind::kAbort) {
    abort();
    return false;
  }
  if (!proof_) throw Error("no proof in progress", span);
  ProofState next = *proof_;
  try {
    apply_tactic(next, t);
  } catch (const Error& e) {
    if (e.span() || !span) throw;
    throw Error(e.what(), span);
  }
  history_.push_back(*proof_);
  proof_ = std::move(next);
  if (proof_->goals.empty()) {
    lemmas.add(proof_->theorem, proof_->statement, span);
    proof_.reset();
    history_.clear();
    return true;
  }
  return false;
}

Scope Session::sequent_scope(const Sequent& seq) const {
  Scope scope;
  scope.sig = &sig;
  for (const auto& v : seq.vars) scope.vars[v.name] = Term::var(v);
  for (const auto& v : seq.support()) scope.vars[v.name] = Term::var(v);
  return scope;
}

Term Session::elaborate_in(const Sequent& seq, const PTerm& t,
                           const std::optional<Ty>& ty) const {
  return elaborate_term(t, sequent_scope(seq), ty).term;
}

std::string Session::query(const PFormula& pf) {
  Scope scope;
  scope.sig = &sig;
  scope.implicit_tag = Tag::kLogic;
  Elaborated e = elaborate_formula(pf, scope);
  if (e.formula.kind() != Formula::Kind::kObj) {
    throw Error("a query must be a specification judgment", pf.span);
  }
  NameSupply names;
  for (const auto& v : e.implicit) names.reserve(v.name);
  SolveOptions opts;
  opts.depth = options.query_depth;
  SolveResult r = solve(spec, e.formula.context(), e.formula.goal(), opts, names);
  switch (r.status) {
    case SolveResult::Status::kSuccess: {
      std::string out = "yes";
      for (const auto& v : e.implicit) {
        out += "\n" + v.name + " = " + print_term(normalize(r.subst.apply(Term::var(v))));
      }
      return out;
    }
    case SolveResult::Status::kFailure:
      return "no";
    case SolveResult::Status::kDepthExhausted:
      return "depth exhausted";
  }
  return "no";
}

std::string Session::show_state() const {
  if (!proof_) return "";
  const ProofState& st = *proof_;
  PrintOptions opts;
  opts.restrictions = options.print_annotations;
  std::string out;
  const std::size_t n = st.goals.size();
  const Sequent& g = st.goals.front();
  out += "Subgoal 1 of " + std::to_string(n) + ":\n\n";
  if (!g.vars.empty()) {
    out += "Variables:";
    for (const auto& v : g.vars) out += " " + v.name;
    out += "\n";
  }
  for (const auto& h : g.hyps) out += h.name + " : " + print_formula(h.formula, opts) + "\n";
  out += "============================\n " + print_formula(g.goal, opts) + "\n";
  for (std::size_t i = 1; i < n; ++i) {
    out += "\nSubgoal " + std::to_string(i + 1) + " is:\n " +
           print_formula(st.goals[i].goal, opts) + "\n";
  }
  return out;
}

// --------------------------------------------------------------------------
// Tactics

namespace {

struct ApplyCtx {
  const Session* session;
  Sequent* seq;
  NameSupply* names;
  std::vector<Formula> args;  // invalid for "_"
  std::vector<std::string> arg_names;
  std::vector<Formula> holes;  // premises left to search
  std::map<std::string, Term> withs;  // elaborated lazily
  std::map<std::string, const PTerm*> with_text;
  std::set<std::string> withs_used;
  std::map<std::string, std::string> origins;
  std::vector<Term> noms;  // raising for universal instantiation
  std::set<std::string> own_support;  // nominals of the applied formula
  std::vector<Term> instances;        // universal instances so far
  std::vector<Var> raised;            // their logic variables
  std::string failure;
};

}  // namespace

namespace {

bool match_context(const std::vector<Term>& premise, const std::vector<Term>& arg,
                   NameSupply& names, Subst& s) {
  std::vector<Term> pc;
  for (const auto& t : premise) pc.push_back(normalize(s.apply(t)));
  pc = flatten_context(pc);
  std::vector<Term> flex;
  std::vector<Term> rigid;
  for (const auto& t : pc) {
    (type_of(t) == builtin::olist() && flexible(t) ? flex : rigid).push_back(t);
  }
  // Every argument item must appear among the premise items; what is left
  // over may be absorbed by a context variable of the premise.
  std::vector<Term> leftover;
  Subst cur = s;
  std::vector<bool> used(rigid.size(), false);
  for (const auto& a : arg) {
    bool found = false;
    for (std::size_t i = 0; i < rigid.size() && !found; ++i) {
      if (used[i]) continue;
      UnifyResult r = unify(rigid[i], a, match_config(), names, cur);
      if (r.ok()) {
        cur = r.subst;
        used[i] = true;
        found = true;
      }
    }
    // Contraction: a repeated item may reuse a matched premise item.
    for (std::size_t i = 0; i < rigid.size() && !found; ++i) {
      if (equal(normalize(cur.apply(rigid[i])), normalize(cur.apply(a)))) found = true;
    }
    if (!found) leftover.push_back(a);
  }
  if (flex.empty()) {
    if (!leftover.empty()) return false;
    s = cur;
    return true;
  }
  if (flex.size() > 1) return false;
  std::optional<Term> rest = as_list(leftover);
  if (!rest) return false;
  UnifyResult r = unify(flex[0], *rest, match_config(), names, cur);
  if (!r.ok()) return false;
  s = r.subst;
  return true;
}

bool match_premise(const Formula& p, const Formula& a, NameSupply& names, Subst& s) {
  if (p.kind() == Formula::Kind::kObj && a.kind() == Formula::Kind::kObj) {
    UnifyResult r = unify(p.goal(), a.goal(), match_config(), names, s);
    if (!r.ok()) return false;
    Subst cur = r.subst;
    if (!match_context(p.context(), a.context(), names, cur)) return false;
    s = cur;
    return true;
  }
  std::vector<Equation> eqs;
  if (!formula_equations(apply_subst(s, p), a, eqs, names)) return false;
  UnifyResult r = unify(eqs, match_config(), names, s);
  if (!r.ok()) return false;
  s = r.subst;
  return true;
}

// Makes the universal instances of cx independent of nominal n; nullopt
// when one of them mentions n rigidly.
std::optional<Subst> prune_nominal(ApplyCtx& cx, const Subst& s, const Var& n) {
  Subst out = s;
  for (const auto& v : cx.raised) {
    if (out.binds(v.name)) continue;
    const std::vector<Ty> args = v.ty.arg_types();
    const int m = static_cast<int>(cx.noms.size());
    std::vector<Ty> kept_tys;
    std::vector<Term> kept;
    std::vector<Term::Binder> bs;
    for (int i = 0; i < m; ++i) {
      bs.push_back({"z", args[static_cast<std::size_t>(i)]});
      if (cx.noms[static_cast<std::size_t>(i)].as_var().same(n)) continue;
      kept_tys.push_back(args[static_cast<std::size_t>(i)]);
      kept.push_back(Term::bound(m - i));
    }
    if (kept.size() == cx.noms.size()) continue;
    Ty result = v.ty;
    for (int i = 0; i < m; ++i) result = result.cod();
    Var w{cx.names->fresh_logic(), Tag::kLogic, v.ts, Ty::curry(kept_tys, result)};
    cx.origins[w.name] = cx.origins[v.name];
    out.bind(v.name, Term::lam(bs, Term::app(Term::var(w), kept)));
  }
  for (const auto& t : cx.instances) {
    for (const auto& a : support(normalize(out.apply(t)))) {
      if (a.same(n)) return std::nullopt;
    }
  }
  return out;
}

// Walks the lemma, instantiating binders and matching premises against the
// arguments; calls done with the conclusion.
bool apply_walk(ApplyCtx& cx, const Formula& f, std::size_t argi, const Subst& s,
                const std::function<bool(const Formula&, const Subst&)>& done) {
  if (is_binding(f, Quant::kForall) || is_binding(f, Quant::kExists)) {
    if (f.quant() == Quant::kExists && argi < cx.args.size()) {
      cx.failure = "cannot apply a formula with an existential before its premises";
      return false;
    }
    if (f.quant() == Quant::kExists) return done(f, s);
    std::vector<Term> values;
    const std::vector<Ty> tys = types_of(cx.noms);
    for (const auto& v : f.vars()) {
      auto w = cx.with_text.find(v.name);
      if (w != cx.with_text.end() && !cx.withs_used.count(v.name)) {
        cx.withs_used.insert(v.name);
        Scope scope;
        scope.sig = &cx.session->sig;
        for (const auto& e : cx.seq->vars) scope.vars[e.name] = Term::var(e);
        for (const auto& n : cx.seq->support()) scope.vars[n.name] = Term::var(n);
        values.push_back(elaborate_term(*w->second, scope, v.ty).term);
        cx.instances.push_back(values.back());
        continue;
      }
      Var x{cx.names->fresh_logic(), Tag::kLogic, kTsVar, Ty::curry(tys, v.ty)};
      cx.origins[x.name] = v.name;
      values.push_back(Term::app(Term::var(x), cx.noms));
      cx.instances.push_back(values.back());
      cx.raised.push_back(x);
    }
    return apply_walk(cx, instantiate_binding(f, values), argi, s, done);
  }
  if (is_binding(f, Quant::kNabla)) {
    // Each nabla variable becomes a nominal not in the lemma and distinct
    // from the others: one from the sequent or a new one. Universal
    // instances made so far may not mention it.
    std::vector<Term> chosen;
    std::function<bool(std::size_t, const Subst&)> pick = [&](std::size_t i,
                                                              const Subst& cur) -> bool {
      if (i == f.vars().size()) {
        return apply_walk(cx, instantiate_binding(f, chosen), argi, cur, done);
      }
      std::set<std::string> avoid = support_names(*cx.seq);
      for (const auto& n : cx.own_support) avoid.insert(n);
      for (const auto& c : chosen) avoid.insert(c.as_var().name);
      std::vector<Term> options;
      for (const auto& v : cx.seq->support()) {
        if (cx.own_support.count(v.name) || v.ty != f.vars()[i].ty) continue;
        bool taken = false;
        for (const auto& c : chosen) taken = taken || c.as_var().name == v.name;
        if (!taken) options.push_back(Term::var(v));
      }
      options.push_back(Term::nominal(smallest_nominal(avoid), f.vars()[i].ty));
      for (const auto& o : options) {
        std::optional<Subst> next = prune_nominal(cx, cur, o.as_var());
        if (!next) continue;
        chosen.push_back(o);
        if (pick(i + 1, *next)) return true;
        chosen.pop_back();
      }
      return false;
    };
    return pick(0, s);
  }
  if (argi == cx.args.size()) return done(f, s);
  if (f.kind() != Formula::Kind::kImp) {
    throw Error("too many arguments: " + std::to_string(cx.args.size()) + " given");
  }
  const Formula p = f.left();
  const Formula& a = cx.args[argi];
  if (!a.valid()) {
    if ((p.kind() == Formula::Kind::kPred || p.kind() == Formula::Kind::kObj) &&
        !p.restriction().is_none()) {
      throw Error("a premise with a restriction needs a hypothesis, not '_'");
    }
    cx.holes.push_back(p);
    if (apply_walk(cx, f.right(), argi + 1, s, done)) return true;
    cx.holes.pop_back();
    return false;
  }
  const bool restricted = p.kind() == Formula::Kind::kPred || p.kind() == Formula::Kind::kObj;
  if (restricted) {
    const Restriction ar = (a.kind() == Formula::Kind::kPred || a.kind() == Formula::Kind::kObj)
                               ? a.restriction()
                               : Restriction::none();
    if (!satisfies(ar, p.restriction())) {
      throw Error("restriction violated: " + cx.arg_names[argi] + " is " + print_formula(a) +
                  " but the premise needs " + print_formula(p));
    }
  }
  Subst s2 = s;
  bool ok = false;
  try {
    ok = match_premise(p, a, *cx.names, s2);
  } catch (const Error&) {
    ok = false;
  }
  if (!ok) {
    cx.failure = cx.arg_names[argi] + " does not match the premise " +
                 print_formula(apply_subst(s, p));
    return false;
  }
  return apply_walk(cx, f.right(), argi + 1, s2, done);
}

}  // namespace

void Session::apply_tactic(ProofState& st, const Tactic& t) {
  if (st.goals.empty()) throw Error("no goals left");
  Sequent seq = st.goals.front();
  // Names only need to be fresh for the current sequent.
  NameSupply names(std::set<std::string>(sig.constant_names().begin(),
                                         sig.constant_names().end()));
  reserve_names(seq, names);
  auto replace = [&st](std::vector<Sequent> subs) {
    st.goals.erase(st.goals.begin());
    st.goals.insert(st.goals.begin(), subs.begin(), subs.end());
  };
  auto hyp = [&seq](const std::string& name) -> const Hyp& {
    const Hyp* h = seq.find(name);
    if (!h) throw Error("unknown hypothesis " + name);
    return *h;
  };

  switch (t.kind) {
    case Tactic::Kind::kIntros: {
      std::size_t ni = 0;
      for (;;) {
        const Formula g = seq.goal;
        if (is_binding(g, Quant::kForall)) {
          std::vector<Term> noms = as_terms(formula_support(g));
          const std::vector<Ty> tys = types_of(noms);
          NameSupply local(taken_names(seq, sig));
          std::vector<Term> values;
          for (const auto& v : g.vars()) {
            Var e{local.fresh(v.name), Tag::kEigen, kTsVar, Ty::curry(tys, v.ty)};
            seq.vars.push_back(e);
            values.push_back(Term::app(Term::var(e), noms));
          }
          seq.goal = instantiate_binding(g, values);
        } else if (is_binding(g, Quant::kNabla)) {
          seq = intro_nabla_goal(seq, names);
        } else if (g.kind() == Formula::Kind::kImp) {
          if (ni < t.names.size()) {
            const std::string& n = t.names[ni++];
            if (seq.find(n)) throw Error("hypothesis name " + n + " is already used");
            seq.hyps.push_back(Hyp{n, g.left()});
          } else {
            seq.add_hyp(g.left());
          }
          seq.goal = g.right();
        } else {
          break;
        }
      }
      if (ni < t.names.size()) throw Error("more names than hypotheses introduced");
      replace({apply_to_sequent(seq, Subst{})});
      return;
    }
    case Tactic::Kind::kInduction: {
      if (t.number < 1) throw Error("induction expects a premise number from 1");
      int level = max_level(seq.goal);
      for (const auto& h : seq.hyps) level = std::max(level, max_level(h.formula));
      ++level;
      Formula ih = mark_premise(seq.goal, t.number, Restriction::smaller(level), defs);
      seq.goal = mark_premise(seq.goal, t.number, Restriction::equal(level), defs);
      seq.add_hyp(ih, "IH", true);
      replace({seq});
      return;
    }
    case Tactic::Kind::kCase: {
      const Hyp& h = hyp(t.target);
      if (h.formula.kind() == Formula::Kind::kObj) {
        replace(spec_case(seq, t.target, spec, names, t.keep));
      } else {
        replace(case_hyp(seq, t.target, defs, names, t.keep));
      }
      return;
    }
    case Tactic::Kind::kApply: {
      Formula f;
      if (const Hyp* h = seq.find(t.target)) {
        f = h->formula;
      } else if (const Lemma* l = lemmas.find(t.target)) {
        f = l->formula;
      } else {
        throw Error("unknown hypothesis or lemma " + t.target);
      }
      ApplyCtx cx;
      cx.session = this;
      cx.seq = &seq;
      cx.names = &names;
      reserve_names(seq, names);
      for (const auto& a : t.names) {
        cx.args.push_back(a == "_" ? Formula() : hyp(a).formula);
        cx.arg_names.push_back(a);
      }
      for (const auto& [n, term] : t.withs) cx.with_text[n] = term.get();
      cx.noms = as_terms(seq.support());
      for (const auto& v : formula_support(f)) cx.own_support.insert(v.name);
      Formula conclusion;
      Subst result;
      std::vector<Formula> holes;
      bool ok = apply_walk(cx, f, 0, Subst{}, [&](const Formula& c, const Subst& s) {
        conclusion = c;
        result = s;
        holes = cx.holes;
        return true;
      });
      if (!ok) throw Error(cx.failure.empty() ? "cannot apply " + t.target : cx.failure);
      for (const auto& [n, term] : t.withs) {
        if (!cx.withs_used.count(n)) throw Error("no variable " + n + " to instantiate");
      }
      // Premises given as '_' are searched for, or else become subgoals.
      std::vector<Sequent> subs;
      for (const auto& h : holes) {
        Formula g = canonical_ts(apply_subst(result, h));
        if (!formula_vars(g, {Tag::kLogic}).empty()) {
          throw Error("cannot infer the premise " + print_formula(g) + " for '_'");
        }
        Sequent sub = seq;
        sub.goal = g;
        NameSupply scratch = names;
        if (!search(sub, options.search_depth, defs, spec, scratch)) subs.push_back(sub);
      }
      Formula c = canonical_ts(apply_subst(result, conclusion));
      c = close_logic_vars(c, seq, sig, cx.origins);
      seq.add_hyp(c);
      subs.push_back(apply_to_sequent(seq, Subst{}));
      replace(subs);
      return;
    }
    case Tactic::Kind::kSearch: {
      const int depth = t.depth.value_or(options.search_depth);
      NameSupply scratch = names;
      bool ok = false;
      try {
        ok = search(seq, depth, defs, spec, scratch);
      } catch (const Error& e) {
        throw Error(std::string("search failed: ") + e.what());
      }
      if (!ok) throw Error("search failed to find a proof");
      replace({});
      return;
    }
    case Tactic::Kind::kSplit: {
      if (seq.goal.kind() != Formula::Kind::kAnd) throw Error("goal is not a conjunction");
      Sequent a = seq;
      a.goal = seq.goal.left();
      Sequent b = seq;
      b.goal = seq.goal.right();
      replace({a, b});
      return;
    }
    case Tactic::Kind::kLeft:
    case Tactic::Kind::kRight: {
      if (seq.goal.kind() != Formula::Kind::kOr) throw Error("goal is not a disjunction");
      seq.goal = t.kind == Tactic::Kind::kLeft ? seq.goal.left() : seq.goal.right();
      replace({seq});
      return;
    }
    case Tactic::Kind::kExists: {
      if (!is_binding(seq.goal, Quant::kExists)) throw Error("goal is not an existential");
      Term w = elaborate_in(seq, *t.term, seq.goal.vars()[0].ty);
      seq.goal = instantiate_binding(seq.goal, {w});
      replace({apply_to_sequent(seq, Subst{})});
      return;
    }
    case Tactic::Kind::kAssert: {
      Formula f = canonical_ts(elaborate_formula(*t.formula, sequent_scope(seq)).formula);
      Sequent a = seq;
      a.goal = f;
      Sequent b = seq;
      b.add_hyp(f);
      replace({a, b});
      return;
    }
    case Tactic::Kind::kUnfold: {
      replace({unfold(seq, defs, names)});
      return;
    }
    case Tactic::Kind::kInst: {
      const Hyp& h = hyp(t.target);
      if (h.formula.kind() != Formula::Kind::kObj) {
        throw Error("inst applies to specification judgments only");
      }
      if (t.withs.size() != 1) throw Error("inst expects one nominal = term binding");
      const std::string& n = t.withs[0].first;
      std::optional<Var> nom;
      for (const auto& v : formula_support(h.formula)) {
        if (v.name == n) nom = v;
      }
      if (!nom) throw Error(n + " does not occur in " + t.target);
      Term by = elaborate_in(seq, *t.withs[0].second, nom->ty);
      std::set<std::string> allowed;
      for (const auto& v : formula_support(h.formula)) allowed.insert(v.name);
      for (const auto& v : support(by)) {
        if (!allowed.count(v.name)) {
          throw Error("the term mentions " + v.name + ", which does not occur in " + t.target);
        }
      }
      std::vector<Term> ctx;
      for (const auto& c : h.formula.context()) ctx.push_back(replace_nominal(c, n, by));
      seq.add_hyp(Formula::obj(ctx, replace_nominal(h.formula.goal(), n, by),
                               h.formula.restriction()));
      replace({seq});
      return;
    }
    case Tactic::Kind::kCut: {
      const Hyp& h1 = hyp(t.target);
      const Hyp& h2 = hyp(t.other);
      if (h1.formula.kind() != Formula::Kind::kObj || h2.formula.kind() != Formula::Kind::kObj) {
        throw Error("cut applies to specification judgments");
      }
      const Term a = h2.formula.goal();
      std::vector<Term> rest = h1.formula.context();
      auto it = std::find_if(rest.begin(), rest.end(),
                             [&](const Term& c) { return equal(c, a); });
      if (it == rest.end()) {
        throw Error(print_term(a) + " is not in the context of " + t.target);
      }
      rest.erase(it);
      if (!context_subset(h2.formula.context(), rest)) {
        throw Error("the context of " + t.other + " is not contained in that of " + t.target);
      }
      seq.add_hyp(Formula::obj(rest, h1.formula.goal()));
      replace({seq});
      return;
    }
    case Tactic::Kind::kMonotone: {
      Term ctx = elaborate_in(seq, *t.term, builtin::olist());
      replace({monotone(seq, t.target, {ctx})});
      return;
    }
    case Tactic::Kind::kClear: {
      for (const auto& n : t.names) {
        hyp(n);
        seq.remove_hyp(n);
      }
      replace({seq});
      return;
    }
    case Tactic::Kind::kUndo:
    case Tactic::Kind::kAbort:
      break;
  }
  throw Error("unsupported tactic");
}

}  // namespace nabla
