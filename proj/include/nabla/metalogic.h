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

// Sequents of the reasoning logic, fixed-point definitions, and the rules
// that use them: nabla introduction, unfolding, case analysis and closing a
// goal by a hypothesis up to a permutation of nominal constants.

#ifndef NABLA_METALOGIC_H_
#define NABLA_METALOGIC_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nabla/formula.h"
#include "nabla/signature.h"
#include "nabla/syntax.h"
#include "nabla/term.h"
#include "nabla/unify.h"

namespace nabla {

// Timestamps. Nominal constants use kMaxTs.
inline constexpr int kTsVar = 1;     // eigenvariables and logic variables
inline constexpr int kTsClause = 0;  // clause variables during case analysis

// forall universals, (nabla nablas, head) := body
struct DefClause {
  std::vector<Var> universals;  // constant-tagged names used in head/body
  std::vector<BoundVar> nablas;
  Term head;
  Formula body;  // truth for facts
};

struct Definition {
  std::string name;
  Ty ty;
  std::vector<DefClause> clauses;
  int block = 0;  // predicates defined together share a block
};

class DefDb {
 public:
  // Starts with the context membership predicate.
  DefDb();

  // Adds predicates defined together. Rejects redefinition and any
  // occurrence of a block predicate to the left of an implication in a
  // clause body.
  void define(std::vector<Definition> block, const std::optional<Span>& span = std::nullopt);

  const Definition* find(const std::string& name) const;
  bool same_block(const std::string& a, const std::string& b) const;
  const std::vector<std::string>& names() const { return order_; }

 private:
  std::map<std::string, Definition> defs_;
  std::vector<std::string> order_;
  int blocks_ = 0;
};

// Elaborates a Define command: declares its predicates in sig and adds the
// block to defs. Neither is changed when an error is thrown.
void define_from_command(const Command& cmd, Signature& sig, DefDb& defs);

struct Hyp {
  std::string name;
  Formula formula;
};

struct Sequent {
  std::vector<Var> vars;  // eigenvariables, in introduction order
  std::vector<Hyp> hyps;
  Formula goal;
  int next_hyp = 1;

  const Hyp* find(const std::string& name) const;
  Hyp* find(const std::string& name);
  // Appends a hypothesis named base<k> (k counting up per sequent), or
  // exactly `base` when that is free and `exact_first` is set.
  std::string add_hyp(Formula f, const std::string& base = "H", bool exact_first = false);
  void remove_hyp(const std::string& name);

  // Nominal constants of the hypotheses and goal.
  std::vector<Var> support() const;
};

// Applies s everywhere, drops bound eigenvariables and adds newly
// introduced ones; timestamps are reset to the sequent conventions.
Sequent apply_to_sequent(const Sequent& seq, const Subst& s);

// Reserves every variable name of the sequent in `names`.
void reserve_names(const Sequent& seq, NameSupply& names);

// Adjusts a case substitution so that a sequent variable bound to a bare new
// variable passes its name on to it.
Subst keep_names(const Sequent& seq, const Subst& s);

// Resets eigenvariable/nominal timestamps in f to kTsVar/kMaxTs.
Formula canonical_ts(const Formula& f);


// A fresh nominal of type ty that occurs nowhere in `seq`.
Term fresh_nominal_for(const Sequent& seq, const Ty& ty, NameSupply& names);

Sequent intro_nabla_goal(const Sequent& seq, NameSupply& names);
Sequent intro_nabla_hyp(const Sequent& seq, const std::string& hyp, NameSupply& names);

// One way of matching an atom against a definitional clause.
struct CaseSolution {
  Subst subst;
  Formula body;                 // instantiated, before subst
  std::vector<Term> picks;      // nominals chosen for the nabla variables
  // Variable introduced for each clause universal, by name.
  std::map<std::string, std::string> origins;
};

struct CaseUnifyOptions {
  bool instantiate_eigen = true;  // case analysis; false for unfolding
  // Nominals fresh to the sequent may be chosen for nabla variables.
  bool allow_fresh = true;
  std::vector<Var> avoid_nominals;  // nominals already in the sequent
  // Timestamp of the logic variables made for clause universals when
  // instantiate_eigen is false.
  int logic_ts = kTsVar;
};

// Every way of unifying `atom` with the head of `clause`: nabla variables
// range over distinct nominals of the atom's support or fresh ones, and the
// universals are raised over the atom's support minus the chosen nominals.
// Throws Error when unification is indeterminate.
std::vector<CaseSolution> case_unify(const Term& atom, const DefClause& clause,
                                     const CaseUnifyOptions& opts, NameSupply& names);

// Replaces the goal atom by the body of the first clause that matches it.
// Clause variables left open by the match become existentials.
Sequent unfold(const Sequent& seq, const DefDb& defs, NameSupply& names);

// Case analysis on a hypothesis: connectives, equality and defined atoms.
// Specification judgments are handled by spec_case.
std::vector<Sequent> case_hyp(const Sequent& seq, const std::string& hyp, const DefDb& defs,
                              NameSupply& names, bool keep = false);

// Adds the pieces of f as hypotheses: conjunctions split, existentials
// and nablas introduced, truth dropped.
void add_hyps_split(Sequent& seq, const Formula& f, NameSupply& names);

inline constexpr std::size_t kMaxPermutationNominals = 8;

// Permutation p with apply_perm(p, h) alpha-equal to g (restrictions
// ignored; specification contexts of h need only be contained in g's).
std::optional<Permutation> hyp_match(const Formula& h, const Formula& g);

// As hyp_match, but logic variables may be instantiated. On success
// returns the permutation and extends *sigma.
std::optional<Permutation> hyp_unify(const Formula& h, const Formula& g, NameSupply& names,
                                     Subst* sigma);

// Name of a hypothesis proving the goal up to a permutation, if any.
std::optional<std::string> close_by_hyp(const Sequent& seq);

// Term equations identifying two formulas of the same shape; binders are
// opened with shared local constants. False on a shape mismatch.
bool formula_equations(const Formula& a, const Formula& b, std::vector<Equation>& out,
                       NameSupply& names);

// Contexts as multisets: every item of `small` equals some item of `big`.
bool context_subset(const std::vector<Term>& small, const std::vector<Term>& big);

// Human-readable sequent, hypotheses first.
std::string print_sequent(const Sequent& seq, bool annotate = true);

}  // namespace nabla

#endif  // NABLA_METALOGIC_H_
