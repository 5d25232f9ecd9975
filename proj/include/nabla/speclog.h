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

// The specification logic: second-order hereditary Harrop programs loaded
// from .sig/.mod files, a depth-bounded interpreter, and the rules that
// reason about specification judgments {L |- G} in sequents.

#ifndef NABLA_SPECLOG_H_
#define NABLA_SPECLOG_H_

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/metalogic.h"
#include "nabla/signature.h"
#include "nabla/syntax.h"
#include "nabla/term.h"

namespace nabla {

// forall universals, head :- body_1, ..., body_n
struct SpecClause {
  std::vector<Var> universals;  // constant-tagged
  Term head;
  std::vector<Term> body;
  Span span;
};

class SpecDb {
 public:
  // Declares the .sig contents in sig and adds the .mod clauses. On error
  // neither sig nor the database changes.
  void load(std::string_view sig_text, std::string_view mod_text, Signature& sig,
            const std::string& sig_file = "", const std::string& mod_file = "");

  const std::vector<SpecClause>& clauses() const { return clauses_; }
  std::vector<const SpecClause*> clauses_for(const std::string& pred) const;

 private:
  std::vector<SpecClause> clauses_;
};

// Order of a type: 0 for base types, otherwise max(order(dom) + 1,
// order(cod)).
int type_order(const Ty& ty);

// Head predicate of an atomic object formula, or "" if the term is a
// connective (=>, &, pi) or has a variable head.
std::string spec_pred(const Term& t);

struct SolveOptions {
  int depth = 10;
  // Specification judgments assumed to hold (sequent hypotheses). One
  // closes an atomic goal when its goal unifies with it and its context is
  // contained in the current one.
  std::vector<Formula> assumptions;
};

struct SolveResult {
  enum class Status { kSuccess, kFailure, kDepthExhausted };
  Status status = Status::kFailure;
  Subst subst;
  int nodes = 0;

  bool ok() const { return status == Status::kSuccess; }
};

// Depth-first backchaining for {ctx |- goal}. Context items of type olist
// (context variables) are opaque. Logic variables are instantiated; all
// other variables are rigid. A clause use costs one unit of depth;
// context members are free. Unification problems outside the supported
// fragment count as exhausting the depth rather than failing.
SolveResult solve(const SpecDb& db, const std::vector<Term>& ctx, const Term& goal,
                  const SolveOptions& opts, NameSupply& names, const Subst& initial = {});

// As solve, but calls `k` on each success until it returns true.
bool solve_k(const SpecDb& db, const std::vector<Term>& ctx, const Term& goal,
             const SolveOptions& opts, NameSupply& names, const Subst& initial,
             const std::function<bool(const Subst&)>& k, bool* exhausted = nullptr);

// Case analysis on a hypothesis {L |- A}: one case per clause whose head
// unifies with A (premises become judgments marked * when the hypothesis
// is restricted), one per explicit context item unifying with A, and one
// per context variable Lv adding the hypothesis member A Lv.
std::vector<Sequent> spec_case(const Sequent& seq, const std::string& hyp, const SpecDb& db,
                               NameSupply& names, bool keep = false);

// Adds {ctx |- G} for hypothesis {L |- G} when L is contained in ctx.
Sequent monotone(const Sequent& seq, const std::string& hyp, const std::vector<Term>& ctx);

// Splits a goal into atomic judgments: & splits, => extends the context,
// pi introduces a fresh nominal (avoiding `avoid`, which is updated).
void decompose_goal(const std::vector<Term>& ctx, const Term& goal,
                    std::set<std::string>& avoid,
                    std::vector<std::pair<std::vector<Term>, Term>>& out);

}  // namespace nabla

#endif  // NABLA_SPECLOG_H_
