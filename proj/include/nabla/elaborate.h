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

// Type inference and name resolution: turns parse trees into typed terms
// and formulas.

#ifndef NABLA_ELABORATE_H_
#define NABLA_ELABORATE_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nabla/formula.h"
#include "nabla/signature.h"
#include "nabla/syntax.h"
#include "nabla/term.h"

namespace nabla {

struct Scope {
  const Signature* sig = nullptr;
  // Eigenvariables, nominals and logic variables visible by name.
  std::map<std::string, Term> vars;
  // Unknown capitalized identifiers become fresh variables of this tag
  // (constant tag = implicitly quantified clause variables). When unset,
  // unknown identifiers are errors.
  std::optional<Tag> implicit_tag;
};

struct Elaborated {
  Term term;
  Formula formula;
  // Implicit variables created, in order of first occurrence.
  std::vector<Var> implicit;
};

// `expected` constrains the result type when given.
Elaborated elaborate_term(const PTerm& t, const Scope& scope,
                          const std::optional<Ty>& expected = std::nullopt);
Elaborated elaborate_formula(const PFormula& f, const Scope& scope);

// Several terms sharing one set of implicit variables (a .mod clause:
// head then body goals, each of type o).
struct ElaboratedTerms {
  std::vector<Term> terms;
  std::vector<Var> implicit;
};
ElaboratedTerms elaborate_terms(const std::vector<PTermPtr>& ts, const Scope& scope,
                                const std::vector<Ty>& expected);

// A definition clause: the head (of type prop) plus an optional body formula
// with nabla-bound head variables, sharing implicit universals.
struct ElaboratedClause {
  Term head;
  Formula body;
  std::vector<BoundVar> nablas;
  std::vector<Var> implicit;
};
ElaboratedClause elaborate_clause(const PClause& c, const Scope& scope);

bool starts_upper(const std::string& name);

}  // namespace nabla

#endif  // NABLA_ELABORATE_H_
