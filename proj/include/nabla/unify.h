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

#ifndef NABLA_UNIFY_H_
#define NABLA_UNIFY_H_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nabla/term.h"

namespace nabla {

// Higher-order pattern unification over terms with nominal constants.
//
// Variables for which `instantiable` holds may be bound. A variable may only
// be bound to a term whose rigid atoms have timestamps not exceeding its
// own; nominal constants (timestamp kMaxTs) can therefore only enter a
// solution through the arguments of a raised variable. Outside the pattern
// fragment the unifier accepts a flexible pattern side against any term it
// can abstract without pruning, which covers `B = R M`, `B x = R M x` and
// `B x = R (M x)`; everything else it cannot decide is reported as
// indeterminate rather than failure.

using Equation = std::pair<Term, Term>;

enum class UnifyStatus { kSuccess, kFailure, kIndeterminate };

struct UnifyResult {
  UnifyStatus status = UnifyStatus::kSuccess;
  Subst subst;
  std::string reason;
  std::optional<Equation> offending;

  bool ok() const { return status == UnifyStatus::kSuccess; }
};

struct UnifyConfig {
  std::function<bool(const Var&)> instantiable;
  // When both sides are flexible, variables satisfying this are bound in
  // preference to the others (keeps user-visible names stable).
  std::function<bool(const Var&)> prefer_bind;
  // Extra atoms a variable may mention directly, beyond its timestamp.
  std::function<bool(const Var& var, const Var& atom)> absorbs;
};

// Only logic variables are instantiable.
UnifyConfig match_config();
// Eigenvariables and logic variables are instantiable (case analysis).
// Eigenvariables ignore each other's timestamps, and sequent eigenvariables
// (timestamp > 0) may take any nominal that is not among their arguments.
UnifyConfig case_config();

UnifyResult unify(const std::vector<Equation>& eqs, const UnifyConfig& config,
                  NameSupply& names, const Subst& initial = {});

UnifyResult unify(const Term& a, const Term& b, const UnifyConfig& config,
                  NameSupply& names, const Subst& initial = {});

// X a1 ... an with the ai distinct atoms that X may not mention directly.
bool is_pattern(const Term& t, const UnifyConfig& config);

}  // namespace nabla

#endif  // NABLA_UNIFY_H_
