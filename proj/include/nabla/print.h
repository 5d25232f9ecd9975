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

#ifndef NABLA_PRINT_H_
#define NABLA_PRINT_H_

#include <string>

#include "nabla/formula.h"
#include "nabla/term.h"

namespace nabla {

struct PrintOptions {
  // Annotate formula binders and abstractions with their types.
  bool annotate = false;
  // Print induction restrictions (@, *) on atoms and judgments.
  bool restrictions = true;
};

std::string print_ty(const Ty& ty);
std::string print_term(const Term& t, const PrintOptions& opts = {});
std::string print_formula(const Formula& f, const PrintOptions& opts = {});

}  // namespace nabla

#endif  // NABLA_PRINT_H_
