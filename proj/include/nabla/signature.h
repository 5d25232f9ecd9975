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

#ifndef NABLA_SIGNATURE_H_
#define NABLA_SIGNATURE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nabla/syntax.h"
#include "nabla/term.h"

namespace nabla {

// Kinds and typed constants. Starts out with the built-in vocabulary of the
// specification logic (o, olist, prop, nil, ::, =>, &, pi, member).
class Signature {
 public:
  Signature();

  void add_kind(const std::string& name, const std::optional<Span>& span = std::nullopt);
  void add_const(const std::string& name, const Ty& ty,
                 const std::optional<Span>& span = std::nullopt);

  bool has_kind(const std::string& name) const { return kinds_.count(name) > 0; }
  std::optional<Ty> const_type(const std::string& name) const;
  // Throws unless every base type in ty is a declared kind.
  void check_ty(const Ty& ty, const std::optional<Span>& span = std::nullopt) const;

  const std::vector<std::string>& kinds() const { return kind_order_; }
  const std::vector<std::string>& constant_names() const { return const_order_; }

 private:
  std::set<std::string> kinds_;
  std::vector<std::string> kind_order_;
  std::map<std::string, Ty> consts_;
  std::vector<std::string> const_order_;
};

// Names the user may not declare or bind.
bool is_reserved_name(const std::string& name);

}  // namespace nabla

#endif  // NABLA_SIGNATURE_H_
