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

#include "nabla/signature.h"

#include "nabla/formula.h"
#include "nabla/print.h"

namespace nabla {

bool is_reserved_name(const std::string& name) {
  if (is_nominal_name(name)) return true;
  return name == "forall" || name == "exists" || name == "nabla" || name == "true" ||
         name == "false" || name == "_" || (!name.empty() && name[0] == '?');
}

Signature::Signature() {
  add_kind(builtin::kO);
  add_kind(builtin::kOList);
  add_kind(builtin::kProp);
  const Ty o = builtin::o();
  const Ty ol = builtin::olist();
  add_const(builtin::kNil, ol);
  add_const(builtin::kCons, Ty::curry({o, ol}, ol));
  add_const(builtin::kImp, Ty::curry({o, o}, o));
  add_const(builtin::kAnd, Ty::curry({o, o}, o));
  add_const(builtin::kMember, Ty::curry({o, ol}, builtin::prop()));
  // pi is polymorphic; its type is chosen per occurrence by the elaborator.
  const_order_.push_back(builtin::kPi);
}

void Signature::add_kind(const std::string& name, const std::optional<Span>& span) {
  if (is_reserved_name(name)) throw Error("'" + name + "' is a reserved name", span);
  if (kinds_.count(name)) throw Error("kind '" + name + "' is already declared", span);
  kinds_.insert(name);
  kind_order_.push_back(name);
}

void Signature::add_const(const std::string& name, const Ty& ty,
                          const std::optional<Span>& span) {
  if (is_reserved_name(name)) throw Error("'" + name + "' is a reserved name", span);
  if (consts_.count(name) || name == builtin::kPi) {
    throw Error("constant '" + name + "' is already declared", span);
  }
  check_ty(ty, span);
  consts_.emplace(name, ty);
  const_order_.push_back(name);
}

std::optional<Ty> Signature::const_type(const std::string& name) const {
  auto it = consts_.find(name);
  if (it == consts_.end()) return std::nullopt;
  return it->second;
}

void Signature::check_ty(const Ty& ty, const std::optional<Span>& span) const {
  if (ty.is_arrow()) {
    check_ty(ty.dom(), span);
    check_ty(ty.cod(), span);
    return;
  }
  if (ty.is_var()) throw Error("type variable in declaration", span);
  if (!kinds_.count(ty.name())) throw Error("unknown type '" + ty.name() + "'", span);
}

}  // namespace nabla
