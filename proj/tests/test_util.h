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

#ifndef NABLA_TESTS_TEST_UTIL_H_
#define NABLA_TESTS_TEST_UTIL_H_

#include <string>

#include "nabla/elaborate.h"
#include "nabla/print.h"
#include "nabla/signature.h"
#include "nabla/syntax.h"

namespace nabla::testing {

// Object syntax of the simply-typed lambda calculus plus a few constants.
// Capitalized free identifiers in parsed text become logic variables whose
// types are fixed at first use; n1..n3 are nominals of type tm.
class Lang {
 public:
  Lang() {
    sig.add_kind("tm");
    sig.add_kind("ty");
    Ty tm = Ty::base("tm");
    Ty ty = Ty::base("ty");
    sig.add_const("app", Ty::curry({tm, tm}, tm));
    sig.add_const("abs", Ty::curry({ty, Ty::arrow(tm, tm)}, tm));
    sig.add_const("arr", Ty::curry({ty, ty}, ty));
    sig.add_const("i", ty);
    sig.add_const("c", tm);
    sig.add_const("d", tm);
    sig.add_const("of", Ty::curry({tm, ty}, Ty::base("o")));
    sig.add_const("p", Ty::curry({tm, tm}, Ty::base("prop")));
    sig.add_const("q", Ty::base("prop"));
    scope.sig = &sig;
    scope.implicit_tag = Tag::kLogic;
    for (const char* n : {"n1", "n2", "n3"}) scope.vars[n] = Term::nominal(n, tm);
  }

  Term term(const std::string& text) {
    Elaborated e = elaborate_term(*parse_term(text), scope);
    for (const auto& v : e.implicit) scope.vars[v.name] = Term::var(v);
    return e.term;
  }

  Term term(const std::string& text, const Ty& expected) {
    Elaborated e = elaborate_term(*parse_term(text), scope, expected);
    for (const auto& v : e.implicit) scope.vars[v.name] = Term::var(v);
    return e.term;
  }

  Formula formula(const std::string& text) {
    Elaborated e = elaborate_formula(*parse_formula(text), scope);
    for (const auto& v : e.implicit) scope.vars[v.name] = Term::var(v);
    return e.formula;
  }

  // Declares a logic variable of the given type.
  Term var(const std::string& name, const std::string& ty) {
    Term t = Term::logic(name, parse_ty(ty));
    scope.vars[name] = t;
    return t;
  }

  Signature sig;
  Scope scope;
};

inline std::string show(const Term& t) { return print_term(t); }

}  // namespace nabla::testing

#endif  // NABLA_TESTS_TEST_UTIL_H_
