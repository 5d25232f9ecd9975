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

#ifndef NABLA_FORMULA_H_
#define NABLA_FORMULA_H_

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nabla/term.h"

namespace nabla {

// Induction annotation on atoms: `@` (equal size, level k) or `*` (strictly
// smaller, level k). Printed as k repetitions of the marker.
struct Restriction {
  enum class Kind { kNone, kSmaller, kEqual };
  Kind kind = Kind::kNone;
  int level = 0;

  static Restriction none() { return {}; }
  static Restriction smaller(int k) { return {Kind::kSmaller, k}; }
  static Restriction equal(int k) { return {Kind::kEqual, k}; }

  bool is_none() const { return kind == Kind::kNone; }
  std::string str() const;
  friend bool operator==(const Restriction& a, const Restriction& b) {
    return a.kind == b.kind && (a.kind == Kind::kNone || a.level == b.level);
  }
};

// Whether an argument carrying `arg` may be used where `required` is
// demanded by a lemma premise.
bool satisfies(const Restriction& arg, const Restriction& required);

enum class Quant { kForall, kExists, kNabla };

struct BoundVar {
  std::string name;
  Ty ty;
};

class Formula {
 public:
  enum class Kind { kTrue, kFalse, kEq, kAnd, kOr, kImp, kBinding, kPred, kObj };

  Formula() = default;

  static Formula truth();
  static Formula falsity();
  static Formula eq(Term a, Term b);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula binding(Quant q, std::vector<BoundVar> vars, Formula body);
  static Formula pred(Term atom, Restriction r = {});
  // Specification judgment {ctx |- goal}. Context items are object formulas
  // or olist-typed context variables; cons-lists are flattened.
  static Formula obj(std::vector<Term> ctx, Term goal, Restriction r = {});

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;

  const Term& lhs() const;  // kEq
  const Term& rhs() const;  // kEq
  const Formula& left() const;   // kAnd, kOr, kImp
  const Formula& right() const;  // kAnd, kOr, kImp
  Quant quant() const;
  const std::vector<BoundVar>& vars() const;
  const Formula& body() const;
  const Term& atom() const;  // kPred
  const std::vector<Term>& context() const;  // kObj
  const Term& goal() const;  // kObj
  const Restriction& restriction() const;  // kPred, kObj

  Formula with_restriction(Restriction r) const;

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Applies fn to every term (formula-bound names appear as constants).
Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& fn);

Formula apply_subst(const Subst& s, const Formula& f);
Formula apply_perm(const Permutation& p, const Formula& f);

// Replaces formula-bound names, renaming inner binders to avoid capture.
Formula subst_bound(const Formula& f, const std::map<std::string, Term>& m);

// Instantiates the binders of a kBinding formula in order.
Formula instantiate_binding(const Formula& f, const std::vector<Term>& values);

std::vector<Var> formula_support(const Formula& f);
std::vector<Var> formula_vars(const Formula& f, const std::set<Tag>& tags);
std::set<std::string> formula_names(const Formula& f);

// Alpha-equivalence (binder names and term beta-eta equality); restrictions
// compared unless ignored.
bool formula_equal(const Formula& a, const Formula& b,
                   bool compare_restrictions = true);

// Predicate name at the head of an atom, or "" if the head is not a constant.
std::string head_name(const Term& atom);

// Flattens `a :: b :: L` and drops nil.
std::vector<Term> flatten_context(const std::vector<Term>& ctx);

// Built-in names of the specification logic.
namespace builtin {
inline constexpr const char* kO = "o";
inline constexpr const char* kOList = "olist";
inline constexpr const char* kProp = "prop";
inline constexpr const char* kNil = "nil";
inline constexpr const char* kCons = "::";
inline constexpr const char* kImp = "=>";
inline constexpr const char* kAnd = "&";
inline constexpr const char* kPi = "pi";
inline constexpr const char* kMember = "member";

Ty o();
Ty olist();
Ty prop();
Term nil();
Term cons(Term head, Term tail);
Term imp(Term a, Term b);
Term conj(Term a, Term b);
// pi x\ body, where body is an abstraction over `ty`.
Term pi(Ty ty, Term abstraction);
Ty pi_type(Ty ty);
// a1 :: ... :: an :: tail (tail = nil when absent).
Term make_list(const std::vector<Term>& items);
}  // namespace builtin

}  // namespace nabla

#endif  // NABLA_FORMULA_H_
