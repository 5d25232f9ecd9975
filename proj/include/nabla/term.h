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

#ifndef NABLA_TERM_H_
#define NABLA_TERM_H_

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nabla {

// Simple types: base types, arrows, and inference-only type variables.
class Ty {
 public:
  Ty() : Ty(base("?")) {}

  static Ty base(std::string name);
  static Ty arrow(Ty dom, Ty cod);
  static Ty var(int id);
  // a1 -> a2 -> ... -> result
  static Ty curry(const std::vector<Ty>& args, Ty result);

  bool is_base() const { return node_->kind == Kind::kBase; }
  bool is_arrow() const { return node_->kind == Kind::kArrow; }
  bool is_var() const { return node_->kind == Kind::kVar; }

  const std::string& name() const { return node_->name; }
  const Ty& dom() const { return node_->children[0]; }
  const Ty& cod() const { return node_->children[1]; }
  int var_id() const { return node_->id; }

  std::vector<Ty> arg_types() const;
  Ty result() const;
  int arity() const;

  std::string str() const;

  friend bool operator==(const Ty& a, const Ty& b);
  friend bool operator!=(const Ty& a, const Ty& b) { return !(a == b); }

 private:
  enum class Kind { kBase, kArrow, kVar };
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Ty> children;
    int id = 0;
  };
  explicit Ty(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class Tag {
  kConstant,  // signature constants and formula-bound names
  kEigen,     // sequent eigenvariables
  kLogic,     // instantiatable unification variables
  kNominal,   // nominal constants (and unifier-internal locals)
};

inline constexpr int kMaxTs = std::numeric_limits<int>::max();

struct Var {
  std::string name;
  Tag tag = Tag::kConstant;
  // A variable may only be bound to terms whose rigid atoms have a
  // timestamp no greater than its own. Nominals carry kMaxTs.
  int ts = 0;
  Ty ty;

  bool same(const Var& o) const { return tag == o.tag && name == o.name; }
};

class Term {
 public:
  enum class Kind { kVar, kBound, kLam, kApp };
  struct Binder {
    std::string hint;
    Ty ty;
  };

  Term() = default;

  static Term var(Var v);
  static Term constant(std::string name, Ty ty);
  static Term eigen(std::string name, Ty ty, int ts = 0);
  static Term logic(std::string name, Ty ty, int ts = 0);
  static Term nominal(std::string name, Ty ty);
  // de Bruijn index; 1 is the innermost binder.
  static Term bound(int index);
  static Term lam(std::vector<Binder> binders, Term body);
  static Term app(Term head, std::vector<Term> args);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  bool is_var() const { return kind() == Kind::kVar; }
  bool is_bound() const { return kind() == Kind::kBound; }
  bool is_lam() const { return kind() == Kind::kLam; }
  bool is_app() const { return kind() == Kind::kApp; }

  const Var& as_var() const;
  int index() const;
  const std::vector<Binder>& binders() const;
  const Term& body() const;
  const Term& head() const;
  const std::vector<Term>& args() const;

  // Head symbol after peeling off applications (not abstractions).
  const Term& spine_head() const;
  std::vector<Term> spine_args() const;

  const void* identity() const { return node_.get(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Structural equality on the representation. Because bound variables are
// nameless this is alpha-equivalence; callers normalize first when they need
// beta-equivalence (see `equal`).
bool same_term(const Term& a, const Term& b);

// Beta-normal form.
Term normalize(const Term& t);
// Weak head normal form: the head is not a beta-redex.
Term hnorm(const Term& t);
// Beta-eta equality.
bool equal(const Term& a, const Term& b);
// Eta-contracts the outermost abstraction chain where possible.
Term eta_contract(const Term& t);

// Shifts loose de Bruijn indices above `cutoff` by `by`.
Term shift(const Term& t, int by, int cutoff = 0);
// Replaces de Bruijn indices 1..env.size() (env[0] is index 1) and lowers
// the remaining loose indices. Does not normalize.
Term instantiate(const Term& body, const std::vector<Term>& env);
// Builds the beta-normal form of `f a1 ... an`.
Term beta(const Term& f, const std::vector<Term>& args);
bool has_loose_bound(const Term& t, int depth = 0);

// Type of a term whose loose bound variables are typed by `ctx` (ctx.back()
// is index 1). Throws std::logic_error on ill-typed input.
Ty type_of(const Term& t, const std::vector<Ty>& ctx = {});

// Free variables (by tag) in order of first occurrence.
std::vector<Var> collect_vars(const Term& t,
                              const std::set<Tag>& tags);
bool occurs_var(const Var& v, const Term& t);
std::set<std::string> var_names(const Term& t);

// Rewrites variable occurrences. `fn` returns the replacement, or nothing to
// keep the variable. Replacements must not contain loose bound variables.
// The result is normalized.
template <typename Fn>
Term map_vars(const Term& t, Fn&& fn);

// Substitution for eigen- and logic variables, keyed by name.
class Subst {
 public:
  Subst() = default;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& bindings() const { return map_; }
  std::optional<Term> lookup(const std::string& name) const;
  bool binds(const std::string& name) const { return map_.count(name) > 0; }

  // Adds name := t and rewrites existing ranges so the substitution stays
  // idempotent. `t` must already be free of names bound here.
  void bind(const std::string& name, Term t);

  Term apply(const Term& t) const;
  // this after other: (this ∘ other)(x) = this(other(x)).
  Subst compose_after(const Subst& other) const;

 private:
  std::map<std::string, Term> map_;
};

// Finite bijection on nominal names.
class Permutation {
 public:
  Permutation() = default;
  static Permutation swap(const std::string& a, const std::string& b);

  void set(const std::string& from, const std::string& to);
  std::string operator()(const std::string& n) const;
  Permutation inverse() const;
  bool is_identity() const;
  const std::map<std::string, std::string>& pairs() const { return map_; }

  Term apply(const Term& t) const;

 private:
  std::map<std::string, std::string> map_;
};

// Nominal constants occurring in the normal form of t, ordered by index.
std::vector<Var> support(const Term& t);
// Orders nominal names n1 < n2 < n10.
bool nominal_less(const std::string& a, const std::string& b);
bool is_nominal_name(std::string_view s);
void sort_nominals(std::vector<Var>& noms);

// Hands out fresh names that avoid everything reserved so far.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

  void reserve(const std::string& name) { used_.insert(name); }
  bool used(const std::string& name) const { return used_.count(name) > 0; }
  // base, base1, base2, ... (trailing digits of base are stripped first).
  std::string fresh(std::string_view base);
  // ?1, ?2, ... for logic variables.
  std::string fresh_logic();
  // n1, n2, ... for nominal constants.
  std::string fresh_nominal();
  // Internal names for unifier-local constants; never user-visible.
  std::string fresh_local();

  const std::set<std::string>& used_names() const { return used_; }

 private:
  std::set<std::string> used_;
  int logic_counter_ = 0;
  int local_counter_ = 0;
};

struct Raised {
  Var fresh;  // the new variable of raised type
  Term term;  // fresh applied to the nominals
};

// Replaces v by a fresh variable of type (types of noms) -> v.ty applied to
// noms. The fresh variable keeps v's tag and timestamp.
Raised raise(const Var& v, const std::vector<Term>& noms, NameSupply& names);

// ---------------------------------------------------------------------------

namespace detail {
Term map_vars_impl(const Term& t, int depth,
                   const std::function<std::optional<Term>(const Var&)>& fn,
                   bool* changed);
}  // namespace detail

template <typename Fn>
Term map_vars(const Term& t, Fn&& fn) {
  bool changed = false;
  Term r = detail::map_vars_impl(
      t, 0, std::function<std::optional<Term>(const Var&)>(fn), &changed);
  return changed ? normalize(r) : t;
}

}  // namespace nabla

#endif  // NABLA_TERM_H_
