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

// Exhaustive unification oracle over a tiny first-order signature
// (c : i, f : i -> i -> i). Unknowns range over closed terms, abstracted over
// their parameters for functional unknowns, up to a depth bound; nominal
// constants never occur in instantiations. The oracle has its own term
// representation and shares nothing with the unifier beyond the input.

#ifndef NABLA_TESTS_ORACLE_H_
#define NABLA_TESTS_ORACLE_H_

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <random>
#include <string>
#include <vector>

#include "nabla/term.h"
#include "nabla/unify.h"

namespace nabla::oracle {

inline Ty i_ty() { return Ty::base("i"); }
inline Term c() { return Term::constant("c", i_ty()); }
inline Term f(Term a, Term b) {
  return Term::app(Term::constant("f", Ty::curry({i_ty(), i_ty()}, i_ty())),
                   {std::move(a), std::move(b)});
}
inline Term nom(int k) { return Term::nominal("n" + std::to_string(k), i_ty()); }

struct Search {
  std::vector<Subst> solutions;
  bool exhausted = true;  // false when the node budget ran out
  long nodes = 0;
};

// Trees over the oracle signature. Bodies of unknowns use kArg for their
// parameters and kHole for parts not chosen yet; equation sides use kLvar
// for variables bound by an outer abstraction and kMeta for unknowns.
struct Tree {
  enum Kind { kC, kF, kNom, kLvar, kArg, kHole, kMeta } kind;
  int n = 0;  // nominal number, level, parameter, hole or unknown index
  std::vector<std::shared_ptr<const Tree>> kids;
};
using TreeP = std::shared_ptr<const Tree>;

inline TreeP mk(Tree::Kind k, int n = 0, std::vector<TreeP> kids = {}) {
  return std::make_shared<const Tree>(Tree{k, n, std::move(kids)});
}

// Enumerates assignments to `unknowns` making every equation hold, with
// f-nesting at most `depth` in each instantiation. Unknown parts of an
// instantiation are holes that match anything until a comparison forces a
// choice; the choice is then enumerated exhaustively (c, a parameter, or
// f of two new holes). Stops after `limit` solutions or `budget` nodes.
class Finder {
 public:
  Finder(const std::vector<Equation>& eqs, const std::vector<Var>& unknowns, int depth)
      : unknowns_(unknowns), depth_(depth) {
    for (const auto& [l, r] : eqs) {
      const int arity = type_of(l).arity();
      sides_.emplace_back(top(l, arity), top(r, arity));
    }
    for (std::size_t v = 0; v < unknowns_.size(); ++v) {
      roots_.push_back(new_hole(static_cast<int>(v), depth_));
    }
  }

  Search run(std::size_t limit, long budget) {
    limit_ = limit;
    budget_ = budget;
    go();
    return std::move(out_);
  }

 private:
  struct Hole {
    int owner;
    int depth;
    TreeP fill;
  };

  int new_hole(int owner, int depth) {
    holes_.push_back({owner, depth, nullptr});
    return static_cast<int>(holes_.size()) - 1;
  }

  int index_of(const Var& v) const {
    for (std::size_t k = 0; k < unknowns_.size(); ++k) {
      if (unknowns_[k].same(v)) return static_cast<int>(k);
    }
    return -1;
  }

  // Converts a side of an equation of type i^arity -> i, eta-expanding it.
  TreeP top(const Term& t0, int arity) {
    Term t = t0;
    int nb = 0;
    if (t.is_lam()) {
      nb = static_cast<int>(t.binders().size());
      t = t.body();
    }
    std::vector<TreeP> extra;
    for (int k = nb; k < arity; ++k) extra.push_back(mk(Tree::kLvar, k));
    return conv(t, arity, nb, extra);
  }

  TreeP conv(const Term& t, int arity, int nb, const std::vector<TreeP>& extra) {
    const Term& h = t.spine_head();
    std::vector<TreeP> args;
    for (const auto& a : t.spine_args()) args.push_back(conv(a, arity, nb, {}));
    args.insert(args.end(), extra.begin(), extra.end());
    if (h.is_bound()) {
      if (!args.empty()) throw std::logic_error("oracle: applied bound variable");
      return mk(Tree::kLvar, nb - h.index());
    }
    if (!h.is_var()) throw std::logic_error("oracle: unexpected term shape");
    const Var& v = h.as_var();
    const int u = index_of(v);
    if (u >= 0) return mk(Tree::kMeta, u, std::move(args));
    if (v.tag == Tag::kNominal && is_nominal_name(v.name)) {
      return mk(Tree::kNom, std::stoi(v.name.substr(1)));
    }
    if (v.name == "c" && args.empty()) return mk(Tree::kC);
    if (v.name == "f" && args.size() == 2) return mk(Tree::kF, 0, std::move(args));
    throw std::logic_error("oracle: unknown symbol " + v.name);
  }

  // Value of a body under parameters `env`; unfilled holes stay as holes
  // carrying env.
  struct Val {
    enum Kind { kC, kF, kNom, kLvar, kHole } kind;
    int n = 0;
    std::vector<std::shared_ptr<const Val>> kids;  // f arguments or hole env
  };
  using ValP = std::shared_ptr<const Val>;

  ValP body_val(int hole, const std::vector<ValP>& env) {
    const Hole& h = holes_[static_cast<std::size_t>(hole)];
    if (!h.fill) return std::make_shared<const Val>(Val{Val::kHole, hole, env});
    const Tree& t = *h.fill;
    switch (t.kind) {
      case Tree::kC:
        return std::make_shared<const Val>(Val{Val::kC, 0, {}});
      case Tree::kArg:
        return env[static_cast<std::size_t>(t.n)];
      case Tree::kF:
        return std::make_shared<const Val>(Val{
            Val::kF, 0, {body_val(t.kids[0]->n, env), body_val(t.kids[1]->n, env)}});
      default:
        throw std::logic_error("oracle: bad fill");
    }
  }

  ValP eval(const TreeP& t) {
    switch (t->kind) {
      case Tree::kC:
        return std::make_shared<const Val>(Val{Val::kC, 0, {}});
      case Tree::kNom:
        return std::make_shared<const Val>(Val{Val::kNom, t->n, {}});
      case Tree::kLvar:
        return std::make_shared<const Val>(Val{Val::kLvar, t->n, {}});
      case Tree::kF:
        return std::make_shared<const Val>(Val{Val::kF, 0, {eval(t->kids[0]), eval(t->kids[1])}});
      case Tree::kMeta: {
        std::vector<ValP> env;
        for (const auto& a : t->kids) env.push_back(eval(a));
        return body_val(roots_[static_cast<std::size_t>(t->n)], env);
      }
      default:
        throw std::logic_error("oracle: bad tree");
    }
  }

  // False on a rigid clash; records the first hole met.
  bool compat(const ValP& a, const ValP& b, int* hole) {
    if (a->kind == Val::kHole || b->kind == Val::kHole) {
      if (*hole < 0) *hole = a->kind == Val::kHole ? a->n : b->n;
      return true;
    }
    if (a->kind != b->kind) return false;
    if (a->kind == Val::kF) {
      return compat(a->kids[0], b->kids[0], hole) && compat(a->kids[1], b->kids[1], hole);
    }
    return a->n == b->n;
  }

  void go() {
    if (out_.solutions.size() >= limit_ || !out_.exhausted) return;
    if (++out_.nodes > budget_) {
      out_.exhausted = false;
      return;
    }
    int hole = -1;
    for (const auto& [l, r] : sides_) {
      if (!compat(eval(l), eval(r), &hole)) return;
    }
    if (hole < 0) {
      // Every equation holds; holes nobody looked at are still free.
      for (std::size_t k = 0; k < holes_.size(); ++k) {
        if (!holes_[k].fill) {
          hole = static_cast<int>(k);
          break;
        }
      }
      if (hole < 0) {
        out_.solutions.push_back(solution());
        return;
      }
    }
    const Hole h = holes_[static_cast<std::size_t>(hole)];
    const int arity = unknowns_[static_cast<std::size_t>(h.owner)].ty.arity();
    std::vector<TreeP> choices = {mk(Tree::kC)};
    for (int k = 0; k < arity; ++k) choices.push_back(mk(Tree::kArg, k));
    if (h.depth > 0) choices.push_back(nullptr);
    for (auto& choice : choices) {
      const std::size_t mark = holes_.size();
      if (!choice) {
        const int a = new_hole(h.owner, h.depth - 1);
        const int b = new_hole(h.owner, h.depth - 1);
        choice = mk(Tree::kF, 0, {mk(Tree::kHole, a), mk(Tree::kHole, b)});
      }
      holes_[static_cast<std::size_t>(hole)].fill = choice;
      go();
      holes_[static_cast<std::size_t>(hole)].fill = nullptr;
      holes_.resize(mark);
      if (out_.solutions.size() >= limit_ || !out_.exhausted) return;
    }
  }

  Term to_term(int hole, int arity) const {
    const Tree& t = *holes_[static_cast<std::size_t>(hole)].fill;
    switch (t.kind) {
      case Tree::kC:
        return c();
      case Tree::kArg:
        return Term::bound(arity - t.n);
      default:
        return f(to_term(t.kids[0]->n, arity), to_term(t.kids[1]->n, arity));
    }
  }

  Subst solution() const {
    Subst s;
    for (std::size_t v = 0; v < unknowns_.size(); ++v) {
      const Var& u = unknowns_[v];
      std::vector<Term::Binder> bs;
      for (const auto& t : u.ty.arg_types()) bs.push_back({"y", t});
      s.bind(u.name, Term::lam(bs, to_term(roots_[v], u.ty.arity())));
    }
    return s;
  }

  std::vector<Var> unknowns_;
  int depth_;
  std::vector<std::pair<TreeP, TreeP>> sides_;
  std::vector<int> roots_;
  std::vector<Hole> holes_;
  std::size_t limit_ = 1;
  long budget_ = 0;
  Search out_;
};

inline Search find_unifiers(const std::vector<Equation>& eqs, const std::vector<Var>& unknowns,
                            int depth, std::size_t limit, long budget) {
  return Finder(eqs, unknowns, depth).run(limit, budget);
}

// Metavariables (logic or eigen) occurring in t.
inline std::vector<Var> metavars(const std::vector<Term>& ts) {
  std::vector<Var> out;
  for (const auto& t : ts) {
    for (auto& v : collect_vars(t, {Tag::kLogic, Tag::kEigen})) {
      bool seen = false;
      for (const auto& o : out) seen = seen || o.same(v);
      if (!seen) out.push_back(v);
    }
  }
  return out;
}

// Does rho = theta . sigma for some theta? Searches theta over the
// variables left open by sigma.
inline bool factors_through(const Subst& sigma, const Subst& rho, const std::vector<Var>& vars,
                            int depth, long budget) {
  std::vector<Equation> eqs;
  std::vector<Term> ranges;
  for (const auto& v : vars) {
    Term image = sigma.apply(Term::var(v));
    ranges.push_back(image);
    eqs.emplace_back(image, rho.apply(Term::var(v)));
  }
  std::vector<Var> open = metavars(ranges);
  Search s = find_unifiers(eqs, open, depth, 1, budget);
  return !s.solutions.empty();
}

// Instantiates every remaining metavariable with a constant function.
inline Subst ground(const Subst& sigma, const std::vector<Term>& terms) {
  Subst out = sigma;
  std::vector<Term> images;
  for (const auto& t : terms) images.push_back(sigma.apply(t));
  for (const auto& v : metavars(images)) {
    std::vector<Term::Binder> bs;
    for (const auto& t : v.ty.arg_types()) bs.push_back({"y", t});
    out.bind(v.name, Term::lam(bs, c()));
  }
  return out;
}

// Random problems over the oracle signature: at most three metavariables
// (drawn from X, Y : i; F, G : i -> i; H : i -> i -> i), nominals n1, n2,
// f-nesting at most three. Flexible applications mostly have distinct
// nominal (or bound) arguments; a few are deliberately outside the pattern
// fragment.
class ProblemGen {
 public:
  explicit ProblemGen(unsigned seed) : rng_(seed) {}

  std::vector<Equation> next() {
    pool_.clear();
    std::vector<Var> all = {
        {"X", Tag::kLogic, 0, i_ty()},
        {"Y", Tag::kLogic, 0, i_ty()},
        {"F", Tag::kLogic, 0, Ty::arrow(i_ty(), i_ty())},
        {"G", Tag::kLogic, 0, Ty::arrow(i_ty(), i_ty())},
        {"H", Tag::kLogic, 0, Ty::curry({i_ty(), i_ty()}, i_ty())},
    };
    std::shuffle(all.begin(), all.end(), rng_);
    const int n = 1 + roll(3);
    pool_.assign(all.begin(), all.begin() + n);
    const int neqs = roll(4) == 0 ? 2 : 1;
    std::vector<Equation> eqs;
    for (int k = 0; k < neqs; ++k) {
      if (roll(5) == 0) {
        // An equation between abstractions over one bound variable.
        Term l = Term::lam({{"x", i_ty()}}, gen(3, 1));
        Term r = Term::lam({{"x", i_ty()}}, gen(3, 1));
        eqs.emplace_back(l, r);
      } else {
        eqs.emplace_back(gen(3, 0), gen(3, 0));
      }
    }
    return eqs;
  }

 private:
  int roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Term atom_arg(int nbound) {
    const int k = roll(2 + nbound);
    if (k < 2) return nom(k + 1);
    return Term::bound(k - 1);
  }

  Term flex(const Var& v, int depth, int nbound) {
    const int arity = v.ty.arity();
    std::vector<Term> args;
    if (roll(10) == 0) {
      // Outside the pattern fragment.
      for (int k = 0; k < arity; ++k) args.push_back(roll(2) ? c() : gen(depth - 1, nbound));
      return Term::app(Term::var(v), args);
    }
    std::vector<Term> pool = {nom(1), nom(2)};
    for (int k = 1; k <= nbound; ++k) pool.push_back(Term::bound(k));
    std::shuffle(pool.begin(), pool.end(), rng_);
    for (int k = 0; k < arity; ++k) args.push_back(pool[static_cast<std::size_t>(k)]);
    return Term::app(Term::var(v), args);
  }

  Term gen(int depth, int nbound) {
    const int choice = roll(depth <= 0 ? 3 : 6);
    switch (choice) {
      case 0:
        return roll(3) == 0 ? c() : atom_arg(nbound);
      case 1:
      case 2: {
        const Var& v = pool_[static_cast<std::size_t>(roll(static_cast<int>(pool_.size())))];
        if (v.ty.is_arrow()) return flex(v, depth, nbound);
        return Term::var(v);
      }
      default:
        return f(gen(depth - 1, nbound), gen(depth - 1, nbound));
    }
  }

  std::mt19937 rng_;
  std::vector<Var> pool_;
};

}  // namespace nabla::oracle

#endif  // NABLA_TESTS_ORACLE_H_
