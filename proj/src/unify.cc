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

#include "nabla/unify.h"

#include <algorithm>
#include <deque>
#include <utility>

namespace nabla {

UnifyConfig match_config() {
  UnifyConfig c;
  c.instantiable = [](const Var& v) { return v.tag == Tag::kLogic; };
  c.prefer_bind = [](const Var& v) { return v.tag == Tag::kLogic; };
  return c;
}

UnifyConfig case_config() {
  UnifyConfig c;
  c.instantiable = [](const Var& v) {
    return v.tag == Tag::kLogic || v.tag == Tag::kEigen;
  };
  c.prefer_bind = [](const Var& v) { return v.tag == Tag::kLogic; };
  c.absorbs = [](const Var& v, const Var& atom) {
    if (v.tag != Tag::kEigen) return false;
    return atom.tag == Tag::kEigen || (atom.tag == Tag::kNominal && v.ts > 0);
  };
  return c;
}

namespace {

struct UnifyFailure {
  std::string reason;
};

bool instantiable(const UnifyConfig& c, const Var& v) {
  return c.instantiable && c.instantiable(v);
}

bool prefer(const UnifyConfig& c, const Var& v) {
  return c.prefer_bind && c.prefer_bind(v);
}

bool is_flex(const Term& t, const UnifyConfig& c) {
  const Term& h = t.spine_head();
  return h.is_var() && instantiable(c, h.as_var());
}

// Arguments of a flexible term when they are distinct atoms that the head
// variable cannot mention on its own.
std::optional<std::vector<Var>> pattern_args(const Term& t,
                                             const UnifyConfig& c) {
  const Var& head = t.spine_head().as_var();
  std::vector<Var> out;
  for (const auto& raw : t.spine_args()) {
    Term a = eta_contract(raw);
    if (!a.is_var()) return std::nullopt;
    const Var& v = a.as_var();
    if (instantiable(c, v)) return std::nullopt;
    if (v.ts <= head.ts) return std::nullopt;
    for (const auto& o : out) {
      if (o.same(v)) return std::nullopt;
    }
    out.push_back(v);
  }
  return out;
}

int position(const std::vector<Var>& vs, const Var& v) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].same(v)) return static_cast<int>(i);
  }
  return -1;
}

std::vector<Term::Binder> binders_for(const std::vector<Var>& vs) {
  std::vector<Term::Binder> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back({"x", v.ty});
  return out;
}

class Unifier {
 public:
  Unifier(const UnifyConfig& config, NameSupply& names, Subst initial)
      : config_(config), names_(names), sigma_(std::move(initial)) {}

  UnifyResult run(const std::vector<Equation>& eqs) {
    UnifyResult result;
    std::deque<Equation> queue(eqs.begin(), eqs.end());
    std::vector<Equation> postponed;
    try {
      for (;;) {
        bool progress = false;
        while (!queue.empty()) {
          Equation e = std::move(queue.front());
          queue.pop_front();
          if (step(e, queue)) {
            progress = true;
          } else {
            postponed.push_back(std::move(e));
          }
        }
        if (postponed.empty()) break;
        if (!progress) {
          result.status = UnifyStatus::kIndeterminate;
          result.reason = "unification problem outside the supported fragment";
          result.offending = Equation{sigma_.apply(postponed.front().first),
                                      sigma_.apply(postponed.front().second)};
          result.subst = sigma_;
          return result;
        }
        for (auto& e : postponed) queue.push_back(std::move(e));
        postponed.clear();
      }
    } catch (const UnifyFailure& f) {
      result.status = UnifyStatus::kFailure;
      result.reason = f.reason;
      return result;
    }
    result.subst = sigma_;
    return result;
  }

 private:
  // Returns false when the equation has to wait.
  bool step(const Equation& eq, std::deque<Equation>& queue) {
    Term l = sigma_.apply(eq.first);
    Term r = sigma_.apply(eq.second);
    if (same_term(eta_contract(l), eta_contract(r))) return true;

    // Compare at base type: apply both sides to fresh local constants.
    Ty ty = type_of(l);
    if (ty.is_arrow()) {
      std::vector<Term> locals;
      for (const auto& a : ty.arg_types()) {
        locals.push_back(Term::nominal(names_.fresh_local(), a));
      }
      queue.push_front({beta(l, locals), beta(r, locals)});
      return true;
    }

    const bool lflex = is_flex(l, config_);
    const bool rflex = is_flex(r, config_);
    if (!lflex && !rflex) {
      const Term& lh = l.spine_head();
      const Term& rh = r.spine_head();
      if (!lh.is_var() || !rh.is_var() || !lh.as_var().same(rh.as_var()) ||
          l.spine_args().size() != r.spine_args().size()) {
        throw UnifyFailure{"constructor clash"};
      }
      auto la = l.spine_args();
      auto ra = r.spine_args();
      for (std::size_t i = la.size(); i-- > 0;) queue.push_front({la[i], ra[i]});
      return true;
    }
    if (lflex && !rflex) return flex_rigid(l, r);
    if (rflex && !lflex) return flex_rigid(r, l);
    return flex_flex(l, r);
  }

  bool flex_rigid(const Term& flex, const Term& rigid) {
    const Var& x = flex.spine_head().as_var();
    if (auto pat = pattern_args(flex, config_)) {
      auto body = abstract(x, *pat, rigid);
      if (!body) return false;
      bind(x, Term::lam(binders_for(*pat), *body));
      return true;
    }
    // The rigid head can only come from the arguments when x may not
    // mention it itself.
    const Var& h = rigid.spine_head().as_var();
    if (!sees(x, h) && !can_supply(flex.spine_args(), h)) {
      throw UnifyFailure{"variable " + x.name + " cannot depend on " + h.name};
    }
    return false;
  }

  bool can_supply(const std::vector<Term>& args, const Var& atom) const {
    for (const auto& a : args) {
      if (occurs_var(atom, a)) return true;
      for (const auto& v : collect_vars(a, {Tag::kEigen, Tag::kLogic})) {
        if (instantiable(config_, v) && sees(v, atom)) return true;
      }
    }
    return false;
  }

  bool flex_flex(const Term& l, const Term& r) {
    const Var& x = l.spine_head().as_var();
    const Var& y = r.spine_head().as_var();
    auto px = pattern_args(l, config_);
    auto py = pattern_args(r, config_);

    if (x.same(y)) {
      if (!px || !py || px->size() != py->size()) return false;
      std::vector<Term> kept;
      std::vector<Ty> kept_tys;
      const int n = static_cast<int>(px->size());
      for (int i = 0; i < n; ++i) {
        if ((*px)[i].same((*py)[i])) {
          kept.push_back(Term::bound(n - i));
          kept_tys.push_back((*px)[i].ty);
        }
      }
      Var z = fresh_like(x, x.ts, Ty::curry(kept_tys, x.ty.result()));
      bind(x, Term::lam(binders_for(*px), Term::app(Term::var(z), kept)));
      return true;
    }

    if (px && py) {
      bool y_first = prefer(config_, y) || !prefer(config_, x);
      if (y_first) {
        if (bind_direct(x, *px, y, *py) || bind_direct(y, *py, x, *px)) return true;
      } else {
        if (bind_direct(y, *py, x, *px) || bind_direct(x, *px, y, *py)) return true;
      }
      // General case: both become a fresh variable over the shared atoms.
      std::vector<Var> common;
      for (const auto& a : *px) {
        if (position(*py, a) >= 0 || a.ts <= y.ts) common.push_back(a);
      }
      for (const auto& b : *py) {
        if (position(*px, b) < 0 && b.ts <= x.ts) common.push_back(b);
      }
      std::vector<Ty> tys;
      for (const auto& c : common) tys.push_back(c.ty);
      const Var& keep = prefer(config_, x) ? y : x;
      Var z = fresh_like(keep, std::min(x.ts, y.ts), Ty::curry(tys, x.ty.result()));
      bind(x, Term::lam(binders_for(*px),
                        Term::app(Term::var(z), map_atoms(common, *px))));
      bind(y, Term::lam(binders_for(*py),
                        Term::app(Term::var(z), map_atoms(common, *py))));
      return true;
    }
    if (px) {
      if (auto body = abstract(x, *px, r)) {
        bind(x, Term::lam(binders_for(*px), *body));
        return true;
      }
    }
    if (py) {
      if (auto body = abstract(y, *py, l)) {
        bind(y, Term::lam(binders_for(*py), *body));
        return true;
      }
    }
    return false;
  }

  // target := \ target_args. source source_args, when every source atom is
  // available to target.
  bool bind_direct(const Var& source, const std::vector<Var>& source_args,
                   const Var& target, const std::vector<Var>& target_args) {
    if (!sees(target, source)) return false;
    for (const auto& a : source_args) {
      if (position(target_args, a) < 0 && a.ts > target.ts) return false;
    }
    bind(target, Term::lam(binders_for(target_args),
                           Term::app(Term::var(source),
                                     map_atoms(source_args, target_args))));
    return true;
  }

  // Atoms as they appear under \ binders.
  static std::vector<Term> map_atoms(const std::vector<Var>& atoms,
                                     const std::vector<Var>& binders) {
    const int n = static_cast<int>(binders.size());
    std::vector<Term> out;
    for (const auto& a : atoms) {
      int p = position(binders, a);
      out.push_back(p >= 0 ? Term::bound(n - p) : Term::var(a));
    }
    return out;
  }

  bool sees(const Var& v, const Var& atom) const {
    return atom.ts <= v.ts || (config_.absorbs && config_.absorbs(v, atom));
  }

  Var fresh_like(const Var& base, int ts, Ty ty) {
    Var v = base;
    v.name = base.tag == Tag::kLogic ? names_.fresh_logic() : names_.fresh(base.name);
    v.ts = ts;
    v.ty = std::move(ty);
    return v;
  }

  void bind(const Var& x, const Term& t) {
    Term value = sigma_.apply(t);
    if (occurs_var(x, value)) throw UnifyFailure{"occurs check on " + x.name};
    sigma_.bind(x.name, value);
  }

  // Body of the solution for x pat = t, to be placed under |pat| binders.
  // nullopt means the equation must wait; definite failures throw.
  std::optional<Term> abstract(const Var& x, const std::vector<Var>& pat,
                               const Term& t) {
    Abstraction a{this, x, pat};
    return a.walk(t, 0, true);
  }

  struct Abstraction {
    Unifier* self;
    const Var& x;
    const std::vector<Var>& pat;

    std::optional<Term> walk(const Term& t, int depth, bool rigid) {
      switch (t.kind()) {
        case Term::Kind::kBound:
          return t;
        case Term::Kind::kLam: {
          auto body =
              walk(t.body(), depth + static_cast<int>(t.binders().size()), rigid);
          if (!body) return std::nullopt;
          return Term::lam(t.binders(), *body);
        }
        case Term::Kind::kVar:
        case Term::Kind::kApp:
          break;
      }
      const Term& head = t.spine_head();
      std::vector<Term> args = t.spine_args();
      if (head.is_bound()) return walk_args(head, args, depth, rigid);

      const Var& hv = head.as_var();
      if (instantiable(self->config_, hv)) {
        if (self->sigma_.binds(hv.name)) {
          return walk(self->sigma_.apply(t), depth, rigid);
        }
        if (hv.same(x)) {
          if (rigid) throw UnifyFailure{"occurs check on " + x.name};
          return std::nullopt;
        }
        return walk_flex(hv, args, depth, rigid);
      }
      int p = position(pat, hv);
      if (p >= 0) {
        Term nh = Term::bound(depth + static_cast<int>(pat.size()) - p);
        return walk_args(nh, args, depth, rigid);
      }
      if (self->sees(x, hv)) return walk_args(head, args, depth, rigid);
      if (rigid) {
        throw UnifyFailure{"variable " + x.name + " cannot depend on " + hv.name};
      }
      return std::nullopt;
    }

    std::optional<Term> walk_args(const Term& head, const std::vector<Term>& args,
                                  int depth, bool rigid) {
      std::vector<Term> out;
      out.reserve(args.size());
      for (const auto& a : args) {
        auto r = walk(a, depth, rigid);
        if (!r) return std::nullopt;
        out.push_back(std::move(*r));
      }
      return Term::app(head, std::move(out));
    }

    std::optional<Term> walk_flex(const Var& y, const std::vector<Term>& args,
                                  int depth, bool rigid) {
      const bool lower = !self->sees(x, y);
      // Pattern check relative to y, allowing variables bound inside t.
      bool pattern = true;
      std::vector<Term> atoms;
      for (const auto& raw : args) {
        Term a = eta_contract(raw);
        bool ok = false;
        if (a.is_bound()) {
          ok = a.index() <= depth;
        } else if (a.is_var()) {
          const Var& v = a.as_var();
          ok = !instantiable(self->config_, v) && v.ts > y.ts;
        }
        for (const auto& o : atoms) {
          if (ok && same_term(o, a)) ok = false;
        }
        if (!ok) {
          pattern = false;
          break;
        }
        atoms.push_back(a);
      }

      if (!pattern) {
        std::vector<Term> out;
        for (const auto& a : args) {
          auto r = walk(a, depth, false);
          if (!r) return std::nullopt;
          out.push_back(std::move(*r));
        }
        Var target = y;
        if (lower) {
          target = self->fresh_like(y, x.ts, y.ty);
          self->bind(y, Term::var(target));
        }
        return Term::app(Term::var(target), std::move(out));
      }

      std::vector<int> keep;
      std::vector<Term> mapped;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Term& a = atoms[i];
        if (a.is_bound()) {
          keep.push_back(static_cast<int>(i));
          mapped.push_back(a);
          continue;
        }
        const Var& v = a.as_var();
        int p = position(pat, v);
        if (p >= 0) {
          keep.push_back(static_cast<int>(i));
          mapped.push_back(Term::bound(depth + static_cast<int>(pat.size()) - p));
        } else if (self->sees(x, v)) {
          keep.push_back(static_cast<int>(i));
          mapped.push_back(a);
        }
      }
      if (keep.size() == atoms.size() && !lower) {
        return Term::app(Term::var(y), std::move(mapped));
      }
      // Prune the arguments x cannot see and/or lower y's timestamp.
      const auto arg_tys = y.ty.arg_types();
      const int m = static_cast<int>(atoms.size());
      Ty result = y.ty;
      for (int i = 0; i < m; ++i) result = result.cod();
      std::vector<Ty> kept_tys;
      std::vector<Term> kept_vars;
      for (int i : keep) {
        kept_tys.push_back(arg_tys[static_cast<std::size_t>(i)]);
        kept_vars.push_back(Term::bound(m - i));
      }
      Var pruned = self->fresh_like(y, lower ? std::min(y.ts, x.ts) : y.ts,
                                    Ty::curry(kept_tys, result));
      std::vector<Term::Binder> bs;
      for (int i = 0; i < m; ++i) bs.push_back({"z", arg_tys[static_cast<std::size_t>(i)]});
      self->bind(y, Term::lam(std::move(bs),
                              Term::app(Term::var(pruned), std::move(kept_vars))));
      (void)rigid;
      return Term::app(Term::var(pruned), std::move(mapped));
    }
  };

  const UnifyConfig& config_;
  NameSupply& names_;
  Subst sigma_;
};

}  // namespace

bool is_pattern(const Term& t, const UnifyConfig& config) {
  if (!is_flex(t, config)) return false;
  return pattern_args(t, config).has_value();
}

UnifyResult unify(const std::vector<Equation>& eqs, const UnifyConfig& config,
                  NameSupply& names, const Subst& initial) {
  Unifier u(config, names, initial);
  return u.run(eqs);
}

UnifyResult unify(const Term& a, const Term& b, const UnifyConfig& config,
                  NameSupply& names, const Subst& initial) {
  return unify(std::vector<Equation>{{a, b}}, config, names, initial);
}

}  // namespace nabla
