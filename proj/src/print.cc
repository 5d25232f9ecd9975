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

#include "nabla/print.h"

#include <set>
#include <vector>

namespace nabla {

namespace {

// Precedence levels shared by the term and formula printers. Lower binds
// looser; a printed fragment that is "open" on the right (an abstraction or
// a quantifier) must be parenthesized unless it sits in a rightmost slot.
enum Prec {
  kPrecBinder = 0,
  kPrecImp = 1,
  kPrecAnd = 2,
  kPrecCons = 3,
  kPrecApp = 4,
  kPrecAtom = 5,
};

struct Doc {
  std::string text;
  int prec = kPrecAtom;
  bool open = false;
};

bool needs_parens(const Doc& d, int min_prec, bool rightmost) {
  if (d.open) return !rightmost;
  return d.prec < min_prec;
}

std::string wrap(const Doc& d, int min_prec, bool rightmost) {
  if (needs_parens(d, min_prec, rightmost)) return "(" + d.text + ")";
  return d.text;
}

// Whether the rightmost operand leaves the enclosing fragment open.
bool open_after(const Doc& d, int min_prec) { return !needs_parens(d, min_prec, true) && d.open; }

class TermPrinter {
 public:
  TermPrinter(const PrintOptions& opts, std::set<std::string> used)
      : opts_(opts), used_(std::move(used)) {}

  Doc print(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        return {t.as_var().name};
      case Term::Kind::kBound: {
        const int i = t.index();
        if (i >= 1 && static_cast<std::size_t>(i) <= scope_.size()) {
          return {scope_[scope_.size() - static_cast<std::size_t>(i)]};
        }
        return {"#" + std::to_string(i)};
      }
      case Term::Kind::kLam:
        return print_lam(t);
      case Term::Kind::kApp:
        return print_app(t);
    }
    return {"?"};
  }

 private:
  Doc print_lam(const Term& t) {
    std::string out;
    const std::size_t saved = scope_.size();
    for (const auto& b : t.binders()) {
      std::string name = pick(b.hint.empty() ? "x" : b.hint);
      out += name;
      if (opts_.annotate) out += ":" + print_ty(b.ty);
      out += "\\ ";
      scope_.push_back(name);
    }
    Doc body = print(t.body());
    out += body.text;
    scope_.resize(saved);
    return {out, kPrecBinder, true};
  }

  std::string pick(const std::string& hint) {
    std::string base = hint;
    auto taken = [&](const std::string& n) {
      if (used_.count(n)) return true;
      for (const auto& s : scope_) {
        if (s == n) return true;
      }
      return false;
    };
    if (!taken(base) && !is_nominal_name(base)) return base;
    std::string root = base;
    while (root.size() > 1 && std::isdigit(static_cast<unsigned char>(root.back()))) {
      root.pop_back();
    }
    for (int i = 1;; ++i) {
      std::string cand = root + std::to_string(i);
      if (!taken(cand) && !is_nominal_name(cand)) return cand;
    }
  }

  Doc print_app(const Term& t) {
    const Term& h = t.head();
    const auto& args = t.args();
    if (h.is_var() && h.as_var().tag == Tag::kConstant && args.size() == 2) {
      const std::string& n = h.as_var().name;
      int prec = -1;
      if (n == builtin::kImp) prec = kPrecImp;
      if (n == builtin::kAnd) prec = kPrecAnd;
      if (n == builtin::kCons) prec = kPrecCons;
      if (prec >= 0) {
        // All three are right associative.
        Doc l = print(args[0]);
        Doc r = print(args[1]);
        std::string text = wrap(l, prec + 1, false) + " " + n + " " + wrap(r, prec, true);
        return {text, prec, open_after(r, prec)};
      }
    }
    Doc hd = print(h);
    std::string text = wrap(hd, kPrecAtom, false);
    bool open = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
      Doc a = print(args[i]);
      const bool last = i + 1 == args.size();
      if (last && args[i].is_lam() && h.is_var() && h.as_var().name == builtin::kPi) {
        text += " " + a.text;
        open = true;
      } else {
        text += " " + wrap(a, kPrecAtom, false);
      }
    }
    return {text, kPrecApp, open};
  }

  const PrintOptions& opts_;
  std::set<std::string> used_;
  std::vector<std::string> scope_;
};

std::string term_text(const Term& t, const PrintOptions& opts,
                      const std::set<std::string>& used) {
  TermPrinter p(opts, used);
  return p.print(t).text;
}

class FormulaPrinter {
 public:
  FormulaPrinter(const PrintOptions& opts, std::set<std::string> used)
      : opts_(opts), used_(std::move(used)) {}

  Doc print(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::kTrue:
        return {"true"};
      case Formula::Kind::kFalse:
        return {"false"};
      case Formula::Kind::kEq:
        return {term(f.lhs()) + " = " + term(f.rhs()), kPrecAtom, false};
      case Formula::Kind::kAnd:
        return binary(f, " /\\ ", 3);
      case Formula::Kind::kOr:
        return binary(f, " \\/ ", 2);
      case Formula::Kind::kImp: {
        Doc l = print(f.left());
        Doc r = print(f.right());
        return {wrap(l, 2, false) + " -> " + wrap(r, 1, true), 1, open_after(r, 1)};
      }
      case Formula::Kind::kBinding: {
        std::string text;
        switch (f.quant()) {
          case Quant::kForall:
            text = "forall";
            break;
          case Quant::kExists:
            text = "exists";
            break;
          case Quant::kNabla:
            text = "nabla";
            break;
        }
        for (const auto& v : f.vars()) {
          if (opts_.annotate) {
            text += " (" + v.name + ":" + print_ty(v.ty) + ")";
          } else {
            text += " " + v.name;
          }
        }
        text += ", " + print(f.body()).text;
        return {text, kPrecBinder, true};
      }
      case Formula::Kind::kPred:
        return {term(f.atom()) + restriction(f.restriction())};
      case Formula::Kind::kObj: {
        std::string text = "{";
        for (std::size_t i = 0; i < f.context().size(); ++i) {
          if (i > 0) text += ", ";
          text += term(f.context()[i]);
        }
        if (!f.context().empty()) text += " |- ";
        text += term(f.goal()) + "}" + restriction(f.restriction());
        return {text};
      }
    }
    return {"?"};
  }

 private:
  // Left-associative connectives.
  Doc binary(const Formula& f, const std::string& op, int prec) {
    Doc l = print(f.left());
    Doc r = print(f.right());
    return {wrap(l, prec, false) + op + wrap(r, prec + 1, true), prec,
            open_after(r, prec + 1)};
  }

  std::string term(const Term& t) { return term_text(t, opts_, used_); }

  std::string restriction(const Restriction& r) const {
    if (r.is_none() || !opts_.restrictions) return "";
    return " " + r.str();
  }

  const PrintOptions& opts_;
  std::set<std::string> used_;
};

}  // namespace

std::string print_ty(const Ty& ty) {
  if (ty.is_arrow()) {
    std::string dom = print_ty(ty.dom());
    if (ty.dom().is_arrow()) dom = "(" + dom + ")";
    return dom + " -> " + print_ty(ty.cod());
  }
  if (ty.is_var()) return "'" + std::to_string(ty.var_id());
  return ty.name();
}

std::string print_term(const Term& t, const PrintOptions& opts) {
  return term_text(normalize(t), opts, var_names(t));
}

std::string print_formula(const Formula& f, const PrintOptions& opts) {
  FormulaPrinter p(opts, formula_names(f));
  return p.print(f).text;
}

}  // namespace nabla
