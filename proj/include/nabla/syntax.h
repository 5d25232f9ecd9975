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

// Parse trees for terms, formulas, and the commands of .sig, .mod and .thm
// files. Every node records the source span it was read from.

#ifndef NABLA_SYNTAX_H_
#define NABLA_SYNTAX_H_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nabla/formula.h"
#include "nabla/term.h"

namespace nabla {

struct Span {
  std::string file;
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  std::string str() const;
};

// Any user-facing error: syntax, typing, or tactic failure.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg, std::optional<Span> span = std::nullopt)
      : std::runtime_error(msg), span_(std::move(span)) {}
  const std::optional<Span>& span() const { return span_; }

 private:
  std::optional<Span> span_;
};

struct PTerm;
using PTermPtr = std::shared_ptr<const PTerm>;

struct PTerm {
  enum class Kind { kId, kApp, kLam };
  Kind kind = Kind::kId;
  Span span;
  std::string name;        // identifier, or binder of kLam
  std::optional<Ty> ann;   // `(X:ty)` or `x:ty\ body`
  PTermPtr head;           // kApp
  std::vector<PTermPtr> args;
  PTermPtr body;           // kLam
};

struct PBinder {
  std::string name;
  std::optional<Ty> ann;
};

struct PFormula;
using PFormulaPtr = std::shared_ptr<const PFormula>;

struct PFormula {
  enum class Kind { kTrue, kFalse, kEq, kAnd, kOr, kImp, kBinding, kAtom, kObj };
  Kind kind = Kind::kTrue;
  Span span;
  Quant quant = Quant::kForall;
  std::vector<PBinder> vars;     // kBinding
  PTermPtr a;                    // kEq lhs, kAtom, kObj goal
  PTermPtr b;                    // kEq rhs
  std::vector<PTermPtr> ctx;     // kObj
  PFormulaPtr l;                 // kAnd/kOr/kImp left, kBinding body
  PFormulaPtr r;
  Restriction restriction;
};

struct PClause {
  Span span;
  std::vector<PBinder> nablas;
  PTermPtr head;
  PFormulaPtr body;  // null for facts
};

struct Tactic {
  enum class Kind {
    kIntros,
    kInduction,
    kCase,
    kApply,
    kSearch,
    kSplit,
    kLeft,
    kRight,
    kExists,
    kAssert,
    kUnfold,
    kInst,
    kCut,
    kMonotone,
    kClear,
    kUndo,
    kAbort,
  };
  Kind kind = Kind::kIntros;
  std::vector<std::string> names;  // intros names, apply arguments, clear
  int number = 0;                  // induction index
  std::optional<int> depth;        // search depth
  std::string target;              // case/apply/inst/cut/monotone subject
  std::string other;               // cut: second hypothesis
  bool keep = false;
  std::vector<std::pair<std::string, PTermPtr>> withs;
  PTermPtr term;          // exists, monotone context
  PFormulaPtr formula;    // assert
};

struct Command {
  enum class Kind {
    kSpecification,
    kKind,
    kType,
    kDefine,
    kTheorem,
    kQuery,
    kSet,
    kQuit,
    kTactic,
  };
  Kind kind = Kind::kQuit;
  Span span;
  std::string text;  // source text, for reports

  std::vector<std::string> names;  // Kind/Type
  Ty ty;                           // Type
  std::vector<std::pair<std::string, Ty>> preds;  // Define
  std::vector<PClause> clauses;                   // Define
  std::string name;          // Theorem name, Specification path, Set key
  std::string value;         // Set value
  PFormulaPtr formula;       // Theorem, Query
  Tactic tactic;
};

// .sig declarations.
struct SigDecl {
  enum class Kind { kKind, kType };
  Kind kind = Kind::kKind;
  Span span;
  std::vector<std::string> names;
  Ty ty;
};

// .mod clause `head :- g1, ..., gn.`
struct ModClause {
  Span span;
  PTermPtr head;
  std::vector<PTermPtr> body;
};

PTermPtr parse_term(std::string_view text, const std::string& file = "");
PFormulaPtr parse_formula(std::string_view text, const std::string& file = "");
Ty parse_ty(std::string_view text);
std::vector<Command> parse_commands(std::string_view text, const std::string& file = "");
Command parse_command(std::string_view text, const std::string& file = "");
std::vector<SigDecl> parse_sig(std::string_view text, const std::string& file = "");
std::vector<ModClause> parse_mod(std::string_view text, const std::string& file = "");

// Splits text into period-terminated command chunks (comments stripped at
// token level). Trailing text without a terminator is returned in `rest`.
std::vector<std::string> split_commands(std::string_view text, std::string* rest);

// Printers producing text that reparses to an equal tree.
std::string str(const PTerm& t);
std::string str(const PFormula& f);
std::string str(const Tactic& t);
std::string str(const Command& c);

// Structural equality ignoring spans and source text.
bool same_tree(const PTerm& a, const PTerm& b);
bool same_tree(const PFormula& a, const PFormula& b);
bool same_tree(const Command& a, const Command& b);

}  // namespace nabla

#endif  // NABLA_SYNTAX_H_
