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

#include <array>
#include <cctype>
#include <map>

#include "nabla/syntax.h"

namespace nabla {

std::string Span::str() const {
  std::string out = file.empty() ? "" : file + ":";
  out += std::to_string(line) + ":" + std::to_string(col);
  return out;
}

namespace {

struct Token {
  enum class Kind { kId, kNum, kString, kSym, kEof };
  Kind kind = Kind::kEof;
  std::string text;
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;
  std::size_t begin = 0;
  std::size_t end = 0;
};

constexpr std::array<const char*, 20> kSymbols = {
    ":=", ":-", "::", "->", "=>", "|-", "/\\", "\\/", "\\", "(",
    ")",  "{",  "}",  ",",  ".",  ":",  ";",   "=",   "*",  "@"};

bool id_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '?';
}

bool id_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' ||
         c == '?';
}

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.col = col_;
      t.begin = pos_;
      if (pos_ >= src_.size()) {
        t.kind = Token::Kind::kEof;
        t.end = pos_;
        t.end_line = line_;
        t.end_col = col_;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (id_start(c)) {
        t.kind = Token::Kind::kId;
        while (pos_ < src_.size() && id_char(src_[pos_])) advance();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::kNum;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          advance();
        }
      } else if (c == '"') {
        t.kind = Token::Kind::kString;
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          throw Error("unterminated string", here(t));
        }
        advance();
      } else if (c == '&') {
        t.kind = Token::Kind::kSym;
        advance();
      } else {
        bool matched = false;
        for (const char* s : kSymbols) {
          std::string_view sv(s);
          if (src_.substr(pos_, sv.size()) == sv) {
            for (std::size_t i = 0; i < sv.size(); ++i) advance();
            t.kind = Token::Kind::kSym;
            matched = true;
            break;
          }
        }
        if (!matched) {
          throw Error(std::string("unexpected character '") + c + "'", here(t));
        }
      }
      t.end = pos_;
      t.end_line = line_;
      t.end_col = col_;
      t.text = std::string(src_.substr(t.begin, t.end - t.begin));
      if (t.kind == Token::Kind::kString) t.text = t.text.substr(1, t.text.size() - 2);
      out.push_back(std::move(t));
    }
  }

 private:
  Span here(const Token& t) const {
    Span s;
    s.file = file_;
    s.line = t.line;
    s.col = t.col;
    s.end_line = line_;
    s.end_col = col_;
    return s;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    for (;;) {
      if (pos_ >= src_.size()) return;
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        Token start;
        start.line = line_;
        start.col = col_;
        advance();
        advance();
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
          advance();
        }
        if (pos_ + 1 >= src_.size()) throw Error("unterminated comment", here(start));
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_keyword(const std::string& s) {
  return s == "forall" || s == "exists" || s == "nabla" || s == "true" || s == "false";
}

// Thrown internally to backtrack out of a speculative parse.
struct Backtrack {};

class Parser {
 public:
  Parser(std::string_view src, std::string file)
      : src_(src), file_(file), toks_(Lexer(src, file).run()) {}

  bool at_end() const { return peek().kind == Token::Kind::kEof; }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

  // Types.

  Ty ty() {
    Ty dom = ty_atom();
    if (accept("->")) return Ty::arrow(dom, ty());
    return dom;
  }

  Ty ty_atom() {
    if (accept("(")) {
      Ty t = ty();
      expect(")");
      return t;
    }
    return Ty::base(expect_id("type"));
  }

  // Terms.

  PTermPtr term() {
    if (lam_start()) return lam();
    if (peek().kind == Token::Kind::kId && is_sym(":", 1) && !is_keyword(peek().text)) {
      // x:ty\ body
      const Token start = peek();
      std::string name = next().text;
      expect(":");
      Ty t = ty();
      if (!is_sym("\\")) fail("expected '\\' after annotated binder");
      next();
      auto n = std::make_shared<PTerm>();
      n->kind = PTerm::Kind::kLam;
      n->name = name;
      n->ann = t;
      n->body = term();
      n->span = span_from(start);
      return n;
    }
    return imp_term();
  }

  PTermPtr formula_term() { return term(); }

  PFormulaPtr formula() {
    if (binder_start()) return binding();
    return imp_formula();
  }

  // Commands.

  Command command() {
    const Token start = peek();
    Command c;
    if (peek().kind != Token::Kind::kId) fail("expected a command");
    const std::string kw = peek().text;
    if (kw == "Specification") {
      next();
      if (peek().kind != Token::Kind::kString) fail("expected a quoted specification name");
      c.kind = Command::Kind::kSpecification;
      c.name = next().text;
    } else if (kw == "Kind") {
      next();
      c.kind = Command::Kind::kKind;
      c.names = id_list();
      if (expect_id("'type'") != "type") fail_at(prev(), "expected 'type'");
    } else if (kw == "Type") {
      next();
      c.kind = Command::Kind::kType;
      c.names = id_list();
      c.ty = ty();
    } else if (kw == "Define") {
      next();
      c.kind = Command::Kind::kDefine;
      do {
        std::string name = expect_id("predicate name");
        expect(":");
        c.preds.emplace_back(name, ty());
      } while (accept(","));
      if (accept_id("by")) {
        do {
          c.clauses.push_back(clause());
        } while (accept(";"));
      }
    } else if (kw == "Theorem" || kw == "Lemma") {
      next();
      c.kind = Command::Kind::kTheorem;
      c.name = expect_id("theorem name");
      expect(":");
      c.formula = formula();
    } else if (kw == "Query") {
      next();
      c.kind = Command::Kind::kQuery;
      c.formula = formula();
    } else if (kw == "Set") {
      next();
      c.kind = Command::Kind::kSet;
      c.name = expect_id("option name");
      if (peek().kind != Token::Kind::kId && peek().kind != Token::Kind::kNum) {
        fail("expected an option value");
      }
      c.value = next().text;
    } else if (kw == "Quit") {
      next();
      c.kind = Command::Kind::kQuit;
    } else {
      c.kind = Command::Kind::kTactic;
      c.tactic = tactic();
    }
    expect(".");
    c.span = span_from(start);
    c.text = std::string(src_.substr(start.begin, prev().end - start.begin));
    return c;
  }

  std::vector<SigDecl> sig() {
    std::vector<SigDecl> out;
    while (!at_end()) {
      const Token start = peek();
      const std::string kw = expect_id("declaration");
      if (kw == "sig" || kw == "module") {
        expect_id("name");
        expect(".");
        continue;
      }
      if (kw == "end") {
        accept(".");
        continue;
      }
      SigDecl d;
      if (kw == "kind") {
        d.kind = SigDecl::Kind::kKind;
        d.names = id_list();
        if (expect_id("'type'") != "type") fail_at(prev(), "expected 'type'");
      } else if (kw == "type") {
        d.kind = SigDecl::Kind::kType;
        d.names = id_list();
        d.ty = ty();
      } else {
        fail_at(start, "expected 'kind' or 'type'");
      }
      expect(".");
      d.span = span_from(start);
      out.push_back(std::move(d));
    }
    return out;
  }

  std::vector<ModClause> mod() {
    std::vector<ModClause> out;
    while (!at_end()) {
      const Token start = peek();
      if (peek().kind == Token::Kind::kId && peek().text == "module" &&
          peek(1).kind == Token::Kind::kId && is_sym(".", 2)) {
        next();
        next();
        next();
        continue;
      }
      if (peek().kind == Token::Kind::kId && peek().text == "end" && is_sym(".", 1)) {
        next();
        next();
        continue;
      }
      ModClause c;
      c.head = term();
      if (accept(":-")) {
        do {
          c.body.push_back(term());
        } while (accept(","));
      }
      expect(".");
      c.span = span_from(start);
      out.push_back(std::move(c));
    }
    return out;
  }

  std::vector<std::string> split() {
    std::vector<std::string> out;
    std::size_t begin = toks_[0].begin;
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind == Token::Kind::kSym && t.text == ".") {
        out.emplace_back(src_.substr(begin, t.end - begin));
        begin = toks_[i + 1].begin;
      }
    }
    rest_begin_ = begin;
    return out;
  }

  std::size_t rest_begin() const { return rest_begin_; }

 private:
  // Token helpers.

  const Token& peek(std::size_t k = 0) const {
    const std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool is_sym(const char* s, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == Token::Kind::kSym && t.text == s;
  }

  bool accept(const char* s) {
    if (!is_sym(s)) return false;
    next();
    return true;
  }

  bool accept_id(const char* s) {
    if (peek().kind == Token::Kind::kId && peek().text == s) {
      next();
      return true;
    }
    return false;
  }

  void expect(const char* s) {
    if (!accept(s)) fail(std::string("expected '") + s + "'");
  }

  std::string expect_id(const char* what) {
    if (peek().kind != Token::Kind::kId) fail(std::string("expected ") + what);
    return next().text;
  }

  int expect_num(const char* what) {
    if (peek().kind != Token::Kind::kNum) fail(std::string("expected ") + what);
    return std::stoi(next().text);
  }

  std::vector<std::string> id_list() {
    std::vector<std::string> out;
    do {
      out.push_back(expect_id("identifier"));
    } while (accept(","));
    return out;
  }

  Span span_from(const Token& start) const {
    Span s;
    s.file = file_;
    s.line = start.line;
    s.col = start.col;
    const Token& end = prev();
    s.end_line = end.end_line;
    s.end_col = end.end_col;
    return s;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }

  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    if (speculating_ > 0) throw Backtrack{};
    Span s;
    s.file = file_;
    s.line = t.line;
    s.col = t.col;
    s.end_line = t.end_line;
    s.end_col = t.end_col;
    std::string where = t.kind == Token::Kind::kEof ? "end of input" : "'" + t.text + "'";
    throw Error(msg + " at " + where, s);
  }

  // Terms.

  bool lam_start() const {
    return peek().kind == Token::Kind::kId && is_sym("\\", 1) && !is_keyword(peek().text);
  }

  bool atom_start() const {
    const Token& t = peek();
    if (t.kind == Token::Kind::kId) return !is_keyword(t.text);
    return t.kind == Token::Kind::kSym && t.text == "(";
  }

  PTermPtr lam() {
    const Token start = peek();
    auto n = std::make_shared<PTerm>();
    n->kind = PTerm::Kind::kLam;
    n->name = next().text;
    expect("\\");
    n->body = term();
    n->span = span_from(start);
    return n;
  }

  PTermPtr operand_or_lam(PTermPtr (Parser::*level)()) {
    if (lam_start()) return lam();
    return (this->*level)();
  }

  PTermPtr infix(const Token& start, const std::string& op, PTermPtr l, PTermPtr r) {
    auto h = std::make_shared<PTerm>();
    h->kind = PTerm::Kind::kId;
    h->name = op;
    h->span = span_from(start);
    auto n = std::make_shared<PTerm>();
    n->kind = PTerm::Kind::kApp;
    n->head = h;
    n->args = {std::move(l), std::move(r)};
    n->span = span_from(start);
    return n;
  }

  PTermPtr imp_term() {
    const Token start = peek();
    PTermPtr l = and_term();
    if (accept("=>")) return infix(start, "=>", l, operand_or_lam(&Parser::imp_term));
    return l;
  }

  PTermPtr and_term() {
    const Token start = peek();
    PTermPtr l = cons_term();
    if (accept("&")) return infix(start, "&", l, operand_or_lam(&Parser::and_term));
    return l;
  }

  PTermPtr cons_term() {
    const Token start = peek();
    PTermPtr l = app_term();
    if (accept("::")) return infix(start, "::", l, operand_or_lam(&Parser::cons_term));
    return l;
  }

  PTermPtr app_term() {
    const Token start = peek();
    PTermPtr h = atom();
    std::vector<PTermPtr> args;
    for (;;) {
      if (lam_start()) {
        args.push_back(lam());
        break;
      }
      if (!atom_start()) break;
      args.push_back(atom());
    }
    if (args.empty()) return h;
    auto n = std::make_shared<PTerm>();
    n->kind = PTerm::Kind::kApp;
    n->head = h;
    n->args = std::move(args);
    n->span = span_from(start);
    return n;
  }

  PTermPtr atom() {
    const Token start = peek();
    if (accept("(")) {
      if (peek().kind == Token::Kind::kId && is_sym(":", 1) && !is_keyword(peek().text)) {
        std::string name = next().text;
        next();
        Ty t = ty();
        if (accept(")")) {
          auto n = std::make_shared<PTerm>();
          n->kind = PTerm::Kind::kId;
          n->name = name;
          n->ann = t;
          n->span = span_from(start);
          return n;
        }
        expect("\\");
        auto n = std::make_shared<PTerm>();
        n->kind = PTerm::Kind::kLam;
        n->name = name;
        n->ann = t;
        n->body = term();
        expect(")");
        n->span = span_from(start);
        return n;
      }
      PTermPtr t = term();
      expect(")");
      return t;
    }
    if (peek().kind != Token::Kind::kId || is_keyword(peek().text)) fail("expected a term");
    auto n = std::make_shared<PTerm>();
    n->kind = PTerm::Kind::kId;
    n->name = next().text;
    n->span = span_from(start);
    return n;
  }

  // Formulas.

  bool binder_start() const {
    const Token& t = peek();
    return t.kind == Token::Kind::kId &&
           (t.text == "forall" || t.text == "exists" || t.text == "nabla");
  }

  std::vector<PBinder> binders() {
    std::vector<PBinder> out;
    for (;;) {
      if (accept("(")) {
        PBinder b;
        b.name = expect_id("variable");
        expect(":");
        b.ann = ty();
        expect(")");
        out.push_back(std::move(b));
      } else if (peek().kind == Token::Kind::kId && !is_keyword(peek().text)) {
        out.push_back(PBinder{next().text, std::nullopt});
      } else {
        break;
      }
    }
    if (out.empty()) fail("expected a bound variable");
    return out;
  }

  PFormulaPtr binding() {
    const Token start = peek();
    auto n = std::make_shared<PFormula>();
    n->kind = PFormula::Kind::kBinding;
    const std::string q = next().text;
    n->quant = q == "forall" ? Quant::kForall : q == "exists" ? Quant::kExists : Quant::kNabla;
    n->vars = binders();
    expect(",");
    n->l = formula();
    n->span = span_from(start);
    return n;
  }

  PFormulaPtr connective(const Token& start, PFormula::Kind k, PFormulaPtr l, PFormulaPtr r) {
    auto n = std::make_shared<PFormula>();
    n->kind = k;
    n->l = std::move(l);
    n->r = std::move(r);
    n->span = span_from(start);
    return n;
  }

  PFormulaPtr operand_or_binding(PFormulaPtr (Parser::*level)()) {
    if (binder_start()) return binding();
    return (this->*level)();
  }

  PFormulaPtr imp_formula() {
    const Token start = peek();
    PFormulaPtr l = or_formula();
    if (accept("->")) {
      return connective(start, PFormula::Kind::kImp, l,
                        operand_or_binding(&Parser::imp_formula));
    }
    return l;
  }

  PFormulaPtr or_formula() {
    const Token start = peek();
    PFormulaPtr l = and_formula();
    while (accept("\\/")) {
      l = connective(start, PFormula::Kind::kOr, l, operand_or_binding(&Parser::and_formula));
    }
    return l;
  }

  PFormulaPtr and_formula() {
    const Token start = peek();
    PFormulaPtr l = prim_formula();
    while (accept("/\\")) {
      l = connective(start, PFormula::Kind::kAnd, l, operand_or_binding(&Parser::prim_formula));
    }
    return l;
  }

  bool term_continues() const {
    if (atom_start() || lam_start()) return true;
    return is_sym("=") || is_sym("::") || is_sym("=>") || is_sym("&");
  }

  Restriction restriction() {
    int stars = 0;
    int ats = 0;
    while (is_sym("*") || is_sym("@")) {
      if (next().text == "*") {
        ++stars;
      } else {
        ++ats;
      }
    }
    if (stars > 0 && ats > 0) fail_at(prev(), "mixed restriction markers");
    if (stars > 0) return Restriction::smaller(stars);
    if (ats > 0) return Restriction::equal(ats);
    return Restriction::none();
  }

  PFormulaPtr prim_formula() {
    const Token start = peek();
    auto n = std::make_shared<PFormula>();
    if (accept_id("true")) {
      n->kind = PFormula::Kind::kTrue;
      n->span = span_from(start);
      return n;
    }
    if (accept_id("false")) {
      n->kind = PFormula::Kind::kFalse;
      n->span = span_from(start);
      return n;
    }
    if (accept("{")) {
      n->kind = PFormula::Kind::kObj;
      std::vector<PTermPtr> items;
      items.push_back(term());
      while (accept(",")) items.push_back(term());
      if (accept("|-")) {
        n->ctx = std::move(items);
        n->a = term();
      } else {
        if (items.size() != 1) fail("expected '|-'");
        n->a = items[0];
      }
      expect("}");
      n->restriction = restriction();
      n->span = span_from(start);
      return n;
    }
    if (is_sym("(")) {
      const std::size_t saved = pos_;
      ++speculating_;
      try {
        next();
        PFormulaPtr f = formula();
        expect(")");
        --speculating_;
        if (!term_continues()) return f;
      } catch (const Backtrack&) {
        --speculating_;
      }
      pos_ = saved;
    }
    PTermPtr t = term();
    if (accept("=")) {
      n->kind = PFormula::Kind::kEq;
      n->a = t;
      n->b = term();
    } else {
      n->kind = PFormula::Kind::kAtom;
      n->a = t;
      n->restriction = restriction();
    }
    n->span = span_from(start);
    return n;
  }

  PClause clause() {
    const Token start = peek();
    PClause c;
    if (accept_id("nabla")) {
      c.nablas = binders();
      expect(",");
    }
    c.head = term();
    if (accept(":=")) c.body = formula();
    c.span = span_from(start);
    return c;
  }

  // Tactics.

  Tactic tactic() {
    Tactic t;
    const Token start = peek();
    const std::string kw = expect_id("tactic");
    using K = Tactic::Kind;
    if (kw == "intros") {
      t.kind = K::kIntros;
      while (peek().kind == Token::Kind::kId) t.names.push_back(next().text);
    } else if (kw == "induction") {
      t.kind = K::kInduction;
      if (!accept_id("on")) fail("expected 'on'");
      t.number = expect_num("premise number");
    } else if (kw == "case") {
      t.kind = K::kCase;
      t.target = expect_id("hypothesis name");
      if (accept("(")) {
        if (!accept_id("keep")) fail("expected 'keep'");
        expect(")");
        t.keep = true;
      }
    } else if (kw == "apply") {
      t.kind = K::kApply;
      t.target = expect_id("lemma or hypothesis name");
      if (accept_id("to")) {
        while (peek().kind == Token::Kind::kId && peek().text != "with") {
          t.names.push_back(next().text);
        }
        if (t.names.empty()) fail("expected arguments");
      }
      if (accept_id("with")) withs(t);
    } else if (kw == "search") {
      t.kind = K::kSearch;
      if (peek().kind == Token::Kind::kNum) t.depth = expect_num("depth");
    } else if (kw == "split") {
      t.kind = K::kSplit;
    } else if (kw == "left") {
      t.kind = K::kLeft;
    } else if (kw == "right") {
      t.kind = K::kRight;
    } else if (kw == "exists" || kw == "witness") {
      t.kind = K::kExists;
      t.term = term();
    } else if (kw == "assert") {
      t.kind = K::kAssert;
      t.formula = formula();
    } else if (kw == "unfold") {
      t.kind = K::kUnfold;
    } else if (kw == "inst") {
      t.kind = K::kInst;
      t.target = expect_id("hypothesis name");
      if (!accept_id("with")) fail("expected 'with'");
      withs(t);
      if (t.withs.size() != 1) fail_at(start, "inst takes exactly one binding");
    } else if (kw == "cut") {
      t.kind = K::kCut;
      t.target = expect_id("hypothesis name");
      if (!accept_id("with")) fail("expected 'with'");
      t.other = expect_id("hypothesis name");
    } else if (kw == "monotone") {
      t.kind = K::kMonotone;
      t.target = expect_id("hypothesis name");
      if (!accept_id("with")) fail("expected 'with'");
      t.term = term();
    } else if (kw == "clear") {
      t.kind = K::kClear;
      while (peek().kind == Token::Kind::kId) t.names.push_back(next().text);
      if (t.names.empty()) fail("expected hypothesis names");
    } else if (kw == "undo") {
      t.kind = K::kUndo;
    } else if (kw == "abort") {
      t.kind = K::kAbort;
    } else {
      fail_at(start, "unknown command '" + kw + "'");
    }
    return t;
  }

  void withs(Tactic& t) {
    do {
      std::string name = expect_id("variable");
      expect("=");
      t.withs.emplace_back(name, term());
    } while (accept(","));
  }

  std::string_view src_;
  std::string file_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int speculating_ = 0;
  std::size_t rest_begin_ = 0;
};

// Printing.

enum Prec { kBinder = 0, kImpP = 1, kAndP = 2, kConsP = 3, kAppP = 4, kAtomP = 5 };

struct Doc {
  std::string text;
  int prec = kAtomP;
  bool open = false;
};

bool needs_parens(const Doc& d, int min_prec, bool rightmost) {
  if (d.open) return !rightmost;
  return d.prec < min_prec;
}

std::string wrap(const Doc& d, int min_prec, bool rightmost) {
  return needs_parens(d, min_prec, rightmost) ? "(" + d.text + ")" : d.text;
}

bool open_after(const Doc& d, int min_prec) {
  return !needs_parens(d, min_prec, true) && d.open;
}

std::string ty_str(const Ty& t) {
  if (t.is_arrow()) {
    std::string dom = ty_str(t.dom());
    if (t.dom().is_arrow()) dom = "(" + dom + ")";
    return dom + " -> " + ty_str(t.cod());
  }
  return t.name();
}

Doc term_doc(const PTerm& t) {
  switch (t.kind) {
    case PTerm::Kind::kId:
      if (t.ann) return {"(" + t.name + ":" + ty_str(*t.ann) + ")"};
      return {t.name};
    case PTerm::Kind::kLam: {
      std::string text = t.name;
      if (t.ann) text += ":" + ty_str(*t.ann);
      return {text + "\\ " + term_doc(*t.body).text, kBinder, true};
    }
    case PTerm::Kind::kApp: {
      if (t.head->kind == PTerm::Kind::kId && !t.head->ann && t.args.size() == 2) {
        const std::string& n = t.head->name;
        int prec = n == "=>" ? kImpP : n == "&" ? kAndP : n == "::" ? kConsP : -1;
        if (prec >= 0) {
          Doc l = term_doc(*t.args[0]);
          Doc r = term_doc(*t.args[1]);
          return {wrap(l, prec + 1, false) + " " + n + " " + wrap(r, prec, true), prec,
                  open_after(r, prec)};
        }
      }
      std::string text = wrap(term_doc(*t.head), kAtomP, false);
      bool open = false;
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        Doc a = term_doc(*t.args[i]);
        if (i + 1 == t.args.size() && t.args[i]->kind == PTerm::Kind::kLam &&
            !t.args[i]->ann && t.head->kind == PTerm::Kind::kId && t.head->name == "pi") {
          text += " " + a.text;
          open = true;
        } else {
          text += " " + wrap(a, kAtomP, false);
        }
      }
      return {text, kAppP, open};
    }
  }
  return {"?"};
}

std::string restriction_str(const Restriction& r) {
  return r.is_none() ? "" : " " + r.str();
}

std::string binders_str(const std::vector<PBinder>& vars) {
  std::string out;
  for (const auto& v : vars) {
    if (!out.empty()) out += " ";
    out += v.ann ? "(" + v.name + ":" + ty_str(*v.ann) + ")" : v.name;
  }
  return out;
}

Doc formula_doc(const PFormula& f) {
  switch (f.kind) {
    case PFormula::Kind::kTrue:
      return {"true"};
    case PFormula::Kind::kFalse:
      return {"false"};
    case PFormula::Kind::kEq:
      return {str(*f.a) + " = " + str(*f.b)};
    case PFormula::Kind::kAtom:
      return {str(*f.a) + restriction_str(f.restriction)};
    case PFormula::Kind::kObj: {
      std::string text = "{";
      for (std::size_t i = 0; i < f.ctx.size(); ++i) {
        if (i > 0) text += ", ";
        text += str(*f.ctx[i]);
      }
      if (!f.ctx.empty()) text += " |- ";
      return {text + str(*f.a) + "}" + restriction_str(f.restriction)};
    }
    case PFormula::Kind::kAnd:
    case PFormula::Kind::kOr: {
      const bool is_and = f.kind == PFormula::Kind::kAnd;
      const int prec = is_and ? 3 : 2;
      Doc l = formula_doc(*f.l);
      Doc r = formula_doc(*f.r);
      return {wrap(l, prec, false) + (is_and ? " /\\ " : " \\/ ") + wrap(r, prec + 1, true),
              prec, open_after(r, prec + 1)};
    }
    case PFormula::Kind::kImp: {
      Doc l = formula_doc(*f.l);
      Doc r = formula_doc(*f.r);
      return {wrap(l, 2, false) + " -> " + wrap(r, 1, true), 1, open_after(r, 1)};
    }
    case PFormula::Kind::kBinding: {
      const char* q = f.quant == Quant::kForall ? "forall"
                      : f.quant == Quant::kExists ? "exists"
                                                  : "nabla";
      return {std::string(q) + " " + binders_str(f.vars) + ", " + formula_doc(*f.l).text,
              kBinder, true};
    }
  }
  return {"?"};
}

bool same_ty(const std::optional<Ty>& a, const std::optional<Ty>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

bool same_ptr(const PTermPtr& a, const PTermPtr& b) {
  if (!a || !b) return !a && !b;
  return same_tree(*a, *b);
}

bool same_fptr(const PFormulaPtr& a, const PFormulaPtr& b) {
  if (!a || !b) return !a && !b;
  return same_tree(*a, *b);
}

bool same_binders(const std::vector<PBinder>& a, const std::vector<PBinder>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !same_ty(a[i].ann, b[i].ann)) return false;
  }
  return true;
}

bool same_tactic(const Tactic& a, const Tactic& b) {
  if (a.kind != b.kind || a.names != b.names || a.number != b.number ||
      a.depth != b.depth || a.target != b.target || a.other != b.other || a.keep != b.keep ||
      a.withs.size() != b.withs.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.withs.size(); ++i) {
    if (a.withs[i].first != b.withs[i].first) return false;
    if (!same_ptr(a.withs[i].second, b.withs[i].second)) return false;
  }
  return same_ptr(a.term, b.term) && same_fptr(a.formula, b.formula);
}

}  // namespace

PTermPtr parse_term(std::string_view text, const std::string& file) {
  Parser p(text, file);
  PTermPtr t = p.term();
  p.expect_end();
  return t;
}

PFormulaPtr parse_formula(std::string_view text, const std::string& file) {
  Parser p(text, file);
  PFormulaPtr f = p.formula();
  p.expect_end();
  return f;
}

Ty parse_ty(std::string_view text) {
  Parser p(text, "");
  Ty t = p.ty();
  p.expect_end();
  return t;
}

std::vector<Command> parse_commands(std::string_view text, const std::string& file) {
  Parser p(text, file);
  std::vector<Command> out;
  while (!p.at_end()) out.push_back(p.command());
  return out;
}

Command parse_command(std::string_view text, const std::string& file) {
  Parser p(text, file);
  Command c = p.command();
  p.expect_end();
  return c;
}

std::vector<SigDecl> parse_sig(std::string_view text, const std::string& file) {
  Parser p(text, file);
  return p.sig();
}

std::vector<ModClause> parse_mod(std::string_view text, const std::string& file) {
  Parser p(text, file);
  return p.mod();
}

std::vector<std::string> split_commands(std::string_view text, std::string* rest) {
  Parser p(text, "");
  std::vector<std::string> out = p.split();
  if (rest != nullptr) *rest = std::string(text.substr(p.rest_begin()));
  return out;
}

std::string str(const PTerm& t) { return term_doc(t).text; }

std::string str(const PFormula& f) { return formula_doc(f).text; }

std::string str(const Tactic& t) {
  using K = Tactic::Kind;
  auto joined = [](const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += " " + s;
    return out;
  };
  auto withs = [&t]() {
    std::string out;
    for (std::size_t i = 0; i < t.withs.size(); ++i) {
      out += (i == 0 ? " " : ", ") + t.withs[i].first + " = " + str(*t.withs[i].second);
    }
    return out;
  };
  switch (t.kind) {
    case K::kIntros:
      return "intros" + joined(t.names);
    case K::kInduction:
      return "induction on " + std::to_string(t.number);
    case K::kCase:
      return "case " + t.target + (t.keep ? " (keep)" : "");
    case K::kApply: {
      std::string out = "apply " + t.target;
      if (!t.names.empty()) out += " to" + joined(t.names);
      if (!t.withs.empty()) out += " with" + withs();
      return out;
    }
    case K::kSearch:
      return t.depth ? "search " + std::to_string(*t.depth) : "search";
    case K::kSplit:
      return "split";
    case K::kLeft:
      return "left";
    case K::kRight:
      return "right";
    case K::kExists:
      return "exists " + str(*t.term);
    case K::kAssert:
      return "assert " + str(*t.formula);
    case K::kUnfold:
      return "unfold";
    case K::kInst:
      return "inst " + t.target + " with" + withs();
    case K::kCut:
      return "cut " + t.target + " with " + t.other;
    case K::kMonotone:
      return "monotone " + t.target + " with " + str(*t.term);
    case K::kClear:
      return "clear" + joined(t.names);
    case K::kUndo:
      return "undo";
    case K::kAbort:
      return "abort";
  }
  return "";
}

std::string str(const Command& c) {
  auto names = [&c]() {
    std::string out;
    for (std::size_t i = 0; i < c.names.size(); ++i) out += (i ? ", " : "") + c.names[i];
    return out;
  };
  switch (c.kind) {
    case Command::Kind::kSpecification:
      return "Specification \"" + c.name + "\".";
    case Command::Kind::kKind:
      return "Kind " + names() + " type.";
    case Command::Kind::kType:
      return "Type " + names() + " " + ty_str(c.ty) + ".";
    case Command::Kind::kDefine: {
      std::string out = "Define ";
      for (std::size_t i = 0; i < c.preds.size(); ++i) {
        out += (i ? ", " : "") + c.preds[i].first + " : " + ty_str(c.preds[i].second);
      }
      if (!c.clauses.empty()) out += " by";
      for (std::size_t i = 0; i < c.clauses.size(); ++i) {
        const PClause& cl = c.clauses[i];
        out += i ? ";\n  " : "\n  ";
        if (!cl.nablas.empty()) out += "nabla " + binders_str(cl.nablas) + ", ";
        out += str(*cl.head);
        if (cl.body) out += " := " + str(*cl.body);
      }
      return out + ".";
    }
    case Command::Kind::kTheorem:
      return "Theorem " + c.name + " : " + str(*c.formula) + ".";
    case Command::Kind::kQuery:
      return "Query " + str(*c.formula) + ".";
    case Command::Kind::kSet:
      return "Set " + c.name + " " + c.value + ".";
    case Command::Kind::kQuit:
      return "Quit.";
    case Command::Kind::kTactic:
      return str(c.tactic) + ".";
  }
  return "";
}

bool same_tree(const PTerm& a, const PTerm& b) {
  if (a.kind != b.kind || a.name != b.name || !same_ty(a.ann, b.ann)) return false;
  if (!same_ptr(a.head, b.head) || !same_ptr(a.body, b.body)) return false;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

bool same_tree(const PFormula& a, const PFormula& b) {
  if (a.kind != b.kind || !(a.restriction == b.restriction)) return false;
  if (a.kind == PFormula::Kind::kBinding &&
      (a.quant != b.quant || !same_binders(a.vars, b.vars))) {
    return false;
  }
  if (!same_ptr(a.a, b.a) || !same_ptr(a.b, b.b)) return false;
  if (!same_fptr(a.l, b.l) || !same_fptr(a.r, b.r)) return false;
  if (a.ctx.size() != b.ctx.size()) return false;
  for (std::size_t i = 0; i < a.ctx.size(); ++i) {
    if (!same_tree(*a.ctx[i], *b.ctx[i])) return false;
  }
  return true;
}

bool same_tree(const Command& a, const Command& b) {
  if (a.kind != b.kind || a.names != b.names || a.name != b.name || a.value != b.value) {
    return false;
  }
  if (a.kind == Command::Kind::kType && a.ty != b.ty) return false;
  if (a.preds.size() != b.preds.size() || a.clauses.size() != b.clauses.size()) return false;
  for (std::size_t i = 0; i < a.preds.size(); ++i) {
    if (a.preds[i].first != b.preds[i].first || a.preds[i].second != b.preds[i].second) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.clauses.size(); ++i) {
    const PClause& x = a.clauses[i];
    const PClause& y = b.clauses[i];
    if (!same_binders(x.nablas, y.nablas) || !same_ptr(x.head, y.head) ||
        !same_fptr(x.body, y.body)) {
      return false;
    }
  }
  if (!same_fptr(a.formula, b.formula)) return false;
  return a.kind != Command::Kind::kTactic || same_tactic(a.tactic, b.tactic);
}

}  // namespace nabla
