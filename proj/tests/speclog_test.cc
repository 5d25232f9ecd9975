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

#include <gtest/gtest.h>

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "nabla/elaborate.h"
#include "nabla/print.h"
#include "nabla/speclog.h"

namespace nabla {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Spec : public ::testing::Test {
 protected:
  void SetUp() override {
    db.load(slurp("corpus/stlc.sig"), slurp("corpus/stlc.mod"), sig, "stlc.sig", "stlc.mod");
    sig.add_const("c", Ty::base("tm"));
    sig.add_const("d", Ty::base("tm"));
    sig.add_const("q", builtin::prop());
    scope.sig = &sig;
    scope.implicit_tag = Tag::kLogic;
    for (const char* n : {"n1", "n2", "n3"}) scope.vars[n] = Term::nominal(n, Ty::base("tm"));
    scope.vars["a"] = Term::eigen("a", Ty::base("ty"), kTsVar);
  }

  Term term(const std::string& text, const Ty& ty = builtin::o()) {
    Elaborated e = elaborate_term(*parse_term(text), scope, ty);
    for (const auto& v : e.implicit) scope.vars[v.name] = Term::var(v);
    return e.term;
  }

  Formula formula(const std::string& text) {
    Elaborated e = elaborate_formula(*parse_formula(text), scope);
    for (const auto& v : e.implicit) scope.vars[v.name] = Term::var(v);
    return canonical_ts(e.formula);
  }

  Sequent seq(const std::vector<std::string>& hyps, const std::string& goal) {
    scope.implicit_tag = Tag::kEigen;
    Sequent s;
    for (const auto& h : hyps) s.add_hyp(formula(h));
    s.goal = formula(goal);
    return apply_to_sequent(s, Subst{});
  }

  SolveResult run(const std::vector<std::string>& ctx, const std::string& goal, int depth) {
    std::vector<Term> c;
    for (const auto& t : ctx) c.push_back(term(t));
    SolveOptions opts;
    opts.depth = depth;
    return solve(db, c, term(goal), opts, names);
  }

  Signature sig;
  SpecDb db;
  Scope scope;
  NameSupply names;
};

TEST_F(Spec, LoadsTypingClauses) {
  EXPECT_EQ(db.clauses_for("of").size(), 2u);
  EXPECT_EQ(db.clauses_for("step").size(), 3u);
  EXPECT_EQ(print_term(db.clauses_for("of")[1]->body[0]), "pi x\\ of x A => of (R x) B");
}

TEST_F(Spec, EmptyModule) {
  Signature s;
  SpecDb d;
  d.load("sig e.\nkind tm type.\ntype c tm.\n", "module e.\n", s);
  EXPECT_TRUE(d.clauses().empty());
  EXPECT_TRUE(s.const_type("c"));
}

TEST_F(Spec, UndeclaredConstantIsTypeError) {
  Signature s;
  SpecDb d;
  try {
    d.load("sig e.\nkind tm type.\ntype p tm -> o.\n", "module e.\np c.\n", s, "e.sig", "e.mod");
    FAIL() << "no error";
  } catch (const Error& e) {
    ASSERT_TRUE(e.span());
    EXPECT_EQ(e.span()->file, "e.mod");
    EXPECT_EQ(e.span()->line, 2);
  }
  // Nothing was declared.
  EXPECT_FALSE(s.has_kind("tm"));
}

TEST_F(Spec, RejectsNonAtomicHeadsAndThirdOrder) {
  Signature s;
  SpecDb d;
  EXPECT_THROW(d.load("sig e.\nkind tm type.\ntype p tm -> o.\n", "module e.\np X & p X.\n", s),
               Error);
  EXPECT_THROW(d.load("sig e.\nkind tm type.\ntype q (((tm -> tm) -> tm) -> tm) -> o.\n",
                      "module e.\nq F.\n", s),
               Error);
}

TEST_F(Spec, AnimatesExampleTerm) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult r = run({}, "of (abs (arr i i) (f\\ abs i (x\\ app f x))) T", 10);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(print_term(normalize(r.subst.apply(scope.vars["T"]))),
            "arr (arr i i) (arr i i)");
  EXPECT_LT(ms, 1000);
}

TEST_F(Spec, ContextMember) {
  EXPECT_TRUE(run({"of c i"}, "of c i", 1).ok());
  EXPECT_TRUE(run({"of c i"}, "of c i", 0).ok());
}

TEST_F(Spec, NoClauseForConstant) {
  SolveResult r = run({}, "of (app n1 n1) T", 10);
  EXPECT_EQ(r.status, SolveResult::Status::kFailure);
}

TEST_F(Spec, DepthExhaustion) {
  SolveResult r = run({}, "of (abs i (x\\ abs i (y\\ x))) T", 1);
  EXPECT_EQ(r.status, SolveResult::Status::kDepthExhausted);
  EXPECT_TRUE(run({}, "of (abs i (x\\ abs i (y\\ x))) T", 2).ok());
}

TEST_F(Spec, BigAndSmallStep) {
  const std::string id = "(abs i (x\\ x))";
  EXPECT_TRUE(run({}, "eval (app " + id + " " + id + ") V", 10).ok());
  EXPECT_TRUE(run({}, "step (app " + id + " " + id + ") " + id, 10).ok());
  EXPECT_EQ(run({}, "step " + id + " M", 10).status, SolveResult::Status::kFailure);
}

TEST_F(Spec, CaseOnTypingWithEmptyContext) {
  Sequent s = seq({"{of M T}@"}, "q");
  auto out = spec_case(s, "H1", db, names);
  ASSERT_EQ(out.size(), 2u);
  ASSERT_EQ(out[0].hyps.size(), 2u);
  EXPECT_EQ(print_formula(out[0].hyps[0].formula), "{of M1 (arr A T)} *");
  EXPECT_EQ(print_formula(out[0].hyps[1].formula), "{of N A} *");
  EXPECT_EQ(print_formula(out[0].goal), "q");
  ASSERT_EQ(out[1].hyps.size(), 1u);
  EXPECT_EQ(print_formula(out[1].hyps[0].formula), "{of n1 A |- of (R n1) B} *");
}

TEST_F(Spec, CaseUsesContextMembers) {
  Sequent s = seq({"{of n1 a |- of n1 T}"}, "T = a");
  auto out = spec_case(s, "H1", db, names);
  // No clause for a nominal; the member case binds T.
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(print_formula(out[0].goal), "a = a");
}

TEST_F(Spec, CaseOnContextVariable) {
  scope.vars["L"] = Term::eigen("L", builtin::olist(), kTsVar);
  Sequent s = seq({"{L |- of n1 T}"}, "q");
  auto out = spec_case(s, "H1", db, names);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(print_formula(out[0].hyps[0].formula), "member (of n1 T) L");
}

TEST_F(Spec, CaseWithNoClause) {
  EXPECT_TRUE(spec_case(seq({"{of c T}"}, "q"), "H1", db, names).empty());
}

TEST_F(Spec, Monotone) {
  Sequent s = seq({"{of c i}", "{of c i, of c i |- of d i}"}, "q");
  EXPECT_EQ(print_formula(monotone(s, "H1", {term("of d i")}).hyps.back().formula),
            "{of d i |- of c i}");
  EXPECT_NO_THROW(monotone(s, "H2", {term("of c i")}));
  Sequent t = seq({"{of c i |- of d i}"}, "q");
  EXPECT_THROW(monotone(t, "H1", {}), Error);
}

TEST_F(Spec, AssumptionsCloseGoals) {
  SolveOptions opts;
  opts.assumptions.push_back(formula("{of c i}"));
  EXPECT_TRUE(solve(db, {}, term("of (app (abs i (x\\ x)) c) i"), opts, names).ok());
}

// Random closed terms over abs/app with types built from i.
std::string random_tm(std::mt19937& rng, int depth, int bound) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 1);
  int k = pick(rng);
  if (k <= 1 && bound > 0) {
    std::uniform_int_distribution<int> v(1, bound);
    return "x" + std::to_string(v(rng));
  }
  if (k <= 1) return "(abs i (x1\\ x1))";
  if (k <= 3) {
    return "(app " + random_tm(rng, depth - 1, bound) + " " + random_tm(rng, depth - 1, bound) +
           ")";
  }
  const char* ty = k == 4 ? "i" : "(arr i i)";
  return "(abs " + std::string(ty) + " (x" + std::to_string(bound + 1) + "\\ " +
         random_tm(rng, depth - 1, bound + 1) + "))";
}

// Solutions are stable: re-solving the instantiated goal succeeds at the
// same depth, and success is monotone in the depth.
TEST_F(Spec, InstantiationStabilityAndDepthMonotonicity) {
  std::mt19937 rng(3);
  int typed = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const std::string t = random_tm(rng, 3, 0);
    scope.vars.erase("T");
    Term goal = term("of " + t + " T");
    SolveOptions opts;
    opts.depth = 6;
    SolveResult r = solve(db, {}, goal, opts, names);
    if (!r.ok()) {
      opts.depth = 3;
      EXPECT_FALSE(solve(db, {}, goal, opts, names).ok());
      continue;
    }
    ++typed;
    Term inst = normalize(r.subst.apply(goal));
    EXPECT_TRUE(solve(db, {}, inst, opts, names).ok()) << print_term(inst);
    opts.depth = 9;
    EXPECT_TRUE(solve(db, {}, goal, opts, names).ok());
  }
  EXPECT_GT(typed, 30);
}

// Permuting or duplicating the context does not change the verdict.
TEST_F(Spec, ContextIsAMultiset) {
  std::mt19937 rng(9);
  const std::vector<std::string> items = {"of n1 i", "of n2 (arr i i)", "of n3 i"};
  const std::vector<std::string> goals = {"of (app n2 n1) i", "of (app n2 (app n2 n3)) i",
                                          "of (app n1 n2) i", "of n2 i", "of n3 i"};
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Term> ctx;
    for (const auto& i : items) {
      if (rng() % 2) ctx.push_back(term(i));
    }
    std::vector<Term> shuffled = ctx;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    if (!shuffled.empty()) shuffled.push_back(shuffled[0]);
    for (const auto& g : goals) {
      SolveOptions opts;
      EXPECT_EQ(solve(db, ctx, term(g), opts, names).status,
                solve(db, shuffled, term(g), opts, names).status);
    }
  }
}

// Every case of a typing judgment, re-assembled, is derivable: its premise
// hypotheses serve as assumptions for solving the instantiated judgment.
TEST_F(Spec, CaseSoundness) {
  Sequent s = seq({"{of M T}"}, "{of M T}");
  auto cases = spec_case(s, "H1", db, names);
  ASSERT_EQ(cases.size(), 2u);
  for (const auto& c : cases) {
    SolveOptions opts;
    for (const auto& h : c.hyps) opts.assumptions.push_back(h.formula);
    EXPECT_TRUE(solve(db, c.goal.context(), c.goal.goal(), opts, names).ok())
        << print_sequent(c);
  }
}

}  // namespace
}  // namespace nabla
