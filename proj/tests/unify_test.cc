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

#include <gtest/gtest.h>

#include "oracle.h"
#include "test_util.h"

namespace nabla {
namespace {

using testing::Lang;
using testing::show;

UnifyResult run(Lang& l, const std::string& a, const std::string& b) {
  NameSupply names;
  return unify(l.term(a), l.term(b), match_config(), names);
}

void expect_unifies(const UnifyResult& r, const Term& a, const Term& b) {
  ASSERT_EQ(r.status, UnifyStatus::kSuccess) << r.reason;
  EXPECT_TRUE(equal(r.subst.apply(a), r.subst.apply(b)))
      << show(r.subst.apply(a)) << " vs " << show(r.subst.apply(b));
}

TEST(Unify, FlexibleAgainstApplicationOfMetavariables) {
  Lang l;
  l.var("B", "tm");
  l.var("R", "tm -> tm");
  l.var("M", "tm");
  UnifyResult r = run(l, "B", "R M");
  expect_unifies(r, l.term("B"), l.term("R M"));
  ASSERT_EQ(r.subst.size(), 1u);
  EXPECT_EQ(show(*r.subst.lookup("B")), "R M");
}

TEST(Unify, SecondShapeReturnsMostGeneralUnifier) {
  Lang l;
  l.var("B", "tm -> tm");
  l.var("R", "tm -> tm -> tm");
  l.var("M", "tm");
  UnifyResult r = run(l, "B n1", "R M n1");
  expect_unifies(r, l.term("B n1"), l.term("R M n1"));
  ASSERT_EQ(r.subst.size(), 1u);
  ASSERT_TRUE(r.subst.lookup("B"));
  EXPECT_TRUE(equal(*r.subst.lookup("B"), l.term("y\\ R M y")));
}

TEST(Unify, ThirdShape) {
  Lang l;
  l.var("B", "tm -> tm");
  l.var("R", "tm -> tm");
  l.var("M", "tm -> tm");
  UnifyResult r = run(l, "B n1", "R (M n1)");
  expect_unifies(r, l.term("B n1"), l.term("R (M n1)"));
  ASSERT_EQ(r.subst.size(), 1u);
  EXPECT_TRUE(equal(*r.subst.lookup("B"), l.term("y\\ R (M y)")));
}

TEST(Unify, HeadClash) {
  Lang l;
  l.var("R", "tm -> tm");
  EXPECT_EQ(run(l, "app X Y", "abs T R").status, UnifyStatus::kFailure);
}

TEST(Unify, OccursCheck) {
  Lang l;
  EXPECT_EQ(run(l, "X", "app X c").status, UnifyStatus::kFailure);
}

TEST(Unify, NominalEscape) {
  Lang l;
  l.var("X", "tm");
  EXPECT_EQ(run(l, "X", "app n1 c").status, UnifyStatus::kFailure);
  l.var("F", "tm -> tm");
  EXPECT_EQ(run(l, "F n1", "n2").status, UnifyStatus::kFailure);
}

TEST(Unify, PatternAbstraction) {
  Lang l;
  l.var("F", "tm -> tm");
  UnifyResult r = run(l, "F n1", "app n1 c");
  expect_unifies(r, l.term("F n1"), l.term("app n1 c"));
  EXPECT_TRUE(equal(*r.subst.lookup("F"), l.term("x\\ app x c")));
}

TEST(Unify, PruningSameVariable) {
  Lang l;
  l.var("F", "tm -> tm -> tm");
  UnifyResult r = run(l, "F n1 n2", "F n2 n1");
  expect_unifies(r, l.term("F n1 n2"), l.term("F n2 n1"));
  // Only the constant functions remain.
  Term image = *r.subst.lookup("F");
  EXPECT_TRUE(support(r.subst.apply(l.term("F n1 n2"))).empty()) << show(image);
}

TEST(Unify, FlexFlexDifferentArguments) {
  Lang l;
  l.var("F", "tm -> tm");
  l.var("G", "tm -> tm");
  UnifyResult r = run(l, "F n1", "G n2");
  expect_unifies(r, l.term("F n1"), l.term("G n2"));
}

TEST(Unify, EtaUnderBinder) {
  Lang l;
  l.var("R", "tm -> tm");
  UnifyResult r = run(l, "abs i R", "abs i (x\\ app x x)");
  expect_unifies(r, l.term("abs i R"), l.term("abs i (x\\ app x x)"));
}

TEST(Unify, EigenvariablesRigidInMatchMode) {
  NameSupply names;
  Ty tm = Ty::base("tm");
  Term e = Term::eigen("E", tm);
  EXPECT_EQ(unify(e, Term::constant("c", tm), match_config(), names).status,
            UnifyStatus::kFailure);
  EXPECT_EQ(unify(e, Term::constant("c", tm), case_config(), names).status,
            UnifyStatus::kSuccess);
}

TEST(Unify, NonPatternLeftIndeterminate) {
  Lang l;
  l.var("F", "tm -> tm");
  UnifyResult r = run(l, "F c", "app c c");
  EXPECT_EQ(r.status, UnifyStatus::kIndeterminate);
  EXPECT_TRUE(r.offending.has_value());
}

// Properties over random problems; verdicts are cross-checked against the
// brute-force oracle.

std::vector<Term> sides(const std::vector<Equation>& eqs) {
  std::vector<Term> out;
  for (const auto& [a, b] : eqs) {
    out.push_back(a);
    out.push_back(b);
  }
  return out;
}

TEST(UnifyProperty, SoundAndAgreesWithOracle) {
  oracle::ProblemGen gen(101);
  int compared = 0;
  int solvable = 0;
  int indeterminate = 0;
  for (int k = 0; k < 1500; ++k) {
    std::vector<Equation> eqs = gen.next();
    NameSupply names;
    UnifyResult r = unify(eqs, match_config(), names);
    if (r.status == UnifyStatus::kIndeterminate) {
      ++indeterminate;
      continue;
    }
    std::vector<Var> vars = oracle::metavars(sides(eqs));
    oracle::Search s = oracle::find_unifiers(eqs, vars, 3, 1, 200'000);
    if (r.ok()) {
      for (const auto& [a, b] : eqs) {
        ASSERT_TRUE(equal(r.subst.apply(a), r.subst.apply(b)))
            << show(a) << " = " << show(b);
      }
      Subst g = oracle::ground(r.subst, sides(eqs));
      for (const auto& [a, b] : eqs) ASSERT_TRUE(equal(g.apply(a), g.apply(b)));
      ASSERT_FALSE(s.solutions.empty() && s.exhausted)
          << "oracle found no unifier for " << show(eqs[0].first) << " = "
          << show(eqs[0].second);
      ++solvable;
    } else {
      ASSERT_TRUE(s.solutions.empty())
          << "unifier missed: " << show(eqs[0].first) << " = " << show(eqs[0].second);
    }
    ++compared;
  }
  EXPECT_GT(compared, 1300);
  // Both verdicts must be well represented for the comparison to mean much.
  EXPECT_GT(solvable, 200);
  EXPECT_GT(compared - solvable, 300);
  EXPECT_LT(indeterminate, 75);
}

TEST(UnifyProperty, Equivariance) {
  oracle::ProblemGen gen(102);
  Permutation p = Permutation::swap("n1", "n2");
  for (int k = 0; k < 1000; ++k) {
    std::vector<Equation> eqs = gen.next();
    std::vector<Equation> swapped;
    for (const auto& [a, b] : eqs) swapped.emplace_back(p.apply(a), p.apply(b));
    NameSupply n1;
    NameSupply n2;
    UnifyResult r1 = unify(eqs, match_config(), n1);
    UnifyResult r2 = unify(swapped, match_config(), n2);
    ASSERT_EQ(r1.status, r2.status) << show(eqs[0].first) << " = " << show(eqs[0].second);
    if (r1.ok()) {
      for (const auto& v : oracle::metavars(sides(eqs))) {
        ASSERT_TRUE(equal(p.apply(r1.subst.apply(Term::var(v))),
                          r2.subst.apply(Term::var(v))))
            << v.name;
      }
    }
  }
}

TEST(UnifyProperty, OrderIndependentVerdict) {
  oracle::ProblemGen gen(103);
  int checked = 0;
  for (int k = 0; k < 3000 && checked < 600; ++k) {
    std::vector<Equation> eqs = gen.next();
    if (eqs.size() < 2) continue;
    ++checked;
    std::vector<Equation> rev(eqs.rbegin(), eqs.rend());
    for (auto& [a, b] : rev) std::swap(a, b);
    NameSupply n1;
    NameSupply n2;
    UnifyResult r1 = unify(eqs, match_config(), n1);
    UnifyResult r2 = unify(rev, match_config(), n2);
    if (r1.status == UnifyStatus::kIndeterminate || r2.status == UnifyStatus::kIndeterminate) {
      continue;
    }
    ASSERT_EQ(r1.status, r2.status) << show(eqs[0].first) << " = " << show(eqs[0].second);
  }
  EXPECT_GT(checked, 100);
}

TEST(UnifyProperty, MostGeneralOnSample) {
  oracle::ProblemGen gen(104);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    std::vector<Equation> eqs = gen.next();
    NameSupply names;
    UnifyResult r = unify(eqs, match_config(), names);
    if (!r.ok()) continue;
    std::vector<Var> vars = oracle::metavars(sides(eqs));
    oracle::Search s = oracle::find_unifiers(eqs, vars, 2, 4, 500'000);
    for (const auto& rho : s.solutions) {
      ASSERT_TRUE(oracle::factors_through(r.subst, rho, vars, 3, 2'000'000))
          << show(eqs[0].first) << " = " << show(eqs[0].second);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace nabla
