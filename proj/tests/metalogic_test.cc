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

#include <random>

#include "nabla/metalogic.h"
#include "test_util.h"

namespace nabla {
namespace {

using testing::Lang;

class Meta : public ::testing::Test {
 protected:
  void SetUp() override {
    define("Define name : tm -> prop by nabla x, name x.");
    define("Define fresh : tm -> tm -> prop by nabla x, fresh x E.");
    define(
        "Define eval : tm -> tm -> prop by eval (abs T R) (abs T R);"
        " eval (app M N) V := exists T R, eval M (abs T R) /\\ eval (R N) V.");
    define("Define cl : tm -> prop by cl c; cl (app M N) := cl M /\\ cl N.");
  }

  void define(const std::string& text) {
    define_from_command(parse_command(text), l.sig, defs);
  }

  // Builds a sequent; unknown capitalized names are eigenvariables.
  Sequent seq(const std::vector<std::string>& hyps, const std::string& goal) {
    l.scope.implicit_tag = Tag::kEigen;
    Sequent s;
    for (const auto& h : hyps) s.add_hyp(canonical_ts(l.formula(h)));
    s.goal = canonical_ts(l.formula(goal));
    return apply_to_sequent(s, Subst{});
  }

  std::string show(const Formula& f) { return print_formula(f); }

  Lang l;
  DefDb defs;
  NameSupply names;
};

TEST_F(Meta, NameOfEigenvariableBecomesFreshNominal) {
  Sequent s = seq({"name E"}, "name E");
  auto out = case_hyp(s, "H1", defs, names);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(show(out[0].goal), "name n1");
  EXPECT_TRUE(out[0].hyps.empty());
  EXPECT_TRUE(out[0].vars.empty());
}

TEST_F(Meta, NameOfConstantHasNoCases) {
  Sequent s = seq({"name c"}, "false");
  EXPECT_TRUE(case_hyp(s, "H1", defs, names).empty());
}

TEST_F(Meta, NameAvoidsNominalsOfTheSequent) {
  Sequent s = seq({"name E", "p n1 n1"}, "p E n1");
  auto out = case_hyp(s, "H1", defs, names);
  // E is n1 or a nominal new to the sequent.
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(show(out[0].goal), "p n2 n1");
}

TEST_F(Meta, FreshKeepsNominalOut) {
  Sequent s = seq({"fresh n1 E"}, "p E E");
  auto out = case_hyp(s, "H1", defs, names);
  ASSERT_EQ(out.size(), 1u);
  ASSERT_EQ(out[0].vars.size(), 1u);
  // The new E cannot depend on n1 (later case analysis may still pick it).
  Term e = Term::var(out[0].vars[0]);
  NameSupply ns;
  UnifyConfig strict = case_config();
  strict.absorbs = nullptr;
  UnifyResult r = unify(e, l.term("n1"), strict, ns);
  EXPECT_FALSE(r.ok());
}

TEST_F(Meta, FreshOfOccurringNominalFails) {
  Sequent s = seq({"fresh n1 (app c n1)"}, "false");
  EXPECT_TRUE(case_hyp(s, "H1", defs, names).empty());
}

TEST_F(Meta, EqualityCases) {
  EXPECT_TRUE(case_hyp(seq({"c = app c c"}, "false"), "H1", defs, names).empty());
  auto out = case_hyp(seq({"E = app c c"}, "p E c"), "H1", defs, names);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(show(out[0].goal), "p (app c c) c");
  EXPECT_TRUE(out[0].vars.empty());
}

TEST_F(Meta, ConnectiveCases) {
  EXPECT_TRUE(case_hyp(seq({"false"}, "q"), "H1", defs, names).empty());
  auto two = case_hyp(seq({"q \\/ p c c"}, "q"), "H1", defs, names);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(show(two[1].hyps[0].formula), "p c c");
  auto ex = case_hyp(seq({"exists X, p X c"}, "q"), "H1", defs, names);
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_EQ(ex[0].vars.size(), 1u);
  EXPECT_EQ(show(ex[0].hyps[0].formula), "p X c");
  EXPECT_THROW(case_hyp(seq({"forall X, p X c"}, "q"), "H1", defs, names), Error);
  EXPECT_THROW(case_hyp(seq({"q -> q"}, "q"), "H1", defs, names), Error);
}

TEST_F(Meta, CaseSplitsBodyAndMarksRestriction) {
  Sequent s = seq({"eval (app M N) V @"}, "q");
  auto out = case_hyp(s, "H1", defs, names);
  ASSERT_EQ(out.size(), 1u);
  ASSERT_EQ(out[0].hyps.size(), 2u);
  EXPECT_EQ(show(out[0].hyps[0].formula), "eval M (abs T R) *");
  EXPECT_EQ(show(out[0].hyps[1].formula), "eval (R N) V *");
  EXPECT_EQ(out[0].hyps[0].name, "H2");
}

TEST_F(Meta, CaseKeepsHypothesis) {
  auto out = case_hyp(seq({"cl (app c c)"}, "q"), "H1", defs, names, true);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].hyps.size(), 3u);
  EXPECT_EQ(out[0].hyps[0].name, "H1");
}

TEST_F(Meta, UnfoldFirstMatchingClause) {
  Sequent s = seq({}, "eval (abs i (x\\ x)) (abs i (x\\ x))");
  EXPECT_EQ(unfold(s, defs, names).goal.kind(), Formula::Kind::kTrue);
  Sequent t = seq({}, "eval (app c c) c");
  EXPECT_EQ(show(unfold(t, defs, names).goal),
            "exists T R, eval c (abs T R) /\\ eval (R c) c");
  EXPECT_THROW(unfold(seq({}, "eval c c"), defs, names), Error);
  EXPECT_THROW(unfold(seq({}, "p c c"), defs, names), Error);
}

TEST_F(Meta, UnfoldDoesNotInstantiateEigenvariables) {
  // Needs E = abs T R, which only case analysis may assume.
  EXPECT_THROW(unfold(seq({}, "eval E E"), defs, names), Error);
}

TEST_F(Meta, HypothesisMatchesUpToPermutation) {
  EXPECT_TRUE(hyp_match(l.formula("name n1"), l.formula("name n2")));
  EXPECT_TRUE(hyp_match(l.formula("p n1 n2"), l.formula("p n2 n1")));
  EXPECT_FALSE(hyp_match(l.formula("p n1 n1"), l.formula("p n1 n2")));
  EXPECT_FALSE(hyp_match(l.formula("p n1 c"), l.formula("p c n1")));
  // Restrictions do not matter when closing a goal.
  EXPECT_TRUE(hyp_match(l.formula("eval c c *"), l.formula("eval c c")));
}

TEST_F(Meta, ContextWeakening) {
  EXPECT_TRUE(hyp_match(l.formula("{of c i}"), l.formula("{of d i |- of c i}")));
  EXPECT_FALSE(hyp_match(l.formula("{of d i |- of c i}"), l.formula("{of c i}")));
}

TEST_F(Meta, CloseByHypothesis) {
  Sequent s = seq({"q", "name n2"}, "name n1");
  EXPECT_EQ(close_by_hyp(s), std::optional<std::string>("H2"));
  EXPECT_FALSE(close_by_hyp(seq({"q"}, "name n1")));
}

TEST_F(Meta, HypUnifyBindsLogicVariables) {
  Formula h = l.formula("forall T, p X T");
  Formula g = l.formula("forall S, p c S");
  Subst sigma;
  ASSERT_TRUE(hyp_unify(h, g, names, &sigma));
  ASSERT_TRUE(sigma.lookup("X"));
  EXPECT_EQ(print_term(*sigma.lookup("X")), "c");
}

TEST_F(Meta, NablaIntroductionPicksFreshNominal) {
  Sequent s = seq({"name n1"}, "nabla x, name x");
  EXPECT_EQ(show(intro_nabla_goal(s, names).goal), "name n2");
  Sequent h = seq({"nabla x, p x n1"}, "q");
  EXPECT_EQ(show(intro_nabla_hyp(h, "H1", names).hyps[0].formula), "p n2 n1");
}

TEST_F(Meta, StratificationIsChecked) {
  EXPECT_THROW(define("Define bad : prop by bad := bad -> false."), Error);
  // Nothing was declared by the failed definition.
  EXPECT_FALSE(l.sig.const_type("bad"));
  EXPECT_NO_THROW(define("Define ok : prop by ok := (name c -> false) /\\ ok."));
  EXPECT_THROW(define("Define ok : prop by ok."), Error);
}

TEST_F(Meta, ClauseHeadMustBelongToBlock) {
  EXPECT_THROW(define("Define r : tm -> prop by name c."), Error);
}

TEST_F(Meta, TooManyNominalsIsAnError) {
  std::vector<Term> noms;
  Ty tm = Ty::base("tm");
  Term t = Term::constant("c", tm);
  Term app = Term::constant("app", Ty::curry({tm, tm}, tm));
  for (int i = 1; i <= 9; ++i) {
    t = Term::app(app, {t, Term::nominal("n" + std::to_string(i), tm)});
  }
  Term name = Term::constant("name", Ty::arrow(tm, builtin::prop()));
  Sequent s;
  s.add_hyp(Formula::pred(Term::app(name, {t})));
  s.goal = Formula::truth();
  EXPECT_THROW(case_hyp(s, "H1", defs, names), Error);
  EXPECT_THROW(hyp_match(s.hyps[0].formula, s.hyps[0].formula), Error);
}

// Random closed terms over c, d, app, abs and the nominals n1..n3.
std::string random_term(std::mt19937& rng, int depth, int bound = 0) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 4);
  switch (pick(rng)) {
    case 0:
      return "c";
    case 1:
      return "d";
    case 2:
    case 3:
    case 4: {
      std::uniform_int_distribution<int> n(1, 3 + bound);
      int k = n(rng);
      if (k > 3) return "x" + std::to_string(k - 3);
      return "n" + std::to_string(k);
    }
    case 5:
    case 6:
      return "(app " + random_term(rng, depth - 1, bound) + " " +
             random_term(rng, depth - 1, bound) + ")";
    default:
      return "(abs i (x" + std::to_string(bound + 1) + "\\ " +
             random_term(rng, depth - 1, bound + 1) + "))";
  }
}

// Ground atoms: case analysis has a case exactly when the atom holds, and
// unfolding agrees.
TEST_F(Meta, GroundCaseAgreesWithMembership) {
  std::mt19937 rng(7);
  int holds = 0;
  for (int iter = 0; iter < 400; ++iter) {
    const std::string t = random_term(rng, 3);
    const std::string nom = "n" + std::to_string(1 + iter % 3);
    Term term = l.term(t);
    bool occurs = false;
    for (const auto& v : support(term)) occurs = occurs || v.name == nom;
    const bool is_nom = term.is_var() && term.as_var().tag == Tag::kNominal;

    Sequent f = seq({"fresh " + nom + " " + t}, "q");
    EXPECT_EQ(!case_hyp(f, "H1", defs, names).empty(), !occurs) << t;
    Sequent fg = seq({}, "fresh " + nom + " " + t);
    bool unfolds = true;
    try {
      unfold(fg, defs, names);
    } catch (const Error&) {
      unfolds = false;
    }
    EXPECT_EQ(unfolds, !occurs) << t;

    Sequent n = seq({"name " + t}, "q");
    EXPECT_EQ(case_hyp(n, "H1", defs, names).size(), is_nom ? 1u : 0u) << t;
    holds += !occurs;
  }
  EXPECT_GT(holds, 50);
  EXPECT_LT(holds, 350);
}

// Any nominal renaming of a formula is matched back, and the returned
// permutation really maps one onto the other.
TEST_F(Meta, PermutedFormulaMatches) {
  std::mt19937 rng(11);
  const std::vector<std::string> noms = {"n1", "n2", "n3"};
  for (int iter = 0; iter < 300; ++iter) {
    Formula f = l.formula("p " + random_term(rng, 3) + " " + random_term(rng, 2));
    std::vector<std::string> img = noms;
    std::shuffle(img.begin(), img.end(), rng);
    Permutation pi;
    for (int i = 0; i < 3; ++i) pi.set(noms[i], img[i]);
    Formula g = apply_perm(pi, f);
    auto p = hyp_match(f, g);
    ASSERT_TRUE(p) << show(f) << " vs " << show(g);
    EXPECT_TRUE(formula_equal(apply_perm(*p, f), g));
    auto back = hyp_match(g, f);
    ASSERT_TRUE(back);
  }
}

// Case analysis on a closed-term judgment with an eigenvariable: every case
// instance, read back as a ground atom, is provable by unfolding.
TEST_F(Meta, CaseInstancesAreSound) {
  std::mt19937 rng(5);
  int cases = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const std::string t = random_term(rng, 2);
    Sequent s = seq({"cl (app " + t + " E)"}, "cl (app " + t + " E)");
    for (const auto& sub : case_hyp(s, "H1", defs, names)) {
      ++cases;
      // The goal atom is the analyzed atom under the case substitution; its
      // hypotheses are exactly the premises needed to unfold it.
      Sequent g = unfold(sub, defs, names);
      EXPECT_EQ(g.goal.kind(), Formula::Kind::kAnd);
      EXPECT_TRUE(hyp_match(sub.hyps[0].formula, g.goal.left()));
      EXPECT_TRUE(hyp_match(sub.hyps[1].formula, g.goal.right()));
    }
  }
  EXPECT_GT(cases, 20);
}

}  // namespace
}  // namespace nabla
