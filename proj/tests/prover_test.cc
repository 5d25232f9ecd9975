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
#include <string>

#include "nabla/frontend.h"
#include "nabla/print.h"
#include "nabla/prover.h"

namespace nabla {
namespace {

class Prover : public ::testing::Test {
 protected:
  void SetUp() override { load_spec_files(s, "corpus/stlc"); }

  // Runs every command in text against the session.
  void run(const std::string& text) {
    for (const auto& cmd : parse_commands(text)) run_command(s, cmd, "corpus");
  }

  std::string goal() { return print_formula(s.current().goal); }

  std::string hyp(const std::string& name) {
    const Hyp* h = s.current().find(name);
    return h ? print_formula(h->formula) : "<none>";
  }

  Session s;
};

TEST_F(Prover, InductionAnnotatesPremise) {
  run("Theorem eval_det : forall E V1 V2, {eval E V1} -> {eval E V2} -> V1 = V2.");
  run("induction on 1.");
  EXPECT_EQ(hyp("IH"), "forall E V1 V2, {eval E V1} * -> {eval E V2} -> V1 = V2");
  EXPECT_EQ(goal(), "forall E V1 V2, {eval E V1} @ -> {eval E V2} -> V1 = V2");
}

TEST_F(Prover, NestedInductionUsesNewLevel) {
  run("Theorem t : forall E V1 V2, {eval E V1} -> {eval E V2} -> V1 = V2.");
  run("induction on 1. induction on 2.");
  EXPECT_EQ(hyp("IH1"), "forall E V1 V2, {eval E V1} @ -> {eval E V2} ** -> V1 = V2");
  EXPECT_EQ(goal(), "forall E V1 V2, {eval E V1} @ -> {eval E V2} @@ -> V1 = V2");
}

TEST_F(Prover, InductionOutOfRange) {
  run("Theorem t : forall E V1 V2, {eval E V1} -> {eval E V2} -> V1 = V2.");
  EXPECT_THROW(run("induction on 3."), Error);
  EXPECT_FALSE(s.current().find("IH"));
}

TEST_F(Prover, ApplyChecksRestrictions) {
  run("Theorem t : forall E V1 V2, {eval E V1} -> {eval E V2} -> V1 = V2.");
  run("induction on 1. intros.");
  try {
    run("apply IH to H2 H1.");
    FAIL() << "unannotated argument accepted";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("restriction violated"), std::string::npos) << e.what();
  }
  // The premise being inducted on carries @, not *.
  EXPECT_THROW(run("apply IH to H1 H2."), Error);
  run("case H1.");
  EXPECT_THROW(run("apply IH to H2 H2."), Error);
}

TEST_F(Prover, ApplyInstantiatesConclusion) {
  run("Theorem t : forall E V1 V2, {eval E V1} -> {eval E V2} -> V1 = V2.");
  run("induction on 1. intros. case H1. case H2.");
  run("search.");
  run("case H2. apply IH to H3 H6.");
  EXPECT_EQ(hyp("H9"), "abs A R = abs A1 R1");
}

TEST_F(Prover, ApplyWrongArguments) {
  run("Theorem value_no_step : forall V E, {value V} -> {step V E} -> false.");
  run("intros. case H1. case H2.");
  run("Theorem t : forall V E, {step V E} -> {value V} -> false.");
  run("intros.");
  EXPECT_THROW(run("apply value_no_step to H1 H2."), Error);
  run("apply value_no_step to H2 H1.");
  EXPECT_EQ(hyp("H3"), "false");
}

TEST_F(Prover, SearchInstantiatesExistential) {
  run("Theorem t : exists T, {of (abs i (x\\ x)) T}.");
  EXPECT_TRUE(s.tactic(parse_command("search.").tactic));
  EXPECT_FALSE(s.in_proof());
  ASSERT_TRUE(s.lemmas.find("t"));
}

TEST_F(Prover, SearchFailureLeavesStateAlone) {
  run("Theorem t : forall T, {of (abs i (x\\ x)) T}.");
  run("intros.");
  const std::string before = dump_state(s.state());
  EXPECT_THROW(run("search."), Error);
  EXPECT_EQ(dump_state(s.state()), before);
}

TEST_F(Prover, SearchUpToPermutation) {
  run("Define q : tm -> tm -> prop by q (app M N) M.");
  run("Theorem t : nabla x y, q x y -> q y x.");
  run("intros. search.");
  EXPECT_FALSE(s.in_proof());
  // No permutation takes (n1, n1) to (n1, n2).
  run("Theorem u : nabla x y, q x x -> q x y.");
  run("intros.");
  EXPECT_THROW(run("search."), Error);
}

TEST_F(Prover, NablaExchange) {
  run("Define q : tm -> tm -> prop by q (app M N) M.");
  for (const char* prefix : {"nabla x y,", "nabla y x,", "nabla x, nabla y,"}) {
    Session copy = s;
    for (const auto& c : parse_commands(std::string("Theorem a : ") + prefix + " q (app x y) x.")) {
      run_command(copy, c, "");
    }
    EXPECT_TRUE(copy.tactic(parse_command("search.").tactic)) << prefix;
    for (const auto& c : parse_commands(std::string("Theorem b : ") + prefix + " q (app x y) y.")) {
      run_command(copy, c, "");
    }
    EXPECT_THROW(copy.tactic(parse_command("search.").tactic), Error) << prefix;
  }
}

TEST_F(Prover, SplitExistsAndDisjunction) {
  run("Theorem t : (true \\/ false) /\\ exists V, V = abs i (x\\ x).");
  run("split.");
  EXPECT_EQ(s.state().goals.size(), 2u);
  EXPECT_EQ(goal(), "true \\/ false");
  run("left. search.");
  EXPECT_EQ(goal(), "exists V, V = abs i (x\\ x)");
  run("exists abs i (x\\ x).");
  EXPECT_EQ(goal(), "abs i (x\\ x) = abs i (x\\ x)");
  run("search.");
  EXPECT_FALSE(s.in_proof());
}

TEST_F(Prover, AssertAddsSubgoalThenHypothesis) {
  run("Theorem t : forall E, {value E} -> true.");
  run("intros. assert {value E} /\\ true.");
  EXPECT_EQ(goal(), "{value E} /\\ true");
  run("split. search. search.");
  EXPECT_EQ(hyp("H2"), "{value E} /\\ true");
  EXPECT_EQ(goal(), "true");
}

TEST_F(Prover, InstAndCut) {
  run("Theorem t : forall R A B U, {of (abs A R) (arr A B)} -> {of U A} -> {of (R U) B}.");
  run("intros. case H1.");
  EXPECT_EQ(hyp("H3"), "{of n1 A |- of (R n1) B}");
  EXPECT_THROW(run("inst H3 with n1 = n2."), Error);
  run("inst H3 with n1 = U.");
  EXPECT_EQ(hyp("H4"), "{of U A |- of (R U) B}");
  EXPECT_THROW(run("cut H4 with H3."), Error);
  run("cut H4 with H2.");
  EXPECT_EQ(hyp("H5"), "{of (R U) B}");
  run("search.");
  EXPECT_FALSE(s.in_proof());
}

TEST_F(Prover, InstIdentityIsACopy) {
  run("Theorem t : forall R A B, {of (abs A R) (arr A B)} -> true.");
  run("intros. case H1. inst H2 with n1 = n1.");
  EXPECT_EQ(hyp("H3"), hyp("H2"));
}

TEST_F(Prover, CutRemovesOneOccurrence) {
  run("Theorem t : forall M, {of M i, of M i |- of M i} -> {of M i} -> true.");
  run("intros. cut H1 with H2.");
  EXPECT_EQ(hyp("H3"), "{of M i |- of M i}");
}

TEST_F(Prover, MonotoneWeakens) {
  run("Theorem t : forall M N L, {of M i} -> {of N i :: L |- of M i}.");
  run("intros. monotone H1 with of N i :: L.");
  EXPECT_EQ(hyp("H2"), "{of N i, L |- of M i}");
  run("search.");
  EXPECT_FALSE(s.in_proof());
}

TEST_F(Prover, NoProofInProgress) {
  EXPECT_THROW(s.state(), Error);
  EXPECT_THROW(s.undo(), Error);
  EXPECT_THROW(run("intros."), Error);
}

TEST_F(Prover, UndoRestoresExactState) {
  run("Theorem t : forall E V1 V2, {eval E V1} -> {eval E V2} -> V1 = V2.");
  const std::string start = dump_state(s.state());
  run("induction on 1.");
  const std::string after_ind = dump_state(s.state());
  run("intros. case H1.");
  run("undo. undo.");
  EXPECT_EQ(dump_state(s.state()), after_ind);
  run("undo.");
  EXPECT_EQ(dump_state(s.state()), start);
  EXPECT_THROW(run("undo."), Error);
}

TEST_F(Prover, FailedTacticKeepsState) {
  run("Theorem t : forall E V, {eval E V} -> {value V}.");
  run("intros.");
  const std::string before = dump_state(s.state());
  for (const char* bad : {"case H7.", "apply nothing to H1.", "split.", "left.", "exists c.",
                          "inst H1 with n1 = c.", "cut H1 with H1.", "induction on 1."}) {
    EXPECT_THROW(run(bad), Error) << bad;
    EXPECT_EQ(dump_state(s.state()), before) << bad;
  }
}

TEST_F(Prover, TheoremEntersLemmasOnlyWhenDone) {
  run("Theorem t : true.");
  EXPECT_FALSE(s.lemmas.find("t"));
  run("search.");
  EXPECT_TRUE(s.lemmas.find("t"));
  EXPECT_THROW(run("Theorem t : true."), Error);
}

TEST_F(Prover, SetOptions) {
  run("Set search_depth 2.");
  EXPECT_EQ(s.options.search_depth, 2);
  run("Set print_annotations off.");
  EXPECT_FALSE(s.options.print_annotations);
  EXPECT_THROW(run("Set search_depth many."), Error);
  EXPECT_THROW(run("Set colour blue."), Error);
}

TEST_F(Prover, QueryAnimates) {
  Command q = parse_command("Query {of (abs (arr i i) (f\\ abs i (x\\ app f x))) T}.");
  EXPECT_EQ(s.query(*q.formula), "yes\nT = arr (arr i i) (arr i i)");
  q = parse_command("Query {of (app c c) T}.");
  EXPECT_THROW(s.query(*q.formula), Error);
}

// Undo after any tactic returns to the prior state, over random walks on
// the determinacy goal.
TEST_F(Prover, UndoAfterRandomTactics) {
  const char* tactics[] = {"intros.", "case H1.", "case H2.", "search.", "split.",
                           "apply IH to H3 H6.", "case H3.", "induction on 1.", "case H1 (keep)."};
  std::mt19937 rng(7);
  for (int round = 0; round < 30; ++round) {
    Session fresh;
    load_spec_files(fresh, "corpus/stlc");
    for (const auto& c :
         parse_commands("Theorem t : forall E V1 V2, {eval E V1} -> {eval E V2} -> V1 = V2.")) {
      run_command(fresh, c, "corpus");
    }
    for (int step = 0; step < 6 && fresh.in_proof(); ++step) {
      const std::string before = dump_state(fresh.state());
      const char* t = tactics[rng() % std::size(tactics)];
      bool done = false;
      try {
        done = fresh.tactic(parse_command(t).tactic);
      } catch (const Error&) {
        EXPECT_EQ(dump_state(fresh.state()), before) << t;
        continue;
      }
      if (done) break;
      fresh.undo();
      EXPECT_EQ(dump_state(fresh.state()), before) << t;
      fresh.tactic(parse_command(t).tactic);
    }
  }
}

}  // namespace
}  // namespace nabla
