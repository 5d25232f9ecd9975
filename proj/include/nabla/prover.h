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

// The tactic engine. A Session owns the signature, definitions, the loaded
// specification, proved lemmas and the proof in progress. Tactics either
// succeed or throw Error leaving the session untouched.

#ifndef NABLA_PROVER_H_
#define NABLA_PROVER_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nabla/elaborate.h"
#include "nabla/metalogic.h"
#include "nabla/signature.h"
#include "nabla/speclog.h"
#include "nabla/syntax.h"

namespace nabla {

struct Lemma {
  std::string name;
  Formula formula;
};

class LemmaDb {
 public:
  void add(const std::string& name, Formula f, const std::optional<Span>& span = std::nullopt);
  const Lemma* find(const std::string& name) const;
  const std::vector<Lemma>& all() const { return lemmas_; }

 private:
  std::vector<Lemma> lemmas_;
};

struct ProofState {
  std::string theorem;
  Formula statement;
  std::vector<Sequent> goals;  // goals[0] is the current one
};

// Exact, printable rendering of a proof state (used to compare states).
std::string dump_state(const ProofState& st);

struct Options {
  int search_depth = 5;
  int query_depth = 10;
  bool print_annotations = true;
};

class Session {
 public:
  Session();

  Signature sig;
  DefDb defs;
  SpecDb spec;
  LemmaDb lemmas;
  Options options;

  // Declarations.
  void load_spec(std::string_view sig_text, std::string_view mod_text,
                 const std::string& sig_file = "", const std::string& mod_file = "");
  void add_kinds(const std::vector<std::string>& names, const std::optional<Span>& span);
  void add_types(const std::vector<std::string>& names, const Ty& ty,
                 const std::optional<Span>& span);
  void define(const Command& cmd);
  void set_option(const std::string& key, const std::string& value);

  // Elaborates a closed formula (theorem statements, assert).
  Formula closed_formula(const PFormula& f) const;

  void start_theorem(const std::string& name, const PFormula& statement,
                     const std::optional<Span>& span = std::nullopt);
  bool in_proof() const { return proof_.has_value(); }
  const ProofState& state() const;
  const Sequent& current() const;

  // Runs a tactic. Returns true when it completed the proof, in which case
  // the theorem has been added to the lemmas and no proof is open.
  bool tactic(const Tactic& t, const std::optional<Span>& span = std::nullopt);
  void undo();
  void abort();

  // Animates a specification judgment; returns "yes" with bindings, "no",
  // or "depth exhausted".
  std::string query(const PFormula& f);

  // Human-readable current goal with its hypotheses.
  std::string show_state() const;

 private:
  void apply_tactic(ProofState& st, const Tactic& t);
  Scope sequent_scope(const Sequent& seq) const;
  Term elaborate_in(const Sequent& seq, const PTerm& t, const std::optional<Ty>& ty) const;

  std::optional<ProofState> proof_;
  std::vector<ProofState> history_;
};

// Search for a proof of the sequent's goal, to the given depth. Returns
// true when the goal is closed.
bool search(const Sequent& seq, int depth, const DefDb& defs, const SpecDb& spec,
            NameSupply& names);

}  // namespace nabla

#endif  // NABLA_PROVER_H_
