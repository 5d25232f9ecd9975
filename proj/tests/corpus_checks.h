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

// Whole-corpus replays shared by the frontend tests and the acceptance
// gate. Each check returns an empty string on success, otherwise a
// description of the first problem.

#ifndef NABLA_TESTS_CORPUS_CHECKS_H_
#define NABLA_TESTS_CORPUS_CHECKS_H_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nabla/elaborate.h"
#include "nabla/frontend.h"
#include "nabla/print.h"
#include "nabla/prover.h"

namespace nabla::corpus {

inline std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Sorted .thm files directly in dir.
inline std::vector<std::string> scripts(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".thm") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Runs each command of the script in a fresh session, calling `after` with
// the command once it succeeded. Stops at the first failing command.
inline std::string replay(const std::string& path,
                          const std::function<std::string(Session&, const Command&)>& after) {
  Session s;
  std::vector<Command> cmds;
  try {
    cmds = parse_commands(read(path), path);
  } catch (const Error& e) {
    return path + ": " + e.what();
  }
  for (const auto& cmd : cmds) {
    try {
      run_command(s, cmd, dir_of(path));
    } catch (const Error& e) {
      return path + ": " + cmd.text + ": " + e.what();
    }
    std::string err = after(s, cmd);
    if (!err.empty()) return path + ": " + cmd.text + ": " + err;
  }
  return "";
}

// After every tactic: undo, compare with the state before, redo.
inline std::string check_undo(const std::string& path) {
  std::string before;
  Session s;
  std::vector<Command> cmds = parse_commands(read(path), path);
  for (const auto& cmd : cmds) {
    const bool tactic = cmd.kind == Command::Kind::kTactic && s.in_proof();
    if (tactic) before = dump_state(s.state());
    try {
      run_command(s, cmd, dir_of(path));
      if (tactic && s.in_proof()) {
        s.undo();
        if (dump_state(s.state()) != before) return path + ": " + cmd.text + ": undo differs";
        run_command(s, cmd, dir_of(path));
      }
    } catch (const Error& e) {
      return path + ": " + cmd.text + ": " + e.what();
    }
  }
  return "";
}

// Prints f and reads it back in the scope of seq.
inline std::string formula_round_trip(const Session& s, const Sequent& seq, const Formula& f) {
  const std::string text = print_formula(f);
  Scope scope;
  scope.sig = &s.sig;
  for (const auto& v : seq.vars) scope.vars[v.name] = Term::var(v);
  for (const auto& v : seq.support()) scope.vars[v.name] = Term::var(v);
  try {
    Formula back = elaborate_formula(*parse_formula(text), scope).formula;
    if (!formula_equal(f, back)) return "reparsed differently: " + text;
  } catch (const Error& e) {
    return "does not reparse: " + text + ": " + e.what();
  }
  return "";
}

// Every command prints and reparses to the same tree; every formula shown
// in a proof state does too.
inline std::string check_round_trip(const std::string& path) {
  std::vector<Command> cmds;
  try {
    cmds = parse_commands(read(path), path);
  } catch (const Error& e) {
    return path + ": " + e.what();
  }
  for (const auto& c : cmds) {
    try {
      if (!same_tree(c, parse_command(str(c)))) return path + ": command " + str(c);
    } catch (const Error& e) {
      return path + ": command " + str(c) + ": " + e.what();
    }
  }
  return replay(path, [](Session& s, const Command&) -> std::string {
    if (!s.in_proof()) return "";
    for (const auto& g : s.state().goals) {
      std::string err = formula_round_trip(s, g, g.goal);
      for (const auto& h : g.hyps) {
        if (!err.empty()) break;
        err = formula_round_trip(s, g, h.formula);
      }
      if (!err.empty()) return err;
    }
    return "";
  });
}

// Replays the script through the REPL session API and through the JSON
// protocol side by side, comparing serialized states after each command.
inline std::string check_protocol_equivalence(const std::string& path) {
  Session proto;
  int id = 0;
  return replay(path, [&](Session& s, const Command& cmd) -> std::string {
    nlohmann::json req{{"id", ++id}, {"method", "command"}, {"params", {{"text", str(cmd)}}}};
    nlohmann::json resp = nlohmann::json::parse(handle_request(proto, req.dump(), dir_of(path)));
    if (resp.contains("error")) return "protocol rejected: " + resp["error"].dump();
    if (resp["id"] != id) return "response id mismatch";
    if (s.in_proof() != proto.in_proof()) return "proof open in one session only";
    if (s.in_proof() && dump_state(s.state()) != dump_state(proto.state())) {
      return "states differ";
    }
    nlohmann::json st = nlohmann::json::parse(
        handle_request(proto, R"({"id":0,"method":"state"})", dir_of(path)));
    if (s.in_proof() != st.contains("result")) return "state request disagrees";
    if (s.in_proof() &&
        st["result"]["state"]["subgoals"].get<std::size_t>() != s.state().goals.size()) {
      return "subgoal count differs";
    }
    return "";
  });
}

}  // namespace nabla::corpus

#endif  // NABLA_TESTS_CORPUS_CHECKS_H_
