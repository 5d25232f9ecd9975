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

// Script checking, the read-eval-print loop and the JSON session protocol.

#ifndef NABLA_FRONTEND_H_
#define NABLA_FRONTEND_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/prover.h"
#include "nabla/syntax.h"

namespace nabla {

enum class Mode { kBatch, kInteractive };

struct Failure {
  std::optional<Span> span;
  std::string theorem;  // empty outside a proof
  std::string message;
};

struct Report {
  std::string file;
  std::vector<std::string> admitted;  // theorem names, in order
  std::vector<Failure> failures;
  std::vector<std::string> output;    // query answers
  bool parse_error = false;
  bool quit = false;

  bool ok() const { return failures.empty(); }
  // 0 all checked, 1 check failure, 2 parse error.
  int exit_code() const;
  // Deterministic, human-readable summary.
  std::string str() const;
};

// Directory part of a path ("" for a bare name).
std::string dir_of(const std::string& path);

// Loads base.sig and base.mod.
void load_spec_files(Session& session, const std::string& base);

// Executes one parsed command. Specification paths resolve against
// base_dir. Returns the text to show (query answers), possibly empty.
std::string run_command(Session& session, const Command& cmd, const std::string& base_dir);

// Checks a script. Both modes stop at the first failure; batch mode also
// abandons an open proof so the session holds only checked theorems, while
// interactive mode leaves the session at the failure point.
Report run_script(Session& session, std::string_view text, const std::string& file,
                  Mode mode, const std::string& base_dir = "");
Report run_file(Session& session, const std::string& path, Mode mode);

// Formats an error, as "file:line:col: message" or as a JSON object.
std::string format_error(const Error& e, bool json);

// Interactive loop: reads commands terminated by '.', prints the proof
// state after each tactic.
void repl(Session& session, std::istream& in, std::ostream& out, const std::string& base_dir,
          bool json_errors, bool prompt);

// Newline-delimited JSON requests on in, one response line per request.
void serve(Session& session, std::istream& in, std::ostream& out, const std::string& base_dir);

// Handles a single protocol line; returns the response line.
std::string handle_request(Session& session, const std::string& line,
                           const std::string& base_dir);

}  // namespace nabla

#endif  // NABLA_FRONTEND_H_
