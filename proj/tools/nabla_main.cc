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

// nabla [file.thm] [--spec base] [--serve] [--json-errors] [--version]

#include <unistd.h>

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nabla/frontend.h"

namespace {

constexpr const char* kVersion = "nabla 0.1.0";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nabla: a prover for specifications in lambda-tree syntax"};
  std::string script;
  std::string spec;
  bool serve_mode = false;
  bool json_errors = false;
  app.add_option("script", script, "theorem file to check in batch mode");
  app.add_option("--spec", spec, "preload base.sig and base.mod");
  app.add_flag("--serve", serve_mode, "speak the JSON protocol on stdin/stdout");
  app.add_flag("--json-errors", json_errors, "print errors as JSON objects");
  app.set_version_flag("--version", kVersion);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (serve_mode && !script.empty()) {
    std::cerr << "error: --serve does not take a script\n";
    return 2;
  }

  nabla::Session session;
  if (!spec.empty()) {
    try {
      nabla::load_spec_files(session, spec);
    } catch (const nabla::Error& e) {
      std::cerr << nabla::format_error(e, json_errors) << "\n";
      return 2;
    }
  }

  if (serve_mode) {
    nabla::serve(session, std::cin, std::cout, "");
    return 0;
  }
  if (script.empty()) {
    nabla::repl(session, std::cin, std::cout, "", json_errors, isatty(STDIN_FILENO));
    return 0;
  }

  nabla::Report report = nabla::run_file(session, script, nabla::Mode::kBatch);
  if (json_errors) {
    for (const auto& o : report.output) std::cout << o << "\n";
    for (const auto& f : report.failures) {
      std::cerr << nabla::format_error(nabla::Error(f.message, f.span), true) << "\n";
    }
    std::cout << report.file << ": " << report.admitted.size() << " theorems checked\n";
  } else {
    std::cout << report.str();
  }
  return report.exit_code();
}
