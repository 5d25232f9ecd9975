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

#include "nabla/frontend.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "nabla/print.h"

namespace nabla {

using json = nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || (!name.empty() && name[0] == '/')) return name;
  return dir + "/" + name;
}

std::string span_prefix(const std::optional<Span>& span) {
  if (!span) return "";
  return span->file + ":" + std::to_string(span->line) + ":" + std::to_string(span->col) + ": ";
}

json span_json(const std::optional<Span>& span) {
  if (!span) return nullptr;
  return json{{"file", span->file},
              {"line", span->line},
              {"col", span->col},
              {"end_line", span->end_line},
              {"end_col", span->end_col}};
}

}  // namespace

int Report::exit_code() const {
  if (parse_error) return 2;
  return failures.empty() ? 0 : 1;
}

std::string Report::str() const {
  std::string out;
  for (const auto& o : output) out += o + "\n";
  for (const auto& f : failures) {
    out += "error: " + span_prefix(f.span);
    if (!f.theorem.empty()) out += "in " + f.theorem + ": ";
    out += f.message + "\n";
  }
  out += file + ": " + std::to_string(admitted.size()) + " theorem" +
         (admitted.size() == 1 ? "" : "s") + " checked";
  if (!failures.empty()) out += ", " + std::to_string(failures.size()) + " failed";
  return out + "\n";
}

std::string dir_of(const std::string& path) {
  const std::size_t slash = path.rfind('/');
  return slash == std::string::npos ? "" : path.substr(0, slash);
}

void load_spec_files(Session& session, const std::string& base) {
  const std::string sig = base + ".sig";
  const std::string mod = base + ".mod";
  session.load_spec(read_file(sig), read_file(mod), sig, mod);
}

std::string run_command(Session& session, const Command& cmd, const std::string& base_dir) {
  using K = Command::Kind;
  if (cmd.kind != K::kTactic && cmd.kind != K::kQuery && cmd.kind != K::kSet &&
      cmd.kind != K::kQuit && session.in_proof()) {
    throw Error("finish or abort the current proof first", cmd.span);
  }
  try {
    switch (cmd.kind) {
      case K::kSpecification:
        load_spec_files(session, join_path(base_dir, cmd.name));
        return "";
      case K::kKind:
        session.add_kinds(cmd.names, cmd.span);
        return "";
      case K::kType:
        session.add_types(cmd.names, cmd.ty, cmd.span);
        return "";
      case K::kDefine:
        session.define(cmd);
        return "";
      case K::kTheorem:
        session.start_theorem(cmd.name, *cmd.formula, cmd.span);
        return "";
      case K::kQuery:
        return session.query(*cmd.formula);
      case K::kSet:
        session.set_option(cmd.name, cmd.value);
        return "";
      case K::kQuit:
        return "";
      case K::kTactic:
        session.tactic(cmd.tactic, cmd.span);
        return "";
    }
  } catch (const Error& e) {
    if (e.span()) throw;
    throw Error(e.what(), cmd.span);
  }
  return "";
}

Report run_script(Session& session, std::string_view text, const std::string& file, Mode mode,
                  const std::string& base_dir) {
  Report report;
  report.file = file;
  std::vector<Command> cmds;
  try {
    cmds = parse_commands(text, file);
  } catch (const Error& e) {
    report.parse_error = true;
    report.failures.push_back({e.span(), "", e.what()});
    return report;
  }
  for (const auto& cmd : cmds) {
    const std::string theorem = session.in_proof() ? session.state().theorem : "";
    try {
      if (cmd.kind == Command::Kind::kTheorem && session.in_proof()) {
        throw Error("proof of " + theorem + " is incomplete", cmd.span);
      }
      const bool was_open = session.in_proof();
      std::string shown = run_command(session, cmd, base_dir);
      if (!shown.empty()) report.output.push_back(shown);
      if (was_open && !session.in_proof() && cmd.kind == Command::Kind::kTactic &&
          session.lemmas.find(theorem)) {
        report.admitted.push_back(theorem);
      }
      if (cmd.kind == Command::Kind::kQuit) {
        report.quit = true;
        break;
      }
    } catch (const Error& e) {
      report.failures.push_back({e.span(), theorem.empty() && cmd.kind == Command::Kind::kTheorem
                                               ? cmd.name
                                               : theorem,
                                 e.what()});
      if (mode == Mode::kBatch && session.in_proof()) session.abort();
      return report;
    }
  }
  if (session.in_proof() && !report.quit) {
    const std::string theorem = session.state().theorem;
    report.failures.push_back({std::nullopt, theorem, "proof incomplete at end of file"});
    if (mode == Mode::kBatch) session.abort();
  }
  return report;
}

Report run_file(Session& session, const std::string& path, Mode mode) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    Report r;
    r.file = path;
    r.parse_error = true;
    r.failures.push_back({std::nullopt, "", e.what()});
    return r;
  }
  return run_script(session, text, path, mode, dir_of(path));
}

std::string format_error(const Error& e, bool as_json) {
  if (as_json) return json{{"error", e.what()}, {"span", span_json(e.span())}}.dump();
  return "error: " + span_prefix(e.span()) + e.what();
}

void repl(Session& session, std::istream& in, std::ostream& out, const std::string& base_dir,
          bool json_errors, bool prompt) {
  std::string buffer;
  int buffer_line = 1;  // input position where buffer starts
  std::size_t buffer_col = 0;
  std::string line;
  auto lines_in = [](std::string_view t) {
    return static_cast<int>(std::count(t.begin(), t.end(), '\n'));
  };
  auto show_prompt = [&]() {
    if (!prompt) return;
    out << (session.in_proof() ? session.state().theorem + " < " : "nabla < ") << std::flush;
  };
  show_prompt();
  while (std::getline(in, line)) {
    buffer += line + "\n";
    std::string rest;
    std::vector<std::string> texts;
    try {
      texts = split_commands(buffer, &rest);
    } catch (const Error& e) {
      out << format_error(e, json_errors) << "\n";
      buffer_line += lines_in(buffer);
      buffer_col = 0;
      buffer.clear();
      show_prompt();
      continue;
    }
    // Pad each command so that reported positions match the input.
    std::vector<std::string> padded;
    std::size_t cursor = 0;
    for (const auto& text : texts) {
      const std::size_t pos = buffer.find(text, cursor);
      const std::size_t bol = buffer.rfind('\n', pos == 0 ? 0 : pos - 1);
      const std::size_t col =
          bol == std::string::npos || pos == 0 ? buffer_col + pos : pos - bol - 1;
      const int row = buffer_line + lines_in(std::string_view(buffer).substr(0, pos));
      padded.push_back(std::string(row - 1, '\n') + std::string(col, ' ') + text);
      cursor = pos + text.size();
    }
    const std::string_view consumed =
        std::string_view(buffer).substr(0, buffer.size() - rest.size());
    buffer_line += lines_in(consumed);
    const std::size_t nl = consumed.rfind('\n');
    buffer_col = nl == std::string_view::npos ? buffer_col + consumed.size()
                                              : consumed.size() - nl - 1;
    buffer = rest;
    for (const auto& text : padded) {
      try {
        Command cmd = parse_command(text, "<stdin>");
        if (cmd.kind == Command::Kind::kQuit) return;
        const bool was_open = session.in_proof();
        const std::string theorem = was_open ? session.state().theorem : "";
        std::string shown = run_command(session, cmd, base_dir);
        if (!shown.empty()) out << shown << "\n";
        if (session.in_proof()) {
          out << "\n" << session.show_state() << "\n";
        } else if (was_open && session.lemmas.find(theorem)) {
          out << "Proof completed.\n";
        }
      } catch (const Error& e) {
        out << format_error(e, json_errors) << "\n";
      }
    }
    show_prompt();
  }
}

namespace {

json state_json(const Session& session) {
  const ProofState& st = session.state();
  const Sequent& g = st.goals.front();
  PrintOptions opts;
  opts.restrictions = session.options.print_annotations;
  PrintOptions bare;
  bare.restrictions = false;
  json hyps = json::array();
  for (const auto& h : g.hyps) {
    std::string ann;
    if ((h.formula.kind() == Formula::Kind::kPred || h.formula.kind() == Formula::Kind::kObj) &&
        !h.formula.restriction().is_none()) {
      ann = h.formula.restriction().str();
    }
    hyps.push_back({{"label", h.name},
                    {"formula", print_formula(h.formula, opts)},
                    {"annotation", ann}});
  }
  json vars = json::array();
  for (const auto& v : g.vars) vars.push_back({{"name", v.name}, {"type", print_ty(v.ty)}});
  json support = json::array();
  for (const auto& v : g.support()) support.push_back(v.name);
  json others = json::array();
  for (std::size_t i = 1; i < st.goals.size(); ++i) {
    others.push_back(print_formula(st.goals[i].goal, opts));
  }
  return json{{"theorem", st.theorem},
              {"goal", print_formula(g.goal, opts)},
              {"hypotheses", hyps},
              {"variables", vars},
              {"subgoals", st.goals.size()},
              {"support", support},
              {"other_goals", others}};
}

std::string param_string(const json& params, const char* key) {
  if (!params.is_object() || !params.contains(key) || !params[key].is_string()) {
    throw Error(std::string("missing string parameter '") + key + "'");
  }
  return params[key].get<std::string>();
}

std::string with_period(std::string text) {
  std::size_t end = text.find_last_not_of(" \t\r\n");
  if (end == std::string::npos || text[end] != '.') text += ".";
  return text;
}

json dispatch(Session& session, const std::string& method, const json& params,
              const std::string& base_dir) {
  if (method == "load_spec") {
    if (params.is_object() && params.contains("sig")) {
      session.load_spec(param_string(params, "sig"), param_string(params, "mod"), "<sig>",
                        "<mod>");
    } else {
      load_spec_files(session, join_path(base_dir, param_string(params, "name")));
    }
    return json{{"ok", true}};
  }
  if (method == "start_theorem") {
    const std::string name = param_string(params, "name");
    PFormulaPtr f = parse_formula(param_string(params, "formula"), "<request>");
    session.start_theorem(name, *f);
    return json{{"state", state_json(session)}};
  }
  if (method == "tactic" || method == "command") {
    Command cmd = parse_command(with_period(param_string(params, "text")), "<request>");
    if (method == "tactic" && cmd.kind != Command::Kind::kTactic) {
      throw Error("not a tactic: " + cmd.text);
    }
    const bool was_open = session.in_proof();
    const std::string theorem = was_open ? session.state().theorem : "";
    std::string shown = run_command(session, cmd, base_dir);
    json result = json::object();
    if (!shown.empty()) result["output"] = shown;
    if (session.in_proof()) {
      result["state"] = state_json(session);
    } else {
      result["state"] = nullptr;
      if (was_open && session.lemmas.find(theorem)) result["proved"] = theorem;
    }
    return result;
  }
  if (method == "state") return json{{"state", state_json(session)}};
  if (method == "undo") {
    session.undo();
    return json{{"state", state_json(session)}};
  }
  if (method == "query") {
    PFormulaPtr f = parse_formula(param_string(params, "formula"), "<request>");
    return json{{"answer", session.query(*f)}};
  }
  if (method == "list_lemmas") {
    json out = json::array();
    for (const auto& l : session.lemmas.all()) {
      out.push_back({{"name", l.name}, {"formula", print_formula(l.formula)}});
    }
    return json{{"lemmas", out}};
  }
  throw Error("unknown method " + method);
}

}  // namespace

std::string handle_request(Session& session, const std::string& line,
                           const std::string& base_dir) {
  json req;
  try {
    req = json::parse(line);
  } catch (const json::exception& e) {
    return json{{"id", nullptr}, {"error", {{"message", std::string("malformed JSON")}}}}
        .dump();
  }
  if (!req.is_object() || !req.contains("method") || !req["method"].is_string() ||
      (req.contains("id") && !req["id"].is_number_integer())) {
    json id = req.is_object() && req.contains("id") && req["id"].is_number_integer()
                  ? req["id"]
                  : json(nullptr);
    return json{{"id", id}, {"error", {{"message", "malformed request"}}}}.dump();
  }
  json id = req.contains("id") ? req["id"] : json(nullptr);
  json params = req.contains("params") ? req["params"] : json::object();
  try {
    json result = dispatch(session, req["method"].get<std::string>(), params, base_dir);
    return json{{"id", id}, {"result", result}}.dump();
  } catch (const Error& e) {
    return json{{"id", id}, {"error", {{"message", e.what()}, {"span", span_json(e.span())}}}}
        .dump();
  }
}

void serve(Session& session, std::istream& in, std::ostream& out, const std::string& base_dir) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << handle_request(session, line, base_dir) << "\n" << std::flush;
  }
}

}  // namespace nabla
