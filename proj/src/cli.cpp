#include "glue/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "glue/diagnostics.hpp"
#include "glue/error.hpp"

namespace glue {

namespace {

using nlohmann::json;

struct InputError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

template <typename Parse>
auto parse_file(const std::string& path, Parse parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  } catch (const TypeError& e) {
    throw InputError(path + ": " + e.what());
  }
}

int status_code(Status s) {
  switch (s) {
    case Status::Ok:
      return exit_code::ok;
    case Status::Incomplete:
      return exit_code::incomplete;
    case Status::Incoherent:
      return exit_code::incoherent;
    case Status::IncompleteIncoherent:
      return exit_code::incomplete_incoherent;
    case Status::Uninstantiable:
      return exit_code::uninstantiable;
  }
  return exit_code::input_error;
}

json diagnosis_json(const Diagnosis& d) {
  json demands = json::array();
  for (const auto& u : d.unsatisfied_demands) demands.push_back({{"atom", u.atom}, {"demanded_by", u.demanded_by}});
  json leftovers = json::array();
  for (const auto& l : d.leftover_resources) {
    leftovers.push_back({{"premise", l.premise}, {"provenance", l.provenance}, {"formula", l.formula}});
  }
  json out = {{"status", to_string(d.status)}, {"unsatisfied_demands", demands}, {"leftover_resources", leftovers}};
  if (!d.message.empty()) out["message"] = d.message;
  return out;
}

void print_diagnosis(const Diagnosis& d, std::ostream& err) {
  err << "status: " << to_string(d.status) << "\n";
  if (!d.message.empty()) err << d.message << "\n";
  for (const auto& u : d.unsatisfied_demands) {
    err << "unsatisfied demand: " << u.atom << " (needed by " << u.demanded_by << ")\n";
  }
  for (const auto& l : d.leftover_resources) {
    err << "leftover resource: #" << l.premise << " " << l.provenance << ": " << l.formula << "\n";
  }
}

}  // namespace

Goal parse_goal(const std::string& text) {
  Goal goal;
  std::string label = text;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    label = text.substr(0, colon);
    try {
      goal.type = parse_type(text.substr(colon + 1));
    } catch (const Error& e) {
      throw InputError("--goal " + text + ": " + e.what());
    }
  }
  const std::string sigma = "_\xCF\x83";
  if (label.size() > sigma.size() && label.compare(label.size() - sigma.size(), sigma.size(), sigma) == 0) {
    label.resize(label.size() - sigma.size());
  }
  if (label.empty()) throw InputError("--goal " + text + ": missing label");
  goal.label = label;
  return goal;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Diagnosis d;
  try {
    Lexicon lexicon = parse_file(config.lexicon_path, [](const std::string& t) { return parse_lexicon(t); });
    FStructure root = parse_file(config.fstructure_path, [](const std::string& t) { return parse_fstructure(t); });
    Goal goal = root_goal(root);
    if (config.goal) {
      goal = parse_goal(*config.goal);
      bool known = false;
      for (const auto& node : root.nodes()) known = known || node.label() == goal.label;
      if (!known) throw InputError("--goal " + *config.goal + ": no f-structure labelled " + goal.label);
    }
    ProverOptions options;
    options.all_traces = config.all_traces;
    try {
      d = diagnose(root, lexicon, goal, options);
    } catch (const MissingEntryError& e) {
      d.status = Status::Uninstantiable;
      d.message = std::string(config.fstructure_path) + ": " + e.what();
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::input_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::input_error;
  }

  bool traces = config.trace || config.all_traces;
  if (config.format == OutputFormat::Json) {
    json readings = json::array();
    for (const auto& r : d.readings) {
      json item = {{"meaning", to_string(r.meaning)}, {"type", r.type.str()}};
      if (traces) item["trace"] = render_trace(r.traces.front());
      if (config.all_traces) {
        json all = json::array();
        for (const auto& t : r.traces) all.push_back(render_trace(t));
        item["traces"] = all;
      }
      readings.push_back(item);
    }
    json doc = {{"readings", readings}, {"diagnosis", diagnosis_json(d)}};
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : d.readings) {
      out << to_string(r.meaning) << "\n";
      if (!traces) continue;
      std::size_t shown = config.all_traces ? r.traces.size() : 1;
      for (std::size_t i = 0; i < shown; ++i) {
        if (i > 0) out << "  --\n";
        for (const auto& line : render_trace(r.traces[i])) out << "  " << line << "\n";
      }
    }
  }
  if (d.status != Status::Ok) print_diagnosis(d, err);
  return status_code(d.status);
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Glue semantics: derive sentence meanings from LFG f-structures"};
  app.require_subcommand(1);
  RunConfig config;
  bool json_output = false;
  CLI::App* derive_cmd = app.add_subcommand("derive", "Print every reading of an analysis");
  derive_cmd->add_option("--fstructure", config.fstructure_path, "f-structure file")->required();
  derive_cmd->add_option("--lexicon", config.lexicon_path, "lexicon file")->required();
  derive_cmd->add_option("--goal", config.goal, "goal structure and type, e.g. f or f:t (default: the root, type t)");
  derive_cmd->add_flag("--trace", config.trace, "print the derivation of each reading");
  derive_cmd->add_flag("--all-traces", config.all_traces, "print every distinct derivation of each reading");
  derive_cmd->add_flag("--json", json_output, "structured output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::input_error;
  }
  if (json_output) config.format = OutputFormat::Json;
  return run(config, std::cout, std::cerr);
}

}  // namespace glue
