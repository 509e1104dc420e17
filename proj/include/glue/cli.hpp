#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "glue/prover.hpp"

namespace glue {

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::string fstructure_path;
  std::string lexicon_path;
  std::optional<std::string> goal;  // "f", "f_σ" or "f:e -> t"
  bool trace = false;
  bool all_traces = false;
  OutputFormat format = OutputFormat::Text;
};

namespace exit_code {
constexpr int ok = 0;
constexpr int input_error = 1;
constexpr int incomplete = 2;
constexpr int incoherent = 3;
constexpr int incomplete_incoherent = 4;
constexpr int uninstantiable = 5;
}  // namespace exit_code

/// Readings go to `out`; diagnoses and errors go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

Goal parse_goal(const std::string& text);

int cli_main(int argc, char** argv);

}  // namespace glue
