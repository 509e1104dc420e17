#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "glue/fstructure.hpp"
#include "glue/lexicon.hpp"

namespace test {

inline std::string data_path(const std::string& name) {
  const char* dir = std::getenv("GLUE_DATA_DIR");
  return std::string(dir ? dir : "data") + "/" + name;
}

inline std::string slurp(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw std::runtime_error("cannot open " + data_path(name));
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline glue::Lexicon load_lexicon() { return glue::parse_lexicon(slurp("lexicon.glue")); }
inline glue::FStructure load_fstructure(const std::string& name) { return glue::parse_fstructure(slurp(name)); }

}  // namespace test
