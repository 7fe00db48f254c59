#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "epilip/core.hpp"

namespace epilip::test {

inline Rational R(std::string_view text) { return parse_rational(text); }
inline Vector V(std::string_view text) { return parse_vector(text); }

inline std::string data_path(const std::string& name) { return std::string(EPILIP_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Problem load(const std::string& name) { return parse_problem(read_file(data_path(name))); }

inline Problem example6_1() { return load("example6_1.prob"); }
inline Problem example5_1() { return load("example5_1.prob"); }
inline Problem example5_2() { return load("example5_2.prob"); }

}  // namespace epilip::test
