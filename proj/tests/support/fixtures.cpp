#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fixtures {

std::string read(const std::string& full_path) {
  std::ifstream in(full_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + full_path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace fixtures
