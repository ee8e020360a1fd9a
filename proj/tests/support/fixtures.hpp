#pragma once

#include <string>

#ifndef XCSP3KIT_TEST_DATA
#error "XCSP3KIT_TEST_DATA must point at the tests directory"
#endif

namespace fixtures {

inline std::string path(const std::string& rel) { return std::string(XCSP3KIT_TEST_DATA) + "/" + rel; }
inline std::string corpus(const std::string& file) { return path("corpus/" + file); }
std::string read(const std::string& full_path);

}  // namespace fixtures
