#include "counting.hpp"

#include <algorithm>
#include <array>

namespace counting {

uint64_t latin_3x3() {
  uint64_t n = 0;
  std::array<int, 9> g{};
  for (int code = 0; code < 19683; ++code) {
    int c = code;
    for (int i = 0; i < 9; ++i) {
      g[static_cast<size_t>(i)] = 1 + c % 3;
      c /= 3;
    }
    bool ok = true;
    for (int r = 0; r < 3 && ok; ++r)
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          if (g[static_cast<size_t>(3 * r + a)] == g[static_cast<size_t>(3 * r + b)]) ok = false;
          if (g[static_cast<size_t>(3 * a + r)] == g[static_cast<size_t>(3 * b + r)]) ok = false;
        }
    n += ok;
  }
  return n;
}

uint64_t magic_3x3() {
  std::array<int, 9> p{1, 2, 3, 4, 5, 6, 7, 8, 9};
  uint64_t n = 0;
  static const int lines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                  {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {6, 4, 2}};
  do {
    bool ok = true;
    for (const auto& l : lines)
      if (p[static_cast<size_t>(l[0])] + p[static_cast<size_t>(l[1])] + p[static_cast<size_t>(l[2])] != 15) {
        ok = false;
        break;
      }
    n += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return n;
}

uint64_t langford_2_4() {
  // x[0][k], x[1][k] for k = 0..3, flattened row-major, each in 0..7
  uint64_t n = 0;
  std::array<int, 8> x{};
  for (uint32_t code = 0; code < (1u << 24); ++code) {
    uint32_t c = code;
    for (auto& v : x) {
      v = static_cast<int>(c & 7u);
      c >>= 3;
    }
    bool ok = true;
    for (int k = 0; k < 4 && ok; ++k)
      if (x[static_cast<size_t>(4 + k)] != x[static_cast<size_t>(k)] + k + 2) ok = false;
    for (int a = 0; a < 8 && ok; ++a)
      for (int b = a + 1; b < 8; ++b)
        if (x[static_cast<size_t>(a)] == x[static_cast<size_t>(b)]) {
          ok = false;
          break;
        }
    n += ok;
  }
  return n;
}

}  // namespace counting
