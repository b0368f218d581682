#pragma once

#include <string>

#include "qudit/errors.hpp"

namespace qudit {

// Symmetric index grid of an odd-dimensional qudit: d = 2s+1, logical index
// n in {-s,...,s}. All public APIs speak logical indices; the +s storage
// offset never leaks out.
struct Grid {
  int d = 0;
  int s = 0;

  int storage(int n) const { return n + s; }
  int logical(int i) const { return i - s; }
  bool in_range(int n) const { return n >= -s && n <= s; }

  // Wrap an arbitrary integer into {-s,...,s} modulo d.
  int wrap(int n) const {
    int r = n % d;
    if (r > s) r -= d;
    if (r < -s) r += d;
    return r;
  }

  bool operator==(const Grid&) const = default;
};

inline Grid make_grid(int d) {
  if (d < 3 || d % 2 == 0) {
    throw DimensionError("grid dimension must be an odd integer >= 3, got " + std::to_string(d));
  }
  return Grid{d, (d - 1) / 2};
}

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) {
    throw GridMismatchError(std::string(where) + ": grids differ (d=" + std::to_string(a.d) +
                            " vs d=" + std::to_string(b.d) + ")");
  }
}

}  // namespace qudit
