#pragma once

// Test-side oracles, kept independent of the library's group arithmetic:
// plain dense matrices over boost::multiprecision::cpp_rational, multiplied
// with the textbook triple loop. Library matrices are converted entrywise and
// products are compared against this route.

#include <vector>

#include "hstab/exact.hpp"
#include "hstab/groups.hpp"

namespace oracles {

using Rat = hstab::exact::BigRational;

struct RatMatrix {
  int n = 0;
  std::vector<Rat> a;

  static RatMatrix identity(int n) {
    RatMatrix m;
    m.n = n;
    m.a.assign(static_cast<size_t>(n) * n, Rat(0));
    for (int i = 0; i < n; ++i) m.a[static_cast<size_t>(i) * n + i] = Rat(1);
    return m;
  }

  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
    RatMatrix r;
    r.n = x.n;
    r.a.assign(static_cast<size_t>(x.n) * x.n, Rat(0));
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        if (x.at(i, k) == 0) continue;
        for (int j = 0; j < x.n; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return r;
  }

  friend bool operator==(const RatMatrix& x, const RatMatrix& y) {
    return x.n == y.n && x.a == y.a;
  }
};

inline RatMatrix to_rat(const hstab::groups::UTMatrix& m) {
  RatMatrix r;
  r.n = m.dim();
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) r.a.push_back(m.at(i, j).to_rational());
  return r;
}

} // namespace oracles
