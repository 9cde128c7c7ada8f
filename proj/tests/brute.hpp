#pragma once

// Slow, obviously-correct reference computations used only by the tests.

#include <algorithm>
#include <map>
#include <vector>

#include "pqchain/bignat.hpp"

namespace brute {

using pqchain::BigNat;

struct Pt {
  unsigned long a, b;
  BigNat value;
};

// Every p^a q^b <= m.
inline std::vector<Pt> smooth_upto(unsigned long p, unsigned long q, const BigNat& m) {
  std::vector<Pt> out;
  BigNat qb = 1;
  for (unsigned long b = 0; qb <= m; ++b, qb *= q) {
    BigNat v = qb;
    for (unsigned long a = 0; v <= m; ++a, v *= p) out.push_back({a, b, v});
  }
  std::sort(out.begin(), out.end(), [](const Pt& x, const Pt& y) { return x.value < y.value; });
  return out;
}

// Elements of E below m not properly dividing another element of E below m.
inline std::vector<Pt> maximal_upto(unsigned long p, unsigned long q, const BigNat& m) {
  std::vector<Pt> all = smooth_upto(p, q, m), out;
  for (const auto& x : all) {
    bool dominated = false;
    for (const auto& y : all)
      if (y.value != x.value && y.value % x.value == 0) dominated = true;
    if (!dominated) out.push_back(x);
  }
  return out;
}

// Heaviest chain weight below m: best(x) = x + max over proper divisors.
inline BigNat heaviest_weight(unsigned long p, unsigned long q, const BigNat& m) {
  const std::vector<Pt> all = smooth_upto(p, q, m);
  std::vector<BigNat> best(all.size());
  BigNat top = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    BigNat below = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (all[i].value % all[j].value == 0) below = std::max(below, best[j]);
    best[i] = all[i].value + below;
    top = std::max(top, best[i]);
  }
  return top;
}

// h(a, b) by summing the parts of the heaviest chain directly.
inline BigNat h_by_sum(unsigned long p, unsigned long q, unsigned long a, unsigned long b) {
  BigNat sum = 0, qb = 1;
  for (unsigned long j = 0; j < b; ++j, qb *= q) sum += qb;
  BigNat v = qb;
  for (unsigned long i = 0; i <= a; ++i, v *= p) sum += v;
  return sum;
}

// floor(b log q / log p) by repeated multiplication.
inline unsigned long floor_b_rho(unsigned long p, unsigned long q, unsigned long b) {
  BigNat qb = 1;
  for (unsigned long i = 0; i < b; ++i) qb *= q;
  unsigned long c = 0;
  BigNat pc = p;
  while (pc <= qb) {
    pc *= p;
    ++c;
  }
  return c;
}

}  // namespace brute
