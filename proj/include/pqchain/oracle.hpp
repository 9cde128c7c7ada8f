#pragma once

#include <vector>

#include "pqchain/bignat.hpp"
#include "pqchain/core.hpp"

namespace pqchain {

// G(m) from the recursion on m/p and m/q, memoized per call.
BigNat g_recursive(const Params& params, const BigNat& m);

struct FrontierScan {
  BigNat g;
  std::vector<LatticePoint> argmax;  // Y_m, increasing in b
};

// max of h over Z_m together with every point attaining it.
FrontierScan g_frontier_scan(const Params& params, const BigNat& m);

inline constexpr unsigned long kExhaustiveCap = 5000;

// Best weight over every strictly chained partition with parts <= m, by
// depth-first search. Throws Error(CapExceeded) for m > cap.
BigNat g_exhaustive(const Params& params, unsigned long m, unsigned long cap = kExhaustiveCap);

}  // namespace pqchain
