#pragma once

#include <string>
#include <vector>

#include "pqchain/bignat.hpp"
#include "pqchain/core.hpp"

namespace pqchain {

// Z_m: for each b = 0..floor(log_q m) the point (a, b) with a largest such
// that p^a q^b <= m.
struct FrontierSet {
  BigNat m;
  std::vector<LatticePoint> points;
  std::vector<BigNat> values;
  std::vector<BigNat> hvals;

  std::size_t size() const noexcept { return points.size(); }
};

// Exact exponent search, no logarithms. Throws Error(OutOfRange) for m == 0
// or b > floor(log_q m).
LatticePoint zeta(const Params& params, const BigNat& m, unsigned long b);

FrontierSet z_set(const Params& params, const BigNat& m);

// Point of Z_m with the greatest part value.
LatticePoint z_max(const Params& params, const BigNat& m);

// Indices into set.points attaining the maximal h, increasing in b.
std::vector<std::size_t> argmax_h(const Params& params, const FrontierSet& set);

// Y_m, ordered by increasing b.
std::vector<LatticePoint> y_set(const Params& params, const BigNat& m);

// Element of Y_m with the smallest part value.
LatticePoint y_min(const Params& params, const BigNat& m);

struct RecurrenceReport {
  bool qm_ok = true;
  bool pm_ok = true;
  std::vector<std::string> violations;

  bool ok() const noexcept { return qm_ok && pm_ok; }
};

// Checks Z_qm = q Z_m + {p^floor(log_p qm)} and Z_pm = p Z_m, plus
// q^floor(log_q pm) when floor(log_q pm) != floor(log_q m).
RecurrenceReport check_z_recurrences(const Params& params, const BigNat& m);

}  // namespace pqchain
