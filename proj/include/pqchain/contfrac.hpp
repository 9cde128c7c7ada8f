#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "pqchain/bignat.hpp"
#include "pqchain/core.hpp"
#include "pqchain/interval.hpp"

namespace pqchain {

// Enclosure of rho = log q / log p at the given working precision.
Interval rho_enclosure(const Params& params, mpfr_prec_t prec);

// Enclosure of log_p(m) for m >= 1.
Interval log_base_p(const Params& params, const BigNat& m, mpfr_prec_t prec);

// Largest c with p^c < q^b, i.e. floor(b * rho) for b >= 1 (0 for b == 0).
BigNat floor_b_rho(const Params& params, unsigned long b);

// Principal convergents h_i / k_i of rho with their errors
// eps_i = |k_i rho - h_i|. Partial quotients come from interval evaluation
// of eps_{i-2} / eps_{i-1}; each convergent is then confirmed by comparing
// p^h against q^k exactly (while k_i + k_{i-1} <= kExactCertifyLimit).
//
// Immutable once built; deepen() mutates and must not race with readers.
class ConvergentTable {
 public:
  static constexpr std::size_t kMaxDepth = 256;
  static constexpr unsigned long kExactCertifyLimit = 1UL << 22;
  static constexpr mpfr_prec_t kMaxPrecision = 1 << 16;

  ConvergentTable(const Params& params, std::size_t depth);

  const Params& params() const noexcept { return params_; }
  std::size_t depth() const noexcept { return k_.size(); }
  mpfr_prec_t precision() const noexcept { return prec_; }

  unsigned long a(std::size_t i) const { return a_.at(i); }
  const BigNat& h(std::size_t i) const { return h_.at(i); }
  const BigNat& k(std::size_t i) const { return k_.at(i); }
  const Interval& eps(std::size_t i) const { return eps_.at(i); }
  const Interval& rho() const noexcept { return rho_; }
  // True when the convergent's side of rho was confirmed with exact powers.
  bool exact_certified(std::size_t i) const { return certified_.at(i); }

  // eps_i recomputed at a different precision.
  Interval eps_at(std::size_t i, mpfr_prec_t prec) const;

  // Appends convergents up to new_depth. Throws Error(BudgetExceeded) past
  // kMaxDepth or kMaxPrecision.
  void deepen(std::size_t new_depth);

  // Deepens until an even index 2s with k_{2s} > bound exists.
  void cover(const BigNat& bound);
  // Index of the first even convergent with k > bound, deepening as needed.
  std::size_t first_even_above(const BigNat& bound);

 private:
  void recompute_eps();
  bool next_digit(unsigned long& digit) const;
  void certify(std::size_t i);

  Params params_;
  mpfr_prec_t prec_;
  Interval rho_;
  std::vector<unsigned long> a_;
  std::vector<BigNat> h_;
  std::vector<BigNat> k_;
  std::vector<Interval> eps_;
  std::vector<bool> certified_;
};

inline ConvergentTable expand_rho(const Params& params, std::size_t depth_budget) {
  return ConvergentTable(params, depth_budget);
}

// One term of the best-from-below sequence: K = k_{2s} + t k_{2s+1},
// H = h_{2s} + t h_{2s+1}, 0 <= t < a_{2s+2}.
struct BelowTerm {
  BigNat K;
  BigNat H;
  std::size_t s = 0;
  unsigned long t = 0;
};

inline constexpr std::size_t kBelowStreamCap = 1'000'000;

// Even convergents merged with their mediants, increasing in K, for every
// level s whose a_{2s+2} is known. Throws Error(CapExceeded) beyond cap terms.
std::vector<BelowTerm> below_stream(const ConvergentTable& table, std::size_t cap = kBelowStreamCap);

BelowTerm below_term(const ConvergentTable& table, std::size_t s, unsigned long t);

// The term K_n with k_{2s} <= b < k_{2s+2}, t = (b - k_{2s}) / k_{2s+1}:
// the largest K_n not exceeding b (b >= 1). Deepens as needed.
BelowTerm locate_below(ConvergentTable& table, const BigNat& b);

// Returns the term after `term` in the below stream (deepening as needed).
BelowTerm next_below(ConvergentTable& table, const BelowTerm& term);

// {k_{2s,t} rho} = eps_{2s} - t eps_{2s+1}, checked against
// eps_{2s+2} + (a_{2s+2} - t) eps_{2s+1}. 0 <= t <= a_{2s+2}.
Interval frac_K(const ConvergentTable& table, std::size_t s, unsigned long t);

// Rational bracket lo < rho < hi from two consecutive convergents, of width
// at most 2^-bits.
struct RationalInterval {
  mpq_class lo;
  mpq_class hi;
};
RationalInterval rho_interval(const Params& params, unsigned long bits);

}  // namespace pqchain
