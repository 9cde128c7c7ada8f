#pragma once

#include <vector>

#include "pqchain/bignat.hpp"
#include "pqchain/contfrac.hpp"
#include "pqchain/core.hpp"
#include "pqchain/interval.hpp"

namespace pqchain {

// phi_{a,b} = -log_p(1 - r/p^a (1 - q^-b)).
Interval phi(const Params& params, unsigned long a, const BigNat& b, mpfr_prec_t prec = 128);

// {b rho} for b >= 1, at a precision that keeps its relative error small.
Interval frac_b_rho(const Params& params, const BigNat& b);

// Least j in the below stream with {j rho} < phi_{a,j}. Margins too narrow
// for intervals are settled by h_compare((a,j), (a + floor(j rho), 0)).
BelowTerm beta(ConvergentTable& table, unsigned long a);

// alpha(b) = log_p((q^b - 1)/(q^b - p^floor(b rho))) + log_p((q - p)/(q - 1)).
Interval alpha(const Params& params, unsigned long b, mpfr_prec_t prec = 128);

// floor(alpha(b)) from p^a (q-1)(q^b - p^c) <= (q-p)(q^b - 1), c = floor(b rho).
long alpha_floor_exact(const Params& params, unsigned long b);

// alpha+(b) = log_p((q-p)/((q-1) ln p)) + log_p(1/{b rho}) + {b rho}/2.
Interval alpha_plus(const Params& params, const BigNat& b, mpfr_prec_t prec = 128);

// (ln p)/6 {b rho}^2 + 1/((q^b - 1) ln p), an upper bound for alpha+ - alpha
// at b = K_n (1/(q^b - 1) is replaced by 2^(1 - b floor(log2 q)) for large b).
Interval alpha_plus_gap(const Params& params, const BigNat& b);

struct AlphaFloor {
  long value = 0;
  bool exact_fallback = false;
};

// floor(alpha(K)) for K in the below stream: alpha+ when it clears the
// nearest integer by the gap bound, the exact test otherwise.
AlphaFloor alpha_floor(const Params& params, const BigNat& K);

// l_b via the below-stream term bracketing b. l_0 = 0.
unsigned long ell_value(ConvergentTable& table, const BigNat& b);

struct Jump {
  BigNat index;
  unsigned long value = 0;
  std::size_t s = 0;  // index == k_{2s} + t k_{2s+1}
  unsigned long t = 0;
};

// First `count` jumps: j_0 = beta(0), j_{k+1} = beta(l_{j_k}).
std::vector<Jump> jump_indices(ConvergentTable& table, std::size_t count);

// Step function l built from its jumps; exact for b below the last jump
// covered.
class EllTable {
 public:
  // Collects jumps until one exceeds max_b.
  EllTable(ConvergentTable& table, const BigNat& max_b);

  const std::vector<Jump>& jumps() const noexcept { return jumps_; }
  const BigNat& max_b() const noexcept { return max_b_; }
  unsigned long value_at(const BigNat& b) const;
  bool is_jump(const BigNat& b) const;

 private:
  BigNat max_b_;
  std::vector<Jump> jumps_;
};

// m_l = max{b : p^{l_b} q^b <= m}.
unsigned long m_ell(ConvergentTable& table, const BigNat& m);

// Reference m_l by scanning b with ell_value.
unsigned long m_ell_scan(ConvergentTable& table, const BigNat& m);

}  // namespace pqchain
