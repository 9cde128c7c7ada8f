#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pqchain/bignat.hpp"
#include "pqchain/contfrac.hpp"
#include "pqchain/core.hpp"

namespace pqchain {

// How the branch test "r >= d rho - c" is decided.
//   FixedPoint: MPFR enclosures of log_p m and rho, precision doubled on
//               ambiguity, exact powers as the last resort.
//   ModK:       rho replaced by H/K for a deep even convergent, everything
//               scaled by K and compared as integers; the one ambiguous
//               residue goes to exact powers.
//   Exact:      p^(A-c) q^(b+d) <= m with big integers.
enum class FastMode { FixedPoint, ModK, Exact };

const char* to_string(FastMode mode);
FastMode parse_fast_mode(const std::string& text);

struct FastOptions {
  FastMode mode = FastMode::FixedPoint;
  // Ceiling for FixedPoint precision; 0 picks a default from the input size
  // (PQCHAIN_MAX_PRECISION in the environment overrides it).
  mpfr_prec_t max_precision = 0;
  // When false an unresolved comparison throws PrecisionEscalationFailed
  // instead of switching to exact powers.
  bool allow_fallback = true;
  // Keep the outcome of every branch test for differential checks.
  bool record_decisions = false;
};

enum class StepKind { EvenConvergent, Mediant };

const char* to_string(StepKind kind);

// `multiplicity` consecutive steps of size d = k_{2s} + t k_{2s+1}.
struct TraceStep {
  BigNat d;
  StepKind kind = StepKind::EvenConvergent;
  std::size_t s = 0;
  unsigned long t = 0;
  unsigned long multiplicity = 1;
};

struct FastStats {
  unsigned long comparisons = 0;
  unsigned long escalations = 0;
  unsigned long fallbacks = 0;
  mpfr_prec_t final_precision = 0;
};

struct FastResult {
  unsigned long b = 0;
  std::vector<TraceStep> trace;
  unsigned long iterations = 0;  // levels s entered
  FastStats stats;
  std::vector<bool> decisions;

  // b_0 = 0, b_1, ... as reached by the trace.
  std::vector<unsigned long> b_sequence() const;
  // Trace expanded to one entry per step.
  std::vector<BigNat> steps() const;
};

// Largest b_i <= B of the sequence b_0 = 0 < b_1 < ... of record maxima of
// zeta(b) = p^floor(log_p m - b rho) q^b. Requires m >= 1 and
// B <= floor(log_q m).
FastResult run_fast(ConvergentTable& table, const BigNat& m, unsigned long B, const FastOptions& options = {});
FastResult run_fast(const Params& params, const BigNat& m, unsigned long B, const FastOptions& options = {});

// 2 + floor(log2 log_q m) for m >= q; 2 below that.
unsigned long iteration_bound(const Params& params, const BigNat& m);

LatticePoint z_fast(ConvergentTable& table, const BigNat& m, const FastOptions& options = {});
LatticePoint y_fast(ConvergentTable& table, const BigNat& m, const FastOptions& options = {});
BigNat g_fast(ConvergentTable& table, const BigNat& m, const FastOptions& options = {});

LatticePoint z_fast(const Params& params, const BigNat& m, const FastOptions& options = {});
LatticePoint y_fast(const Params& params, const BigNat& m, const FastOptions& options = {});
BigNat g_fast(const Params& params, const BigNat& m, const FastOptions& options = {});

struct YFactorization {
  unsigned long a_bar = 0;  // floor(log_p m - m_l rho)
  BigNat m_bar;             // floor(m / p^a_bar)
  LatticePoint z_bar;       // z_{m_bar}
  LatticePoint y;           // p^a_bar z_{m_bar}
};

// y_m rebuilt as p^a_bar z_{m_bar}, for cross-checking y_fast.
YFactorization y_factorization(ConvergentTable& table, const BigNat& m);

// N as a sum of below-stream terms, from the b_i iteration at m = q^N,
// B = N. Terms increase; multiplicities are positive.
std::vector<std::pair<BigNat, unsigned long>> kn_representation(ConvergentTable& table, unsigned long N,
                                                                 const FastOptions& options = {});

}  // namespace pqchain
