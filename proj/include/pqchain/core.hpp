#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "pqchain/bignat.hpp"

namespace pqchain {

// A validated pair of bases 2 <= p < q, multiplicatively independent.
class Params {
 public:
  unsigned long p() const noexcept { return p_; }
  unsigned long q() const noexcept { return q_; }
  // r = (q - p) / (pq - p), always in (0, 1/p).
  const mpq_class& r() const noexcept { return r_; }

  friend Params validate_params(long p, long q);
  friend bool operator==(const Params& x, const Params& y) noexcept { return x.p_ == y.p_ && x.q_ == y.q_; }

 private:
  Params(unsigned long p, unsigned long q);
  unsigned long p_;
  unsigned long q_;
  mpq_class r_;
};

// Throws Error(OutOfRange) unless 2 <= p < q, Error(Dependent) when p and q
// are powers of a common base.
Params validate_params(long p, long q);

// Exponent pair (a, b) standing for the part p^a q^b.
struct LatticePoint {
  unsigned long a = 0;
  unsigned long b = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

// A strictly chained partition stored by exponents, greatest part first.
struct ChainPartition {
  std::vector<LatticePoint> parts;

  std::vector<BigNat> values(const Params& params) const;
  std::size_t size() const noexcept { return parts.size(); }
};

BigNat part_value(const Params& params, LatticePoint pt);

// Recovers (a, b) with p^a q^b == value, if any.
std::optional<LatticePoint> decompose(const Params& params, const BigNat& value);

// True iff every term is some p^a q^b, terms strictly decrease and each term
// is divisible by its successor.
bool is_scp(const Params& params, std::span<const BigNat> chain);

BigNat weight(const Params& params, std::span<const BigNat> chain);
BigNat weight(const Params& params, const ChainPartition& chain);

// Weight of the heaviest chain with greatest part p^a q^b:
// (q^b - 1)/(q - 1) + (p^{a+1} - 1)/(p - 1) * q^b.
BigNat h(const Params& params, unsigned long a, unsigned long b);
inline BigNat h(const Params& params, LatticePoint pt) { return h(params, pt.a, pt.b); }

// Same value through p/(p-1) * (p^a q^b - r q^b) - 1/(q-1), in rationals.
mpq_class h_alt(const Params& params, unsigned long a, unsigned long b);

// Orders h(x) against h(y) without evaluating h, via
// p (q-1) (p^a q^b - p^a' q^b') <=> (q-p) (q^b - q^b').
std::strong_ordering h_compare(const Params& params, LatticePoint x, LatticePoint y);

// Parts {q^i : i < b} together with {q^b p^i : i <= a}, greatest first.
ChainPartition heaviest_chain(const Params& params, unsigned long a, unsigned long b);

// binomial(a + b, b): number of chains with a + b + 1 parts below p^a q^b.
BigNat count_max_chains(unsigned long a, unsigned long b);

inline constexpr std::size_t kDefaultChainCap = 1'000'000;

// Every monotone lattice path from (a, b) down to (0, 0). Throws
// Error(CapExceeded) when binomial(a + b, b) > cap.
std::vector<ChainPartition> enumerate_max_chains(const Params& params, unsigned long a, unsigned long b,
                                                 std::size_t cap = kDefaultChainCap);

}  // namespace pqchain
