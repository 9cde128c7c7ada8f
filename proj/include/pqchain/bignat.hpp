#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pqchain {

// Exact non-negative integers for part values, weights and bounds.
using BigNat = mpz_class;

BigNat pow_ui(unsigned long base, unsigned long exp);

// Largest e with base^e <= x. Requires base >= 2 and x >= 1.
unsigned long floor_log(unsigned long base, const BigNat& x);

// Parses a non-negative decimal integer; also accepts "1e9"-style powers of
// ten. Throws Error(OutOfRange) on malformed input.
BigNat parse_bignat(std::string_view text);

inline std::string to_string(const BigNat& x) { return x.get_str(); }

// Number of bits of x (0 for x == 0).
inline std::size_t bit_length(const BigNat& x) {
  return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

}  // namespace pqchain
