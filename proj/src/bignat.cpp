#include "pqchain/bignat.hpp"

#include <cctype>
#include <cmath>

#include "pqchain/error.hpp"

namespace pqchain {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Dependent: return "Dependent";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::PrecisionEscalationFailed: return "PrecisionEscalationFailed";
  }
  return "Unknown";
}

BigNat pow_ui(unsigned long base, unsigned long exp) {
  BigNat r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

unsigned long floor_log(unsigned long base, const BigNat& x) {
  if (base < 2 || x < 1) throw Error(ErrorKind::OutOfRange, "floor_log needs base >= 2 and x >= 1");
  // Start from a bit-length estimate, then settle it with exact powers.
  const double bits = static_cast<double>(bit_length(x));
  const double guess = (bits - 1.0) / std::log2(static_cast<double>(base));
  unsigned long e = guess > 2.0 ? static_cast<unsigned long>(guess) - 2 : 0;
  BigNat pw = pow_ui(base, e);
  while (pw > x) {
    --e;
    pw /= base;
  }
  for (;;) {
    BigNat next = pw * base;
    if (next > x) break;
    pw = std::move(next);
    ++e;
  }
  return e;
}

BigNat parse_bignat(std::string_view text) {
  auto bad = [&] { return Error(ErrorKind::OutOfRange, "not a non-negative integer: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  std::string mantissa;
  unsigned long exponent = 0;
  auto epos = text.find_first_of("eE");
  std::string_view head = text.substr(0, epos);
  if (head.empty()) throw bad();
  for (char c : head)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
  mantissa.assign(head);
  if (epos != std::string_view::npos) {
    std::string_view tail = text.substr(epos + 1);
    if (tail.empty() || tail.size() > 6) throw bad();
    for (char c : tail)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    exponent = std::stoul(std::string(tail));
  }
  BigNat value(mantissa, 10);
  if (exponent > 0) value *= pow_ui(10, exponent);
  return value;
}

}  // namespace pqchain
