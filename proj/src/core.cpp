#include "pqchain/core.hpp"

#include <string>

#include "pqchain/error.hpp"

namespace pqchain {

namespace {

// Smallest c with c^s == n for some s >= 1 (the base that is not itself a
// perfect power).
unsigned long primitive_root(unsigned long n) {
  BigNat value(n);
  BigNat root;
  for (unsigned long e = 63; e >= 2; --e) {
    if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), e) != 0) {
      // n == root^e and root may itself be a perfect power; recurse.
      return primitive_root(root.get_ui());
    }
  }
  return n;
}

bool is_power_of(unsigned long n, unsigned long base) {
  if (n == 1) return true;
  while (n % base == 0) n /= base;
  return n == 1;
}

}  // namespace

Params::Params(unsigned long p, unsigned long q) : p_(p), q_(q), r_(q - p, p * q - p) {
  r_.canonicalize();
}

Params validate_params(long p, long q) {
  if (p < 2 || q <= p)
    throw Error(ErrorKind::OutOfRange, "need 2 <= p < q, got p=" + std::to_string(p) + " q=" + std::to_string(q));
  const auto up = static_cast<unsigned long>(p);
  const auto uq = static_cast<unsigned long>(q);
  if (uq > (1UL << 31))
    throw Error(ErrorKind::OutOfRange, "q too large: " + std::to_string(q));
  const unsigned long c = primitive_root(up);
  if (is_power_of(uq, c))
    throw Error(ErrorKind::Dependent,
                std::to_string(p) + " and " + std::to_string(q) + " are powers of " + std::to_string(c));
  return Params(up, uq);
}

std::vector<BigNat> ChainPartition::values(const Params& params) const {
  std::vector<BigNat> out;
  out.reserve(parts.size());
  for (auto pt : parts) out.push_back(part_value(params, pt));
  return out;
}

BigNat part_value(const Params& params, LatticePoint pt) {
  return pow_ui(params.p(), pt.a) * pow_ui(params.q(), pt.b);
}

std::optional<LatticePoint> decompose(const Params& params, const BigNat& value) {
  if (value < 1) return std::nullopt;
  LatticePoint pt;
  BigNat rest = value;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), params.q())) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), params.q());
    ++pt.b;
  }
  while (mpz_divisible_ui_p(rest.get_mpz_t(), params.p())) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), params.p());
    ++pt.a;
  }
  if (rest != 1) return std::nullopt;
  return pt;
}

bool is_scp(const Params& params, std::span<const BigNat> chain) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!decompose(params, chain[i])) return false;
    if (i == 0) continue;
    if (!(chain[i] < chain[i - 1])) return false;
    if (!mpz_divisible_p(chain[i - 1].get_mpz_t(), chain[i].get_mpz_t())) return false;
  }
  return true;
}

BigNat weight(const Params&, std::span<const BigNat> chain) {
  BigNat sum = 0;
  for (const auto& v : chain) sum += v;
  return sum;
}

BigNat weight(const Params& params, const ChainPartition& chain) {
  BigNat sum = 0;
  for (auto pt : chain.parts) sum += part_value(params, pt);
  return sum;
}

BigNat h(const Params& params, unsigned long a, unsigned long b) {
  const unsigned long p = params.p();
  const unsigned long q = params.q();
  const BigNat qb = pow_ui(q, b);
  BigNat head = (qb - 1) / (q - 1);
  BigNat tail = (pow_ui(p, a + 1) - 1) / (p - 1);
  return head + tail * qb;
}

mpq_class h_alt(const Params& params, unsigned long a, unsigned long b) {
  const unsigned long p = params.p();
  const unsigned long q = params.q();
  const mpq_class qb(pow_ui(q, b));
  mpq_class inner = mpq_class(pow_ui(p, a)) * qb - params.r() * qb;
  mpq_class result = mpq_class(p, p - 1) * inner - mpq_class(1, q - 1);
  result.canonicalize();
  return result;
}

std::strong_ordering h_compare(const Params& params, LatticePoint x, LatticePoint y) {
  const unsigned long p = params.p();
  const unsigned long q = params.q();
  const BigNat qx = pow_ui(q, x.b);
  const BigNat qy = pow_ui(q, y.b);
  const BigNat lhs = BigNat(p * (q - 1)) * (pow_ui(p, x.a) * qx - pow_ui(p, y.a) * qy);
  const BigNat rhs = BigNat(q - p) * (qx - qy);
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ChainPartition heaviest_chain(const Params&, unsigned long a, unsigned long b) {
  ChainPartition chain;
  chain.parts.reserve(a + b + 1);
  for (unsigned long i = a + 1; i-- > 0;) chain.parts.push_back({i, b});
  for (unsigned long j = b; j-- > 0;) chain.parts.push_back({0, j});
  return chain;
}

BigNat count_max_chains(unsigned long a, unsigned long b) {
  BigNat r;
  mpz_bin_uiui(r.get_mpz_t(), a + b, b);
  return r;
}

std::vector<ChainPartition> enumerate_max_chains(const Params&, unsigned long a, unsigned long b,
                                                 std::size_t cap) {
  const BigNat total = count_max_chains(a, b);
  if (total > BigNat(static_cast<unsigned long>(cap)))
    throw Error(ErrorKind::CapExceeded, "binomial(" + std::to_string(a + b) + "," + std::to_string(b) +
                                            ") = " + total.get_str() + " chains exceeds cap " + std::to_string(cap));
  std::vector<ChainPartition> out;
  out.reserve(total.get_ui());
  ChainPartition current;
  current.parts.reserve(a + b + 1);
  // Depth-first walk; stepping down in a (divide by p) before b (divide by q).
  auto walk = [&](auto&& self, LatticePoint pt) -> void {
    current.parts.push_back(pt);
    if (pt.a == 0 && pt.b == 0) {
      out.push_back(current);
    } else {
      if (pt.a > 0) self(self, LatticePoint{pt.a - 1, pt.b});
      if (pt.b > 0) self(self, LatticePoint{pt.a, pt.b - 1});
    }
    current.parts.pop_back();
  };
  walk(walk, LatticePoint{a, b});
  return out;
}

}  // namespace pqchain
