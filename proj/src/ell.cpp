#include "pqchain/ell.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pqchain/error.hpp"

namespace pqchain {

namespace {

constexpr mpfr_prec_t kEllMaxPrecision = 1 << 14;

Interval ln(unsigned long v, mpfr_prec_t prec) { return Interval::log(BigNat(v), prec); }

// {b rho} at working precision prec; nullopt when floor(b rho) is unresolved
// or the fractional part is not known to ~40 relative bits.
std::optional<Interval> frac_b_rho_at(const Params& params, const BigNat& b, mpfr_prec_t prec) {
  const Interval brho = rho_enclosure(params, prec) * Interval::exact(b, prec);
  const auto c = brho.floor();
  if (!c) return std::nullopt;
  Interval f = brho - Interval::exact(*c, prec);
  if (mpfr_sgn(f.lo().get()) <= 0) return std::nullopt;
  Real rel(prec);
  mpfr_div(rel.get(), f.hi().get(), f.lo().get(), MPFR_RNDU);
  if (mpfr_cmp_d(rel.get(), 1.0 + 1e-12) > 0) return std::nullopt;
  return f;
}

bool fits_ulong(const BigNat& x) { return x.fits_ulong_p(); }

}  // namespace

Interval phi(const Params& params, unsigned long a, const BigNat& b, mpfr_prec_t prec) {
  const Interval qb_inv = (Interval::exact(b, prec) * ln(params.q(), prec)).operator-().exp();
  const Interval one = Interval::exact(1L, prec);
  const Interval r_over = Interval::exact(params.r() / mpq_class(pow_ui(params.p(), a)), prec);
  const Interval x = r_over * (one - qb_inv);
  return -((-x).log1p()) / ln(params.p(), prec);
}

Interval frac_b_rho(const Params& params, const BigNat& b) {
  if (b < 1) throw Error(ErrorKind::OutOfRange, "frac_b_rho needs b >= 1");
  for (mpfr_prec_t prec = 64 + 2 * static_cast<mpfr_prec_t>(bit_length(b)); prec <= kEllMaxPrecision; prec *= 2)
    if (auto f = frac_b_rho_at(params, b, prec)) return *f;
  throw Error(ErrorKind::PrecisionEscalationFailed, "could not resolve {b rho} for b=" + b.get_str());
}

BelowTerm beta(ConvergentTable& table, unsigned long a) {
  const Params& params = table.params();
  BelowTerm term = below_term(table, 0, 0);
  for (;;) {
    std::optional<bool> below;
    for (mpfr_prec_t prec = 128; prec <= kEllMaxPrecision && !below; prec *= 2) {
      const auto f = frac_b_rho_at(params, term.K, prec + 2 * static_cast<mpfr_prec_t>(bit_length(term.K)));
      if (!f) continue;
      below = f->certainly_lt(phi(params, a, term.K, prec));
    }
    if (!below) {
      if (!fits_ulong(term.K)) throw Error(ErrorKind::BudgetExceeded, "beta: K too large for the exact test");
      const unsigned long K = term.K.get_ui();
      const unsigned long c = floor_b_rho(params, K).get_ui();
      below = h_compare(params, {a, K}, {a + c, 0}) < 0;
    }
    if (*below) return term;
    term = next_below(table, term);
  }
}

Interval alpha(const Params& params, unsigned long b, mpfr_prec_t prec) {
  if (b < 1) throw Error(ErrorKind::OutOfRange, "alpha needs b >= 1");
  const unsigned long p = params.p();
  const unsigned long q = params.q();
  const BigNat qb = pow_ui(q, b);
  const BigNat pc = pow_ui(p, floor_b_rho(params, b).get_ui());
  const mpq_class ratio(BigNat(q - p) * (qb - 1), BigNat(q - 1) * (qb - pc));
  return Interval::log(mpq_class(ratio), prec) / ln(p, prec);
}

long alpha_floor_exact(const Params& params, unsigned long b) {
  if (b < 1) throw Error(ErrorKind::OutOfRange, "alpha needs b >= 1");
  const unsigned long p = params.p();
  const unsigned long q = params.q();
  const BigNat qb = pow_ui(q, b);
  const BigNat pc = pow_ui(p, floor_b_rho(params, b).get_ui());
  const BigNat X = BigNat(q - p) * (qb - 1);
  const BigNat Y = BigNat(q - 1) * (qb - pc);
  if (X >= Y) return static_cast<long>(floor_log(p, X / Y));
  // alpha < 0: smallest e with p^e X >= Y gives floor = -e.
  long e = 1;
  BigNat scaled = X * p;
  while (scaled < Y) {
    scaled *= p;
    ++e;
  }
  return -e;
}

Interval alpha_plus(const Params& params, const BigNat& b, mpfr_prec_t prec) {
  const Interval f = frac_b_rho(params, b);
  const unsigned long p = params.p();
  const unsigned long q = params.q();
  const Interval lnp = ln(p, prec);
  const Interval base = Interval::exact(mpq_class(q - p, q - 1), prec) / lnp;
  const Interval head = base.log() / lnp;
  const Interval inv = -(f.log()) / lnp;
  const Interval half = f * Interval::exact(mpq_class(1, 2), prec);
  return head + inv + half;
}

Interval alpha_plus_gap(const Params& params, const BigNat& b) {
  const mpfr_prec_t prec = 128;
  const Interval f = frac_b_rho(params, b);
  const Interval quad = ln(params.p(), prec) * f * f / Interval::exact(6L, prec);
  Interval tail(prec);
  if (b <= 4096) {
    tail = Interval::exact(mpq_class(BigNat(1), pow_ui(params.q(), b.get_ui()) - 1), prec);
  } else {
    // q^b - 1 >= q^b / 2 >= 2^(b floor(log2 q) - 1)
    const unsigned long lg = floor_log(2, BigNat(params.q()));
    const BigNat e = b * lg - 1;
    tail = (-(Interval::exact(e, prec) * ln(2, prec))).exp();
  }
  // -log_p(1 - x) < x / ((1 - x) ln p); the ln p matters when p = 2.
  return quad + tail / ln(params.p(), prec);
}

AlphaFloor alpha_floor(const Params& params, const BigNat& K) {
  const Interval ap = alpha_plus(params, K);
  const Interval lower = ap - alpha_plus_gap(params, K);
  BigNat n;
  mpfr_get_z(n.get_mpz_t(), lower.lo().get(), MPFR_RNDD);
  // alpha lies in (alpha+ - gap, alpha+), so floor(alpha) = n once alpha+ < n + 1.
  if (mpfr_cmp_z(ap.hi().get(), BigNat(n + 1).get_mpz_t()) < 0 && n.fits_slong_p())
    return {n.get_si(), false};
  if (!fits_ulong(K)) throw Error(ErrorKind::BudgetExceeded, "alpha_floor: K too large for the exact test");
  return {alpha_floor_exact(params, K.get_ui()), true};
}

namespace {

unsigned long ell_at_term(const Params& params, const BelowTerm& term) {
  return static_cast<unsigned long>(std::max(0L, alpha_floor(params, term.K).value));
}

}  // namespace

unsigned long ell_value(ConvergentTable& table, const BigNat& b) {
  if (b == 0) return 0;
  return ell_at_term(table.params(), locate_below(table, b));
}

std::vector<Jump> jump_indices(ConvergentTable& table, std::size_t count) {
  std::vector<Jump> out;
  unsigned long level = 0;
  while (out.size() < count) {
    const BelowTerm term = beta(table, level);
    const unsigned long value = ell_at_term(table.params(), term);
    if (value <= level)
      throw std::logic_error("l does not increase at jump index " + term.K.get_str());
    out.push_back({term.K, value, term.s, term.t});
    level = value;
  }
  return out;
}

EllTable::EllTable(ConvergentTable& table, const BigNat& max_b) : max_b_(max_b) {
  unsigned long level = 0;
  for (;;) {
    const BelowTerm term = beta(table, level);
    const unsigned long value = ell_at_term(table.params(), term);
    if (value <= level)
      throw std::logic_error("l does not increase at jump index " + term.K.get_str());
    jumps_.push_back({term.K, value, term.s, term.t});
    level = value;
    if (term.K > max_b) break;
  }
}

unsigned long EllTable::value_at(const BigNat& b) const {
  if (b > max_b_) throw Error(ErrorKind::OutOfRange, "b beyond the table's range");
  unsigned long v = 0;
  for (const auto& j : jumps_) {
    if (j.index > b) break;
    v = j.value;
  }
  return v;
}

bool EllTable::is_jump(const BigNat& b) const {
  return std::any_of(jumps_.begin(), jumps_.end(), [&](const Jump& j) { return j.index == b; });
}

unsigned long m_ell(ConvergentTable& table, const BigNat& m) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
  const Params& params = table.params();
  const unsigned long lq = floor_log(params.q(), m);
  auto fits = [&](const BelowTerm& term) {
    if (term.K > lq) return false;
    const unsigned long ell = ell_at_term(params, term);
    return pow_ui(params.p(), ell) * pow_ui(params.q(), term.K.get_ui()) <= m;
  };

  if (!fits(below_term(table, 0, 0))) return 0;
  std::size_t s = 0;
  for (;;) {
    if (table.depth() <= 2 * s + 3) table.deepen(2 * s + 4);
    if (!fits(below_term(table, s + 1, 0))) break;
    ++s;
  }
  // Largest mediant index t at level s that still fits, by binary search.
  unsigned long hi_t = table.a(2 * s + 2) - 1;
  const BigNat room = (BigNat(lq) - table.k(2 * s)) / table.k(2 * s + 1);
  if (room < hi_t) hi_t = room.get_ui();
  unsigned long lo_t = 0;
  while (lo_t < hi_t) {
    const unsigned long mid = lo_t + (hi_t - lo_t + 1) / 2;
    if (fits(below_term(table, s, mid))) lo_t = mid;
    else hi_t = mid - 1;
  }
  const BelowTerm term = below_term(table, s, lo_t);
  const unsigned long ell = ell_at_term(params, term);
  const unsigned long reach = floor_log(params.q(), m / pow_ui(params.p(), ell));
  const BigNat next = next_below(table, term).K;
  if (next - 1 < reach) return BigNat(next - 1).get_ui();
  return reach;
}

unsigned long m_ell_scan(ConvergentTable& table, const BigNat& m) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
  const Params& params = table.params();
  const unsigned long lq = floor_log(params.q(), m);
  unsigned long best = 0;
  for (unsigned long b = 1; b <= lq; ++b) {
    if (pow_ui(params.p(), ell_value(table, BigNat(b))) * pow_ui(params.q(), b) > m) break;
    best = b;
  }
  return best;
}

}  // namespace pqchain
