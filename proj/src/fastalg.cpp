#include "pqchain/fastalg.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>

#include "pqchain/ell.hpp"
#include "pqchain/error.hpp"
#include "pqchain/frontier.hpp"
#include "pqchain/interval.hpp"

namespace pqchain {

const char* to_string(FastMode mode) {
  switch (mode) {
    case FastMode::FixedPoint: return "fixedpoint";
    case FastMode::ModK: return "modK";
    case FastMode::Exact: return "exact";
  }
  return "?";
}

FastMode parse_fast_mode(const std::string& text) {
  if (text == "fixedpoint") return FastMode::FixedPoint;
  if (text == "modK" || text == "modk") return FastMode::ModK;
  if (text == "exact") return FastMode::Exact;
  throw Error(ErrorKind::OutOfRange, "unknown mode '" + text + "'");
}

const char* to_string(StepKind kind) {
  return kind == StepKind::EvenConvergent ? "convergent" : "mediant";
}

std::vector<unsigned long> FastResult::b_sequence() const {
  std::vector<unsigned long> out{0};
  for (const auto& step : trace)
    for (unsigned long i = 0; i < step.multiplicity; ++i) out.push_back(out.back() + step.d.get_ui());
  return out;
}

std::vector<BigNat> FastResult::steps() const {
  std::vector<BigNat> out;
  for (const auto& step : trace) out.insert(out.end(), step.multiplicity, step.d);
  return out;
}

unsigned long iteration_bound(const Params& params, const BigNat& m) {
  if (m < params.q()) return 1;
  // floor(log2 log_q m) == floor(log2 floor(log_q m)).
  return 2 + floor_log(2, BigNat(floor_log(params.q(), m)));
}

namespace {

// p = c^u with c not a perfect power.
std::pair<unsigned long, unsigned long> root_of(unsigned long p) {
  BigNat root;
  for (unsigned long u = 63; u >= 2; --u)
    if (mpz_root(root.get_mpz_t(), BigNat(p).get_mpz_t(), u) != 0) {
      auto [c, v] = root_of(root.get_ui());
      return {c, v * u};
    }
  return {p, 1};
}

mpfr_prec_t env_precision() {
  if (const char* v = std::getenv("PQCHAIN_MAX_PRECISION")) {
    const long n = std::strtol(v, nullptr, 10);
    if (n >= MPFR_PREC_MIN) return static_cast<mpfr_prec_t>(n);
  }
  return 0;
}

// Decides r >= d rho - c for r = log_p m - b rho - A, which is the same as
// p^(A-c) q^(b+d) <= m.
class Comparator {
 public:
  Comparator(ConvergentTable& table, const BigNat& m, unsigned long B, const FastOptions& options,
             FastResult& result)
      : table_(table), params_(table.params()), m_(m), options_(options), result_(result),
        lq_(floor_log(params_.q(), m)) {
    const auto lp = static_cast<mpfr_prec_t>(bit_length(BigNat(floor_log(params_.p(), m))));
    base_prec_ = 64 + 2 * static_cast<mpfr_prec_t>(bit_length(BigNat(B + 1))) + lp;
    max_prec_ = options.max_precision;
    if (max_prec_ == 0) max_prec_ = env_precision();
    if (max_prec_ == 0) max_prec_ = 16 * base_prec_;
    if (max_prec_ < base_prec_) max_prec_ = base_prec_;
    prec_ = base_prec_;
    if (options.mode == FastMode::FixedPoint) load(prec_);
    if (options.mode == FastMode::ModK) setup_modk(B);
    result_.stats.final_precision = prec_;
  }

  bool ge(unsigned long b, const BigNat& A, const BigNat& d, const BigNat& c) {
    ++result_.stats.comparisons;
    std::optional<bool> out;
    switch (options_.mode) {
      case FastMode::Exact: out = exact(b, A, d, c); break;
      case FastMode::FixedPoint: out = fixed_point(b, A, d, c); break;
      case FastMode::ModK: out = mod_k(b, A, d, c); break;
    }
    if (!out) {
      if (!options_.allow_fallback)
        throw Error(ErrorKind::PrecisionEscalationFailed,
                    "comparison unresolved at " + std::to_string(max_prec_) + " bits");
      ++result_.stats.fallbacks;
      out = exact(b, A, d, c);
    }
    if (options_.record_decisions) result_.decisions.push_back(*out);
    return *out;
  }

 private:
  bool exact(unsigned long b, const BigNat& A, const BigNat& d, const BigNat& c) const {
    const BigNat e = A - c;
    const BigNat n = d + b;
    if (e >= 0) {
      if (n > lq_) return false;
      return pow_ui(params_.p(), e.get_ui()) * pow_ui(params_.q(), n.get_ui()) <= m_;
    }
    return pow_ui(params_.q(), n.get_ui()) <= m_ * pow_ui(params_.p(), BigNat(-e).get_ui());
  }

  void load(mpfr_prec_t prec) {
    prec_ = prec;
    log_m_ = log_base_p(params_, m_, prec);
    rho_ = rho_enclosure(params_, prec);
    result_.stats.final_precision = prec;
  }

  std::optional<bool> fixed_point(unsigned long b, const BigNat& A, const BigNat& d, const BigNat& c) {
    for (;;) {
      const Interval v = (log_m_ - rho_ * Interval::exact(BigNat(d + b), prec_)).shifted(BigNat(c - A));
      if (auto r = v.certainly_ge(Interval::exact(0L, prec_))) return r;
      if (prec_ * 2 > max_prec_) return std::nullopt;
      ++result_.stats.escalations;
      load(prec_ * 2);
    }
  }

  void setup_modk(unsigned long B) {
    const std::size_t above = table_.first_even_above(BigNat(B));
    std::size_t i = above + 4;
    const BigNat need = BigNat(B + 1) * 4096;
    for (;; i += 2) {
      if (table_.depth() <= i + 1) table_.deepen(i + 2);
      if (table_.k(i) >= need) break;
    }
    K_ = table_.k(i);
    H_ = table_.h(i);
    k_next_ = table_.k(i + 1);
    R_ = floor_k_log();
  }

  // floor(K log_p m), certified.
  BigNat floor_k_log() {
    const auto [c, u] = root_of(params_.p());
    const unsigned long v = floor_log(c, m_);
    if (pow_ui(c, v) == m_) return (K_ * v) / u;  // log_p m = v/u exactly
    const mpfr_prec_t start = 64 + static_cast<mpfr_prec_t>(bit_length(K_) + bit_length(m_));
    for (mpfr_prec_t prec = start; prec <= 64 * start; prec *= 2) {
      if (auto f = (log_base_p(params_, m_, prec) * Interval::exact(K_, prec)).floor()) return *f;
      ++result_.stats.escalations;
    }
    throw Error(ErrorKind::PrecisionEscalationFailed, "could not certify floor(K log_p m)");
  }

  std::optional<bool> mod_k(unsigned long b, const BigNat& A, const BigNat& d, const BigNat& c) const {
    // K(r - (d rho - c)) = D + {K log_p m} - (b + d) eps_K with
    // 0 <= (b + d) eps_K < (b + d) / k_next, kept below 1/8.
    if (BigNat(d + b) * 8 >= k_next_) return std::nullopt;
    const BigNat r_int = R_ - BigNat(b) * H_ - K_ * A;
    const BigNat x_int = d * H_ - c * K_;
    const BigNat D = r_int - x_int;
    if (D >= 1) return true;
    if (D <= -1) return false;
    return std::nullopt;
  }

  ConvergentTable& table_;
  const Params& params_;
  const BigNat& m_;
  const FastOptions& options_;
  FastResult& result_;
  unsigned long lq_;
  mpfr_prec_t base_prec_ = 0;
  mpfr_prec_t max_prec_ = 0;
  mpfr_prec_t prec_ = 0;
  Interval log_m_{MPFR_PREC_MIN};
  Interval rho_{MPFR_PREC_MIN};
  BigNat K_, H_, k_next_, R_;
};

void push_step(FastResult& out, const BigNat& d, StepKind kind, std::size_t s, unsigned long t, unsigned long n) {
  if (n == 0) return;
  out.trace.push_back({d, kind, s, t, n});
}

}  // namespace

FastResult run_fast(ConvergentTable& table, const BigNat& m, unsigned long B, const FastOptions& options) {
  const Params& params = table.params();
  if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
  if (B > floor_log(params.q(), m)) throw Error(ErrorKind::OutOfRange, "B exceeds floor(log_q m)");

  FastResult out;
  Comparator cmp(table, m, B, options, out);
  unsigned long b = 0;
  BigNat A = floor_log(params.p(), m);
  for (std::size_t s = 0;; ++s) {
    ++out.iterations;
    if (table.depth() <= 2 * s + 2) table.deepen(2 * s + 3);
    const BigNat& K0 = table.k(2 * s);
    const BigNat& H0 = table.h(2 * s);
    const BigNat& K1 = table.k(2 * s + 1);
    const BigNat& H1 = table.h(2 * s + 1);

    // Step 1: as many k_{2s} as the remainder allows.
    const unsigned long b_start = b;
    if (cmp.ge(b, A, K0, H0)) {
      unsigned long lo = 1, hi = 2;
      while (cmp.ge(b, A, hi * K0, hi * H0)) {
        lo = hi;
        hi *= 2;
      }
      while (hi - lo > 1) {
        const unsigned long mid = lo + (hi - lo) / 2;
        if (cmp.ge(b, A, mid * K0, mid * H0)) lo = mid;
        else hi = mid;
      }
      const unsigned long n = lo;
      if (BigNat(b) + n * K0 > B) {
        const unsigned long fit = BigNat((B - b_start) / K0).get_ui();
        push_step(out, K0, StepKind::EvenConvergent, s, 0, fit);
        out.b = b_start + BigNat(fit * K0).get_ui();
        return out;
      }
      push_step(out, K0, StepKind::EvenConvergent, s, 0, n);
      b += BigNat(n * K0).get_ui();
      A -= n * H0;
    }

    // Step 2: at most one mediant k_{2s} + t k_{2s+1}, 1 <= t <= a_{2s+2}.
    const unsigned long a = table.a(2 * s + 2);
    if (cmp.ge(b, A, K0 + a * K1, H0 + a * H1)) {
      unsigned long lo = 0, hi = a;  // ge fails at lo, holds at hi
      while (hi - lo > 1) {
        const unsigned long mid = lo + (hi - lo) / 2;
        if (cmp.ge(b, A, K0 + mid * K1, H0 + mid * H1)) hi = mid;
        else lo = mid;
      }
      const unsigned long t = hi;
      const BigNat d = K0 + t * K1;
      if (BigNat(b) + d > B) {
        out.b = b;
        return out;
      }
      push_step(out, d, StepKind::Mediant, s, t, 1);
      b += d.get_ui();
      A -= H0 + t * H1;
    }

    if (BigNat(b) + table.k(2 * s + 2) > B) {
      out.b = b;
      return out;
    }
  }
}

FastResult run_fast(const Params& params, const BigNat& m, unsigned long B, const FastOptions& options) {
  ConvergentTable table(params, 4);
  return run_fast(table, m, B, options);
}

LatticePoint z_fast(ConvergentTable& table, const BigNat& m, const FastOptions& options) {
  const unsigned long B = floor_log(table.params().q(), m);
  return zeta(table.params(), m, run_fast(table, m, B, options).b);
}

LatticePoint y_fast(ConvergentTable& table, const BigNat& m, const FastOptions& options) {
  const unsigned long B = m_ell(table, m);
  return zeta(table.params(), m, run_fast(table, m, B, options).b);
}

BigNat g_fast(ConvergentTable& table, const BigNat& m, const FastOptions& options) {
  return h(table.params(), y_fast(table, m, options));
}

LatticePoint z_fast(const Params& params, const BigNat& m, const FastOptions& options) {
  ConvergentTable table(params, 4);
  return z_fast(table, m, options);
}

LatticePoint y_fast(const Params& params, const BigNat& m, const FastOptions& options) {
  ConvergentTable table(params, 4);
  return y_fast(table, m, options);
}

BigNat g_fast(const Params& params, const BigNat& m, const FastOptions& options) {
  ConvergentTable table(params, 4);
  return g_fast(table, m, options);
}

YFactorization y_factorization(ConvergentTable& table, const BigNat& m) {
  const Params& params = table.params();
  YFactorization f;
  f.a_bar = zeta(params, m, m_ell(table, m)).a;
  f.m_bar = m / pow_ui(params.p(), f.a_bar);
  f.z_bar = z_max(params, f.m_bar);
  f.y = {f.z_bar.a + f.a_bar, f.z_bar.b};
  return f;
}

std::vector<std::pair<BigNat, unsigned long>> kn_representation(ConvergentTable& table, unsigned long N,
                                                                 const FastOptions& options) {
  if (N < 1) throw Error(ErrorKind::OutOfRange, "N must be >= 1");
  const FastResult run = run_fast(table, pow_ui(table.params().q(), N), N, options);
  std::map<BigNat, unsigned long> counts;
  for (const auto& step : run.trace) counts[step.d] += step.multiplicity;
  return {counts.begin(), counts.end()};
}

}  // namespace pqchain
