// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pqchain/contfrac.hpp"
#include "pqchain/core.hpp"
#include "pqchain/ell.hpp"
#include "pqchain/fastalg.hpp"
#include "pqchain/frontier.hpp"
#include "pqchain/oracle.hpp"

using namespace pqchain;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::pair<long, long>> kPairs{{2, 3}, {2, 5}, {3, 5}, {3, 7}, {5, 7}};

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)), start_(Clock::now()) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 10) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& text) { notes_.push_back(text); }
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  bool report() const {
    const bool ok = failed_ == 0;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name_ << "  (" << checks_ << " checks, " << failed_
              << " failed, " << std::fixed << std::setprecision(2) << seconds() << " s)\n";
    for (const auto& f : failures_) std::cout << "      failed: " << f << "\n";
    for (const auto& n : notes_) std::cout << "      " << n << "\n";
    return ok;
  }

 private:
  std::string name_;
  Clock::time_point start_;
  unsigned long checks_ = 0;
  unsigned long failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string pq(const Params& params) {
  return "(" + std::to_string(params.p()) + "," + std::to_string(params.q()) + ")";
}

// m = 1..5000 plus 500 random m <= 10^12 per pair (seeded).
std::vector<BigNat> corpus(unsigned long seed) {
  std::vector<BigNat> ms;
  for (unsigned long m = 1; m <= 5000; ++m) ms.emplace_back(m);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 500; ++i) ms.emplace_back(static_cast<unsigned long>(rng() % 1000000000000ULL + 1));
  return ms;
}

bool reference_values() {
  Criterion c("1. reference values");
  const Params params = validate_params(2, 3);
  ConvergentTable table(params, 12);

  const long first[] = {1, 3, 4, 7, 7, 10, 10, 15, 15, 15, 15, 22, 22, 22, 22, 31, 31};
  for (long m = 1; m <= 17; ++m) {
    c.expect(g_recursive(params, m) == first[m - 1], "G(" + std::to_string(m) + ") recursive");
    c.expect(g_fast(table, m) == first[m - 1], "G(" + std::to_string(m) + ") fast");
  }

  const FrontierSet z = z_set(params, 750);
  const std::vector<LatticePoint> rows{{9, 0}, {7, 1}, {6, 2}, {4, 3}, {3, 4}, {1, 5}, {0, 6}};
  const long values[] = {512, 384, 576, 432, 648, 486, 729};
  const long hv[] = {1023, 766, 1147, 850, 1255, 850, 1093};
  c.expect(z.points == rows, "Table 1 exponents");
  for (std::size_t i = 0; i < rows.size() && i < z.size(); ++i) {
    c.expect(z.values[i] == values[i], "Table 1 value row " + std::to_string(i));
    c.expect(z.hvals[i] == hv[i], "Table 1 h row " + std::to_string(i));
  }
  const FrontierScan scan = g_frontier_scan(params, 750);
  c.expect(scan.g == 1255, "G(750) = 1255");
  c.expect(g_fast(table, 750) == 1255, "g_fast(750) = 1255");
  c.expect(scan.argmax == std::vector<LatticePoint>{{3, 4}}, "Y_750 = {(3,4)}");

  c.expect(part_value(params, z_fast(table, 750)) == 729, "z_750 = 729");
  c.expect(part_value(params, y_fast(table, 750)) == 648, "y_750 = 648");
  c.expect(m_ell(table, 750) == 4, "m_l(750) = 4");
  for (unsigned long b = 0; b <= 6; ++b)
    c.expect(part_value(params, zeta(params, 750, b)) == values[b], "zeta(" + std::to_string(b) + ")");
  const FastResult zr = run_fast(table, 750, 6);
  const FastResult yr = run_fast(table, 750, m_ell(table, 750));
  c.expect(zr.b_sequence() == std::vector<unsigned long>{0, 2, 4, 6}, "(b_i) = (0,2,4,6)");
  c.expect(zr.b_sequence().size() - 1 == 3, "I = 3");
  c.expect(yr.b_sequence() == std::vector<unsigned long>{0, 2, 4}, "J = 2");

  const unsigned long a[] = {1, 1, 1, 2, 2, 3, 1};
  const long k[] = {1, 1, 2, 5, 12, 41, 53};
  for (std::size_t i = 0; i < 7; ++i) {
    c.expect(table.a(i) == a[i], "a_" + std::to_string(i));
    c.expect(table.k(i) == k[i], "k_" + std::to_string(i));
  }
  const auto stream = below_stream(table);
  const long K[] = {1, 2, 7, 12, 53};
  for (std::size_t i = 0; i < 5; ++i) c.expect(stream.at(i).K == K[i], "K_" + std::to_string(i));

  const unsigned long ell[] = {0, 0, 2, 2, 2, 2, 2};
  for (unsigned long b = 0; b <= 6; ++b) c.expect(ell_value(table, b) == ell[b], "l_" + std::to_string(b));

  using Rep = std::vector<std::pair<BigNat, unsigned long>>;
  c.expect(kn_representation(table, 6) == Rep{{2, 3}}, "6 = 3 K_1");

  c.expect(h(params, 1, 5) == 850 && h(params, 4, 3) == 850, "h(1,5) = h(4,3) = 850");
  const Params p25 = validate_params(2, 5);
  c.expect(h(p25, 0, 2) == 31 && h(p25, 4, 0) == 31, "h(0,2) = h(4,0) = 31 at (2,5)");

  c.expect(c.seconds() < 1.0, "under 1 s");
  return c.report();
}

bool oracle_equivalence() {
  Criterion c("2. oracle equivalence");
  const auto dense_start = Clock::now();
  for (auto [p, q] : kPairs) {
    const Params params = validate_params(p, q);
    ConvergentTable table(params, 16);
    for (unsigned long m = 1; m <= 5000; ++m) {
      const BigNat ex = g_exhaustive(params, m);
      const BigNat tag(m);
      c.expect(ex == g_recursive(params, tag) && ex == g_frontier_scan(params, tag).g && ex == g_fast(table, tag),
               pq(params) + " m=" + std::to_string(m));
    }
  }
  const double dense_s = std::chrono::duration<double>(Clock::now() - dense_start).count();
  c.expect(dense_s <= 120, "dense sweep within 2 min");

  const auto sample_start = Clock::now();
  std::mt19937_64 rng(2024);
  for (auto [p, q] : kPairs) {
    const Params params = validate_params(p, q);
    ConvergentTable table(params, 16);
    for (int i = 0; i < 500; ++i) {
      const BigNat m(static_cast<unsigned long>(rng() % 1000000000000ULL + 1));
      const std::string where = pq(params) + " m=" + m.get_str();
      c.expect(g_fast(table, m) == g_frontier_scan(params, m).g, where + " G");
      c.expect(y_fast(table, m) == y_min(params, m), where + " y");
      c.expect(z_fast(table, m) == z_max(params, m), where + " z");
    }
  }
  const double sample_s = std::chrono::duration<double>(Clock::now() - sample_start).count();
  c.expect(sample_s <= 60, "random sample within 1 min");
  std::ostringstream n;
  n << std::fixed << std::setprecision(2) << "dense " << dense_s << " s, sample " << sample_s << " s";
  c.note(n.str());
  return c.report();
}

bool structural_invariants() {
  Criterion c("3. structural invariants");
  unsigned long stated_fail = 0, stated_total = 0, corrected_fail = 0;
  std::vector<std::string> stated_misses;
  for (auto [p, q] : kPairs) {
    const Params params = validate_params(p, q);
    ConvergentTable table(params, 20);
    const std::string tag = pq(params);

    for (const BigNat& m : corpus(p * 100 + q)) {
      const FrontierScan scan = g_frontier_scan(params, m);
      const std::string where = tag + " m=" + m.get_str();
      c.expect(scan.argmax.size() == 1 || scan.argmax.size() == 2, where + " |Y_m|");
      const LatticePoint zm = z_max(params, m);
      for (auto y : scan.argmax) c.expect(y.b <= zm.b, where + " Y_m below b(z_m)");
      c.expect(scan.g * (p - 1) < part_value(params, y_min(params, m)) * p, where + " G < y p/(p-1)");
    }

    const EllTable ell(table, 100000);
    c.expect(ell.value_at(0) == 0, tag + " l_0 = 0");
    unsigned long prev = 0;
    for (unsigned long b = 0; b <= 100000; ++b) {
      const unsigned long v = ell.value_at(b);
      if (v < prev) c.expect(false, tag + " l non-decreasing at b=" + std::to_string(b));
      prev = v;
    }
    c.expect(prev == ell.value_at(100000), tag + " l scan");

    const auto stream = below_stream(table);
    for (const auto& j : ell.jumps()) {
      const bool in_stream =
          std::any_of(stream.begin(), stream.end(), [&](const BelowTerm& t) { return t.K == j.index; });
      c.expect(in_stream, tag + " jump " + j.index.get_str() + " in (K_n)");
    }

    for (const auto& term : stream) {
      if (term.K > 50000) break;
      const unsigned long K = term.K.get_ui();
      c.expect(static_cast<long>(ell_value(table, term.K)) == std::max(0L, alpha_floor_exact(params, K)),
               tag + " l_K = floor(alpha(K)) at K=" + std::to_string(K));
      if (K > 4000) continue;
      const Interval diff = alpha_plus(params, term.K, 256) - alpha(params, K, 256);
      const Interval f = frac_b_rho(params, term.K);
      const mpfr_prec_t prec = 256;
      const Interval lnp = Interval::log(BigNat(p), prec);
      const Interval stated = lnp * f * f / Interval::exact(6L, prec) +
                              Interval::exact(mpq_class(BigNat(1), pow_ui(q, K) - 1), prec);
      c.expect(diff.lo().to_double() > 0, tag + " alpha+ - alpha > 0 at K=" + std::to_string(K));
      ++stated_total;
      if (!(diff.hi().to_double() < stated.lo().to_double())) {
        ++stated_fail;
        if (stated_misses.size() < 8) {
          std::ostringstream s;
          s << tag << " K=" << K << ": alpha+ - alpha = " << diff.mid() << " >= " << stated.mid();
          stated_misses.push_back(s.str());
        }
        c.expect(false, tag + " alpha+ bound (log p)/6 {K rho}^2 + 1/(q^K - 1) at K=" + std::to_string(K));
      }
      if (!(diff.hi().to_double() < alpha_plus_gap(params, term.K).lo().to_double())) ++corrected_fail;
    }

    bool grid = true;
    for (unsigned long i = 0; i < 10; ++i)
      for (unsigned long j = 0; j < 10; ++j) grid = grid && h(params, i, j + 1) == q * h(params, i, j) + 1;
    c.expect(grid, tag + " h(i,j+1) = q h(i,j) + 1");
  }
  c.note("alpha+ bound as stated: " + std::to_string(stated_total - stated_fail) + "/" +
         std::to_string(stated_total) + " K_n hold");
  for (const auto& s : stated_misses) c.note("  " + s);
  c.note("with the tail 1/((q^K - 1) ln p): " + std::to_string(stated_total - corrected_fail) + "/" +
         std::to_string(stated_total) + " K_n hold");
  return c.report();
}

bool complexity_bound() {
  Criterion c("4. iteration bound and mode agreement");
  unsigned long runs = 0, most = 0;
  FastOptions fixed, modk, exact;
  fixed.record_decisions = modk.record_decisions = exact.record_decisions = true;
  modk.mode = FastMode::ModK;
  exact.mode = FastMode::Exact;
  for (auto [p, q] : kPairs) {
    const Params params = validate_params(p, q);
    ConvergentTable table(params, 20);
    std::vector<BigNat> ms = corpus(p * 1000 + q);
    if (p == 2 && q == 3) ms.push_back(pow_ui(10, 100));
    for (const BigNat& m : ms) {
      const unsigned long bound = iteration_bound(params, m);
      for (unsigned long B : {floor_log(q, m), m_ell(table, m)}) {
        const FastResult a = run_fast(table, m, B, fixed);
        const FastResult b = run_fast(table, m, B, modk);
        const FastResult e = run_fast(table, m, B, exact);
        ++runs;
        const std::string where = pq(params) + " m=" + m.get_str() + " B=" + std::to_string(B);
        c.expect(a.iterations <= bound, where + " iterations " + std::to_string(a.iterations));
        c.expect(a.decisions == e.decisions && b.decisions == e.decisions, where + " decisions");
        c.expect(a.b == e.b && b.b == e.b, where + " result");
        most = std::max(most, a.iterations);
      }
    }
    if (p == 2 && q == 3) {
      const BigNat m = pow_ui(10, 100);
      const FastResult r = run_fast(table, m, floor_log(q, m));
      c.note("m = 10^100 at (2,3): " + std::to_string(r.iterations) + " iterations, bound " +
             std::to_string(iteration_bound(params, m)));
      c.expect(g_fast(table, m) == g_frontier_scan(params, m).g, "G(10^100) fast = frontier");
    }
  }
  c.note(std::to_string(runs) + " runs in each of three modes; most iterations " + std::to_string(most));
  return c.report();
}

bool asymptotics() {
  Criterion c("5. asymptotic proxies");
  for (auto [p, q] : kPairs) {
    const Params params = validate_params(p, q);
    const mpq_class limit(p, p - 1);
    mpq_class prev = 0;
    for (unsigned long a = 0; a <= 300; ++a) {
      const BigNat pa = pow_ui(p, a);
      const BigNat g = a <= 60 ? g_frontier_scan(params, pa).g : g_fast(params, pa);
      mpq_class ratio(g, pa), closed(pow_ui(p, a + 1) - 1, (p - 1) * pa);
      ratio.canonicalize();
      closed.canonicalize();
      c.expect(ratio == closed, pq(params) + " G(p^a)/p^a closed form at a=" + std::to_string(a));
      c.expect(ratio > prev && ratio < limit, pq(params) + " monotone toward p/(p-1) at a=" + std::to_string(a));
      prev = ratio;
    }
  }

  // G is constant between consecutive elements of E, so over a range the
  // minimum of G(m)/m sits at e - 1 for some e in E, or at the range's end.
  const Params params = validate_params(2, 3);
  ConvergentTable table(params, 16);
  mpq_class prev = 0;
  std::ostringstream mins;
  for (unsigned long k = 0; k <= 7; ++k) {
    const BigNat lo = pow_ui(10, k), hi = pow_ui(10, k + 1) - 1;
    std::vector<BigNat> candidates{lo, hi};
    for (BigNat qb = 1; qb <= hi + 1; qb *= 3)
      for (BigNat e = qb; e <= hi + 1; e *= 2)
        if (e - 1 >= lo) candidates.push_back(e - 1);
    mpq_class best = -1;
    for (const auto& m : candidates) {
      mpq_class r(g_fast(table, m), m);
      r.canonicalize();
      if (best < 0 || r < best) best = r;
    }
    best.canonicalize();
    mins << (k ? ", " : "") << best.get_d();
    c.expect(best >= prev, "decade min non-decreasing at k=" + std::to_string(k));
    prev = best;
  }
  c.note("min G(m)/m per decade at (2,3): " + mins.str());
  return c.report();
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> criteria{reference_values, oracle_equivalence, structural_invariants,
                                                     complexity_bound, asymptotics};
  int failed = 0;
  for (const auto& run : criteria) {
    try {
      if (!run()) ++failed;
    } catch (const std::exception& e) {
      std::cout << "FAIL  criterion aborted: " << e.what() << "\n";
      ++failed;
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
