#include "doctest.h"

#include "brute.hpp"
#include "pqchain/contfrac.hpp"
#include "pqchain/error.hpp"

using namespace pqchain;

namespace {

const std::vector<std::pair<long, long>> kPairs{{2, 3}, {2, 5}, {3, 5}, {3, 7}, {5, 7}};

bool near(const Interval& x, double want, double tol = 1e-15) {
  return x.lo().to_double() - tol <= want && want <= x.hi().to_double() + tol && x.hi().to_double() - x.lo().to_double() < tol;
}

}  // namespace

TEST_CASE("floor_b_rho") {
  const Params params = validate_params(2, 3);
  CHECK(floor_b_rho(params, 0) == 0);
  CHECK(floor_b_rho(params, 1) == 1);
  CHECK(floor_b_rho(params, 7) == 11);
  CHECK(floor_b_rho(params, 12) == 19);
  for (auto [p, q] : kPairs) {
    const Params pr = validate_params(p, q);
    for (unsigned long b = 1; b <= 120; ++b) CHECK(floor_b_rho(pr, b) == brute::floor_b_rho(p, q, b));
  }
}

TEST_CASE("rho_enclosure and log_base_p") {
  const Params params = validate_params(2, 3);
  CHECK(near(rho_enclosure(params, 128), 1.5849625007211562));
  CHECK(near(log_base_p(params, 750, 128), 9.5507467853832431, 1e-14));
  const Interval e = log_base_p(params, 1024, 64);
  CHECK(e.lo().to_double() <= 10.0);
  CHECK(e.hi().to_double() >= 10.0);
}

TEST_CASE("expand_rho (2,3)") {
  ConvergentTable table = expand_rho(validate_params(2, 3), 7);
  REQUIRE(table.depth() >= 7);
  const unsigned long a[] = {1, 1, 1, 2, 2, 3, 1};
  const long k[] = {1, 1, 2, 5, 12, 41, 53};
  const long hs[] = {1, 2, 3, 8, 19, 65, 84};
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(table.a(i) == a[i]);
    CHECK(table.k(i) == k[i]);
    CHECK(table.h(i) == hs[i]);
  }
  CHECK(near(table.eps(0), 0.58496250072115618));
}

TEST_CASE("expand_rho other pairs") {
  const std::vector<std::pair<std::pair<long, long>, std::vector<unsigned long>>> cases{
      {{2, 5}, {2, 3, 9, 2, 2, 4, 6, 2, 1, 1}},
      {{3, 5}, {1, 2, 6, 1, 1, 1, 3, 7, 3, 1}},
      {{3, 7}, {1, 1, 3, 2, 1, 2, 4, 22, 32, 3}},
      {{5, 7}, {1, 4, 1, 3, 1, 1, 1, 1, 2, 4}},
  };
  for (const auto& [pq, digits] : cases) {
    ConvergentTable table(validate_params(pq.first, pq.second), digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) CHECK(table.a(i) == digits[i]);
  }
}

TEST_CASE("convergent invariants") {
  for (auto [p, q] : kPairs) {
    const Params params = validate_params(p, q);
    ConvergentTable table(params, 24);
    for (std::size_t i = 0; i + 1 < table.depth(); ++i) {
      if (table.k(i) < 100000) {
        const BigNat ph = pow_ui(p, table.h(i).get_ui());
        const BigNat qk = pow_ui(q, table.k(i).get_ui());
        if (i % 2 == 0)
          CHECK(ph < qk);
        else
          CHECK(ph > qk);
      }
      if (table.k(i) + (i ? table.k(i - 1) : BigNat(0)) <= ConvergentTable::kExactCertifyLimit)
        CHECK(table.exact_certified(i));
      const Interval& e = table.eps(i);
      const mpq_class lo(1, table.k(i) + table.k(i + 1)), hi(1, table.k(i + 1));
      CHECK(e.lo().to_double() > 0);
      CHECK(mpq_class(e.hi().to_double()) < hi);
      CHECK(mpq_class(e.lo().to_double()) > lo);
      if (i >= 1) CHECK(table.k(i + 1) == table.a(i + 1) * table.k(i) + table.k(i - 1));
    }
    CHECK(table.k(0) == 1);
    CHECK(table.h(0) == floor_log(p, BigNat(q)));
  }
}

TEST_CASE("deepen and budget") {
  ConvergentTable table(validate_params(2, 3), 4);
  table.deepen(12);
  CHECK(table.depth() >= 12);
  CHECK(table.first_even_above(12) == 6);
  CHECK(table.k(table.first_even_above(1000)) > 1000);
  CHECK_THROWS_AS(table.deepen(ConvergentTable::kMaxDepth + 1), Error);
}

TEST_CASE("below_stream") {
  ConvergentTable table(validate_params(2, 3), 10);
  const auto stream = below_stream(table);
  const long want[] = {1, 2, 7, 12, 53};
  REQUIRE(stream.size() >= 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(stream[i].K == want[i]);
  CHECK(stream[0].H == 1);
  CHECK(stream[2].s == 1);
  CHECK(stream[2].t == 1);
  for (auto [p, q] : kPairs) {
    const Params params = validate_params(p, q);
    ConvergentTable t(params, 12);
    const auto s = below_stream(t);
    CHECK(s.front().K == 1);
    CHECK(s.front().H == floor_log(p, BigNat(q)));
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      CHECK(s[i].K < s[i + 1].K);
      if (2 * s[i + 1].s + 2 < t.depth())
        CHECK(frac_K(t, s[i + 1].s, s[i + 1].t).hi().to_double() < frac_K(t, s[i].s, s[i].t).lo().to_double());
      CHECK(next_below(t, s[i]).K == s[i + 1].K);
    }
  }
}

TEST_CASE("below stream is best from below for K <= 200") {
  for (auto [p, q] : kPairs) {
    const Params params = validate_params(p, q);
    ConvergentTable table(params, 20);
    for (const auto& term : below_stream(table)) {
      if (term.K > 200) break;
      const unsigned long K = term.K.get_ui();
      CHECK(term.H == brute::floor_b_rho(p, q, K));
      // No k <= K has floor(k rho)/k in (H/K, rho).
      mpq_class hk(term.H, term.K);
      hk.canonicalize();
      for (unsigned long k = 1; k <= K; ++k) {
        mpq_class f(brute::floor_b_rho(p, q, k), k);
        f.canonicalize();
        CHECK_FALSE(f > hk);
      }
    }
  }
}

TEST_CASE("locate_below") {
  ConvergentTable table(validate_params(2, 3), 8);
  auto t = locate_below(table, 11);
  CHECK(t.K == 7);
  CHECK(t.s == 1);
  CHECK(t.t == 1);
  CHECK(locate_below(table, 1).K == 1);
  CHECK(locate_below(table, 12).K == 12);
  CHECK(locate_below(table, 52).K == 12);
  for (unsigned long b = 1; b < 400; ++b) {
    const auto term = locate_below(table, b);
    CHECK(term.K <= b);
    CHECK(next_below(table, term).K > b);
  }
}

TEST_CASE("frac_K") {
  ConvergentTable table(validate_params(2, 3), 10);
  CHECK(near(frac_K(table, 0, 0), 0.58496250072115618));
  CHECK(near(frac_K(table, 0, 1), 0.16992500144231236));
  for (std::size_t s = 0; s < 4; ++s) {
    const Interval e = frac_K(table, s, table.a(2 * s + 2));
    CHECK(e.lo().to_double() <= table.eps(2 * s + 2).hi().to_double());
    CHECK(e.hi().to_double() >= table.eps(2 * s + 2).lo().to_double());
  }
}

TEST_CASE("rho_interval") {
  const auto r = rho_interval(validate_params(2, 3), 10);
  CHECK(r.lo < mpq_class(15849625, 10000000));
  CHECK(r.hi > mpq_class(15849626, 10000000));
  CHECK(r.hi - r.lo <= mpq_class(1, 1024));
  const auto r5 = rho_interval(validate_params(2, 5), 10);
  CHECK(r5.lo < mpq_class(23219, 10000));
  CHECK(r5.hi > mpq_class(23219, 10000));
  for (auto [p, q] : kPairs) {
    const auto ri = rho_interval(validate_params(p, q), 40);
    CHECK(ri.lo >= 1);
    CHECK(ri.hi - ri.lo <= mpq_class(1, mpz_class(1) << 40));
    // lo < rho < hi checked with exact powers.
    CHECK(pow_ui(p, ri.lo.get_num().get_ui()) < pow_ui(q, ri.lo.get_den().get_ui()));
    CHECK(pow_ui(p, ri.hi.get_num().get_ui()) > pow_ui(q, ri.hi.get_den().get_ui()));
  }
}
