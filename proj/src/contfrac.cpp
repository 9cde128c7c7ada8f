#include "pqchain/contfrac.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "pqchain/error.hpp"

namespace pqchain {

Interval rho_enclosure(const Params& params, mpfr_prec_t prec) {
  return Interval::log(BigNat(params.q()), prec) / Interval::log(BigNat(params.p()), prec);
}

Interval log_base_p(const Params& params, const BigNat& m, mpfr_prec_t prec) {
  return Interval::log(m, prec) / Interval::log(BigNat(params.p()), prec);
}

BigNat floor_b_rho(const Params& params, unsigned long b) {
  if (b == 0) return 0;
  // p^c == q^b is impossible for b >= 1, so <= and < agree.
  return floor_log(params.p(), pow_ui(params.q(), b));
}

ConvergentTable::ConvergentTable(const Params& params, std::size_t depth)
    : params_(params), prec_(128), rho_(rho_enclosure(params, 128)) {
  const unsigned long a0 = floor_log(params.p(), BigNat(params.q()));
  a_.push_back(a0);
  h_.push_back(BigNat(a0));
  k_.push_back(BigNat(1));
  eps_.push_back(rho_.shifted(-static_cast<long>(a0)));
  certified_.push_back(false);
  certify(0);
  deepen(depth);
}

Interval ConvergentTable::eps_at(std::size_t i, mpfr_prec_t prec) const {
  const Interval rho = rho_enclosure(params_, prec);
  Interval kr = rho * Interval::exact(k_.at(i), prec);
  Interval hv = Interval::exact(h_.at(i), prec);
  return (i % 2 == 0) ? kr - hv : hv - kr;
}

void ConvergentTable::recompute_eps() {
  rho_ = rho_enclosure(params_, prec_);
  for (std::size_t i = 0; i < k_.size(); ++i) {
    Interval kr = rho_ * Interval::exact(k_[i], prec_);
    Interval hv = Interval::exact(h_[i], prec_);
    eps_[i] = (i % 2 == 0) ? kr - hv : hv - kr;
  }
}

bool ConvergentTable::next_digit(unsigned long& digit) const {
  const std::size_t i = k_.size();
  const Interval prev = (i >= 2) ? eps_[i - 2] : Interval::exact(1L, prec_);
  const Interval& last = eps_[i - 1];
  if (mpfr_sgn(last.lo().get()) <= 0) return false;
  auto fl = (prev / last).floor();
  if (!fl) return false;
  if (!fl->fits_ulong_p() || *fl == 0)
    throw Error(ErrorKind::BudgetExceeded, "partial quotient out of range at index " + std::to_string(i));
  digit = fl->get_ui();
  return true;
}

void ConvergentTable::certify(std::size_t i) {
  const BigNat& k = k_[i];
  const BigNat& h = h_[i];
  const BigNat k_prev = (i >= 1) ? k_[i - 1] : BigNat(0);
  const BigNat h_prev = (i >= 1) ? h_[i - 1] : BigNat(1);
  const BigNat k_next = k + k_prev;
  if (k_next > kExactCertifyLimit) return;
  const unsigned long p = params_.p();
  const unsigned long q = params_.q();
  const int side = cmp(pow_ui(p, h.get_ui()), pow_ui(q, k.get_ui()));
  // Even convergents lie below rho (p^h < q^k), odd ones above.
  const bool side_ok = (i % 2 == 0) ? side < 0 : side > 0;
  // With digit a_i + 1 the fraction would cross to the other side.
  const BigNat h_next = h + h_prev;
  const int cross = cmp(pow_ui(p, h_next.get_ui()), pow_ui(q, k_next.get_ui()));
  const bool digit_ok = (i % 2 == 0) ? cross > 0 : cross < 0;
  if (!side_ok || !digit_ok)
    throw std::logic_error("convergent " + std::to_string(i) + " failed exact certification");
  certified_[i] = true;
}

void ConvergentTable::deepen(std::size_t new_depth) {
  while (k_.size() < new_depth) {
    const std::size_t i = k_.size();
    if (i >= kMaxDepth)
      throw Error(ErrorKind::BudgetExceeded, "continued fraction depth budget " + std::to_string(kMaxDepth));
    unsigned long digit = 0;
    bool ok = next_digit(digit);
    BigNat h, k;
    if (ok) {
      const BigNat h2 = (i >= 2) ? h_[i - 2] : BigNat(1);
      const BigNat k2 = (i >= 2) ? k_[i - 2] : BigNat(0);
      h = digit * h_[i - 1] + h2;
      k = digit * k_[i - 1] + k2;
      Interval kr = rho_ * Interval::exact(k, prec_);
      Interval hv = Interval::exact(h, prec_);
      Interval e = (i % 2 == 0) ? kr - hv : hv - kr;
      if (mpfr_sgn(e.lo().get()) <= 0) ok = false;
      if (ok) {
        a_.push_back(digit);
        h_.push_back(h);
        k_.push_back(k);
        eps_.push_back(std::move(e));
        certified_.push_back(false);
        certify(i);
        continue;
      }
    }
    if (prec_ * 2 > kMaxPrecision)
      throw Error(ErrorKind::BudgetExceeded, "precision budget exhausted expanding rho");
    prec_ *= 2;
    recompute_eps();
  }
}

std::size_t ConvergentTable::first_even_above(const BigNat& bound) {
  for (std::size_t i = 0;; i += 2) {
    if (i >= k_.size()) deepen(i + 1);
    if (k_[i] > bound) return i;
  }
}

void ConvergentTable::cover(const BigNat& bound) { first_even_above(bound); }

BelowTerm below_term(const ConvergentTable& table, std::size_t s, unsigned long t) {
  BelowTerm term;
  term.s = s;
  term.t = t;
  term.K = table.k(2 * s);
  term.H = table.h(2 * s);
  if (t > 0) {
    term.K += t * table.k(2 * s + 1);
    term.H += t * table.h(2 * s + 1);
  }
  return term;
}

std::vector<BelowTerm> below_stream(const ConvergentTable& table, std::size_t cap) {
  std::vector<BelowTerm> out;
  for (std::size_t s = 0; 2 * s < table.depth(); ++s) {
    out.push_back(below_term(table, s, 0));
    if (2 * s + 2 >= table.depth()) break;
    const unsigned long a = table.a(2 * s + 2);
    if (out.size() + a > cap)
      throw Error(ErrorKind::CapExceeded, "below stream exceeds " + std::to_string(cap) + " terms");
    for (unsigned long t = 1; t < a; ++t) out.push_back(below_term(table, s, t));
  }
  return out;
}

BelowTerm locate_below(ConvergentTable& table, const BigNat& b) {
  if (b < 1) throw Error(ErrorKind::OutOfRange, "locate_below needs b >= 1");
  const std::size_t top = table.first_even_above(b);
  const std::size_t s = top / 2 - 1;
  const BigNat t = (b - table.k(2 * s)) / table.k(2 * s + 1);
  return below_term(table, s, t.get_ui());
}

BelowTerm next_below(ConvergentTable& table, const BelowTerm& term) {
  if (table.depth() <= 2 * term.s + 2) table.deepen(2 * term.s + 3);
  if (term.t + 1 < table.a(2 * term.s + 2)) return below_term(table, term.s, term.t + 1);
  return below_term(table, term.s + 1, 0);
}

Interval frac_K(const ConvergentTable& table, std::size_t s, unsigned long t) {
  const unsigned long a = table.a(2 * s + 2);
  if (t > a) throw Error(ErrorKind::OutOfRange, "mediant index t exceeds a_{2s+2}");
  const Interval& e0 = table.eps(2 * s);
  const Interval& e1 = table.eps(2 * s + 1);
  const Interval& e2 = table.eps(2 * s + 2);
  Interval first = e0 - e1.scaled(static_cast<long>(t));
  Interval second = e2 + e1.scaled(static_cast<long>(a - t));
  const bool overlap = mpfr_lessequal_p(first.lo().get(), second.hi().get()) &&
                       mpfr_lessequal_p(second.lo().get(), first.hi().get());
  if (!overlap) throw std::logic_error("fractional-part identities disagree");
  return first;
}

RationalInterval rho_interval(const Params& params, unsigned long bits) {
  if (bits < 1) throw Error(ErrorKind::OutOfRange, "bits must be >= 1");
  ConvergentTable table(params, 2);
  const BigNat target = BigNat(1) << bits;
  std::size_t i = 0;
  for (;; ++i) {
    if (i + 1 >= table.depth()) table.deepen(i + 2);
    if (table.k(i) * table.k(i + 1) >= target) break;
  }
  const std::size_t even = (i % 2 == 0) ? i : i + 1;
  const std::size_t odd = (i % 2 == 0) ? i + 1 : i;
  RationalInterval out{mpq_class(table.h(even), table.k(even)), mpq_class(table.h(odd), table.k(odd))};
  out.lo.canonicalize();
  out.hi.canonicalize();
  return out;
}

}  // namespace pqchain
