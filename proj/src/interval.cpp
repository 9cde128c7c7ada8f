#include "pqchain/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "pqchain/error.hpp"

namespace pqchain {

Real::Real(mpfr_prec_t prec) { mpfr_init2(value_, prec); }

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // mpfr_t is an array type; steal the limbs by swapping into a fresh value.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() {
  mpfr_clear(value_);
}

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_zero(lo_.get(), 1);
  mpfr_set_zero(hi_.get(), 1);
}

Interval Interval::exact(const BigNat& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::exact(const mpq_class& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::exact(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::log(const BigNat& v, mpfr_prec_t prec) {
  if (v < 1) throw Error(ErrorKind::OutOfRange, "log of value < 1");
  Interval x = exact(v, prec);
  Interval r(prec);
  mpfr_log(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::log(const mpq_class& v, mpfr_prec_t prec) {
  if (v <= 0) throw Error(ErrorKind::OutOfRange, "log of non-positive value");
  Interval x = exact(v, prec);
  Interval r(prec);
  mpfr_log(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return r;
}

double Interval::mid() const {
  Real m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

double Interval::width() const {
  Real w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool Interval::contains(double x) const {
  return mpfr_cmp_d(lo_.get(), x) <= 0 && mpfr_cmp_d(hi_.get(), x) >= 0;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(std::max(precision(), o.precision()));
  mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(std::max(precision(), o.precision()));
  mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  const mpfr_prec_t prec = std::max(precision(), o.precision());
  Interval r(prec);
  Real t(prec);
  const mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
  const mpfr_srcptr ys[2] = {o.lo_.get(), o.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (mpfr_sgn(o.lo_.get()) <= 0 && mpfr_sgn(o.hi_.get()) >= 0)
    throw Error(ErrorKind::OutOfRange, "interval division by an enclosure of zero");
  const mpfr_prec_t prec = std::max(precision(), o.precision());
  Interval r(prec);
  Real t(prec);
  const mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
  const mpfr_srcptr ys[2] = {o.lo_.get(), o.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_.get()) <= 0) throw Error(ErrorKind::OutOfRange, "log of an interval reaching 0");
  Interval r(precision());
  mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::log1p() const {
  if (mpfr_cmp_si(lo_.get(), -1) <= 0) throw Error(ErrorKind::OutOfRange, "log1p of an interval reaching -1");
  Interval r(precision());
  mpfr_log1p(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log1p(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(precision());
  mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::scaled(long k) const {
  Interval r(precision());
  if (k >= 0) {
    mpfr_mul_si(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_mul_si(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_.get(), hi_.get(), k, MPFR_RNDD);
    mpfr_mul_si(r.hi_.get(), lo_.get(), k, MPFR_RNDU);
  }
  return r;
}

Interval Interval::shifted(long k) const {
  Interval r(precision());
  mpfr_add_si(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
  mpfr_add_si(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
  return r;
}

Interval Interval::shifted(const BigNat& k) const {
  Interval r(precision());
  mpfr_add_z(r.lo_.get(), lo_.get(), k.get_mpz_t(), MPFR_RNDD);
  mpfr_add_z(r.hi_.get(), hi_.get(), k.get_mpz_t(), MPFR_RNDU);
  return r;
}

std::optional<BigNat> Interval::floor() const {
  BigNat a, b;
  mpfr_get_z(a.get_mpz_t(), lo_.get(), MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), hi_.get(), MPFR_RNDD);
  if (a != b) return std::nullopt;
  return a;
}

std::optional<BigNat> Interval::ceil() const {
  BigNat a, b;
  mpfr_get_z(a.get_mpz_t(), lo_.get(), MPFR_RNDU);
  mpfr_get_z(b.get_mpz_t(), hi_.get(), MPFR_RNDU);
  if (a != b) return std::nullopt;
  return a;
}

std::optional<bool> Interval::certainly_ge(const Interval& o) const {
  if (mpfr_greaterequal_p(lo_.get(), o.hi_.get())) return true;
  if (mpfr_less_p(hi_.get(), o.lo_.get())) return false;
  return std::nullopt;
}

std::optional<bool> Interval::certainly_lt(const Interval& o) const {
  if (mpfr_less_p(hi_.get(), o.lo_.get())) return true;
  if (mpfr_greaterequal_p(lo_.get(), o.hi_.get())) return false;
  return std::nullopt;
}

std::string Interval::to_string(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << mid();
  return os.str();
}

}  // namespace pqchain
