#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

#include "pqchain/bignat.hpp"

namespace pqchain {

// Owning handle for an mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

// Closed interval [lo, hi] that provably contains the quantity it stands
// for. Every operation rounds lo down and hi up.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);

  static Interval exact(const BigNat& v, mpfr_prec_t prec);
  static Interval exact(const mpq_class& v, mpfr_prec_t prec);
  static Interval exact(long v, mpfr_prec_t prec);
  // Enclosure of log(v) for v >= 1.
  static Interval log(const BigNat& v, mpfr_prec_t prec);
  static Interval log(const mpq_class& v, mpfr_prec_t prec);

  const Real& lo() const noexcept { return lo_; }
  const Real& hi() const noexcept { return hi_; }
  mpfr_prec_t precision() const noexcept { return lo_.precision(); }

  double mid() const;
  double width() const;
  bool contains(double x) const;

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  // Requires o strictly positive or strictly negative.
  Interval operator/(const Interval& o) const;
  Interval operator-() const;
  Interval scaled(long k) const;
  Interval shifted(long k) const;  // this + k
  Interval shifted(const BigNat& k) const;

  // Monotone elementary functions applied endpoint-wise.
  Interval log() const;
  Interval log1p() const;
  Interval exp() const;

  // Floor when both endpoints share it; nullopt otherwise.
  std::optional<BigNat> floor() const;
  std::optional<BigNat> ceil() const;

  // Certified ordering; nullopt when the intervals overlap.
  std::optional<bool> certainly_ge(const Interval& o) const;  // this >= o
  std::optional<bool> certainly_lt(const Interval& o) const;  // this < o

  std::string to_string(int digits = 12) const;

 private:
  Real lo_;
  Real hi_;
};

}  // namespace pqchain
