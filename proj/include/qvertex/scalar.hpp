#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "qvertex/qrat.hpp"

namespace qv {

using Rat = boost::rational<std::int64_t>;

std::string rat_str(const Rat& r);          // "p/q", always with a denominator
std::string rat_short(const Rat& r);        // "p" or "p/q"
std::int64_t floor_rat(const Rat& r);
/// r * kTick as an integer tick count; throws if it is not integral.
std::int64_t rat_ticks(const Rat& r);

/// Sum of two scalars whose fractional phases differ.
struct UnsupportedSum : std::domain_error {
  using std::domain_error::domain_error;
};

/// Fractional part of the exponent r in (-1)^r, kept in [0, 1).
class Phase {
 public:
  Phase() = default;
  /// (-1)^r == sign * (-1)^phase
  static std::pair<Phase, int> split(const Rat& r);
  const Rat& r() const { return r_; }
  bool trivial() const { return r_.numerator() == 0; }
  friend bool operator==(const Phase& a, const Phase& b) { return a.r_ == b.r_; }
  friend bool operator!=(const Phase& a, const Phase& b) { return a.r_ != b.r_; }

 private:
  Rat r_{0};
};

/// QRat times a root-of-unity phase.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long c) : v_(c) {}  // NOLINT: implicit from integers
  Scalar(QRat v) : v_(std::move(v)) {}  // NOLINT
  Scalar(QRat v, const Rat& phase_exp);

  const QRat& value() const { return v_; }
  const Phase& phase() const { return ph_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return ph_.trivial() && v_.is_one(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inv() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.ph_ == b.ph_ && a.v_ == b.v_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// `(-1)^r/s | num / den`
  std::string str() const;

 private:
  QRat v_;
  Phase ph_;
};

/// (-1)^r as a scalar.
Scalar phase_scalar(const Rat& r);
/// q^(ticks/kTick)
inline Scalar q_scalar(std::int64_t ticks) { return Scalar(QRat::q_pow(ticks)); }

}  // namespace qv
