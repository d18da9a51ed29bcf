#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qvertex/laurent.hpp"

namespace qv {

/// Exact element of Q(q^(1/kTick)).
///
/// The denominator is kept as prod Phi_d(q)^m times one generic monic factor.
/// Numerator and denominator are coprime after every operation.
class QRat {
 public:
  QRat() = default;
  QRat(long c) : num_(LaurentPoly::constant(c)) {}  // NOLINT: implicit from integers
  explicit QRat(const mpq_class& c) : num_(LaurentPoly::constant(c)) {}
  explicit QRat(LaurentPoly num) : num_(std::move(num)) {}
  QRat(LaurentPoly num, LaurentPoly den);

  /// c * q^(ticks/kTick)
  static QRat monomial(const mpq_class& c, std::int64_t ticks);
  static QRat q_pow(std::int64_t ticks) { return monomial(1, ticks); }
  static QRat q() { return q_pow(kTick); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  /// c*q^e with trivial denominator.
  bool is_monomial() const;
  bool is_integer_constant() const;
  const LaurentPoly& num() const { return num_; }

  /// Reduced normal form with integer coefficients, denominator with positive
  /// leading coefficient and lowest exponent 0.
  LaurentPoly numerator() const;
  LaurentPoly denominator() const;
  /// Expanded denominator as stored (monic generic part times cyclotomics).
  LaurentPoly stored_denominator() const;

  /// q-adic valuation (lowest power of q in the expansion at q = 0).
  std::int64_t valuation() const;

  QRat operator-() const;
  QRat& operator+=(const QRat& o);
  QRat& operator-=(const QRat& o);
  QRat& operator*=(const QRat& o);
  QRat& operator/=(const QRat& o);
  QRat inv() const;
  QRat pow(long e) const;
  /// q -> q^m.
  QRat dilated(std::int64_t m) const;

  friend QRat operator+(QRat a, const QRat& b) { return a += b; }
  friend QRat operator-(QRat a, const QRat& b) { return a -= b; }
  friend QRat operator*(QRat a, const QRat& b) { return a *= b; }
  friend QRat operator/(QRat a, const QRat& b) { return a /= b; }
  friend bool operator==(const QRat& a, const QRat& b);
  friend bool operator!=(const QRat& a, const QRat& b) { return !(a == b); }

  /// `<num> / <den>` of the reduced normal form.
  std::string str() const;

 private:
  void reduce();
  bool same_denominator(const QRat& o) const { return cyc_ == o.cyc_ && gen_ == o.gen_; }

  LaurentPoly num_;
  std::vector<std::pair<int, int>> cyc_;  // (d, multiplicity), ascending d
  LaurentPoly gen_ = LaurentPoly::constant(1);
};

/// Symmetric q-integer [k] = (q^k - q^-k)/(q - q^-1).
QRat qint(long k);

/// Cyclotomic content of a polynomial: p = c * q^shift * prod Phi_d^m * rest.
struct CycloFactorization {
  mpq_class content;
  std::int64_t shift = 0;
  std::vector<std::pair<int, int>> cyc;
  LaurentPoly rest;  // monic, lowest exponent 0
};
CycloFactorization factor_cyclotomic(const LaurentPoly& p);

}  // namespace qv
