#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "qvertex/qrat.hpp"
#include "qvertex/scalar.hpp"

namespace qv {

/// Dense polynomial in one formal variable x with QRat coefficients (ascending).
using UniPoly = std::vector<QRat>;

void trim(UniPoly& p);
UniPoly poly_mul(const UniPoly& a, const UniPoly& b);
UniPoly poly_add(const UniPoly& a, const UniPoly& b);
/// p(c x)
UniPoly poly_scale_var(const UniPoly& p, const QRat& c);

/// x^shift * num(x) / den(x), den nonzero.
class UniRat {
 public:
  UniRat() : num_{QRat(0)}, den_{QRat(1)} {}
  UniRat(UniPoly num, UniPoly den, int shift = 0);
  static UniRat constant(const QRat& c) { return UniRat({c}, {QRat(1)}); }
  /// c x^e
  static UniRat monomial(const QRat& c, int e) { return UniRat({c}, {QRat(1)}, e); }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  int shift() const { return shift_; }
  bool is_zero() const { return num_.empty(); }

  /// Lowest exponent of the expansion at x = 0.
  int low() const;
  /// Coefficients of the expansion at x = 0 for exponents low() .. low()+count-1.
  std::vector<QRat> expand(int count) const;

  /// g(x) = f(1/x), written again in x.
  UniRat reciprocal_var() const;
  /// f(c x)
  UniRat scale_var(const QRat& c) const;

  UniRat operator-() const;
  friend UniRat operator+(const UniRat& a, const UniRat& b);
  friend UniRat operator-(const UniRat& a, const UniRat& b) { return a + (-b); }
  friend UniRat operator*(const UniRat& a, const UniRat& b);
  UniRat inv() const;
  friend bool operator==(const UniRat& a, const UniRat& b);
  friend bool operator!=(const UniRat& a, const UniRat& b) { return !(a == b); }

  std::string str(const std::string& var) const;

 private:
  void normalize();
  UniPoly num_, den_;
  int shift_ = 0;
};

/// (a x - 1)/(x - a)
UniRat g_factor(const QRat& a);

/// Expansion of a UniRat with coefficients computed on demand; safe to share.
class LazySeries {
 public:
  explicit LazySeries(UniRat f) : f_(std::move(f)), low_(f_.low()) {}
  int low() const { return low_; }
  /// Coefficient of x^k (zero below low()).
  QRat coeff(int k) const;
  const UniRat& function() const { return f_; }

 private:
  UniRat f_;
  int low_;
  mutable std::mutex mu_;
  mutable std::vector<QRat> cache_;
};

/// Truncated Laurent series with rational exponents and Scalar coefficients.
class FracLaurentSeries {
 public:
  FracLaurentSeries(std::string var, Rat order) : var_(std::move(var)), order_(order) {}

  const std::string& var() const { return var_; }
  const Rat& order() const { return order_; }
  const std::map<Rat, Scalar>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Scalar coeff(const Rat& e) const;
  /// Adds c x^e; ignored when e >= order.
  void add_term(const Rat& e, const Scalar& c);

  FracLaurentSeries truncated(const Rat& order) const;
  /// x^e * this
  FracLaurentSeries shifted(const Rat& e) const;
  FracLaurentSeries scaled(const Scalar& c) const;
  FracLaurentSeries inv() const;

  friend FracLaurentSeries operator+(const FracLaurentSeries& a, const FracLaurentSeries& b);
  friend FracLaurentSeries operator-(const FracLaurentSeries& a, const FracLaurentSeries& b);
  friend FracLaurentSeries operator*(const FracLaurentSeries& a, const FracLaurentSeries& b);
  friend bool operator==(const FracLaurentSeries& a, const FracLaurentSeries& b);

  /// One line per term, then `O(var^order)`.
  std::string dump() const;

 private:
  std::string var_;
  Rat order_;
  std::map<Rat, Scalar> t_;
};

enum class Direction { at_zero, at_infinity };

/// Expansion of f to the given order. At infinity the series is in the
/// reciprocal variable, named "1/var".
FracLaurentSeries expand_rational(const UniRat& f, Direction dir, int order, const std::string& var = "z");

/// (a x; p)_inf with p = q^(p_ticks/kTick), p_ticks > 0, exact in x up to O(x^order).
FracLaurentSeries pochhammer_series(const QRat& a, std::int64_t p_ticks, int order, const std::string& var = "x");

/// Product over m < factors of (1 - a p^m x), truncated at O(x^order).
FracLaurentSeries pochhammer_partial(const QRat& a, std::int64_t p_ticks, int factors, int order,
                                     const std::string& var = "x");

/// exp(sum_{k>=1} a[k-1] x^k) up to O(x^order).
std::vector<QRat> exp_series(const std::vector<QRat>& a, int order);

}  // namespace qv
