#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qvertex/qrat.hpp"

namespace qv {

/// k -> sum_e c_e q^(e k), exponents e in ticks.
class ExpPoly {
 public:
  ExpPoly() = default;
  static ExpPoly constant(const QRat& c) { return term(c, 0); }
  /// c q^(e k)
  static ExpPoly term(const QRat& c, std::int64_t e);
  /// q^(b k) - q^(-b k)
  static ExpPoly sinh(std::int64_t b);

  bool is_zero() const { return t_.empty(); }
  const std::map<std::int64_t, QRat>& terms() const { return t_; }
  QRat eval(long k) const;

  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly operator-() const;
  ExpPoly scaled(const QRat& c) const;
  /// multiplied by q^(e k)
  ExpPoly shifted(std::int64_t e) const;
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.t_ == b.t_; }

  std::string str() const;

 private:
  void add(std::int64_t e, const QRat& c);
  std::map<std::int64_t, QRat> t_;
};

/// Closed form k -> N(k) / (prod_b (q^(b k) - q^(-b k)) * k^p).
///
/// Functions k -> q^(e k) with distinct e are linearly independent, so two
/// families agree for all k exactly when their cross-multiplied numerators do.
class CoefFamily {
 public:
  CoefFamily() = default;
  CoefFamily(ExpPoly num, std::vector<std::int64_t> den, int kpow = 0);
  static CoefFamily constant(const QRat& c) { return CoefFamily(ExpPoly::constant(c), {}); }
  /// c q^(e k) / [k]
  static CoefFamily over_qint(const QRat& c, std::int64_t e);

  bool is_zero() const { return num_.is_zero(); }
  QRat eval(long k) const;
  const ExpPoly& num() const { return num_; }
  const std::vector<std::int64_t>& den() const { return den_; }
  int kpow() const { return kpow_; }

  CoefFamily shifted(std::int64_t e) const;
  CoefFamily scaled(const QRat& c) const;
  CoefFamily operator-() const { return scaled(QRat(-1)); }
  friend CoefFamily operator+(const CoefFamily& a, const CoefFamily& b);
  friend CoefFamily operator-(const CoefFamily& a, const CoefFamily& b) { return a + (-b); }
  friend CoefFamily operator*(const CoefFamily& a, const CoefFamily& b);
  /// Identical as functions of k.
  friend bool same_family(const CoefFamily& a, const CoefFamily& b);

  std::string str() const;

 private:
  ExpPoly num_;
  std::vector<std::int64_t> den_;  // sorted, positive ticks
  int kpow_ = 0;
};

}  // namespace qv
