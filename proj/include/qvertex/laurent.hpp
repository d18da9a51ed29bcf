#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qv {

/// q-exponents are integers in units of 1/kTick.
inline constexpr std::int64_t kTick = 120;

/// Sparse Laurent polynomial in q^(1/kTick) with rational coefficients.
class LaurentPoly {
 public:
  using Term = std::pair<std::int64_t, mpq_class>;

  LaurentPoly() = default;
  static LaurentPoly constant(const mpq_class& c);
  static LaurentPoly monomial(const mpq_class& c, std::int64_t ticks);
  /// Terms in any order; equal exponents are merged and zeros dropped.
  static LaurentPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return t_.empty(); }
  bool is_monomial() const { return t_.size() == 1; }
  bool is_constant() const { return t_.size() == 1 && t_[0].first == 0; }
  bool is_one() const { return is_constant() && t_[0].second == 1; }
  std::size_t size() const { return t_.size(); }
  std::int64_t low() const { return t_.front().first; }
  std::int64_t high() const { return t_.back().first; }
  const mpq_class& lead() const { return t_.back().second; }
  const mpq_class& trail() const { return t_.front().second; }
  const std::vector<Term>& terms() const { return t_; }
  /// gcd of all exponent differences, 0 for a monomial.
  std::int64_t step() const;
  mpq_class coeff(std::int64_t ticks) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly shifted(std::int64_t ticks) const;
  LaurentPoly scaled(const mpq_class& c) const;
  /// q -> q^m on exponents.
  LaurentPoly dilated(std::int64_t m) const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// `c*q^e` monomials joined by `+`, ascending; `0` when empty.
  std::string str() const;

 private:
  std::vector<Term> t_;  // ascending exponents, no zero coefficients
};

/// Writes a/b into quot when b divides a exactly.
bool divide_exact(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quot);

/// Monic gcd with lowest exponent 0. Both arguments nonzero.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Phi_d(q), integer exponents of q.
const LaurentPoly& cyclotomic(int d);

/// Euler phi.
int totient(int d);

std::string exponent_str(std::int64_t ticks);

}  // namespace qv
