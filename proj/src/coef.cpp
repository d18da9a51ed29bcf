#include "qvertex/coef.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qv {

ExpPoly ExpPoly::term(const QRat& c, std::int64_t e) {
  ExpPoly p;
  p.add(e, c);
  return p;
}

ExpPoly ExpPoly::sinh(std::int64_t b) {
  ExpPoly p;
  p.add(b, QRat(1));
  p.add(-b, QRat(-1));
  return p;
}

void ExpPoly::add(std::int64_t e, const QRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

QRat ExpPoly::eval(long k) const {
  QRat s;
  for (const auto& [e, c] : t_) s += c * QRat::q_pow(e * k);
  return s;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const auto& [e, c] : o.t_) add(e, c);
  return *this;
}

ExpPoly ExpPoly::operator-() const { return scaled(QRat(-1)); }

ExpPoly ExpPoly::scaled(const QRat& c) const {
  ExpPoly r;
  if (c.is_zero()) return r;
  for (const auto& [e, v] : t_) r.t_.emplace(e, v * c);
  return r;
}

ExpPoly ExpPoly::shifted(std::int64_t e) const {
  ExpPoly r;
  for (const auto& [x, v] : t_) r.t_.emplace(x + e, v);
  return r;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly r;
  for (const auto& [e1, c1] : a.t_)
    for (const auto& [e2, c2] : b.t_) r.add(e1 + e2, c1 * c2);
  return r;
}

std::string ExpPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*q^(" << exponent_str(e) << "k)";
  }
  return os.str();
}

CoefFamily::CoefFamily(ExpPoly num, std::vector<std::int64_t> den, int kpow)
    : num_(std::move(num)), den_(std::move(den)), kpow_(kpow) {
  for (auto b : den_)
    if (b <= 0) throw std::domain_error("family denominator exponents must be positive");
  std::sort(den_.begin(), den_.end());
  if (num_.is_zero()) {
    den_.clear();
    kpow_ = 0;
  }
}

CoefFamily CoefFamily::over_qint(const QRat& c, std::int64_t e) {
  // q^(ek)/[k] = (q - q^-1) q^(ek) / (q^k - q^-k)
  return CoefFamily(ExpPoly::term(c * (QRat::q() - QRat::q_pow(-kTick)), e), {kTick});
}

QRat CoefFamily::eval(long k) const {
  if (num_.is_zero()) return QRat(0);
  QRat d(1);
  for (auto b : den_) d *= QRat::q_pow(b * k) - QRat::q_pow(-b * k);
  for (int i = 0; i < kpow_; ++i) d *= QRat(k);
  return num_.eval(k) / d;
}

CoefFamily CoefFamily::shifted(std::int64_t e) const { return CoefFamily(num_.shifted(e), den_, kpow_); }

CoefFamily CoefFamily::scaled(const QRat& c) const { return CoefFamily(num_.scaled(c), den_, kpow_); }

namespace {

// Multiset difference a \ b of sorted vectors.
std::vector<std::int64_t> missing(const std::vector<std::int64_t>& want, const std::vector<std::int64_t>& have) {
  std::vector<std::int64_t> r;
  std::set_difference(want.begin(), want.end(), have.begin(), have.end(), std::back_inserter(r));
  return r;
}

ExpPoly product_of(const std::vector<std::int64_t>& bs) {
  ExpPoly p = ExpPoly::constant(QRat(1));
  for (auto b : bs) p = p * ExpPoly::sinh(b);
  return p;
}

}  // namespace

CoefFamily operator+(const CoefFamily& a, const CoefFamily& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kpow_ != b.kpow_) throw std::domain_error("adding families with different powers of k");
  std::vector<std::int64_t> l;
  std::set_union(a.den_.begin(), a.den_.end(), b.den_.begin(), b.den_.end(), std::back_inserter(l));
  ExpPoly n = a.num_ * product_of(missing(l, a.den_));
  n += b.num_ * product_of(missing(l, b.den_));
  return CoefFamily(std::move(n), std::move(l), a.kpow_);
}

CoefFamily operator*(const CoefFamily& a, const CoefFamily& b) {
  if (a.is_zero() || b.is_zero()) return CoefFamily();
  std::vector<std::int64_t> d = a.den_;
  d.insert(d.end(), b.den_.begin(), b.den_.end());
  return CoefFamily(a.num_ * b.num_, std::move(d), a.kpow_ + b.kpow_);
}

bool same_family(const CoefFamily& a, const CoefFamily& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.kpow_ != b.kpow_) return false;
  return (a.num_ * product_of(b.den_)) == (b.num_ * product_of(a.den_));
}

std::string CoefFamily::str() const {
  if (num_.is_zero()) return "0";
  std::ostringstream os;
  os << "[" << num_.str() << "]";
  for (auto b : den_) os << " / (q^(" << exponent_str(b) << "k) - q^(-" << exponent_str(b) << "k))";
  for (int i = 0; i < kpow_; ++i) os << " / k";
  return os.str();
}

}  // namespace qv
