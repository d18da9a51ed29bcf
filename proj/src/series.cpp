#include "qvertex/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qv {

void trim(UniPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UniPoly poly_mul(const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

UniPoly poly_add(const UniPoly& a, const UniPoly& b) {
  UniPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

UniPoly poly_scale_var(const UniPoly& p, const QRat& c) {
  UniPoly r = p;
  QRat f(1);
  for (auto& x : r) {
    x *= f;
    f *= c;
  }
  trim(r);
  return r;
}

namespace {

UniPoly shift_up(const UniPoly& p, int k) {
  UniPoly r(static_cast<std::size_t>(k), QRat(0));
  r.insert(r.end(), p.begin(), p.end());
  return r;
}

}  // namespace

UniRat::UniRat(UniPoly num, UniPoly den, int shift) : num_(std::move(num)), den_(std::move(den)), shift_(shift) {
  normalize();
}

void UniRat::normalize() {
  trim(num_);
  trim(den_);
  if (den_.empty()) throw std::domain_error("rational function with zero denominator");
  if (num_.empty()) {
    den_ = {QRat(1)};
    shift_ = 0;
    return;
  }
  auto strip = [](UniPoly& p) {
    int k = 0;
    while (p[static_cast<std::size_t>(k)].is_zero()) ++k;
    p.erase(p.begin(), p.begin() + k);
    return k;
  };
  shift_ += strip(num_);
  shift_ -= strip(den_);
  if (!den_[0].is_one()) {
    QRat c = den_[0].inv();
    for (auto& x : num_) x *= c;
    for (auto& x : den_) x *= c;
  }
}

int UniRat::low() const { return num_.empty() ? 0 : shift_; }

std::vector<QRat> UniRat::expand(int count) const {
  std::vector<QRat> s;
  if (count <= 0) return s;
  s.reserve(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    QRat v = static_cast<std::size_t>(m) < num_.size() ? num_[static_cast<std::size_t>(m)] : QRat(0);
    for (int i = 1; i <= m && static_cast<std::size_t>(i) < den_.size(); ++i)
      v -= den_[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(m - i)];
    s.push_back(std::move(v));  // den_[0] == 1
  }
  return s;
}

UniRat UniRat::reciprocal_var() const {
  if (num_.empty()) return *this;
  UniPoly p(num_.rbegin(), num_.rend()), d(den_.rbegin(), den_.rend());
  int dp = static_cast<int>(num_.size()) - 1, dq = static_cast<int>(den_.size()) - 1;
  return UniRat(std::move(p), std::move(d), -shift_ - dp + dq);
}

UniRat UniRat::scale_var(const QRat& c) const {
  UniPoly p = poly_scale_var(num_, c);
  if (!p.empty()) p[0] *= c.pow(shift_);
  return UniRat(std::move(p), poly_scale_var(den_, c), shift_);
}

UniRat UniRat::operator-() const {
  UniRat r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

UniRat operator+(const UniRat& a, const UniRat& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int m = std::min(a.shift_, b.shift_);
  UniPoly n = poly_add(shift_up(poly_mul(a.num_, b.den_), a.shift_ - m),
                       shift_up(poly_mul(b.num_, a.den_), b.shift_ - m));
  return UniRat(std::move(n), poly_mul(a.den_, b.den_), m);
}

UniRat operator*(const UniRat& a, const UniRat& b) {
  if (a.is_zero() || b.is_zero()) return UniRat();
  return UniRat(poly_mul(a.num_, b.num_), poly_mul(a.den_, b.den_), a.shift_ + b.shift_);
}

UniRat UniRat::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return UniRat(den_, num_, -shift_);
}

bool operator==(const UniRat& a, const UniRat& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.shift_ != b.shift_) return false;
  UniPoly l = poly_mul(a.num_, b.den_), r = poly_mul(b.num_, a.den_);
  if (l.size() != r.size()) return false;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] != r[i]) return false;
  return true;
}

std::string UniRat::str(const std::string& var) const {
  auto ps = [&](const UniPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << p[i].str() << ")*" << var << "^" << i;
    }
    if (first) os << "0";
    return os.str();
  };
  return "[" + ps(num_) + "] / [" + ps(den_) + "] * " + var + "^" + std::to_string(shift_);
}

UniRat g_factor(const QRat& a) { return UniRat({QRat(-1), a}, {-a, QRat(1)}); }

QRat LazySeries::coeff(int k) const {
  if (f_.is_zero() || k < low_) return QRat(0);
  std::size_t idx = static_cast<std::size_t>(k - low_);
  std::lock_guard<std::mutex> lk(mu_);
  if (idx >= cache_.size()) cache_ = f_.expand(static_cast<int>(std::max(idx + 1, 2 * cache_.size())));
  return cache_[idx];
}

Scalar FracLaurentSeries::coeff(const Rat& e) const {
  if (e >= order_) throw std::domain_error("coefficient beyond truncation order");
  auto it = t_.find(e);
  return it == t_.end() ? Scalar() : it->second;
}

void FracLaurentSeries::add_term(const Rat& e, const Scalar& c) {
  if (e >= order_ || c.is_zero()) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

FracLaurentSeries FracLaurentSeries::truncated(const Rat& order) const {
  FracLaurentSeries r(var_, std::min(order, order_));
  for (const auto& [e, c] : t_) r.add_term(e, c);
  return r;
}

FracLaurentSeries FracLaurentSeries::shifted(const Rat& e) const {
  FracLaurentSeries r(var_, order_ + e);
  for (const auto& [x, c] : t_) r.t_.emplace(x + e, c);
  return r;
}

FracLaurentSeries FracLaurentSeries::scaled(const Scalar& c) const {
  FracLaurentSeries r(var_, order_);
  for (const auto& [x, v] : t_) r.add_term(x, v * c);
  return r;
}

namespace {

void same_var(const FracLaurentSeries& a, const FracLaurentSeries& b) {
  if (a.var() != b.var()) throw std::domain_error("series in different variables: " + a.var() + ", " + b.var());
}

Rat low_of(const FracLaurentSeries& s) { return s.is_zero() ? s.order() : s.terms().begin()->first; }

}  // namespace

FracLaurentSeries operator+(const FracLaurentSeries& a, const FracLaurentSeries& b) {
  same_var(a, b);
  FracLaurentSeries r(a.var_, std::min(a.order_, b.order_));
  for (const auto& [e, c] : a.t_) r.add_term(e, c);
  for (const auto& [e, c] : b.t_) r.add_term(e, c);
  return r;
}

FracLaurentSeries operator-(const FracLaurentSeries& a, const FracLaurentSeries& b) {
  return a + b.scaled(Scalar(-1));
}

FracLaurentSeries operator*(const FracLaurentSeries& a, const FracLaurentSeries& b) {
  same_var(a, b);
  FracLaurentSeries r(a.var_, std::min(a.order_ + low_of(b), b.order_ + low_of(a)));
  for (const auto& [e1, c1] : a.t_)
    for (const auto& [e2, c2] : b.t_)
      if (e1 + e2 < r.order_) r.add_term(e1 + e2, c1 * c2);
  return r;
}

bool operator==(const FracLaurentSeries& a, const FracLaurentSeries& b) {
  return a.var_ == b.var_ && a.order_ == b.order_ && a.t_ == b.t_;
}

FracLaurentSeries FracLaurentSeries::inv() const {
  if (t_.empty()) throw std::domain_error("inverse of a series with no known lowest term");
  const Rat a = t_.begin()->first;
  std::int64_t l = order_.denominator();
  for (const auto& [e, c] : t_) l = std::lcm(l, e.denominator());
  const Rat h(1, l);
  const std::int64_t count = boost::rational_cast<std::int64_t>((order_ - a) / h);
  std::vector<Scalar> in(static_cast<std::size_t>(count));
  for (const auto& [e, c] : t_) in[static_cast<std::size_t>(boost::rational_cast<std::int64_t>((e - a) / h))] = c;
  const Scalar c0inv = in[0].inv();
  std::vector<Scalar> out(static_cast<std::size_t>(count));
  for (std::int64_t m = 0; m < count; ++m) {
    if (m == 0) {
      out[0] = c0inv;
      continue;
    }
    Scalar s;
    for (std::int64_t i = 1; i <= m; ++i)
      if (!in[static_cast<std::size_t>(i)].is_zero())
        s += in[static_cast<std::size_t>(i)] * out[static_cast<std::size_t>(m - i)];
    out[static_cast<std::size_t>(m)] = -(s * c0inv);
  }
  FracLaurentSeries r(var_, order_ - a - a);
  for (std::int64_t m = 0; m < count; ++m) r.add_term(-a + Rat(m) * h, out[static_cast<std::size_t>(m)]);
  return r;
}

std::string FracLaurentSeries::dump() const {
  std::ostringstream os;
  for (const auto& [e, c] : t_)
    os << rat_str(e) << " | (-1)^" << rat_str(c.phase().r()) << " | " << c.value().numerator().str() << " / "
       << c.value().denominator().str() << "\n";
  os << "O(" << var_ << "^" << rat_short(order_) << ")\n";
  return os.str();
}

FracLaurentSeries expand_rational(const UniRat& f, Direction dir, int order, const std::string& var) {
  if (order < 1) throw std::domain_error("expansion order must be positive");
  UniRat g = dir == Direction::at_zero ? f : f.reciprocal_var();
  std::string name = dir == Direction::at_zero ? var : "1/" + var;
  if (g.low() < 0) throw std::domain_error("pole at the expansion point");
  FracLaurentSeries s(name, Rat(order));
  auto c = g.expand(order - g.low());
  for (std::size_t i = 0; i < c.size(); ++i) s.add_term(Rat(g.low() + static_cast<int>(i)), Scalar(c[i]));
  return s;
}

FracLaurentSeries pochhammer_series(const QRat& a, std::int64_t p_ticks, int order, const std::string& var) {
  if (order < 1) throw std::domain_error("expansion order must be positive");
  if (p_ticks <= 0) throw std::domain_error("pochhammer base must have positive q-power");
  FracLaurentSeries s(var, Rat(order));
  s.add_term(Rat(0), Scalar(1));
  if (a.is_zero()) return s;
  // Euler: (a x; p)_inf = sum_k (-1)^k a^k p^(k(k-1)/2) x^k / (p;p)_k
  QRat pp(1);  // (p;p)_k
  QRat ak(1);
  for (int k = 1; k < order; ++k) {
    pp *= QRat(1) - QRat::q_pow(p_ticks * k);
    ak *= a;
    QRat t = ak * QRat::q_pow(p_ticks * k * (k - 1) / 2) / pp;
    s.add_term(Rat(k), Scalar(k % 2 ? -t : t));
  }
  return s;
}

FracLaurentSeries pochhammer_partial(const QRat& a, std::int64_t p_ticks, int factors, int order,
                                     const std::string& var) {
  FracLaurentSeries s(var, Rat(order));
  s.add_term(Rat(0), Scalar(1));
  for (int m = 0; m < factors; ++m) {
    FracLaurentSeries f(var, Rat(order));
    f.add_term(Rat(0), Scalar(1));
    f.add_term(Rat(1), Scalar(-(a * QRat::q_pow(p_ticks * m))));
    s = s * f;
  }
  return s;
}

std::vector<QRat> exp_series(const std::vector<QRat>& a, int order) {
  std::vector<QRat> e(static_cast<std::size_t>(std::max(order, 0)));
  if (order <= 0) return e;
  e[0] = QRat(1);
  for (int m = 1; m < order; ++m) {
    QRat s;
    for (int k = 1; k <= m && static_cast<std::size_t>(k) <= a.size(); ++k)
      if (!a[static_cast<std::size_t>(k - 1)].is_zero())
        s += QRat(k) * a[static_cast<std::size_t>(k - 1)] * e[static_cast<std::size_t>(m - k)];
    e[static_cast<std::size_t>(m)] = s / QRat(m);
  }
  return e;
}

}  // namespace qv
