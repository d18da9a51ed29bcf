#include "qvertex/qrat.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qv {

namespace {

// Numerical filter: can Phi_d(q) divide p?  Never rejects a true divisor.
bool may_vanish_at_root(const LaurentPoly& p, int d) {
  const std::int64_t period = kTick * d;
  std::complex<double> s = 0;
  double mag = 0;
  for (const auto& [e, c] : p.terms()) {
    std::int64_t r = ((e % period) + period) % period;
    double ang = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(period);
    double cd = c.get_d();
    s += cd * std::complex<double>(std::cos(ang), std::sin(ang));
    mag += std::abs(cd);
  }
  return std::abs(s) <= 1e-7 * mag + 1e-300;
}

LaurentPoly cyclo_power(int d, int m) {
  LaurentPoly r = LaurentPoly::constant(1);
  for (int i = 0; i < m; ++i) r = r * cyclotomic(d);
  return r;
}

}  // namespace

CycloFactorization factor_cyclotomic(const LaurentPoly& p) {
  if (p.is_zero()) throw std::domain_error("factoring the zero polynomial");
  CycloFactorization f;
  f.shift = p.low();
  LaurentPoly r = p.shifted(-f.shift);
  bool integral = true;
  for (const auto& t : r.terms())
    if (t.first % kTick != 0) integral = false;
  if (integral && !r.is_monomial()) {
    const int deg = static_cast<int>(r.high() / kTick);
    for (int d = 1; d <= 6 * deg + 6 && d < 4096; ++d) {
      if (totient(d) > deg) continue;
      int m = 0;
      while (!r.is_monomial() && may_vanish_at_root(r, d)) {
        LaurentPoly quot;
        if (!divide_exact(r, cyclotomic(d), quot)) break;
        r = std::move(quot);
        ++m;
      }
      if (m > 0) f.cyc.emplace_back(d, m);
    }
  }
  f.content = r.lead();
  f.rest = r.scaled(1 / f.content);
  return f;
}

QRat::QRat(LaurentPoly num, LaurentPoly den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  CycloFactorization f = factor_cyclotomic(den);
  num_ = num.shifted(-f.shift).scaled(1 / f.content);
  cyc_ = std::move(f.cyc);
  gen_ = std::move(f.rest);
  reduce();
}

QRat QRat::monomial(const mpq_class& c, std::int64_t ticks) {
  return QRat(LaurentPoly::monomial(c, ticks));
}

bool QRat::is_one() const { return num_.is_one() && cyc_.empty() && gen_.is_one(); }

bool QRat::is_monomial() const { return num_.is_monomial() && cyc_.empty() && gen_.is_one(); }

bool QRat::is_integer_constant() const {
  return (num_.is_zero() || (num_.is_constant() && num_.lead().get_den() == 1)) && cyc_.empty() &&
         gen_.is_one();
}

LaurentPoly QRat::stored_denominator() const {
  LaurentPoly d = gen_;
  for (const auto& [c, m] : cyc_) d = d * cyclo_power(c, m);
  return d;
}

namespace {

void integralize(LaurentPoly& a, LaurentPoly& b) {
  mpz_class l = 1;
  for (const auto* p : {&a, &b})
    for (const auto& t : p->terms()) l = lcm(l, mpz_class(t.second.get_den()));
  a = a.scaled(mpq_class(l));
  b = b.scaled(mpq_class(l));
  mpz_class g = 0;
  for (const auto* p : {&a, &b})
    for (const auto& t : p->terms()) g = gcd(g, mpz_class(t.second.get_num()));
  if (g != 0 && g != 1) {
    a = a.scaled(mpq_class(1, g));
    b = b.scaled(mpq_class(1, g));
  }
}

}  // namespace

LaurentPoly QRat::numerator() const {
  LaurentPoly n = num_, d = stored_denominator();
  integralize(n, d);
  if (d.lead() < 0) n = -n;
  return n;
}

LaurentPoly QRat::denominator() const {
  LaurentPoly n = num_, d = stored_denominator();
  integralize(n, d);
  if (d.lead() < 0) d = -d;
  return d;
}

std::int64_t QRat::valuation() const {
  if (is_zero()) throw std::domain_error("valuation of zero");
  return num_.low();
}

void QRat::reduce() {
  if (num_.is_zero()) {
    cyc_.clear();
    gen_ = LaurentPoly::constant(1);
    return;
  }
  if (!num_.is_monomial()) {
    for (auto& [d, m] : cyc_) {
      while (m > 0 && !num_.is_monomial() && may_vanish_at_root(num_, d)) {
        LaurentPoly quot;
        if (!divide_exact(num_, cyclotomic(d), quot)) break;
        num_ = std::move(quot);
        --m;
      }
    }
    std::erase_if(cyc_, [](const auto& p) { return p.second == 0; });
  }
  if (!gen_.is_one()) {
    LaurentPoly g = poly_gcd(num_, gen_);
    if (!g.is_one()) {
      LaurentPoly a, b;
      divide_exact(num_, g, a);
      divide_exact(gen_, g, b);
      num_ = std::move(a);
      gen_ = std::move(b);
    }
    if (gen_.lead() != 1) {
      mpq_class c = gen_.lead();
      gen_ = gen_.scaled(1 / c);
      num_ = num_.scaled(1 / c);
    }
  }
}

QRat QRat::operator-() const {
  QRat r = *this;
  r.num_ = -r.num_;
  return r;
}

QRat& QRat::operator+=(const QRat& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (same_denominator(o)) {
    num_ += o.num_;
    reduce();
    return *this;
  }
  LaurentPoly fa = LaurentPoly::constant(1), fb = LaurentPoly::constant(1);
  std::vector<std::pair<int, int>> l;
  std::size_t i = 0, j = 0;
  while (i < cyc_.size() || j < o.cyc_.size()) {
    if (j == o.cyc_.size() || (i < cyc_.size() && cyc_[i].first < o.cyc_[j].first)) {
      fb = fb * cyclo_power(cyc_[i].first, cyc_[i].second);
      l.push_back(cyc_[i++]);
    } else if (i == cyc_.size() || o.cyc_[j].first < cyc_[i].first) {
      fa = fa * cyclo_power(o.cyc_[j].first, o.cyc_[j].second);
      l.push_back(o.cyc_[j++]);
    } else {
      int d = cyc_[i].first, ma = cyc_[i].second, mb = o.cyc_[j].second;
      if (ma < mb) fa = fa * cyclo_power(d, mb - ma);
      if (mb < ma) fb = fb * cyclo_power(d, ma - mb);
      l.emplace_back(d, std::max(ma, mb));
      ++i;
      ++j;
    }
  }
  LaurentPoly g;
  if (gen_ == o.gen_) {
    g = gen_;
  } else {
    LaurentPoly c = poly_gcd(gen_, o.gen_);
    LaurentPoly ga, gb;
    divide_exact(gen_, c, ga);
    divide_exact(o.gen_, c, gb);
    fa = fa * gb;
    fb = fb * ga;
    g = gen_ * gb;
  }
  num_ = num_ * fa + o.num_ * fb;
  cyc_ = std::move(l);
  gen_ = std::move(g);
  reduce();
  return *this;
}

QRat& QRat::operator-=(const QRat& o) { return *this += -o; }

QRat& QRat::operator*=(const QRat& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = QRat();
  num_ = num_ * o.num_;
  if (!o.cyc_.empty()) {
    std::map<int, int> m(cyc_.begin(), cyc_.end());
    for (const auto& [d, k] : o.cyc_) m[d] += k;
    cyc_.assign(m.begin(), m.end());
  }
  if (!o.gen_.is_one()) gen_ = gen_ * o.gen_;
  if (!num_.is_monomial() && (!cyc_.empty() || !gen_.is_one())) reduce();
  return *this;
}

QRat QRat::inv() const {
  if (is_zero()) throw std::domain_error("inversion of zero");
  CycloFactorization f = factor_cyclotomic(num_);
  QRat r;
  r.num_ = stored_denominator().shifted(-f.shift).scaled(1 / f.content);
  r.cyc_ = std::move(f.cyc);
  r.gen_ = std::move(f.rest);
  return r;
}

QRat& QRat::operator/=(const QRat& o) { return *this *= o.inv(); }

QRat QRat::pow(long e) const {
  QRat base = e < 0 ? inv() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  QRat r(1);
  while (k) {
    if (k & 1UL) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

QRat QRat::dilated(std::int64_t m) const {
  return QRat(num_.dilated(m), stored_denominator().dilated(m));
}

bool operator==(const QRat& a, const QRat& b) {
  if (a.same_denominator(b)) return a.num_ == b.num_;
  return (a - b).is_zero();
}

std::string QRat::str() const { return numerator().str() + " / " + denominator().str(); }

QRat qint(long k) {
  if (k == 0) throw std::domain_error("q-integer [0] is undefined here");
  long a = k < 0 ? -k : k;
  std::vector<LaurentPoly::Term> t;
  for (long j = 0; j < a; ++j) t.emplace_back((a - 1 - 2 * j) * kTick, mpq_class(k < 0 ? -1 : 1));
  return QRat(LaurentPoly::from_terms(std::move(t)));
}

}  // namespace qv
