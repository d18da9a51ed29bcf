#include "qvertex/laurent.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qv {

LaurentPoly LaurentPoly::constant(const mpq_class& c) { return monomial(c, 0); }

LaurentPoly LaurentPoly::monomial(const mpq_class& c, std::int64_t ticks) {
  LaurentPoly p;
  if (c != 0) p.t_.emplace_back(ticks, c);
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  LaurentPoly p;
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().first == t.first) {
      p.t_.back().second += t.second;
      if (p.t_.back().second == 0) p.t_.pop_back();
    } else if (t.second != 0) {
      p.t_.push_back(std::move(t));
    }
  }
  return p;
}

std::int64_t LaurentPoly::step() const {
  std::int64_t g = 0;
  for (std::size_t i = 1; i < t_.size(); ++i) g = std::gcd(g, t_[i].first - t_[0].first);
  return g;
}

mpq_class LaurentPoly::coeff(std::int64_t ticks) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), ticks,
                             [](const Term& t, std::int64_t e) { return t.first < e; });
  if (it != t_.end() && it->first == ticks) return it->second;
  return 0;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& t : p.t_) t.second = -t.second;
  return p;
}

namespace {

std::vector<LaurentPoly::Term> merge_add(const std::vector<LaurentPoly::Term>& a,
                                         const std::vector<LaurentPoly::Term>& b, bool negate_b) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, negate_b ? mpq_class(-b[j].second) : b[j].second);
      ++j;
    } else {
      mpq_class c = negate_b ? mpq_class(a[i].second - b[j].second)
                             : mpq_class(a[i].second + b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return *this = o;
  t_ = merge_add(t_, o.t_, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.t_.empty()) return *this;
  t_ = merge_add(t_, o.t_, true);
  return *this;
}

LaurentPoly LaurentPoly::shifted(std::int64_t ticks) const {
  LaurentPoly p = *this;
  for (auto& t : p.t_) t.first += ticks;
  return p;
}

LaurentPoly LaurentPoly::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  LaurentPoly p = *this;
  for (auto& t : p.t_) t.second *= c;
  return p;
}

LaurentPoly LaurentPoly::dilated(std::int64_t m) const {
  if (m == 0) throw std::domain_error("dilation by zero");
  std::vector<Term> v = t_;
  for (auto& t : v) t.first *= m;
  return from_terms(std::move(v));
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.t_.empty() || b.t_.empty()) return {};
  if (a.t_.size() == 1 || b.t_.size() == 1) {
    const auto& m = a.t_.size() == 1 ? a : b;
    const auto& o = a.t_.size() == 1 ? b : a;
    LaurentPoly p = o;
    for (auto& t : p.t_) {
      t.first += m.t_[0].first;
      t.second *= m.t_[0].second;
    }
    return p;
  }
  std::int64_t g = std::gcd(a.step(), b.step());
  std::int64_t lo = a.low() + b.low();
  std::int64_t hi = a.high() + b.high();
  std::size_t prod = a.t_.size() * b.t_.size();
  if (g > 0 && static_cast<std::size_t>((hi - lo) / g) + 1 <= 4 * prod + 64) {
    std::vector<mpq_class> dense(static_cast<std::size_t>((hi - lo) / g) + 1);
    for (const auto& x : a.t_)
      for (const auto& y : b.t_)
        dense[static_cast<std::size_t>((x.first + y.first - lo) / g)] += x.second * y.second;
    LaurentPoly p;
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (dense[i] != 0) p.t_.emplace_back(lo + static_cast<std::int64_t>(i) * g, std::move(dense[i]));
    return p;
  }
  std::map<std::int64_t, mpq_class> acc;
  for (const auto& x : a.t_)
    for (const auto& y : b.t_) acc[x.first + y.first] += x.second * y.second;
  LaurentPoly p;
  for (auto& [e, c] : acc)
    if (c != 0) p.t_.emplace_back(e, std::move(c));
  return p;
}

std::string exponent_str(std::int64_t ticks) {
  std::int64_t g = std::gcd(ticks < 0 ? -ticks : ticks, kTick);
  if (g == 0) g = kTick;
  std::ostringstream os;
  os << ticks / g;
  if (kTick / g != 1) os << "/" << kTick / g;
  return os.str();
}

std::string LaurentPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t_) {
    if (!first) os << "+";
    first = false;
    os << c.get_str() << "*q^" << exponent_str(e);
  }
  return os.str();
}

bool divide_exact(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quot) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) {
    quot = {};
    return true;
  }
  if (b.is_monomial()) {
    mpq_class inv = 1 / b.lead();
    quot = a.shifted(-b.low()).scaled(inv);
    return true;
  }
  const std::int64_t qlow = a.low() - b.low();
  std::map<std::int64_t, mpq_class> rem;
  for (const auto& [e, c] : a.terms()) rem.emplace(e, c);
  std::vector<LaurentPoly::Term> q;
  const mpq_class& bl = b.lead();
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    std::int64_t e = top->first - b.high();
    if (e < qlow) return false;
    mpq_class c = top->second / bl;
    for (const auto& [be, bc] : b.terms()) {
      auto& slot = rem[be + e];
      slot -= c * bc;
      if (slot == 0) rem.erase(be + e);
    }
    q.emplace_back(e, std::move(c));
  }
  quot = LaurentPoly::from_terms(std::move(q));
  return true;
}

namespace {

using Dense = std::vector<mpq_class>;  // ascending powers of y

void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Dense dense_mod(Dense a, const Dense& b) {
  trim(a);
  while (a.size() >= b.size()) {
    mpq_class c = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
    trim(a);
  }
  return a;
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("gcd with zero polynomial");
  LaurentPoly x = a.shifted(-a.low());
  LaurentPoly y = b.shifted(-b.low());
  std::int64_t g = std::gcd(x.step(), y.step());
  if (g == 0) return LaurentPoly::constant(1);
  auto to_dense = [g](const LaurentPoly& p) {
    Dense d(static_cast<std::size_t>(p.high() / g) + 1);
    for (const auto& [e, c] : p.terms()) d[static_cast<std::size_t>(e / g)] = c;
    return d;
  };
  Dense u = to_dense(x), v = to_dense(y);
  while (!v.empty()) {
    Dense r = dense_mod(u, v);
    u = std::move(v);
    v = std::move(r);
  }
  std::vector<LaurentPoly::Term> t;
  mpq_class lead = u.back();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) t.emplace_back(static_cast<std::int64_t>(i) * g, u[i] / lead);
  return LaurentPoly::from_terms(std::move(t));
}

int totient(int d) {
  int r = d;
  for (int p = 2; p * p <= d; ++p)
    if (d % p == 0) {
      while (d % p == 0) d /= p;
      r -= r / p;
    }
  if (d > 1) r -= r / d;
  return r;
}

namespace {

int mobius(int d) {
  int m = 1;
  for (int p = 2; p * p <= d; ++p)
    if (d % p == 0) {
      d /= p;
      if (d % p == 0) return 0;
      m = -m;
    }
  if (d > 1) m = -m;
  return m;
}

LaurentPoly build_cyclotomic(int d) {
  // Phi_d = prod_{e|d} (x^e - 1)^{mu(d/e)}
  std::vector<long long> p{1};
  std::vector<int> divs;
  for (int e = 1; e <= d; ++e)
    if (d % e == 0) divs.push_back(e);
  for (int e : divs)
    if (mobius(d / e) == 1) {
      std::vector<long long> r(p.size() + static_cast<std::size_t>(e), 0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        r[i + static_cast<std::size_t>(e)] += p[i];
        r[i] -= p[i];
      }
      p = std::move(r);
    }
  for (int e : divs)
    if (mobius(d / e) == -1) {
      // divide by x^e - 1: p = (x^e - 1) r  =>  r_i = r_{i-e} - p_i, scanning up
      std::size_t n = p.size() - static_cast<std::size_t>(e);
      std::vector<long long> r(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        long long prev = i >= static_cast<std::size_t>(e) ? r[i - static_cast<std::size_t>(e)] : 0;
        r[i] = prev - p[i];
      }
      p = std::move(r);
    }
  std::vector<LaurentPoly::Term> t;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) t.emplace_back(static_cast<std::int64_t>(i) * kTick, mpq_class(static_cast<long>(p[i])));
  return LaurentPoly::from_terms(std::move(t));
}

constexpr int kCycloCache = 4096;

}  // namespace

const LaurentPoly& cyclotomic(int d) {
  if (d < 1) throw std::domain_error("cyclotomic index must be positive");
  if (d >= kCycloCache) throw std::domain_error("cyclotomic index too large");
  static std::array<std::once_flag, kCycloCache> flags;
  static std::array<LaurentPoly, kCycloCache> table;
  std::call_once(flags[static_cast<std::size_t>(d)],
                 [d] { table[static_cast<std::size_t>(d)] = build_cyclotomic(d); });
  return table[static_cast<std::size_t>(d)];
}

}  // namespace qv
