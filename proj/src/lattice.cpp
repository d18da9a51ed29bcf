#include "qvertex/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace qv {

namespace {

using Mat = std::vector<std::vector<Rat>>;

Mat invert(Mat a) {
  const std::size_t n = a.size();
  Mat inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rat(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].numerator() == 0) ++p;
    if (p == n) throw std::logic_error("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rat s = Rat(1) / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].numerator() == 0) continue;
      const Rat f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

bool WeightVec::is_zero() const {
  for (const auto& x : c)
    if (x.numerator() != 0) return false;
  return true;
}

WeightVec& WeightVec::operator+=(const WeightVec& o) {
  if (c.empty()) c.assign(o.c.size(), Rat(0));
  for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
  return *this;
}

WeightVec& WeightVec::operator-=(const WeightVec& o) {
  if (c.empty()) c.assign(o.c.size(), Rat(0));
  for (std::size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
  return *this;
}

std::string WeightVec::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << rat_short(c[i]);
  os << ")";
  return os.str();
}

std::string LatticeElt::str() const {
  std::ostringstream os;
  os << (sign < 0 ? "-" : "+") << "[";
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << "]";
  return os.str();
}

Lattice::Lattice(int n) : n_(n) {
  if (n < 2) throw std::domain_error("rank parameter n must be at least 2");
  const auto r = static_cast<std::size_t>(n - 1);
  Mat cartan_m(r, std::vector<Rat>(r, Rat(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) cartan_m[i][j] = Rat(cartan(static_cast<int>(i) + 1, static_cast<int>(j) + 1));
  cinv_ = invert(cartan_m);

  for (int i = 2; i <= n - 1; ++i) basis_.push_back(alpha(i).c);
  basis_.push_back(lambda(n - 1).c);
  to_free_ = invert(basis_);

  swap_.assign(r, std::vector<int>(r, 0));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      if (a == b) continue;
      const bool la = a == r - 1, lb = b == r - 1;
      if (la || lb) {
        // alpha_{n-1} is index r-2
        const std::size_t other = la ? b : a;
        swap_[a][b] = r >= 2 && other == r - 2 ? 1 : 0;
      } else {
        swap_[a][b] = (a + 1 == b || b + 1 == a) ? 1 : 0;
      }
    }

  gram_free_.assign(r, std::vector<Rat>(r, Rat(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t k = 0; k < r; ++k) gram_free_[i][a] += cinv_[i][k] * basis_[a][k];
}

int Lattice::cartan(int i, int j) const {
  if (i == j) return 2;
  return (i - j == 1 || j - i == 1) ? -1 : 0;
}

WeightVec Lattice::alpha(int i) const {
  if (i < 1 || i > n_ - 1) throw std::domain_error("simple root index out of range");
  WeightVec w(static_cast<std::size_t>(rank()));
  for (int j = 1; j <= rank(); ++j) w.c[static_cast<std::size_t>(j - 1)] = Rat(cartan(i, j));
  return w;
}

WeightVec Lattice::lambda(int i) const {
  i = ((i % n_) + n_) % n_;
  WeightVec w(static_cast<std::size_t>(rank()));
  if (i != 0) w.c[static_cast<std::size_t>(i - 1)] = Rat(1);
  return w;
}

Rat Lattice::pairing(const WeightVec& a, const WeightVec& b) const {
  Rat s(0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].numerator() == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) s += a.c[i] * cinv_[i][j] * b.c[j];
  }
  return s;
}

Rat Lattice::pairing_free(const WeightVec& gamma, const FreeVec& m) const {
  Rat s(0);
  for (std::size_t i = 0; i < gamma.c.size(); ++i) {
    if (gamma.c[i].numerator() == 0) continue;
    for (std::size_t a = 0; a < m.size(); ++a)
      if (m[a] != 0) s += gamma.c[i] * gram_free_[i][a] * Rat(m[a]);
  }
  return s;
}

FreeVec Lattice::to_free(const WeightVec& w) const {
  const auto r = static_cast<std::size_t>(rank());
  if (w.c.size() != r) throw std::domain_error("weight has wrong dimension");
  FreeVec m(r);
  for (std::size_t a = 0; a < r; ++a) {
    Rat s(0);
    for (std::size_t k = 0; k < r; ++k) s += w.c[k] * to_free_[k][a];
    if (s.denominator() != 1) throw std::domain_error("weight " + w.str() + " is outside the free lattice");
    m[a] = static_cast<long>(s.numerator());
  }
  return m;
}

WeightVec Lattice::from_free(const FreeVec& m) const {
  WeightVec w(static_cast<std::size_t>(rank()));
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t k = 0; k < w.c.size(); ++k) w.c[k] += Rat(m[a]) * basis_[a][k];
  return w;
}

int Lattice::cocycle(const FreeVec& u, const FreeVec& v) const {
  long s = 0;
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (swap_[a][b]) s += u[a] * v[b];
  return static_cast<int>(((s % 2) + 2) % 2);
}

LatticeElt Lattice::mul(const LatticeElt& a, const LatticeElt& b) const {
  LatticeElt r{a.sign * b.sign, a.m};
  for (std::size_t i = 0; i < r.m.size(); ++i) r.m[i] += b.m[i];
  if (cocycle(a.m, b.m)) r.sign = -r.sign;
  return r;
}

LatticeElt Lattice::generator(int idx) const {
  LatticeElt e = identity();
  e.m.at(static_cast<std::size_t>(idx)) = 1;
  return e;
}

}  // namespace qv
