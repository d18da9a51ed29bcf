#pragma once

#include <string>
#include <vector>

#include "qvertex/scalar.hpp"

namespace qv {

/// Weight of sl_n in coordinates over Lbar_1 .. Lbar_{n-1}.
struct WeightVec {
  std::vector<Rat> c;

  WeightVec() = default;
  explicit WeightVec(std::size_t rank) : c(rank, Rat(0)) {}
  explicit WeightVec(std::vector<Rat> v) : c(std::move(v)) {}
  bool is_zero() const;

  WeightVec& operator+=(const WeightVec& o);
  WeightVec& operator-=(const WeightVec& o);
  friend WeightVec operator+(WeightVec a, const WeightVec& b) { return a += b; }
  friend WeightVec operator-(WeightVec a, const WeightVec& b) { return a -= b; }
  friend WeightVec operator-(WeightVec a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend WeightVec operator*(const Rat& s, WeightVec a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  friend bool operator==(const WeightVec& a, const WeightVec& b) { return a.c == b.c; }
  friend bool operator!=(const WeightVec& a, const WeightVec& b) { return a.c != b.c; }
  friend bool operator<(const WeightVec& a, const WeightVec& b) { return a.c < b.c; }
  std::string str() const;
};

/// Exponents over the free basis (alpha_2, ..., alpha_{n-1}, Lbar_{n-1}).
using FreeVec = std::vector<long>;

/// sign * e^{m_2 alpha_2} ... e^{m_{n-1} alpha_{n-1}} e^{m_n Lbar_{n-1}}
struct LatticeElt {
  int sign = 1;
  FreeVec m;
  friend bool operator==(const LatticeElt& a, const LatticeElt& b) { return a.sign == b.sign && a.m == b.m; }
  /// `+[m_2,...,m_n]`
  std::string str() const;
};

/// Weight lattice of sl_n with the cocycle-twisted group algebra.
class Lattice {
 public:
  explicit Lattice(int n);

  int n() const { return n_; }
  int rank() const { return n_ - 1; }

  /// alpha_i, 1 <= i <= n-1
  WeightVec alpha(int i) const;
  /// Lbar_i with indices mod n and Lbar_0 = 0.
  WeightVec lambda(int i) const;
  int cartan(int i, int j) const;

  Rat pairing(const WeightVec& a, const WeightVec& b) const;
  /// (gamma, e^m) for a free-basis lattice vector.
  Rat pairing_free(const WeightVec& gamma, const FreeVec& m) const;

  FreeVec to_free(const WeightVec& w) const;
  WeightVec from_free(const FreeVec& m) const;

  /// B(u, v) mod 2: e^u e^v = (-1)^B e^{u+v} for normal forms.
  int cocycle(const FreeVec& u, const FreeVec& v) const;
  LatticeElt mul(const LatticeElt& a, const LatticeElt& b) const;
  LatticeElt identity() const { return LatticeElt{1, FreeVec(static_cast<std::size_t>(rank()), 0)}; }
  /// Single generator of the free basis, index 0 .. rank-1.
  LatticeElt generator(int idx) const;

 private:
  int n_;
  std::vector<std::vector<Rat>> cinv_;     // inverse Cartan matrix
  std::vector<std::vector<Rat>> basis_;    // free basis in Lbar coordinates (rows)
  std::vector<std::vector<Rat>> to_free_;  // inverse of basis_ (w -> m: m = w * to_free_)
  std::vector<std::vector<int>> swap_;     // s_ab
  std::vector<std::vector<Rat>> gram_free_;
};

}  // namespace qv
