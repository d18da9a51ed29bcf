#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qvertex/lattice.hpp"
#include "qvertex/report.hpp"
#include "qvertex/scalar.hpp"
#include "qvertex/tweaks.hpp"

namespace qv {

/// Product of creation operators a_{j,-k}, stored as sorted (j, k) pairs.
struct BosonMono {
  std::vector<std::pair<int, int>> f;

  int degree() const;
  void insert(int j, int k);
  friend bool operator==(const BosonMono& a, const BosonMono& b) { return a.f == b.f; }
  friend bool operator<(const BosonMono& a, const BosonMono& b) { return a.f < b.f; }
  /// `[(j,-k)(j,-k)...]`
  std::string str() const;
};

/// f (x) e^m with e^m in normal form (sign kept in the coefficient).
struct FockBasis {
  BosonMono mono;
  FreeVec lat;
  friend bool operator==(const FockBasis& a, const FockBasis& b) { return a.lat == b.lat && a.mono == b.mono; }
  friend bool operator<(const FockBasis& a, const FockBasis& b) {
    if (a.lat != b.lat) return a.lat < b.lat;
    return a.mono < b.mono;
  }
};

using FockTerms = std::map<FockBasis, Scalar>;

/// Adds c * b to t, dropping zeros.
void add_term(FockTerms& t, const FockBasis& b, const Scalar& c);

/// Element of the Fock module F_sector.
class FockState {
 public:
  FockState() = default;
  FockState(int sector, FockTerms terms) : sector_(sector), t_(std::move(terms)) {}

  int sector() const { return sector_; }
  const FockTerms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Scalar coeff(const FockBasis& b) const;
  void add(const FockBasis& b, const Scalar& c) { add_term(t_, b, c); }

  FockState& operator+=(const FockState& o);
  FockState scaled(const Scalar& c) const;
  friend bool operator==(const FockState& a, const FockState& b) { return a.sector_ == b.sector_ && a.t_ == b.t_; }

  /// One line per term: `coeff | [bosons] | +-e^[exponents]`.
  std::string dump() const;

 private:
  int sector_ = 0;
  FockTerms t_;
};

/// Heisenberg algebra and lattice data acting on the level-1 Fock modules.
class Fock {
 public:
  /// Largest mode number handled.
  static constexpr int kMaxMode = 96;

  explicit Fock(int n, const Tweaks& tw = {});

  int n() const { return lattice_.n(); }
  const Lattice& lattice() const { return lattice_; }

  /// [a_{i,k}, a_{j,l}]
  QRat boson_commutator(int i, int k, int j, int l) const;
  /// [a_{i,k}, a_{j,-k}] for k > 0.
  const QRat& gram(int i, int j, int k) const;

  /// a*_{i,k} = sum_j c_j a_{j,k}
  std::vector<std::pair<int, QRat>> astar_expand(int i, int k) const;
  /// Coefficient of a_{j,k} in a*_{i,k} for k > 0 (odd in k); zero when i is 0 or n.
  const QRat& astar_coeff(int i, int j, int k) const;

  FockBasis vacuum_basis(int sector) const;
  FockState vacuum(int sector) const;
  /// Sector of a lattice element (the i with lat in Lbar_i + Q).
  int sector_of(const FreeVec& lat) const;

  FockState apply_boson(int j, int k, const FockState& s) const;
  /// a_{j,k} on one basis vector, k != 0; accumulates c * result into out.
  void apply_boson(int j, int k, const FockBasis& b, const Scalar& c, FockTerms& out) const;

  FockState partial(const WeightVec& gamma, const FockState& s) const;
  /// q^{mu * d_gamma}, mu in ticks.
  FockState q_power_partial(const WeightVec& gamma, std::int64_t mu, const FockState& s) const;
  FockState lattice_mul(const LatticeElt& e, const FockState& s) const;
  /// (-1)^{r d_gamma}
  FockState phase_partial(const Rat& r, const WeightVec& gamma, const FockState& s) const;

  /// Coefficient of the basis vector in s; throws on sector mismatch.
  Scalar matrix_element(int sector, const FockBasis& bra, const FockState& s) const;
  /// <Lambda_sector| s>
  Scalar vacuum_element(const FockState& s) const;

  /// All basis vectors of F_sector with boson degree <= d and lattice part
  /// Lbar_sector + beta, beta in the given list of root-lattice vectors.
  std::vector<FockBasis> basis(int sector, int max_degree, const std::vector<WeightVec>& roots) const;

 private:
  void ensure(int k) const;

  Lattice lattice_;
  std::int64_t tw_gram_ = 0, tw_astar_ = 0;
  // [k-1][i-1][j-1], filled once per k
  mutable std::vector<std::once_flag> once_;
  mutable std::vector<std::vector<std::vector<QRat>>> gram_, astar_;
  QRat zero_;
};

/// Antisymmetry of the boson commutator, the dual-boson identity
/// [a*_{i,k}, a_{j,l}] = delta_ij delta_{k+l,0} [k]/k for |k|, |l| <= kmax, and
/// the commutator acting on the basis of F_0 up to degree `degree`.
SuiteReport verify_heisenberg(int n, int kmax, int degree = 2, const Tweaks& tw = {});

}  // namespace qv
