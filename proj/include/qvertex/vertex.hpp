#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "qvertex/coef.hpp"
#include "qvertex/fock.hpp"
#include "qvertex/series.hpp"
#include "qvertex/tweaks.hpp"

namespace qv {

/// (q^mu z)^{d_gamma}, or q^{mu d_gamma} when with_var is false; mu in ticks.
struct ZMode {
  WeightVec gamma;
  std::int64_t mu = 0;
  bool with_var = true;
};

/// (-1)^{r d_gamma}
struct PhaseMode {
  Rat r;
  WeightVec gamma;
};

/// Normal-ordered exponential operator in one formal variable z:
///
///   exp(sum_k sum_j neg_j(k) a_{j,-k} z^k) exp(sum_k sum_j pos_j(k) a_{j,k} z^-k)
///   e^shift prod(zmodes) prod(phases) pre z^zpow
struct VertexTemplate {
  std::string name;
  int n = 2;
  std::vector<CoefFamily> neg, pos;  // index j-1
  WeightVec shift;
  std::vector<ZMode> zmodes;
  std::vector<PhaseMode> phases;
  Scalar pre{1};
  Rat zpow{0};

  static VertexTemplate identity(int n);
  bool has_neg() const;
  bool has_pos() const;
  /// Argument z -> q^(ticks/kTick) z.
  VertexTemplate scaled(std::int64_t ticks) const;
  /// Inverse operator; only for templates without lattice shift and with one
  /// of the two exponentials trivial.
  VertexTemplate inverse() const;
  VertexTemplate times(const Scalar& c) const;
  /// Canonical text form: prefactor, shift, zero modes, closed forms.
  std::string dump() const;
};

/// Zero-mode data in canonical form: the factors act on e^beta as
/// z^{(Gamma,beta)} q^{(M,beta)} (-1)^{(R,beta)}, M in ticks.
struct ZeroModeData {
  WeightVec shift, Gamma, M, R;
  Scalar pre;
  Rat zpow;
};
ZeroModeData canonical_zero_modes(const VertexTemplate& t);

enum class CurrentKind { xp, xm, phi, psi, phi_inv, psi_inv };
std::string kind_name(CurrentKind k);

/// Level-1 bosonized currents on the Fock modules.
VertexTemplate fj_current(const Fock& F, CurrentKind kind, int i, const Tweaks& tw = {});

/// k -> sum_{j,j'} a_j(k) b_j'(k) [a_{j,k}, a_{j',-k}] (with its 1/k).
CoefFamily pairing_family(const Fock& F, const std::vector<CoefFamily>& a, const std::vector<CoefFamily>& b);

/// T1(z) T2(w) = series(w/z) * zero_factor * z^zpow * :T1(z) T2(w):
struct Contraction {
  CoefFamily exponent;  // C(k), series = exp(sum_k C(k) (w/z)^k)
  FracLaurentSeries series{"w/z", Rat(1)};
  Scalar zero_factor;  // T1 zero modes moved past e^{shift_2} (q-part, phases) and the cocycle sign
  Rat zpow;            // power of z from the same move
  VertexTemplate merged;  // :T1 T2: with both variables identified
};
Contraction contract(const Fock& F, const VertexTemplate& t1, const VertexTemplate& t2, int order);

/// :T1(q^s1 z) T2(q^s2 z):  zero modes are not reordered and the lattice part
/// is the normal-form element e^{shift_1 + shift_2}, without cocycle sign.
VertexTemplate normal_ordered_product(const Fock& F, const VertexTemplate& t1, std::int64_t s1,
                                      const VertexTemplate& t2, std::int64_t s2);

struct TemplateComparison {
  bool equal = false;
  bool certified = false;  // closed forms of all mode coefficients agree
  std::string reason;
};
TemplateComparison template_eq(const VertexTemplate& a, const VertexTemplate& b, int K);

/// A template bound to a Fock module, with memoized mode polynomials.
class BoundTemplate {
 public:
  BoundTemplate(const Fock& F, VertexTemplate t);

  const VertexTemplate& tmpl() const { return t_; }
  const Fock& fock() const { return *F_; }
  bool creates() const { return creates_; }
  bool annihilates() const { return annihilates_; }
  const FreeVec& shift_free() const { return shift_free_; }

  /// z-exponent of the zero-mode part acting on e^m.
  Rat zexp(const FreeVec& m) const;
  /// Component changing the boson degree by d, applied to c*b and added to out.
  void apply(const FockBasis& b, const Scalar& c, int d, FockTerms& out) const;

  QRat neg_value(int j, int k) const;
  QRat pos_value(int j, int k) const;

 private:
  struct Zero {
    Scalar factor;
    FreeVec lat;
    Rat zexp;
  };
  using Poly = std::vector<std::pair<BosonMono, QRat>>;
  const Zero& zero(const FreeVec& m) const;
  const Poly& creation(int d) const;
  const Poly& annihilation(int d) const;
  const std::vector<QRat>& values(bool negative, int k) const;
  Poly build(bool negative, int d) const;

  const Fock* F_;
  VertexTemplate t_;
  FreeVec shift_free_;
  bool creates_, annihilates_;
  mutable std::shared_mutex mu_;
  mutable std::map<FreeVec, Zero> zero_;
  mutable std::map<int, Poly> cre_, ann_;
  mutable std::map<int, std::vector<QRat>> negv_, posv_;
};

/// Coefficient of z^{-l} of T applied to s (exact).
FockState mode(const BoundTemplate& t, const Rat& l, const FockState& s);

}  // namespace qv
