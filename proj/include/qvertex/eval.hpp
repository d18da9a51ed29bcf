#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvertex/vertex.hpp"

namespace qv {

/// Malformed input to an evaluation (missing expansion direction, unbounded sum).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Template acting on one tensor slot at one of the expression's variables.
struct OpRef {
  int slot = 0;
  std::shared_ptr<const BoundTemplate> op;
  int var = 0;
};

/// sum_{k >= low} f_k x^k with x = prod var^rho.
struct SeriesFactor {
  std::shared_ptr<const LazySeries> f;
  std::vector<long> rho;
};

/// sum_{k in Z} mu^k x^k with x = prod var^rho.
struct DeltaFactor {
  QRat mu;
  std::vector<long> rho;
};

struct Term {
  Scalar coef{1};
  std::vector<Rat> mono;  // power of each variable
  std::vector<SeriesFactor> series;
  std::vector<DeltaFactor> deltas;
  std::vector<OpRef> word;  // leftmost operator first
};

/// Linear combination of operator words with scalar, monomial, series and
/// delta-function coefficients, in a fixed number of formal variables.
class Expr {
 public:
  explicit Expr(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  static Expr one(std::vector<std::string> vars);
  static Expr op(std::vector<std::string> vars, int slot, std::shared_ptr<const BoundTemplate> t, int var);

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Expr& operator+=(const Expr& o);
  Expr operator-() const { return times(Scalar(-1)); }
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a += -b; }
  /// Operator product: words of a to the left of words of b.
  friend Expr operator*(const Expr& a, const Expr& b);

  Expr times(const Scalar& c) const;
  Expr times_monomial(const Scalar& c, const std::vector<Rat>& exps) const;
  /// f(prod var^rho) expanded at x = 0 or x = infinity; a missing direction is an error.
  Expr times_rational(const UniRat& f, const std::vector<long>& rho, std::optional<Direction> dir) const;
  Expr times_delta(const QRat& mu, const std::vector<long>& rho) const;

 private:
  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

struct EvalConfig {
  int degree = 2;
  int window = 2;
  std::vector<int> sectors{0};  // one per tensor slot
  int threads = 0;              // 0: default
};

struct Witness {
  std::string ket, exponent, bra, value;
};

struct EvalReport {
  bool pass = true;
  std::size_t kets = 0;
  std::size_t cells = 0;  // (ket, exponent) cells that received contributions
  std::optional<Witness> witness;
};

/// Thread count: explicit request, else QVERTEX_THREADS, else hardware.
int resolve_threads(int requested);

/// Kets of the tensor product of the given sectors: lattice part Lbar_i + beta
/// with beta in {-1,0,1}^{n-1} (root coordinates), total boson degree <= D.
std::vector<std::vector<FockBasis>> tensor_kets(const Fock& F, const std::vector<int>& sectors, int degree);

/// Checks that every coefficient of e vanishes: all monomials within +-window
/// of the first term's exponent, all bras of degree <= D, all kets above.
EvalReport eval_relation(const Fock& F, const Expr& e, const EvalConfig& cfg);

}  // namespace qv
