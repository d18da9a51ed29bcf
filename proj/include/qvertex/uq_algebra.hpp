#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "qvertex/eval.hpp"
#include "qvertex/report.hpp"

namespace qv {

/// Images of the currents kind_i(q^shift z) under some representation or
/// Hopf-structure map, as operator expressions.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual Expr image(CurrentKind kind, int i, int var, std::int64_t shift,
                     const std::vector<std::string>& vars) const = 0;
  /// Central charge in ticks.
  virtual std::int64_t level() const = 0;
  virtual std::string name() const = 0;
};

using ProviderPtr = std::shared_ptr<const Provider>;

/// Level-1 currents on one tensor slot.
class FockProvider : public Provider {
 public:
  FockProvider(const Fock& F, int slot, Tweaks tw = {}) : F_(&F), slot_(slot), tw_(std::move(tw)) {}
  Expr image(CurrentKind kind, int i, int var, std::int64_t shift, const std::vector<std::string>& vars) const override;
  std::int64_t level() const override { return kTick; }
  std::string name() const override { return "F[" + std::to_string(slot_) + "]"; }
  std::shared_ptr<const BoundTemplate> bound(CurrentKind kind, int i, std::int64_t shift) const;

 private:
  const Fock* F_;
  int slot_;
  Tweaks tw_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, std::int64_t>, std::shared_ptr<const BoundTemplate>> cache_;
};

class CounitProvider : public Provider {
 public:
  Expr image(CurrentKind kind, int i, int var, std::int64_t shift, const std::vector<std::string>& vars) const override;
  std::int64_t level() const override { return 0; }
  std::string name() const override { return "eps"; }
};

class AntipodeProvider : public Provider {
 public:
  explicit AntipodeProvider(ProviderPtr base) : base_(std::move(base)) {}
  Expr image(CurrentKind kind, int i, int var, std::int64_t shift, const std::vector<std::string>& vars) const override;
  std::int64_t level() const override { return -base_->level(); }
  std::string name() const override { return "a(" + base_->name() + ")"; }

 private:
  ProviderPtr base_;
};

/// Drinfeld coproduct with the first factor acting through a and the second through b.
class CoproductProvider : public Provider {
 public:
  CoproductProvider(ProviderPtr a, ProviderPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  Expr image(CurrentKind kind, int i, int var, std::int64_t shift, const std::vector<std::string>& vars) const override;
  std::int64_t level() const override { return a_->level() + b_->level(); }
  std::string name() const override { return "D(" + a_->name() + "," + b_->name() + ")"; }

 private:
  ProviderPtr a_, b_;
};

struct NamedRelation {
  std::string name;
  Expr expr;
  int max_window = -1;  // cap on the coefficient window, -1 for none
};

/// Every defining relation, written so that the expression must vanish.
std::vector<NamedRelation> def21_relations(const Provider& P, int n, const Tweaks& tw = {});

/// g_ij(x) = (q^a x - 1)/(x - q^a), a = a_ij
UniRat g_function(int a);

SuiteReport verify_def21(int n, int sector, int degree, int window, int threads = 0, const Tweaks& tw = {});
SuiteReport verify_hopf(int n, int degree, int window, int threads = 0, const Tweaks& tw = {});

/// Vector representation V_z (level 0): generator modes as matrices whose
/// entries are Laurent monomials in z.
struct VecEntry {
  int row = 0, col = 0;
  QRat coef;
  int zpow = 0;
};
std::vector<VecEntry> vecrep_mode(int n, CurrentKind kind, int i, int l, const Tweaks& tw = {});
/// phi_i(w) or psi_i(w) on |j>: eigenvalue as a rational function of x = w/z.
UniRat vecrep_eigen(int n, CurrentKind kind, int i, int j, const Tweaks& tw = {});

SuiteReport verify_rmatrix(int order, int modes = 3, const Tweaks& tw = {});

}  // namespace qv
