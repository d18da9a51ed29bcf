#include <doctest.h>

#include "qvertex/uq_algebra.hpp"

using namespace qv;

namespace {

QRat qp(long e) { return QRat::q_pow(e * kTick); }

void require_pass(const SuiteReport& r) {
  for (const auto& c : r.checks) {
    CAPTURE(r.suite);
    CAPTURE(c.name);
    CAPTURE(c.witness);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("g functions") {
  for (int a : {-1, 2}) {
    const UniRat g = g_function(a);
    CHECK(g.expand(1).front() == qp(-a));
    CHECK(g * g.reciprocal_var() == UniRat::constant(1));
  }
}

TEST_CASE("vector representation modes") {
  for (int n = 2; n <= 4; ++n)
    for (int l = -2; l <= 2; ++l) {
      const auto xp = vecrep_mode(n, CurrentKind::xp, 1, l);
      REQUIRE(xp.size() == 1);
      CHECK(xp[0].row == 0);
      CHECK(xp[0].col == 1);
      CHECK(xp[0].coef == qp(l));
      CHECK(xp[0].zpow == l);
      const auto xm = vecrep_mode(n, CurrentKind::xm, n - 1, l);
      REQUIRE(xm.size() == 1);
      CHECK(xm[0].row == n - 1);
      CHECK(xm[0].col == n - 2);
      CHECK(xm[0].coef == QRat::q_pow(static_cast<std::int64_t>(n - 1) * kTick * l));
    }
  CHECK(vecrep_eigen(4, CurrentKind::phi, 1, 2) == UniRat::constant(1));
  CHECK(vecrep_eigen(4, CurrentKind::psi, 3, 0) == UniRat::constant(1));
  // (q - q^{-2} x)/(1 - q^{-1} x)
  CHECK(vecrep_eigen(3, CurrentKind::phi, 1, 1) == UniRat({qp(1), -qp(-2)}, {QRat(1), -qp(-1)}));
  // phi(0) on |i>: leading coefficient q
  const auto m0 = vecrep_mode(3, CurrentKind::phi, 1, 0);
  bool found = false;
  for (const auto& e : m0)
    if (e.row == 1) {
      CHECK(e.coef == qp(1));
      found = true;
    }
  CHECK(found);
  // phi has no positive modes
  CHECK(vecrep_mode(3, CurrentKind::phi, 1, 1).empty());
  CHECK(vecrep_mode(3, CurrentKind::psi, 1, -1).empty());
  CHECK_THROWS_AS(vecrep_mode(2, CurrentKind::xp, 2, 0), std::domain_error);
}

TEST_CASE("defining relations at small sizes") {
  require_pass(verify_def21(2, 0, 1, 1));
  require_pass(verify_def21(2, 1, 1, 1));
  require_pass(verify_def21(3, 0, 1, 1));
}

TEST_CASE("defining relations catch a perturbed current") {
  for (const char* t : {"fj.x+.create", "fj.phi.zero", "def21.quadratic"}) {
    CAPTURE(t);
    const SuiteReport r = verify_def21(2, 0, 1, 1, 0, Tweaks::single(t, kTick));
    CHECK_FALSE(r.pass());
    REQUIRE(r.first_failure());
    CHECK_FALSE(r.first_failure()->witness.empty());
  }
}

TEST_CASE("relation list covers every family") {
  const Fock F(3);
  const FockProvider P(F, 0);
  const auto rels = def21_relations(P, 3);
  int serre = 0, quad = 0;
  for (const auto& r : rels) {
    if (r.name.find("Serre") != std::string::npos || r.name.find("serre") != std::string::npos) ++serre;
    if (r.name.find("quadratic") != std::string::npos) ++quad;
  }
  CHECK(serre > 0);
  CHECK(quad > 0);
}

TEST_CASE("counit kills x and fixes phi") {
  const CounitProvider eps;
  const std::vector<std::string> vars{"z"};
  CHECK(eps.image(CurrentKind::xp, 1, 0, 0, vars).empty());
  CHECK(eps.image(CurrentKind::xm, 1, 0, 0, vars).empty());
  const Expr one = eps.image(CurrentKind::phi, 1, 0, 0, vars);
  REQUIRE(one.terms().size() == 1);
  CHECK(one.terms()[0].word.empty());
  CHECK(one.terms()[0].coef.is_one());
  CHECK(eps.level() == 0);
}

TEST_CASE("Hopf structure at degree 1") { require_pass(verify_hopf(2, 1, 1)); }

TEST_CASE("R-matrix") {
  require_pass(verify_rmatrix(6, 2));
  CHECK_FALSE(verify_rmatrix(6, 2, Tweaks::single("rmatrix.entry", kTick)).pass());
  CHECK_FALSE(verify_rmatrix(6, 2, Tweaks::single("vec.eigen", kTick)).pass());
}
