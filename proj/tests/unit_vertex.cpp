#include <doctest.h>

#include "qvertex/vertex.hpp"

using namespace qv;

namespace {

QRat qp(long e) { return QRat::q_pow(e * kTick); }

BosonMono mono(std::initializer_list<std::pair<int, int>> parts) {
  BosonMono m;
  for (auto [j, k] : parts) m.insert(j, k);
  return m;
}

VertexTemplate with_zpow(VertexTemplate t, long p) {
  t.zpow += Rat(p);
  return t;
}

// <vac| T1(z) T2(w) |vac> on F_0 checked modewise against the contraction.
void check_vacuum_pair(const Fock& F, const VertexTemplate& t1, const VertexTemplate& t2, int K) {
  CAPTURE(t1.name);
  CAPTURE(t2.name);
  REQUIRE((t1.shift + t2.shift).is_zero());
  const Contraction c = contract(F, t1, t2, K);
  const Scalar base = t1.pre * t2.pre * c.zero_factor;
  const Rat A = c.zpow + t1.zpow, B = t2.zpow;  // z^{A-k} w^{B+k}
  const BoundTemplate b1(F, t1), b2(F, t2);
  const FockState vac = F.vacuum(0);
  for (int kw = -2; kw < K; ++kw)
    for (int kz = -2; kz < K; ++kz) {
      const Rat l2 = -(B + Rat(kw)), l1 = -(A - Rat(kz));
      const Scalar got = F.vacuum_element(mode(b1, l1, mode(b2, l2, vac)));
      const Scalar want = (kw == kz && kw >= 0) ? base * c.series.coeff(Rat(kw)) : Scalar();
      CAPTURE(kw);
      CAPTURE(kz);
      REQUIRE(got == want);
    }
}

}  // namespace

TEST_CASE("closed-form coefficient families") {
  const auto a = CoefFamily::over_qint(1, -kTick / 2);
  for (int k = 1; k <= 6; ++k) CHECK(a.eval(k) == QRat::q_pow(-kTick / 2 * k) / qint(k));
  const auto b = CoefFamily::constant(QRat(3)).shifted(kTick);
  CHECK(same_family(a + b, b + a));
  CHECK(same_family(a - a, CoefFamily()));
  for (int k = 1; k <= 6; ++k) {
    CHECK((a + b).eval(k) == a.eval(k) + b.eval(k));
    CHECK((a * b).eval(k) == a.eval(k) * b.eval(k));
  }
  // [2k]/[k] written two ways
  const CoefFamily two(ExpPoly::sinh(2 * kTick), {kTick});
  const CoefFamily sum = CoefFamily::constant(1).shifted(kTick) + CoefFamily::constant(1).shifted(-kTick);
  CHECK(same_family(two, sum));
  CHECK_FALSE(same_family(two, sum.shifted(1)));
  CHECK_THROWS_AS(CoefFamily(ExpPoly::constant(1), {-1}), std::domain_error);
}

TEST_CASE("current constructors") {
  Fock F(2);
  const auto phi = fj_current(F, CurrentKind::phi, 1);
  CHECK(phi.neg[0].eval(3) == -(qp(1) - qp(-1)));
  CHECK_FALSE(phi.has_pos());
  REQUIRE(phi.zmodes.size() == 1);
  CHECK(phi.zmodes[0].gamma == -F.lattice().alpha(1));
  CHECK_FALSE(phi.zmodes[0].with_var);
  const auto xp = fj_current(F, CurrentKind::xp, 1);
  for (int k = 1; k <= 5; ++k) {
    CHECK(xp.neg[0].eval(k) == QRat::q_pow(-60 * k) / qint(k));
    CHECK(xp.pos[0].eval(k) == -QRat::q_pow(-60 * k) / qint(k));
  }
  CHECK(xp.shift == F.lattice().alpha(1));
  CHECK(xp.zpow == Rat(1));
  CHECK_THROWS_AS(fj_current(F, CurrentKind::xm, 2), std::domain_error);
  CHECK(xp.dump().find("shift: (2)") != std::string::npos);
}

TEST_CASE("modes on the vacuum") {
  Fock F(2);
  const FockState vac = F.vacuum(0);
  const BoundTemplate phi(F, fj_current(F, CurrentKind::phi, 1));
  CHECK(mode(phi, Rat(0), vac) == vac);
  CHECK(mode(phi, Rat(1), vac).is_zero());

  const BoundTemplate xp(F, fj_current(F, CurrentKind::xp, 1));
  const FreeVec ea = F.lattice().to_free(F.lattice().alpha(1));
  const FockState m1 = mode(xp, Rat(-1), vac);
  CHECK(m1 == FockState(0, {{FockBasis{{}, ea}, Scalar(1)}}));
  const FockState m2 = mode(xp, Rat(-2), vac);
  CHECK(m2 == FockState(0, {{FockBasis{mono({{1, 1}}), ea}, Scalar(QRat::q_pow(-60))}}));
  CHECK(mode(xp, Rat(0), vac).is_zero());
  const FockState m3 = mode(xp, Rat(-3), vac);
  // q^{-1}/[2] a_{-2} + q^{-1}/2 a_{-1}^2
  CHECK(m3.coeff(FockBasis{mono({{1, 2}}), ea}) == Scalar(qp(-1) / qint(2)));
  CHECK(m3.coeff(FockBasis{mono({{1, 1}, {1, 1}}), ea}) == Scalar(qp(-1) / QRat(2)));
  CHECK(m3.terms().size() == 2);
}

TEST_CASE("modes against the boson algebra") {
  // psi(z) = exp((q-q^-1) sum a_k z^-k) q^{d}: psi(-1) a_{-1}|0> = (q-q^-1)[2]|0>
  Fock F(2);
  const BoundTemplate psi(F, fj_current(F, CurrentKind::psi, 1));
  FockState s(0, {{FockBasis{mono({{1, 1}}), F.vacuum_basis(0).lat}, Scalar(1)}});
  const FockState r = mode(psi, Rat(1), s);
  CHECK(r == F.vacuum(0).scaled(Scalar((qp(1) - qp(-1)) * qint(2))));
  CHECK(mode(psi, Rat(0), s) == s);
}

TEST_CASE("contraction series") {
  Fock F(2);
  const auto xp = fj_current(F, CurrentKind::xp, 1);
  const Contraction c = contract(F, xp, xp, 3);
  FracLaurentSeries want("w/z", Rat(3));
  want.add_term(Rat(0), Scalar(1));
  want.add_term(Rat(1), Scalar(-(QRat(1) + qp(-2))));
  want.add_term(Rat(2), Scalar(qp(-2)));
  CHECK(c.series == want);
  CHECK(c.merged.shift == Rat(2) * F.lattice().alpha(1));
  CHECK(c.zpow == Rat(2));
  CHECK(c.merged.zpow == Rat(2));

  const Contraction id = contract(F, xp, VertexTemplate::identity(2), 5);
  CHECK(id.series.terms().size() == 1);
  CHECK(template_eq(id.merged, xp, 10).equal);

  Fock F4(4);
  const auto c13 = contract(F4, fj_current(F4, CurrentKind::psi, 1), fj_current(F4, CurrentKind::phi, 3), 6);
  CHECK(c13.exponent.is_zero());
  CHECK(c13.series.terms().size() == 1);
}

TEST_CASE("contraction agrees with modewise vacuum elements") {
  for (int n = 2; n <= 3; ++n) {
    Fock F(n);
    for (int i = 1; i < n; ++i) {
      const auto xp = fj_current(F, CurrentKind::xp, i), xm = fj_current(F, CurrentKind::xm, i);
      const auto phi = fj_current(F, CurrentKind::phi, i), psi = fj_current(F, CurrentKind::psi, i);
      check_vacuum_pair(F, xm, xp, 8);
      check_vacuum_pair(F, xp, xm, 8);
      check_vacuum_pair(F, psi, phi, 8);
      check_vacuum_pair(F, phi, psi, 5);
      check_vacuum_pair(F, psi.scaled(90), phi.scaled(-30), 6);
      for (int j = 1; j < n; ++j)
        if (j != i) check_vacuum_pair(F, psi, fj_current(F, CurrentKind::phi, j), 6);
    }
  }
}

TEST_CASE("normal-ordered products of currents") {
  for (int n = 2; n <= 5; ++n) {
    Fock F(n);
    for (int i = 1; i < n; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      const auto xp = fj_current(F, CurrentKind::xp, i), xm = fj_current(F, CurrentKind::xm, i);
      const auto r3 = template_eq(normal_ordered_product(F, xp, 60, xm, -60),
                                  with_zpow(fj_current(F, CurrentKind::psi, i), 2), 20);
      CHECK_MESSAGE(r3.equal, r3.reason);
      CHECK(r3.certified);
      const auto r4 = template_eq(normal_ordered_product(F, xp, -60, xm, 60),
                                  with_zpow(fj_current(F, CurrentKind::phi, i), 2), 20);
      CHECK_MESSAGE(r4.equal, r4.reason);
      CHECK(template_eq(normal_ordered_product(F, xp, 0, VertexTemplate::identity(n), 0), xp, 10).equal);
    }
  }
  Fock F(2);
  CHECK_FALSE(template_eq(fj_current(F, CurrentKind::phi, 1), fj_current(F, CurrentKind::psi, 1), 10).equal);
  const auto t = fj_current(F, CurrentKind::xm, 1);
  CHECK(template_eq(t, t, 10).equal);
}

TEST_CASE("inverse templates") {
  Fock F(3);
  const auto phi = fj_current(F, CurrentKind::phi, 2);
  const auto prod = normal_ordered_product(F, phi, 0, phi.inverse(), 0);
  CHECK(template_eq(prod, VertexTemplate::identity(3), 10).equal);
  CHECK_THROWS_AS(fj_current(F, CurrentKind::xp, 1).inverse(), std::domain_error);
  // phi^-1 really inverts phi on states, mode by mode
  const BoundTemplate a(F, phi), b(F, phi.inverse());
  FockState s = F.vacuum(1);
  s.add(FockBasis{mono({{2, 1}}), F.vacuum_basis(1).lat}, Scalar(qp(2)));
  for (int l = -3; l <= 0; ++l) {
    FockState acc(1, {});
    for (int m = l; m <= 0; ++m) acc += mode(a, Rat(l - m), mode(b, Rat(m), s));
    CHECK(acc == (l == 0 ? s : FockState(1, {})));
  }
}

TEST_CASE("homogeneity of modes") {
  Fock F(3);
  const BoundTemplate xm(F, fj_current(F, CurrentKind::xm, 2));
  const FockState v = F.vacuum(2);
  for (int l = -4; l <= 2; ++l) {
    const FockState r = mode(xm, Rat(l), v);
    for (const auto& [b, c] : r.terms()) {
      // z-power = degree + zero-mode eigenvalue on the vacuum lattice
      CHECK(Rat(b.mono.degree()) + xm.zexp(F.vacuum_basis(2).lat) == Rat(-l));
    }
  }
}
