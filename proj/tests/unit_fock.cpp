#include <doctest.h>

#include <random>

#include "qvertex/fock.hpp"

using namespace qv;

namespace {

QRat qp(long e) { return QRat::q_pow(e * kTick); }

FockState random_state(const Fock& F, std::mt19937& g, int max_deg) {
  auto basis = F.basis(0, max_deg, {WeightVec(static_cast<std::size_t>(F.n() - 1))});
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  FockState s(0, {});
  for (int t = 0; t < 3; ++t) s.add(basis[pick(g)], Scalar(QRat(coef(g)) + qp(coef(g))));
  return s;
}

}  // namespace

TEST_CASE("boson commutator values") {
  Fock F2(2), F3(3);
  CHECK(F2.boson_commutator(1, 1, 1, -1) == qp(1) + qp(-1));
  CHECK(F3.boson_commutator(1, 2, 2, -2) == qint(-2) * qint(2) / QRat(2));
  CHECK(F3.boson_commutator(1, 2, 2, -3).is_zero());
  for (int n = 2; n <= 4; ++n) {
    Fock F(n);
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j)
        for (int k = -6; k <= 6; ++k)
          for (int l = -6; l <= 6; ++l) {
            if (k == 0 || l == 0) continue;
            REQUIRE(F.boson_commutator(i, k, j, l) == -F.boson_commutator(j, l, i, k));
          }
  }
}

TEST_CASE("boson action") {
  Fock F(2);
  FockState vac = F.vacuum(0);
  FockState one = F.apply_boson(1, -1, vac);
  FockState back = F.apply_boson(1, 1, one);
  CHECK(back == vac.scaled(Scalar(qp(1) + qp(-1))));
  CHECK(F.apply_boson(1, 1, vac).is_zero());
  FockState two = F.apply_boson(1, -2, vac);
  REQUIRE(two.terms().size() == 1);
  CHECK(two.terms().begin()->first.mono.str() == "[(1,-2)]");
  CHECK(two.terms().begin()->first.mono.degree() == 2);
}

TEST_CASE("Heisenberg representation on random states") {
  std::mt19937 g(99);
  for (int n = 2; n <= 3; ++n) {
    Fock F(n);
    for (int t = 0; t < 50; ++t) {
      FockState s = random_state(F, g, 6);
      std::uniform_int_distribution<int> lab(1, n - 1), mode(-6, 6);
      int i = lab(g), j = lab(g), k = mode(g), l = mode(g);
      if (k == 0) k = 1;
      if (l == 0) l = -1;
      if (t % 3 == 0) l = -k;
      FockState lhs = F.apply_boson(i, k, F.apply_boson(j, l, s));
      lhs += F.apply_boson(j, l, F.apply_boson(i, k, s)).scaled(Scalar(-1));
      FockState rhs = s.scaled(Scalar(F.boson_commutator(i, k, j, l)));
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("dual bosons") {
  Fock F2(2);
  for (int k = 1; k <= 4; ++k) CHECK(F2.astar_expand(1, k)[0].second == qint(2 * k).inv());
  for (int n = 2; n <= 4; ++n) {
    Fock F(n);
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j)
        for (int k = -6; k <= 6; ++k) {
          if (k == 0) continue;
          QRat s;
          for (const auto& [m, c] : F.astar_expand(i, k)) s += c * F.boson_commutator(m, k, j, -k);
          QRat want = i == j ? qint(k) / QRat(k) : QRat(0);
          REQUIRE(s == want);
        }
  }
}

TEST_CASE("weight operators") {
  Fock F2(2);
  const Lattice& L = F2.lattice();
  FockState v1 = F2.vacuum(1), v0 = F2.vacuum(0);
  CHECK(F2.partial(L.alpha(1), v1) == v1);
  CHECK(F2.q_power_partial(L.alpha(1), -kTick, v0) == v0);
  FockState ph = F2.phase_partial(Rat(1), L.lambda(1), v1);
  CHECK(ph.terms().begin()->second == phase_scalar(Rat(1, 2)));
  FockState shifted = F2.lattice_mul(LatticeElt{1, L.to_free(L.alpha(1))}, v0);
  CHECK(shifted.sector() == 0);
  CHECK(shifted.terms().begin()->first.lat == L.to_free(L.alpha(1)));
  CHECK(F2.sector_of(L.to_free(L.lambda(1))) == 1);
  Fock F4(4);
  for (int i = 0; i < 4; ++i) CHECK(F4.sector_of(F4.vacuum_basis(i).lat) == i);
}

TEST_CASE("matrix elements and basis") {
  Fock F(2);
  FockState vac = F.vacuum(0);
  CHECK(F.vacuum_element(vac) == Scalar(1));
  CHECK(F.vacuum_element(F.apply_boson(1, -1, vac)).is_zero());
  CHECK_THROWS_AS(F.matrix_element(1, F.vacuum_basis(0), vac), std::domain_error);
  // partitions of 0..3: 1 + 1 + 2 + 3
  CHECK(F.basis(0, 3, {WeightVec(1)}).size() == 7);
  Fock F3(3);
  // two colours: 1 + 2 + 5
  CHECK(F3.basis(0, 2, {WeightVec(2)}).size() == 8);
  CHECK(vac.dump() == "(-1)^0/1 | 1*q^0 / 1*q^0 | [] | +e^[0]\n");
}

TEST_CASE("Heisenberg suite") {
  for (int n = 2; n <= 4; ++n) {
    const SuiteReport r = verify_heisenberg(n, 6, 2);
    CHECK(r.checks.size() == 3);
    CHECK(r.pass());
  }
}

TEST_CASE("Heisenberg suite catches a perturbed formula") {
  for (const char* t : {"fock.gram", "fock.astar"}) {
    CAPTURE(t);
    const SuiteReport r = verify_heisenberg(3, 3, 1, Tweaks::single(t, kTick));
    CHECK_FALSE(r.pass());
    REQUIRE(r.first_failure());
    CHECK_FALSE(r.first_failure()->witness.empty());
  }
}
