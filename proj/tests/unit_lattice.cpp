#include <doctest.h>

#include <random>

#include "qvertex/lattice.hpp"

using namespace qv;

namespace {

// Sign of reordering a word of generator letters (index, +-1) into normal
// form by adjacent swaps, using only the pairwise swap parities.
int bubble_sign(std::vector<std::pair<int, int>> word, const std::vector<std::vector<int>>& parity) {
  int sign = 1;
  for (std::size_t pass = 0; pass < word.size(); ++pass)
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
      if (word[i].first > word[i + 1].first) {
        if (parity[static_cast<std::size_t>(word[i].first)][static_cast<std::size_t>(word[i + 1].first)]) sign = -sign;
        std::swap(word[i], word[i + 1]);
      }
  return sign;
}

std::vector<std::vector<int>> pair_parities(const Lattice& L) {
  // swap parity of generators read off from the pairing of distinct basis elements
  const int r = L.rank();
  std::vector<std::vector<int>> p(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      if (a == b) continue;
      Rat v = L.pairing(L.from_free(L.generator(a).m), L.from_free(L.generator(b).m));
      REQUIRE(v.denominator() == 1);
      p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = static_cast<int>(((v.numerator() % 2) + 2) % 2);
    }
  return p;
}

}  // namespace

TEST_CASE("pairing") {
  Lattice L3(3), L2(2);
  CHECK(L3.pairing(L3.alpha(1), L3.alpha(1)) == Rat(2));
  CHECK(L3.pairing(L3.alpha(1), L3.alpha(2)) == Rat(-1));
  CHECK(L3.pairing(L3.lambda(1), L3.alpha(1)) == Rat(1));
  CHECK(L3.pairing(L3.lambda(1), L3.alpha(2)) == Rat(0));
  CHECK(L2.pairing(L2.lambda(1), L2.lambda(1)) == Rat(1, 2));
  CHECK(L3.lambda(3).is_zero());
  CHECK(L3.lambda(4) == L3.lambda(1));
  for (int n = 2; n <= 6; ++n) {
    Lattice L(n);
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) {
        CHECK(L.pairing(L.alpha(i), L.alpha(j)) == Rat(L.cartan(i, j)));
        CHECK(L.pairing(L.lambda(i), L.alpha(j)) == Rat(i == j ? 1 : 0));
        CHECK(L.pairing(L.lambda(i), L.lambda(j)) == L.pairing(L.lambda(j), L.lambda(i)));
      }
  }
}

TEST_CASE("free basis conversion") {
  Lattice L4(4), L3(3);
  CHECK(L4.to_free(L4.alpha(1)) == FreeVec{-2, -3, 4});
  CHECK(L3.to_free(L3.lambda(1)) == FreeVec{-1, 2});
  CHECK(L4.to_free(L4.lambda(3)) == FreeVec{0, 0, 1});
  CHECK_THROWS_AS(L3.to_free(WeightVec({Rat(1, 2), Rat(0)})), std::domain_error);
  for (int n = 2; n <= 6; ++n) {
    Lattice L(n);
    // Lbar_i = -alpha_{i+1} - 2 alpha_{i+2} - ... + (n-i) Lbar_{n-1}
    for (int i = 1; i < n; ++i) {
      FreeVec want(static_cast<std::size_t>(n - 1), 0);
      for (int k = i + 1; k <= n - 1; ++k) want[static_cast<std::size_t>(k - 2)] = -(k - i);
      want.back() = n - i;
      CHECK(L.to_free(L.lambda(i)) == want);
      CHECK(L.from_free(want) == L.lambda(i));
    }
    // alpha_1 = -2 alpha_2 - ... - (n-1) alpha_{n-1} + n Lbar_{n-1}
    FreeVec a1(static_cast<std::size_t>(n - 1), 0);
    for (int k = 2; k <= n - 1; ++k) a1[static_cast<std::size_t>(k - 2)] = -k;
    a1.back() = n;
    CHECK(L.to_free(L.alpha(1)) == a1);
  }
}

TEST_CASE("cocycle products") {
  Lattice L(4);
  LatticeElt a2 = L.generator(0), a3 = L.generator(1), lam = L.generator(2);
  LatticeElt x = L.mul(a2, a3), y = L.mul(a3, a2);
  CHECK(x.m == y.m);
  CHECK(x.sign == -y.sign);
  LatticeElt sq = L.mul(a2, a2);
  CHECK(sq.sign == 1);
  CHECK(sq.m == FreeVec{2, 0, 0});
  CHECK(L.mul(a3, lam).sign == -L.mul(lam, a3).sign);
  CHECK(L.mul(a2, lam).sign == L.mul(lam, a2).sign);
  CHECK(L.mul(a2, L.identity()) == a2);
  CHECK(L.mul(L.mul(a3, lam), L.identity()).str() == "+[0,1,1]");
  CHECK(L.mul(lam, a3).str() == "-[0,1,1]");
}

TEST_CASE("cocycle associativity and swap form") {
  std::mt19937 g(7);
  std::uniform_int_distribution<int> ex(-3, 3), sg(0, 1);
  for (int n = 2; n <= 5; ++n) {
    Lattice L(n);
    auto rnd = [&] {
      LatticeElt e = L.identity();
      e.sign = sg(g) ? 1 : -1;
      for (auto& m : e.m) m = ex(g);
      return e;
    };
    for (int t = 0; t < 500; ++t) {
      LatticeElt a = rnd(), b = rnd(), c = rnd();
      REQUIRE(L.mul(L.mul(a, b), c) == L.mul(a, L.mul(b, c)));
    }
    // swap parity equals the pairing of distinct generators
    auto par = pair_parities(L);
    for (int a = 0; a < L.rank(); ++a)
      for (int b = 0; b < L.rank(); ++b) {
        if (a == b) continue;
        int s = L.cocycle(L.generator(a).m, L.generator(b).m) + L.cocycle(L.generator(b).m, L.generator(a).m);
        CHECK(s % 2 == par[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      }
    // products of random words agree with bubble sorting
    std::uniform_int_distribution<int> letter(0, L.rank() - 1);
    for (int t = 0; t < 200; ++t) {
      std::vector<std::pair<int, int>> word;
      LatticeElt prod = L.identity();
      for (int k = 0; k < 6; ++k) {
        int idx = letter(g), e = sg(g) ? 1 : -1;
        word.emplace_back(idx, e);
        LatticeElt gen = L.identity();
        gen.m[static_cast<std::size_t>(idx)] = e;
        prod = L.mul(prod, gen);
      }
      CHECK(prod.sign == bubble_sign(word, par));
    }
  }
}
