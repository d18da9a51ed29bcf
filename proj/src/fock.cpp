#include "qvertex/fock.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qv {

int BosonMono::degree() const {
  int d = 0;
  for (const auto& [j, k] : f) d += k;
  return d;
}

void BosonMono::insert(int j, int k) { f.insert(std::upper_bound(f.begin(), f.end(), std::make_pair(j, k)), {j, k}); }

std::string BosonMono::str() const {
  std::ostringstream os;
  os << "[";
  for (const auto& [j, k] : f) os << "(" << j << "," << -k << ")";
  os << "]";
  return os.str();
}

void add_term(FockTerms& t, const FockBasis& b, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t.try_emplace(b, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) t.erase(it);
}

Scalar FockState::coeff(const FockBasis& b) const {
  auto it = t_.find(b);
  return it == t_.end() ? Scalar() : it->second;
}

FockState& FockState::operator+=(const FockState& o) {
  if (t_.empty()) sector_ = o.sector_;
  if (o.t_.empty()) return *this;
  if (o.sector_ != sector_) throw std::domain_error("adding states of different sectors");
  for (const auto& [b, c] : o.t_) add_term(t_, b, c);
  return *this;
}

FockState FockState::scaled(const Scalar& c) const {
  FockState r(sector_, {});
  for (const auto& [b, v] : t_) r.add(b, v * c);
  return r;
}

std::string FockState::dump() const {
  std::ostringstream os;
  for (const auto& [b, c] : t_) {
    os << c.str() << " | " << b.mono.str() << " | +e^[";
    for (std::size_t i = 0; i < b.lat.size(); ++i) os << (i ? "," : "") << b.lat[i];
    os << "]\n";
  }
  return os.str();
}

Fock::Fock(int n, const Tweaks& tw)
    : lattice_(n),
      tw_gram_(tw.get("fock.gram")),
      tw_astar_(tw.get("fock.astar")),
      once_(static_cast<std::size_t>(kMaxMode)),
      gram_(static_cast<std::size_t>(kMaxMode)),
      astar_(static_cast<std::size_t>(kMaxMode)) {}

void Fock::ensure(int k) const {
  if (k < 1 || k > kMaxMode) throw std::domain_error("mode number out of supported range");
  const auto idx = static_cast<std::size_t>(k - 1);
  std::call_once(once_[idx], [&] {
    const int r = lattice_.rank(), n = lattice_.n();
    std::vector<std::vector<QRat>> g(static_cast<std::size_t>(r), std::vector<QRat>(static_cast<std::size_t>(r)));
    std::vector<std::vector<QRat>> a = g;
    const QRat qk = qint(k);
    const QRat norm = (qk * qk * qint(static_cast<long>(n) * k)).inv();
    for (int i = 1; i <= r; ++i)
      for (int j = 1; j <= r; ++j) {
        const int c = lattice_.cartan(i, j);
        if (c != 0) g[i - 1][j - 1] = qint(static_cast<long>(c) * k) * qk / QRat(k);
        if (c < 0) g[i - 1][j - 1] *= QRat::q_pow(tw_gram_);
        a[i - 1][j - 1] =
            qint(static_cast<long>(std::min(i, j)) * k) * qint(static_cast<long>(std::min(n - i, n - j)) * k) * norm;
        if (i == j) a[i - 1][j - 1] *= QRat::q_pow(tw_astar_);
      }
    gram_[idx] = std::move(g);
    astar_[idx] = std::move(a);
  });
}

const QRat& Fock::gram(int i, int j, int k) const {
  ensure(k);
  return gram_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
}

QRat Fock::boson_commutator(int i, int k, int j, int l) const {
  if (k + l != 0 || k == 0) return QRat(0);
  if (k > 0) return gram(i, j, k);
  return -gram(i, j, -k);
}

const QRat& Fock::astar_coeff(int i, int j, int k) const {
  if (i <= 0 || i >= n()) return zero_;
  if (k < 0) k = -k;
  ensure(k);
  return astar_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
}

std::vector<std::pair<int, QRat>> Fock::astar_expand(int i, int k) const {
  if (i < 1 || i >= n()) throw std::domain_error("dual boson index out of range");
  if (k == 0) throw std::domain_error("dual boson mode must be nonzero");
  std::vector<std::pair<int, QRat>> r;
  for (int j = 1; j < n(); ++j) r.emplace_back(j, k > 0 ? astar_coeff(i, j, k) : -astar_coeff(i, j, k));
  return r;
}

FockBasis Fock::vacuum_basis(int sector) const { return FockBasis{{}, lattice_.to_free(lattice_.lambda(sector))}; }

FockState Fock::vacuum(int sector) const {
  sector = ((sector % n()) + n()) % n();
  FockState s(sector, {});
  s.add(vacuum_basis(sector), Scalar(1));
  return s;
}

int Fock::sector_of(const FreeVec& lat) const {
  const WeightVec w = lattice_.from_free(lat);
  long s = 0;
  for (std::size_t j = 0; j < w.c.size(); ++j) s += static_cast<long>(j + 1) * static_cast<long>(w.c[j].numerator());
  return static_cast<int>(((s % n()) + n()) % n());
}

void Fock::apply_boson(int j, int k, const FockBasis& b, const Scalar& c, FockTerms& out) const {
  if (k < 0) {
    FockBasis nb = b;
    nb.mono.insert(j, -k);
    add_term(out, nb, c);
    return;
  }
  const auto& f = b.mono.f;
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (f[p].second != k) continue;
    if (p > 0 && f[p - 1] == f[p]) continue;  // handled with multiplicity below
    std::size_t mult = 1;
    while (p + mult < f.size() && f[p + mult] == f[p]) ++mult;
    const QRat& g = gram(j, f[p].first, k);
    if (g.is_zero()) continue;
    FockBasis nb = b;
    nb.mono.f.erase(nb.mono.f.begin() + static_cast<std::ptrdiff_t>(p));
    add_term(out, nb, c * Scalar(g * QRat(static_cast<long>(mult))));
  }
}

FockState Fock::apply_boson(int j, int k, const FockState& s) const {
  if (j < 1 || j >= n() || k == 0) throw std::domain_error("boson label out of range");
  FockTerms out;
  for (const auto& [b, c] : s.terms()) apply_boson(j, k, b, c, out);
  return FockState(s.sector(), std::move(out));
}

FockState Fock::partial(const WeightVec& gamma, const FockState& s) const {
  FockTerms out;
  for (const auto& [b, c] : s.terms()) {
    const Rat p = lattice_.pairing_free(gamma, b.lat);
    add_term(out, b, c * Scalar(QRat(mpq_class(p.numerator(), p.denominator()))));
  }
  return FockState(s.sector(), std::move(out));
}

FockState Fock::q_power_partial(const WeightVec& gamma, std::int64_t mu, const FockState& s) const {
  FockTerms out;
  for (const auto& [b, c] : s.terms())
    add_term(out, b, c * Scalar(QRat::q_pow(rat_ticks(lattice_.pairing_free(gamma, b.lat) * Rat(mu) / Rat(kTick)))));
  return FockState(s.sector(), std::move(out));
}

FockState Fock::lattice_mul(const LatticeElt& e, const FockState& s) const {
  FockTerms out;
  int sector = s.sector();
  for (const auto& [b, c] : s.terms()) {
    LatticeElt r = lattice_.mul(e, LatticeElt{1, b.lat});
    sector = sector_of(r.m);
    add_term(out, FockBasis{b.mono, r.m}, r.sign < 0 ? -c : c);
  }
  return FockState(sector, std::move(out));
}

FockState Fock::phase_partial(const Rat& r, const WeightVec& gamma, const FockState& s) const {
  FockTerms out;
  for (const auto& [b, c] : s.terms()) add_term(out, b, c * phase_scalar(r * lattice_.pairing_free(gamma, b.lat)));
  return FockState(s.sector(), std::move(out));
}

Scalar Fock::matrix_element(int sector, const FockBasis& bra, const FockState& s) const {
  sector = ((sector % n()) + n()) % n();
  if (sector_of(bra.lat) != sector) throw std::domain_error("bra is not in the requested sector");
  if (!s.is_zero() && s.sector() != sector) throw std::domain_error("sector mismatch in matrix element");
  return s.coeff(bra);
}

Scalar Fock::vacuum_element(const FockState& s) const { return matrix_element(s.sector(), vacuum_basis(s.sector()), s); }

std::vector<FockBasis> Fock::basis(int sector, int max_degree, const std::vector<WeightVec>& roots) const {
  std::vector<BosonMono> monos;
  BosonMono cur;
  const int r = lattice_.rank();
  // parts (j, k) in non-decreasing label order
  std::function<void(int, int, int)> rec = [&](int left, int j0, int k0) {
    monos.push_back(cur);
    for (int j = j0; j <= r; ++j)
      for (int k = (j == j0 ? k0 : 1); k <= left; ++k) {
        cur.f.emplace_back(j, k);
        rec(left - k, j, k);
        cur.f.pop_back();
      }
  };
  rec(max_degree, 1, 1);
  std::sort(monos.begin(), monos.end(), [](const BosonMono& a, const BosonMono& b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a < b;
  });
  std::vector<FockBasis> out;
  const WeightVec base = lattice_.lambda(sector);
  for (const auto& beta : roots) {
    FreeVec lat = lattice_.to_free(base + beta);
    for (const auto& m : monos) out.push_back(FockBasis{m, lat});
  }
  return out;
}

}  // namespace qv

namespace qv {

SuiteReport verify_heisenberg(int n, int kmax, int degree, const Tweaks& tw) {
  const auto t0 = std::chrono::steady_clock::now();
  const Fock F(n, tw);
  SuiteReport rep;
  rep.suite = "heisenberg";
  rep.n = n;
  rep.parameters = {{"kmax", std::to_string(kmax)}, {"degree", std::to_string(degree)}};
  auto label = [](const char* what, int i, int k, int j, int l) {
    std::ostringstream os;
    os << what << " (" << i << "," << k << "),(" << j << "," << l << ")";
    return os.str();
  };

  Check anti{"commutator antisymmetry", true, "", ""};
  Check dual{"[a*_ik, a_jl] = delta [k]/k", true, "", ""};
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j)
      for (int k = -kmax; k <= kmax; ++k)
        for (int l = -kmax; l <= kmax; ++l) {
          if (k == 0 || l == 0) continue;
          if (anti.pass && F.boson_commutator(i, k, j, l) != -F.boson_commutator(j, l, i, k)) {
            anti.pass = false;
            anti.witness = label("pair", i, k, j, l);
          }
          QRat s;
          for (const auto& [m, c] : F.astar_expand(i, k)) s += c * F.boson_commutator(m, k, j, l);
          const QRat want = i == j && k + l == 0 ? qint(k) / QRat(k) : QRat(0);
          if (dual.pass && s != want) {
            dual.pass = false;
            dual.witness = label("pair", i, k, j, l) + " value " + s.str();
          }
        }
  rep.checks.push_back(std::move(anti));
  rep.checks.push_back(std::move(dual));

  // the commutator as an operator identity on F_0
  const int kop = std::min(kmax, degree + 1);
  Check act{"[a_ik, a_jl] on F_0", true, "", ""};
  const std::vector<WeightVec> roots{WeightVec(static_cast<std::size_t>(n - 1))};
  for (const auto& b : F.basis(0, degree, roots)) {
    FockState s(0, {});
    s.add(b, Scalar(QRat(1)));
    for (int i = 1; i < n && act.pass; ++i)
      for (int j = 1; j < n && act.pass; ++j)
        for (int k = -kop; k <= kop && act.pass; ++k)
          for (int l = -kop; l <= kop && act.pass; ++l) {
            if (k == 0 || l == 0) continue;
            FockState lhs = F.apply_boson(i, k, F.apply_boson(j, l, s));
            lhs += F.apply_boson(j, l, F.apply_boson(i, k, s)).scaled(Scalar(QRat(-1)));
            if (!(lhs == s.scaled(Scalar(F.boson_commutator(i, k, j, l))))) {
              act.pass = false;
              act.witness = label("pair", i, k, j, l) + " on " + b.mono.str();
            }
          }
  }
  rep.checks.push_back(std::move(act));
  rep.elapsed = seconds_since(t0);
  return rep;
}

}  // namespace qv
