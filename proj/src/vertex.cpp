#include "qvertex/vertex.hpp"

#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qv {

namespace {

std::int64_t integral(const Rat& r, const char* what) {
  if (r.denominator() != 1) throw std::domain_error(std::string("non-integral ") + what);
  return r.numerator();
}

std::vector<CoefFamily> add_families(const std::vector<CoefFamily>& a, const std::vector<CoefFamily>& b) {
  std::vector<CoefFamily> r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

bool any_nonzero(const std::vector<CoefFamily>& v) {
  for (const auto& f : v)
    if (!f.is_zero()) return true;
  return false;
}

}  // namespace

VertexTemplate VertexTemplate::identity(int n) {
  VertexTemplate t;
  t.name = "1";
  t.n = n;
  t.neg.assign(static_cast<std::size_t>(n - 1), CoefFamily());
  t.pos = t.neg;
  t.shift = WeightVec(static_cast<std::size_t>(n - 1));
  return t;
}

bool VertexTemplate::has_neg() const { return any_nonzero(neg); }
bool VertexTemplate::has_pos() const { return any_nonzero(pos); }

VertexTemplate VertexTemplate::scaled(std::int64_t ticks) const {
  VertexTemplate t = *this;
  if (ticks == 0) return t;
  for (auto& f : t.neg) f = f.shifted(ticks);
  for (auto& f : t.pos) f = f.shifted(-ticks);
  for (auto& z : t.zmodes)
    if (z.with_var) z.mu += ticks;
  t.pre *= q_scalar(integral(Rat(ticks) * zpow, "z-power under rescaling"));
  return t;
}

VertexTemplate VertexTemplate::inverse() const {
  if (!shift.is_zero()) throw std::domain_error("inverse of a template with lattice shift");
  if (has_neg() && has_pos()) throw std::domain_error("inverse of a two-sided template");
  VertexTemplate t = *this;
  t.name = name + "^-1";
  for (auto& f : t.neg) f = -f;
  for (auto& f : t.pos) f = -f;
  for (auto& z : t.zmodes) z.gamma = -z.gamma;
  for (auto& p : t.phases) p.r = -p.r;
  t.pre = pre.inv();
  t.zpow = -zpow;
  return t;
}

VertexTemplate VertexTemplate::times(const Scalar& c) const {
  VertexTemplate t = *this;
  t.pre *= c;
  return t;
}

std::string VertexTemplate::dump() const {
  std::ostringstream os;
  os << "template " << name << " (n=" << n << ")\n";
  os << "prefactor: " << pre.str() << "\n";
  os << "z-power: " << rat_short(zpow) << "\n";
  os << "shift: " << shift.str() << "\n";
  for (const auto& z : zmodes)
    os << "zero mode: " << (z.with_var ? "(q^" + exponent_str(z.mu) + " z)" : "q^" + exponent_str(z.mu))
       << "^d" << z.gamma.str() << "\n";
  for (const auto& p : phases) os << "phase: (-1)^(" << rat_short(p.r) << " d" << p.gamma.str() << ")\n";
  for (std::size_t j = 0; j < neg.size(); ++j)
    if (!neg[j].is_zero()) os << "create[" << j + 1 << "](k) = " << neg[j].str() << "\n";
  for (std::size_t j = 0; j < pos.size(); ++j)
    if (!pos[j].is_zero()) os << "annihilate[" << j + 1 << "](k) = " << pos[j].str() << "\n";
  return os.str();
}

ZeroModeData canonical_zero_modes(const VertexTemplate& t) {
  const auto r = static_cast<std::size_t>(t.n - 1);
  ZeroModeData d{t.shift, WeightVec(r), WeightVec(r), WeightVec(r), t.pre, t.zpow};
  for (const auto& z : t.zmodes) {
    if (z.with_var) d.Gamma += z.gamma;
    d.M += Rat(z.mu) * z.gamma;
  }
  for (const auto& p : t.phases) d.R += p.r * p.gamma;
  return d;
}

std::string kind_name(CurrentKind k) {
  switch (k) {
    case CurrentKind::xp: return "x+";
    case CurrentKind::xm: return "x-";
    case CurrentKind::phi: return "phi";
    case CurrentKind::psi: return "psi";
    case CurrentKind::phi_inv: return "phi^-1";
    case CurrentKind::psi_inv: return "psi^-1";
  }
  return "?";
}

VertexTemplate fj_current(const Fock& F, CurrentKind kind, int i, const Tweaks& tw) {
  const int n = F.n();
  if (i < 1 || i >= n) throw std::domain_error("current index out of range");
  if (kind == CurrentKind::phi_inv) return fj_current(F, CurrentKind::phi, i, tw).inverse();
  if (kind == CurrentKind::psi_inv) return fj_current(F, CurrentKind::psi, i, tw).inverse();

  VertexTemplate t = VertexTemplate::identity(n);
  t.name = kind_name(kind) + "_" + std::to_string(i);
  const auto j = static_cast<std::size_t>(i - 1);
  const WeightVec a = F.lattice().alpha(i);
  const QRat dq = QRat::q() - QRat::q_pow(-kTick);
  switch (kind) {
    case CurrentKind::xp:
      t.neg[j] = CoefFamily::over_qint(1, -kTick / 2 + tw.get("fj.x+.create"));
      t.pos[j] = CoefFamily::over_qint(-1, -kTick / 2 + tw.get("fj.x+.annihilate"));
      t.shift = a;
      t.zmodes.push_back({a, tw.get("fj.x+.zero"), true});
      t.zpow = Rat(1);
      break;
    case CurrentKind::xm:
      t.neg[j] = CoefFamily::over_qint(-1, kTick / 2 + tw.get("fj.x-.create"));
      t.pos[j] = CoefFamily::over_qint(1, kTick / 2 + tw.get("fj.x-.annihilate"));
      t.shift = -a;
      t.zmodes.push_back({-a, tw.get("fj.x-.zero"), true});
      t.zpow = Rat(1);
      break;
    case CurrentKind::phi:
      t.neg[j] = CoefFamily::constant(-dq).shifted(tw.get("fj.phi.create"));
      t.zmodes.push_back({-a, kTick + tw.get("fj.phi.zero"), false});
      break;
    case CurrentKind::psi:
      t.pos[j] = CoefFamily::constant(dq).shifted(tw.get("fj.psi.annihilate"));
      t.zmodes.push_back({a, kTick + tw.get("fj.psi.zero"), false});
      break;
    default: break;
  }
  return t;
}

CoefFamily pairing_family(const Fock& F, const std::vector<CoefFamily>& a, const std::vector<CoefFamily>& b) {
  const QRat dq = QRat::q() - QRat::q_pow(-kTick);
  const QRat norm = (dq * dq).inv();
  CoefFamily sum;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].is_zero()) continue;
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (b[l].is_zero()) continue;
      const int c = F.lattice().cartan(static_cast<int>(j + 1), static_cast<int>(l + 1));
      if (c == 0) continue;
      // [(a_j, a_l) k][k] / k
      const CoefFamily g(ExpPoly::sinh(static_cast<std::int64_t>(c) * kTick) * ExpPoly::sinh(kTick), {}, 1);
      sum = sum + (a[j] * b[l] * g).scaled(norm);
    }
  }
  return sum;
}

VertexTemplate normal_ordered_product(const Fock& F, const VertexTemplate& t1, std::int64_t s1,
                                      const VertexTemplate& t2, std::int64_t s2) {
  if (t1.n != t2.n || t1.n != F.n()) throw std::domain_error("templates for different n");
  const VertexTemplate a = t1.scaled(s1), b = t2.scaled(s2);
  VertexTemplate m = VertexTemplate::identity(F.n());
  m.name = ":" + t1.name + " " + t2.name + ":";
  m.neg = add_families(a.neg, b.neg);
  m.pos = add_families(a.pos, b.pos);
  m.shift = a.shift + b.shift;
  m.zmodes = a.zmodes;
  m.zmodes.insert(m.zmodes.end(), b.zmodes.begin(), b.zmodes.end());
  m.phases = a.phases;
  m.phases.insert(m.phases.end(), b.phases.begin(), b.phases.end());
  m.pre = a.pre * b.pre;
  m.zpow = a.zpow + b.zpow;
  return m;
}

Contraction contract(const Fock& F, const VertexTemplate& t1, const VertexTemplate& t2, int order) {
  Contraction c;
  c.exponent = pairing_family(F, t1.pos, t2.neg);
  std::vector<QRat> a;
  for (int k = 1; k < order; ++k) a.push_back(c.exponent.eval(k));
  const auto e = exp_series(a, order);
  c.series = FracLaurentSeries("w/z", Rat(order));
  for (int k = 0; k < order && k < static_cast<int>(e.size()); ++k) c.series.add_term(Rat(k), Scalar(e[k]));

  const Lattice& L = F.lattice();
  c.zero_factor = Scalar(1);
  c.zpow = Rat(0);
  for (const auto& z : t1.zmodes) {
    const Rat p = L.pairing(z.gamma, t2.shift);
    c.zero_factor *= q_scalar(integral(Rat(z.mu) * p, "q-power in contraction"));
    if (z.with_var) c.zpow += p;
  }
  for (const auto& ph : t1.phases) c.zero_factor *= phase_scalar(ph.r * L.pairing(ph.gamma, t2.shift));
  if (L.cocycle(L.to_free(t1.shift), L.to_free(t2.shift))) c.zero_factor = -c.zero_factor;
  c.merged = normal_ordered_product(F, t1, 0, t2, 0);
  return c;
}

TemplateComparison template_eq(const VertexTemplate& a, const VertexTemplate& b, int K) {
  TemplateComparison r;
  if (a.n != b.n) {
    r.reason = "different n";
    return r;
  }
  const ZeroModeData x = canonical_zero_modes(a), y = canonical_zero_modes(b);
  std::ostringstream why;
  if (x.shift != y.shift) why << "shift " << x.shift.str() << " vs " << y.shift.str() << "; ";
  if (x.Gamma != y.Gamma) why << "z-zero-mode " << x.Gamma.str() << " vs " << y.Gamma.str() << "; ";
  if (x.M != y.M) why << "q-zero-mode " << x.M.str() << " vs " << y.M.str() << "; ";
  if (x.R != y.R) why << "phase " << x.R.str() << " vs " << y.R.str() << "; ";
  if (x.zpow != y.zpow) why << "z-power " << rat_short(x.zpow) << " vs " << rat_short(y.zpow) << "; ";
  if (x.pre != y.pre) why << "prefactor " << x.pre.str() << " vs " << y.pre.str() << "; ";
  auto families = [&](const char* what, const std::vector<CoefFamily>& u, const std::vector<CoefFamily>& v) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (same_family(u[j], v[j])) continue;
      int k = 1;
      while (k <= K && u[j].eval(k) == v[j].eval(k)) ++k;
      why << what << "[" << j + 1 << "] differs";
      if (k <= K) why << " at k=" << k;
      why << "; ";
    }
  };
  families("create", a.neg, b.neg);
  families("annihilate", a.pos, b.pos);
  r.reason = why.str();
  r.equal = r.reason.empty();
  r.certified = r.equal;
  return r;
}

BoundTemplate::BoundTemplate(const Fock& F, VertexTemplate t)
    : F_(&F),
      t_(std::move(t)),
      shift_free_(F.lattice().to_free(t_.shift)),
      creates_(t_.has_neg()),
      annihilates_(t_.has_pos()) {
  if (t_.n != F.n()) throw std::domain_error("template bound to a Fock module of different n");
}

const std::vector<QRat>& BoundTemplate::values(bool negative, int k) const {
  auto& cache = negative ? negv_ : posv_;
  {
    std::shared_lock lk(mu_);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  const auto& fam = negative ? t_.neg : t_.pos;
  std::vector<QRat> v;
  v.reserve(fam.size());
  for (const auto& f : fam) v.push_back(f.eval(k));
  std::unique_lock lk(mu_);
  return cache.try_emplace(k, std::move(v)).first->second;
}

QRat BoundTemplate::neg_value(int j, int k) const { return values(true, k)[static_cast<std::size_t>(j - 1)]; }
QRat BoundTemplate::pos_value(int j, int k) const { return values(false, k)[static_cast<std::size_t>(j - 1)]; }

BoundTemplate::Poly BoundTemplate::build(bool negative, int d) const {
  // sum over multisets of parts (j, k) with total k = d of prod y_{j,k}^m / m!
  Poly out;
  std::vector<std::pair<int, int>> cur;
  const int r = F_->n() - 1;
  std::function<void(int, int, int)> rec = [&](int left, int j0, int k0) {
    if (left == 0) {
      QRat c(1);
      std::size_t p = 0;
      while (p < cur.size()) {
        std::size_t m = 1;
        while (p + m < cur.size() && cur[p + m] == cur[p]) ++m;
        const QRat y = values(negative, cur[p].second)[static_cast<std::size_t>(cur[p].first - 1)];
        QRat fact(1);
        for (std::size_t i = 2; i <= m; ++i) fact *= QRat(static_cast<long>(i));
        c *= y.pow(static_cast<long>(m)) / fact;
        p += m;
      }
      if (!c.is_zero()) out.emplace_back(BosonMono{cur}, c);
      return;
    }
    for (int j = j0; j <= r; ++j) {
      const auto& fam = negative ? t_.neg : t_.pos;
      if (fam[static_cast<std::size_t>(j - 1)].is_zero()) continue;
      for (int k = (j == j0 ? k0 : 1); k <= left; ++k) {
        cur.emplace_back(j, k);
        rec(left - k, j, k);
        cur.pop_back();
      }
    }
  };
  rec(d, 1, 1);
  return out;
}

const BoundTemplate::Poly& BoundTemplate::creation(int d) const {
  {
    std::shared_lock lk(mu_);
    auto it = cre_.find(d);
    if (it != cre_.end()) return it->second;
  }
  Poly p = build(true, d);
  std::unique_lock lk(mu_);
  return cre_.try_emplace(d, std::move(p)).first->second;
}

const BoundTemplate::Poly& BoundTemplate::annihilation(int d) const {
  {
    std::shared_lock lk(mu_);
    auto it = ann_.find(d);
    if (it != ann_.end()) return it->second;
  }
  Poly p = build(false, d);
  std::unique_lock lk(mu_);
  return ann_.try_emplace(d, std::move(p)).first->second;
}

const BoundTemplate::Zero& BoundTemplate::zero(const FreeVec& m) const {
  {
    std::shared_lock lk(mu_);
    auto it = zero_.find(m);
    if (it != zero_.end()) return it->second;
  }
  const Lattice& L = F_->lattice();
  Zero z{t_.pre, {}, t_.zpow};
  for (const auto& zm : t_.zmodes) {
    const Rat p = L.pairing_free(zm.gamma, m);
    z.factor *= q_scalar(integral(Rat(zm.mu) * p, "q-power of a zero mode"));
    if (zm.with_var) z.zexp += p;
  }
  for (const auto& ph : t_.phases) z.factor *= phase_scalar(ph.r * L.pairing_free(ph.gamma, m));
  const LatticeElt e = L.mul(LatticeElt{1, shift_free_}, LatticeElt{1, m});
  if (e.sign < 0) z.factor = -z.factor;
  z.lat = e.m;
  std::unique_lock lk(mu_);
  return zero_.try_emplace(m, std::move(z)).first->second;
}

Rat BoundTemplate::zexp(const FreeVec& m) const { return zero(m).zexp; }

void BoundTemplate::apply(const FockBasis& b, const Scalar& c, int d, FockTerms& out) const {
  const int deg = b.mono.degree();
  const int top = annihilates_ ? deg : 0;
  const Zero& z = zero(b.lat);
  for (int d1 = 0; d1 <= top; ++d1) {
    const int dc = d1 + d;
    if (dc < 0 || (dc > 0 && !creates_)) continue;
    FockTerms lowered;
    if (d1 == 0) {
      lowered.emplace(b, c);
    } else {
      for (const auto& [mono, coef] : annihilation(d1)) {
        FockTerms cur{{b, c * Scalar(coef)}};
        for (const auto& [j, k] : mono.f) {
          FockTerms next;
          for (const auto& [bb, cc] : cur) F_->apply_boson(j, k, bb, cc, next);
          cur = std::move(next);
          if (cur.empty()) break;
        }
        for (const auto& [bb, cc] : cur) add_term(lowered, bb, cc);
      }
    }
    if (lowered.empty()) continue;
    const Poly* cre = dc == 0 ? nullptr : &creation(dc);
    for (const auto& [bb, cc] : lowered) {
      const Scalar base = cc * z.factor;
      if (dc == 0) {
        add_term(out, FockBasis{bb.mono, z.lat}, base);
        continue;
      }
      for (const auto& [mono, coef] : *cre) {
        FockBasis nb{bb.mono, z.lat};
        for (const auto& [j, k] : mono.f) nb.mono.insert(j, k);
        add_term(out, nb, base * Scalar(coef));
      }
    }
  }
}

FockState mode(const BoundTemplate& t, const Rat& l, const FockState& s) {
  const Fock& F = t.fock();
  const int n = F.n();
  const int sector = ((s.sector() + F.sector_of(t.shift_free())) % n + n) % n;
  FockTerms out;
  for (const auto& [b, c] : s.terms()) {
    const Rat d = -l - t.zexp(b.lat);
    if (d.denominator() != 1) continue;
    t.apply(b, c, static_cast<int>(d.numerator()), out);
  }
  return FockState(sector, std::move(out));
}

}  // namespace qv
