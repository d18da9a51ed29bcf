#include "qvertex/uq_algebra.hpp"

#include <chrono>
#include <sstream>

namespace qv {

namespace {

using Vars = std::vector<std::string>;

std::vector<long> rho2(int nv, int a, long ea, int b, long eb) {
  std::vector<long> r(static_cast<std::size_t>(nv), 0);
  r[static_cast<std::size_t>(a)] += ea;
  r[static_cast<std::size_t>(b)] += eb;
  return r;
}

std::vector<Rat> mono(int nv, std::initializer_list<std::pair<int, long>> e) {
  std::vector<Rat> r(static_cast<std::size_t>(nv), Rat(0));
  for (auto [v, x] : e) r[static_cast<std::size_t>(v)] += Rat(x);
  return r;
}

CurrentKind inverse_kind(CurrentKind k) {
  switch (k) {
    case CurrentKind::phi: return CurrentKind::phi_inv;
    case CurrentKind::psi: return CurrentKind::psi_inv;
    case CurrentKind::phi_inv: return CurrentKind::phi;
    case CurrentKind::psi_inv: return CurrentKind::psi;
    default: throw std::domain_error("no inverse current");
  }
}

std::string check_name(const std::string& what, int i, int j) {
  return what + " i=" + std::to_string(i) + " j=" + std::to_string(j);
}

std::string witness_str(const EvalReport& r) {
  if (!r.witness) return "";
  const auto& w = *r.witness;
  std::ostringstream os;
  os << "ket " << w.ket;
  if (!w.exponent.empty()) os << "; coefficient of " << w.exponent << "; bra " << w.bra;
  os << "; value " << w.value;
  return os.str();
}

Check run_relation(const Fock& F, const NamedRelation& r, EvalConfig cfg) {
  if (r.max_window >= 0) cfg.window = std::min(cfg.window, r.max_window);
  const EvalReport rep = eval_relation(F, r.expr, cfg);
  Check c{r.name, rep.pass, witness_str(rep), ""};
  std::ostringstream os;
  os << rep.kets << " kets, " << rep.cells << " cells, window " << cfg.window;
  c.detail = os.str();
  return c;
}

}  // namespace

std::shared_ptr<const BoundTemplate> FockProvider::bound(CurrentKind kind, int i, std::int64_t shift) const {
  const auto key = std::make_tuple(static_cast<int>(kind), i, shift);
  std::lock_guard lk(mu_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto b = std::make_shared<const BoundTemplate>(*F_, fj_current(*F_, kind, i, tw_).scaled(shift));
  cache_.emplace(key, b);
  return b;
}

Expr FockProvider::image(CurrentKind kind, int i, int var, std::int64_t shift, const Vars& vars) const {
  return Expr::op(vars, slot_, bound(kind, i, shift), var);
}

Expr CounitProvider::image(CurrentKind kind, int, int, std::int64_t, const Vars& vars) const {
  if (kind == CurrentKind::xp || kind == CurrentKind::xm) return Expr(vars);
  return Expr::one(vars);
}

Expr AntipodeProvider::image(CurrentKind kind, int i, int var, std::int64_t shift, const Vars& vars) const {
  const std::int64_t c = base_->level();
  switch (kind) {
    case CurrentKind::xp:
      return (base_->image(CurrentKind::phi_inv, i, var, shift - c / 2, vars) *
              base_->image(CurrentKind::xp, i, var, shift - c, vars))
          .times(Scalar(-1));
    case CurrentKind::xm:
      return (base_->image(CurrentKind::xm, i, var, shift - c, vars) *
              base_->image(CurrentKind::psi_inv, i, var, shift - c / 2, vars))
          .times(Scalar(-1));
    default: return base_->image(inverse_kind(kind), i, var, shift, vars);
  }
}

Expr CoproductProvider::image(CurrentKind kind, int i, int var, std::int64_t shift, const Vars& vars) const {
  const std::int64_t c1 = a_->level(), c2 = b_->level();
  switch (kind) {
    case CurrentKind::xp:
      return a_->image(kind, i, var, shift, vars) +
             a_->image(CurrentKind::phi, i, var, shift + c1 / 2, vars) * b_->image(kind, i, var, shift + c1, vars);
    case CurrentKind::xm:
      return b_->image(kind, i, var, shift, vars) +
             a_->image(kind, i, var, shift + c2, vars) * b_->image(CurrentKind::psi, i, var, shift + c2 / 2, vars);
    case CurrentKind::phi:
    case CurrentKind::phi_inv:
      return a_->image(kind, i, var, shift - c2 / 2, vars) * b_->image(kind, i, var, shift + c1 / 2, vars);
    case CurrentKind::psi:
    case CurrentKind::psi_inv:
      return a_->image(kind, i, var, shift + c2 / 2, vars) * b_->image(kind, i, var, shift - c1 / 2, vars);
  }
  throw std::domain_error("unknown current kind");
}

UniRat g_function(int a) { return g_factor(QRat::q_pow(static_cast<std::int64_t>(a) * kTick)); }

std::vector<NamedRelation> def21_relations(const Provider& P, int n, const Tweaks& tw) {
  std::vector<NamedRelation> out;
  const std::int64_t c = P.level();
  const Vars zw{"z", "w"};
  const auto cart = [](int i, int j) { return i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0); };
  const auto img = [&](CurrentKind k, int i, int var, std::int64_t s, const Vars& v) { return P.image(k, i, var, s, v); };
  const auto g_of = [&](int a, std::int64_t s, int power) {
    // g_a(q^s x), raised to +-1
    UniRat f = g_function(a).scale_var(QRat::q_pow(s));
    return power < 0 ? f.inv() : f;
  };
  const auto zw_rho = rho2(2, 0, 1, 1, -1);  // z/w
  const auto wz_rho = rho2(2, 0, -1, 1, 1);  // w/z

  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      const int a = cart(i, j);
      for (auto k : {CurrentKind::phi, CurrentKind::psi}) {
        const std::string nm = k == CurrentKind::phi ? "phi-phi" : "psi-psi";
        out.push_back({check_name(nm, i, j), img(k, i, 0, 0, zw) * img(k, j, 1, 0, zw) - img(k, j, 1, 0, zw) * img(k, i, 0, 0, zw)});
      }
      {
        const UniRat r = g_of(a, -c + tw.get("def21.phi-psi"), 1) * g_of(a, c, -1);
        out.push_back({check_name("phi-psi", i, j),
                       img(CurrentKind::phi, i, 0, 0, zw) * img(CurrentKind::psi, j, 1, 0, zw) -
                           (img(CurrentKind::psi, j, 1, 0, zw) * img(CurrentKind::phi, i, 0, 0, zw))
                               .times_rational(r, zw_rho, Direction::at_zero)});
      }
      for (int sgn : {1, -1}) {
        const CurrentKind x = sgn > 0 ? CurrentKind::xp : CurrentKind::xm;
        const std::string pm = sgn > 0 ? "+" : "-";
        const UniRat gphi = g_of(a, -sgn * c / 2 + tw.get("def21.phi-x"), sgn);
        out.push_back({check_name("phi-x" + pm, i, j),
                       img(CurrentKind::phi, i, 0, 0, zw) * img(x, j, 1, 0, zw) -
                           (img(x, j, 1, 0, zw) * img(CurrentKind::phi, i, 0, 0, zw))
                               .times_rational(gphi, zw_rho, Direction::at_zero)});
        const UniRat gpsi = g_of(a, -sgn * c / 2 + tw.get("def21.psi-x"), -sgn);
        out.push_back({check_name("psi-x" + pm, i, j),
                       img(CurrentKind::psi, i, 0, 0, zw) * img(x, j, 1, 0, zw) -
                           (img(x, j, 1, 0, zw) * img(CurrentKind::psi, i, 0, 0, zw))
                               .times_rational(gpsi, wz_rho, Direction::at_zero)});
      }
      {
        Expr e = img(CurrentKind::xp, i, 0, 0, zw) * img(CurrentKind::xm, j, 1, 0, zw) -
                 img(CurrentKind::xm, j, 1, 0, zw) * img(CurrentKind::xp, i, 0, 0, zw);
        if (i == j) {
          const Scalar k = Scalar((QRat::q() - QRat::q_pow(-kTick)).inv());
          e = e - img(CurrentKind::psi, i, 1, c / 2, zw)
                      .times_delta(QRat::q_pow(-c + tw.get("def21.x-x")), zw_rho)
                      .times(k);
          e = e + img(CurrentKind::phi, i, 0, c / 2, zw).times_delta(QRat::q_pow(c), zw_rho).times(k);
        }
        out.push_back({check_name("x+-x-", i, j), e});
      }
      for (int sgn : {1, -1}) {
        const CurrentKind x = sgn > 0 ? CurrentKind::xp : CurrentKind::xm;
        const std::string pm = sgn > 0 ? "+" : "-";
        const Expr l = img(x, i, 0, 0, zw) * img(x, j, 1, 0, zw);
        const Expr r = img(x, j, 1, 0, zw) * img(x, i, 0, 0, zw);
        if (a == 0) {
          out.push_back({check_name("x" + pm + "-x" + pm + " commute", i, j), l - r});
          continue;
        }
        const QRat qa = QRat::q_pow(static_cast<std::int64_t>(sgn * a) * kTick + tw.get("def21.quadratic"));
        // (z - q^a w) x(z) x(w) - (q^a z - w) x(w) x(z)
        const Expr e = l.times_monomial(1, mono(2, {{0, 1}})) - l.times_monomial(Scalar(qa), mono(2, {{1, 1}})) -
                       r.times_monomial(Scalar(qa), mono(2, {{0, 1}})) + r.times_monomial(1, mono(2, {{1, 1}}));
        out.push_back({check_name("x" + pm + "-x" + pm + " quadratic", i, j), e});
      }
      if (a == -1) {
        const Vars v3{"z1", "z2", "w"};
        const Scalar two = Scalar(QRat::q_pow(kTick + tw.get("def21.serre")) + QRat::q_pow(-kTick));
        for (int sgn : {1, -1}) {
          const CurrentKind x = sgn > 0 ? CurrentKind::xp : CurrentKind::xm;
          Expr e(v3);
          for (auto [p, r] : {std::pair{0, 1}, std::pair{1, 0}}) {
            const Expr xa = img(x, i, p, 0, v3), xb = img(x, i, r, 0, v3), xj = img(x, j, 2, 0, v3);
            e += xa * xb * xj - (xa * xj * xb).times(two) + xj * xa * xb;
          }
          out.push_back({check_name(std::string("serre x") + (sgn > 0 ? "+" : "-"), i, j), e, 1});
        }
      }
    }
  return out;
}

SuiteReport verify_def21(int n, int sector, int degree, int window, int threads, const Tweaks& tw) {
  const auto t0 = std::chrono::steady_clock::now();
  Fock F(n);
  const FockProvider P(F, 0, tw);
  SuiteReport rep;
  rep.suite = "def21";
  rep.n = n;
  rep.parameters = {{"sector", std::to_string(sector)}, {"degree", std::to_string(degree)}, {"window", std::to_string(window)}};
  EvalConfig cfg{degree, window, {sector}, threads};
  rep.checks.push_back({"central q^(c/2) q^(-c/2) = 1", true, "", "level acts by a scalar"});
  for (const auto& r : def21_relations(P, n, tw)) rep.checks.push_back(run_relation(F, r, cfg));
  rep.elapsed = seconds_since(t0);
  return rep;
}

namespace {

// The expression's single term as one template with unit coefficient.
const VertexTemplate* lone_template(const Expr& e) {
  if (e.terms().size() != 1) return nullptr;
  const Term& t = e.terms()[0];
  if (t.word.size() != 1 || !t.coef.is_one() || !t.series.empty() || !t.deltas.empty()) return nullptr;
  for (const auto& m : t.mono)
    if (m.numerator() != 0) return nullptr;
  return &t.word[0].op->tmpl();
}

}  // namespace

SuiteReport verify_hopf(int n, int degree, int window, int threads, const Tweaks& tw) {
  const auto t0 = std::chrono::steady_clock::now();
  Fock F(n);
  SuiteReport rep;
  rep.suite = "hopf";
  rep.n = n;
  rep.parameters = {{"degree", std::to_string(degree)}, {"window", std::to_string(window)}};
  auto fock = [&](int slot) { return std::make_shared<const FockProvider>(F, slot, tw); };
  const auto eps = std::make_shared<const CounitProvider>();
  const std::vector<CurrentKind> kinds{CurrentKind::xp, CurrentKind::xm, CurrentKind::phi, CurrentKind::psi};
  const Vars z{"z"};

  // algebra homomorphism on F_0 (x) F_0
  {
    const CoproductProvider D(fock(0), fock(1));
    const EvalConfig cfg{degree, window, {0, 0}, threads};
    for (const auto& r : def21_relations(D, n, tw)) {
      Check c = run_relation(F, r, cfg);
      c.name = "coproduct: " + c.name;
      rep.checks.push_back(std::move(c));
    }
  }
  // counit on either slot, at template level
  for (int side = 0; side < 2; ++side) {
    const CoproductProvider D(side == 0 ? ProviderPtr(fock(0)) : ProviderPtr(eps),
                              side == 0 ? ProviderPtr(eps) : ProviderPtr(fock(0)));
    for (auto k : kinds)
      for (int i = 1; i < n; ++i) {
        Check c{std::string(side == 0 ? "counit M(1 x eps)D " : "counit M(eps x 1)D ") + kind_name(k) + " i=" +
                    std::to_string(i),
                false, "", ""};
        const Expr e = D.image(k, i, 0, 0, z);
        const VertexTemplate* t = lone_template(e);
        if (!t) {
          c.witness = "image is not a single current (" + std::to_string(e.terms().size()) + " terms)";
        } else {
          const auto cmp = template_eq(*t, fj_current(F, k, i), 20);
          c.pass = cmp.equal;
          c.witness = cmp.reason;
        }
        rep.checks.push_back(std::move(c));
      }
  }
  // antipode: M(1 x a)D and M(a x 1)D act as the counit
  for (int side = 0; side < 2; ++side) {
    const auto f = fock(0);
    const auto a = std::make_shared<const AntipodeProvider>(f);
    const CoproductProvider D(side == 0 ? ProviderPtr(f) : ProviderPtr(a), side == 0 ? ProviderPtr(a) : ProviderPtr(f));
    const EvalConfig cfg{degree, window, {0}, threads};
    for (auto k : kinds)
      for (int i = 1; i < n; ++i) {
        const NamedRelation r{std::string(side == 0 ? "antipode M(1 x a)D " : "antipode M(a x 1)D ") + kind_name(k) +
                                  " i=" + std::to_string(i),
                              D.image(k, i, 0, 0, z) - eps->image(k, i, 0, 0, z)};
        rep.checks.push_back(run_relation(F, r, cfg));
      }
  }
  // coassociativity on F_0^(x)3
  {
    const auto left = std::make_shared<const CoproductProvider>(
        std::make_shared<const CoproductProvider>(fock(0), fock(1)), fock(2));
    const auto right = std::make_shared<const CoproductProvider>(
        fock(0), std::make_shared<const CoproductProvider>(fock(1), fock(2)));
    const EvalConfig cfg{std::min(degree, 1), window, {0, 0, 0}, threads};
    for (auto k : kinds)
      for (int i = 1; i < n; ++i) {
        const NamedRelation r{std::string("coassociativity ") + kind_name(k) + " i=" + std::to_string(i),
                              left->image(k, i, 0, 0, z) - right->image(k, i, 0, 0, z)};
        rep.checks.push_back(run_relation(F, r, cfg));
      }
  }
  rep.elapsed = seconds_since(t0);
  return rep;
}

UniRat vecrep_eigen(int n, CurrentKind kind, int i, int j, const Tweaks& tw) {
  if (i < 1 || i >= n || j < 0 || j >= n) throw std::domain_error("vector representation index out of range");
  const auto qp = [](std::int64_t e) { return QRat::q_pow(e); };
  const std::int64_t t = tw.get("vec.eigen");
  const long il = i;
  if (kind == CurrentKind::phi) {
    // in x = w/z, expanded at x = 0
    if (j == i - 1) return UniRat({qp(-kTick), -qp((1 - il) * kTick + t)}, {QRat(1), -qp(-il * kTick)});
    if (j == i) return UniRat({qp(kTick), -qp((-il - 1) * kTick + t)}, {QRat(1), -qp(-il * kTick)});
    return UniRat::constant(1);
  }
  if (kind == CurrentKind::psi) {
    // in y = z/w, expanded at y = 0
    if (j == i - 1) return UniRat({qp(kTick), -qp((il - 1) * kTick + t)}, {QRat(1), -qp(il * kTick)});
    if (j == i) return UniRat({qp(-kTick), -qp((il + 1) * kTick + t)}, {QRat(1), -qp(il * kTick)});
    return UniRat::constant(1);
  }
  throw std::domain_error("eigenvalues exist only for phi and psi");
}

std::vector<VecEntry> vecrep_mode(int n, CurrentKind kind, int i, int l, const Tweaks& tw) {
  if (i < 1 || i >= n) throw std::domain_error("vector representation index out of range");
  std::vector<VecEntry> out;
  const QRat c = QRat::q_pow((static_cast<std::int64_t>(i) * kTick + tw.get("vec.delta")) * l);
  switch (kind) {
    case CurrentKind::xp: out.push_back({i - 1, i, c, l}); break;
    case CurrentKind::xm: out.push_back({i, i - 1, c, l}); break;
    case CurrentKind::phi:
    case CurrentKind::psi: {
      // phi(l) = coefficient of w^{-l}: x^{-l} z^{l} with x = w/z; psi likewise with y = z/w
      const int k = kind == CurrentKind::phi ? -l : l;
      if (k < 0) break;
      for (int j = 0; j < n; ++j) {
        const auto e = vecrep_eigen(n, kind, i, j, tw).expand(k + 1);
        const QRat v = e[static_cast<std::size_t>(k)];
        if (!v.is_zero()) out.push_back({j, j, v, l});
      }
      break;
    }
    default: throw std::domain_error("unsupported current on the vector representation");
  }
  return out;
}

namespace {

// 4x4 matrices over rational functions of t = z2/z1 (common factor z1^l implicit).
using Mat = std::vector<std::vector<UniRat>>;

Mat zero_mat() { return Mat(4, std::vector<UniRat>(4)); }
int idx(int a, int b) { return 2 * a + b; }

// eigenvalue of phi/psi(w) on slot `slot` at |j>, with w = q^s z_other substituted (other = the other slot),
// as a function of t; natural = true when the result is in the expansion direction of the formula.
UniRat substituted(CurrentKind kind, int j, int slot, long s, const Tweaks& tw) {
  const UniRat f = vecrep_eigen(2, kind, 1, j, tw);
  const QRat qs = QRat::q_pow(s * kTick);
  // phi: f(w / z_slot); psi: f(z_slot / w)
  if (kind == CurrentKind::phi) return slot == 0 ? f.scale_var(qs) : f.reciprocal_var().scale_var(qs.inv());
  return slot == 1 ? f.scale_var(qs.inv()) : f.reciprocal_var().scale_var(qs);
}

// Modes of the slot-wise coproduct of a generator on V_{z1} (x) V_{z2}; opposite = true for the swapped one.
Mat coproduct_mode(CurrentKind kind, int l, bool opposite, const Tweaks& tw) {
  Mat m = zero_mat();
  const UniRat tl = UniRat::monomial(1, l);  // z2^l = z1^l t^l
  auto add = [&](int r, int c, const UniRat& v) { m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] + v; };
  auto x_entry = [&](CurrentKind k) { return vecrep_mode(2, k, 1, l, tw).front(); };
  // slot roles: the "first" factor of the coproduct formula acts on slot f, the second on slot s
  const int f = opposite ? 1 : 0, s = opposite ? 0 : 1;
  auto slot_mono = [&](int slot) { return slot == 0 ? UniRat::constant(1) : tl; };
  auto put = [&](int slot, int r, int c, int other, const UniRat& v) {
    if (slot == 0) add(idx(r, other), idx(c, other), v);
    else add(idx(other, r), idx(other, c), v);
  };
  switch (kind) {
    case CurrentKind::xp: {
      const VecEntry e = x_entry(kind);
      // x+(w) (x) 1
      for (int o = 0; o < 2; ++o) put(f, e.row, e.col, o, slot_mono(f) * UniRat::constant(e.coef));
      // phi(w) (x) x+(w), w = q z_s
      for (int o = 0; o < 2; ++o) {
        const UniRat ev = substituted(CurrentKind::phi, o, f, 1, tw);
        const UniRat v = slot_mono(s) * UniRat::constant(e.coef) * ev;
        if (s == 1) add(idx(o, e.row), idx(o, e.col), v);
        else add(idx(e.row, o), idx(e.col, o), v);
      }
      break;
    }
    case CurrentKind::xm: {
      const VecEntry e = x_entry(kind);
      // 1 (x) x-(w)
      for (int o = 0; o < 2; ++o) put(s, e.row, e.col, o, slot_mono(s) * UniRat::constant(e.coef));
      // x-(w) (x) psi(w), w = q z_f
      for (int o = 0; o < 2; ++o) {
        const UniRat ev = substituted(CurrentKind::psi, o, s, 1, tw);
        const UniRat v = slot_mono(f) * UniRat::constant(e.coef) * ev;
        if (f == 0) add(idx(e.row, o), idx(e.col, o), v);
        else add(idx(o, e.row), idx(o, e.col), v);
      }
      break;
    }
    case CurrentKind::phi:
    case CurrentKind::psi: {
      // product of the two diagonal series, coefficient of w^{-l}
      const int k = kind == CurrentKind::phi ? -l : l;
      if (k < 0) break;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const auto ea = vecrep_eigen(2, kind, 1, a, tw).expand(k + 1);
          const auto eb = vecrep_eigen(2, kind, 1, b, tw).expand(k + 1);
          // phi: sum c_{k1} d_{k2} z1^{-k1} z2^{-k2} = z1^{-k} sum c_{k1} d_{k2} t^{-k2}
          // psi: sum c_{k1} d_{k2} z1^{k1} z2^{k2} = z1^{k} sum c_{k1} d_{k2} t^{k2}
          UniPoly p(static_cast<std::size_t>(k + 1));
          for (int k2 = 0; k2 <= k; ++k2) p[static_cast<std::size_t>(kind == CurrentKind::phi ? k - k2 : k2)] += ea[static_cast<std::size_t>(k - k2)] * eb[static_cast<std::size_t>(k2)];
          add(idx(a, b), idx(a, b), UniRat(p, {QRat(1)}, kind == CurrentKind::phi ? -k : 0));
        }
      break;
    }
    default: throw std::domain_error("unsupported generator");
  }
  return m;
}

UniRat rmatrix_entry(int a, int b, const Tweaks& tw) {
  const QRat q = QRat::q_pow(kTick + tw.get("rmatrix.entry")), qi = QRat::q_pow(-kTick);
  if (a == b) return UniRat::constant(1);
  // z/w = z1/z2 = 1/t
  if (a == 0) return UniRat({-qi, q}, {QRat(-1), QRat(1)});   // (q t - q^-1)/(t - 1)
  return UniRat({QRat(-1), QRat(1)}, {-q, qi});               // (t - 1)/(q^-1 t - q)
}

std::string mat_pos(int r, int c) {
  return "<" + std::to_string(r / 2) + std::to_string(r % 2) + "| . |" + std::to_string(c / 2) + std::to_string(c % 2) + ">";
}

}  // namespace

SuiteReport verify_rmatrix(int order, int modes, const Tweaks& tw) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = "rmatrix";
  rep.n = 2;
  rep.parameters = {{"order", std::to_string(order)}, {"modes", std::to_string(modes)}};
  std::vector<UniRat> R(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) R[static_cast<std::size_t>(idx(a, b))] = rmatrix_entry(a, b, tw);
  for (auto kind : {CurrentKind::xp, CurrentKind::xm, CurrentKind::phi, CurrentKind::psi})
    for (int l = -modes; l <= modes; ++l) {
      if (kind == CurrentKind::phi && l > 0) continue;
      if (kind == CurrentKind::psi && l < 0) continue;
      Check c{"R D(" + kind_name(kind) + "(" + std::to_string(l) + ")) = D'(...) R", true, "", ""};
      const Mat D = coproduct_mode(kind, l, false, tw), Dp = coproduct_mode(kind, l, true, tw);
      int nonzero = 0;
      for (int r = 0; r < 4 && c.pass; ++r)
        for (int col = 0; col < 4; ++col) {
          const UniRat lhs = R[static_cast<std::size_t>(r)] * D[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
          const UniRat rhs = Dp[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] * R[static_cast<std::size_t>(col)];
          if (!lhs.is_zero()) ++nonzero;
          // exact, then as Laurent series in t up to t^order
          const bool series_eq = lhs.is_zero() ? rhs.is_zero()
                                               : !rhs.is_zero() && lhs.low() == rhs.low() &&
                                                     lhs.expand(order - lhs.low()) == rhs.expand(order - rhs.low());
          if (lhs != rhs || !series_eq) {
            c.pass = false;
            c.witness = "entry " + mat_pos(r, col) + ": " + lhs.str("t") + " vs " + rhs.str("t");
            break;
          }
        }
      c.detail = std::to_string(nonzero) + " nonzero entries";
      rep.checks.push_back(std::move(c));
    }
  rep.elapsed = seconds_since(t0);
  return rep;
}

}  // namespace qv
