#include "qvertex/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace qv {

Expr Expr::one(std::vector<std::string> vars) {
  Expr e(std::move(vars));
  Term t;
  t.mono.assign(e.vars_.size(), Rat(0));
  e.terms_.push_back(std::move(t));
  return e;
}

Expr Expr::op(std::vector<std::string> vars, int slot, std::shared_ptr<const BoundTemplate> t, int var) {
  Expr e = one(std::move(vars));
  if (var < 0 || var >= e.nvars()) throw std::domain_error("operator variable out of range");
  e.terms_[0].word.push_back(OpRef{slot, std::move(t), var});
  return e;
}

Expr& Expr::operator+=(const Expr& o) {
  if (o.vars_ != vars_) throw std::domain_error("adding expressions in different variables");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.vars_ != b.vars_) throw std::domain_error("multiplying expressions in different variables");
  Expr r(a.vars_);
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Term t = x;
      t.coef *= y.coef;
      for (std::size_t v = 0; v < t.mono.size(); ++v) t.mono[v] += y.mono[v];
      t.series.insert(t.series.end(), y.series.begin(), y.series.end());
      t.deltas.insert(t.deltas.end(), y.deltas.begin(), y.deltas.end());
      t.word.insert(t.word.end(), y.word.begin(), y.word.end());
      r.terms_.push_back(std::move(t));
    }
  return r;
}

Expr Expr::times(const Scalar& c) const {
  Expr r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Expr Expr::times_monomial(const Scalar& c, const std::vector<Rat>& exps) const {
  if (static_cast<int>(exps.size()) != nvars()) throw std::domain_error("monomial arity");
  Expr r = times(c);
  for (auto& t : r.terms_)
    for (std::size_t v = 0; v < exps.size(); ++v) t.mono[v] += exps[v];
  return r;
}

Expr Expr::times_rational(const UniRat& f, const std::vector<long>& rho, std::optional<Direction> dir) const {
  if (!dir) throw ValidationError("rational factor without expansion direction");
  if (static_cast<int>(rho.size()) != nvars()) throw std::domain_error("rational factor arity");
  SeriesFactor s;
  s.rho = rho;
  if (*dir == Direction::at_zero) {
    s.f = std::make_shared<LazySeries>(f);
  } else {
    s.f = std::make_shared<LazySeries>(f.reciprocal_var());
    for (auto& x : s.rho) x = -x;
  }
  Expr r = *this;
  for (auto& t : r.terms_) t.series.push_back(s);
  return r;
}

Expr Expr::times_delta(const QRat& mu, const std::vector<long>& rho) const {
  if (static_cast<int>(rho.size()) != nvars()) throw std::domain_error("delta factor arity");
  Expr r = *this;
  for (auto& t : r.terms_) t.deltas.push_back(DeltaFactor{mu, rho});
  return r;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QVERTEX_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<FockBasis>> tensor_kets(const Fock& F, const std::vector<int>& sectors, int degree) {
  const int r = F.n() - 1;
  std::vector<WeightVec> roots;
  std::vector<int> c(static_cast<std::size_t>(r), -1);
  while (true) {
    WeightVec w(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) w += Rat(c[static_cast<std::size_t>(i)]) * F.lattice().alpha(i + 1);
    roots.push_back(w);
    int p = 0;
    while (p < r && c[static_cast<std::size_t>(p)] == 1) c[static_cast<std::size_t>(p++)] = -1;
    if (p == r) break;
    ++c[static_cast<std::size_t>(p)];
  }
  std::vector<std::vector<FockBasis>> out{{}};
  for (int s : sectors) {
    const auto b = F.basis(s, degree, roots);
    std::vector<std::vector<FockBasis>> next;
    for (const auto& pre : out) {
      int d0 = 0;
      for (const auto& x : pre) d0 += x.mono.degree();
      for (const auto& x : b) {
        if (d0 + x.mono.degree() > degree) continue;
        auto v = pre;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

constexpr long kInf = std::numeric_limits<long>::max() / 8;

bool is_neg_inf(long v) { return v <= -kInf; }
bool is_pos_inf(long v) { return v >= kInf; }

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
long ceil_div(long a, long b) { return -floor_div(-a, b); }

// lo <= sum a_j x_j <= hi
struct Lin {
  std::vector<std::pair<int, long>> a;
  long lo = -kInf, hi = kInf;
};

struct Box {
  std::vector<long> lo, hi;
};

bool propagate(const std::vector<Lin>& cs, Box& b) {
  for (int iter = 0; iter < 200; ++iter) {
    bool changed = false;
    for (const auto& c : cs) {
      // finite parts and counts of infinite contributions to min / max
      long mn = 0, mx = 0;
      int mn_inf = 0, mx_inf = 0;
      std::vector<std::pair<long, long>> contrib;  // (min, max) per entry, +-kInf for infinite
      contrib.reserve(c.a.size());
      for (const auto& [j, a] : c.a) {
        const long lo = b.lo[static_cast<std::size_t>(j)], hi = b.hi[static_cast<std::size_t>(j)];
        long cmin, cmax;
        if (a > 0) {
          cmin = is_neg_inf(lo) ? -kInf : a * lo;
          cmax = is_pos_inf(hi) ? kInf : a * hi;
        } else {
          cmin = is_pos_inf(hi) ? -kInf : a * hi;
          cmax = is_neg_inf(lo) ? kInf : a * lo;
        }
        contrib.emplace_back(cmin, cmax);
        if (is_neg_inf(cmin)) ++mn_inf; else mn += cmin;
        if (is_pos_inf(cmax)) ++mx_inf; else mx += cmax;
      }
      if (mn_inf == 0 && !is_pos_inf(c.hi) && mn > c.hi) return false;
      if (mx_inf == 0 && !is_neg_inf(c.lo) && mx < c.lo) return false;
      for (std::size_t p = 0; p < c.a.size(); ++p) {
        const auto [j, a] = c.a[p];
        const auto [cmin, cmax] = contrib[p];
        // rest = sum - own contribution
        const bool rmin_fin = mn_inf - (is_neg_inf(cmin) ? 1 : 0) == 0;
        const bool rmax_fin = mx_inf - (is_pos_inf(cmax) ? 1 : 0) == 0;
        const long rmin = rmin_fin ? mn - (is_neg_inf(cmin) ? 0 : cmin) : 0;
        const long rmax = rmax_fin ? mx - (is_pos_inf(cmax) ? 0 : cmax) : 0;
        // a x in [lo - rmax, hi - rmin]
        long nlo = -kInf, nhi = kInf;
        const bool has_lo = rmax_fin && !is_neg_inf(c.lo), has_hi = rmin_fin && !is_pos_inf(c.hi);
        if (a > 0) {
          if (has_lo) nlo = ceil_div(c.lo - rmax, a);
          if (has_hi) nhi = floor_div(c.hi - rmin, a);
        } else {
          if (has_hi) nlo = ceil_div(c.hi - rmin, a);
          if (has_lo) nhi = floor_div(c.lo - rmax, a);
        }
        auto& lo = b.lo[static_cast<std::size_t>(j)];
        auto& hi = b.hi[static_cast<std::size_t>(j)];
        if (nlo > lo) lo = nlo, changed = true;
        if (nhi < hi) hi = nhi, changed = true;
        if (lo > hi) return false;
      }
    }
    if (!changed) break;
  }
  return true;
}

using TensorTerms = std::map<std::vector<FockBasis>, Scalar>;

void add_tensor(TensorTerms& t, const std::vector<FockBasis>& b, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t.try_emplace(b, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) t.erase(it);
}

std::string basis_str(const std::vector<FockBasis>& v) {
  std::ostringstream os;
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (s) os << " (x) ";
    os << v[s].mono.str() << " e^[";
    for (std::size_t i = 0; i < v[s].lat.size(); ++i) os << (i ? "," : "") << v[s].lat[i];
    os << "]";
  }
  return os.str();
}

std::string exps_str(const std::vector<std::string>& vars, const std::vector<Rat>& e) {
  std::ostringstream os;
  for (std::size_t v = 0; v < e.size(); ++v) os << (v ? " " : "") << vars[v] << "^(" << rat_short(e[v]) << ")";
  return os.str();
}

Rat ceil_rat(const Rat& r) { return Rat(-floor_rat(-r)); }

struct KetEval {
  const Fock& F;
  const Expr& e;
  const EvalConfig& cfg;
  std::map<std::vector<Rat>, TensorTerms> acc;

  void term(const Term& t, const std::vector<FockBasis>& ket, const std::vector<Rat>* base_in,
            std::vector<Rat>& base_out) {
    const int nv = e.nvars();
    const int nops = static_cast<int>(t.word.size());
    const int nser = static_cast<int>(t.series.size());
    const int ndel = static_cast<int>(t.deltas.size());
    const int nx = nops + nser + ndel;
    // constant exponent part: monomial plus zero-mode eigenvalues along the word
    std::vector<Rat> cst = t.mono;
    std::vector<FreeVec> lat;
    for (const auto& b : ket) lat.push_back(b.lat);
    for (int a = 0; a < nops; ++a) {
      const OpRef& o = t.word[static_cast<std::size_t>(nops - 1 - a)];
      if (o.slot < 0 || o.slot >= static_cast<int>(ket.size())) throw ValidationError("operator slot out of range");
      auto& l = lat[static_cast<std::size_t>(o.slot)];
      cst[static_cast<std::size_t>(o.var)] += o.op->zexp(l);
      FreeVec nl = l;
      const auto& sh = o.op->shift_free();
      for (std::size_t i = 0; i < nl.size(); ++i) nl[i] += sh[i];
      l = std::move(nl);
    }
    if (!base_in) base_out = cst;
    const std::vector<Rat>& base = base_in ? *base_in : base_out;

    std::vector<Lin> cs;
    Box box{std::vector<long>(static_cast<std::size_t>(nx), -kInf), std::vector<long>(static_cast<std::size_t>(nx), kInf)};
    for (int v = 0; v < nv; ++v) {
      Lin c;
      for (int a = 0; a < nops; ++a)
        if (t.word[static_cast<std::size_t>(nops - 1 - a)].var == v) c.a.emplace_back(a, 1);
      for (int f = 0; f < nser; ++f)
        if (long r = t.series[static_cast<std::size_t>(f)].rho[static_cast<std::size_t>(v)]) c.a.emplace_back(nops + f, r);
      for (int g = 0; g < ndel; ++g)
        if (long r = t.deltas[static_cast<std::size_t>(g)].rho[static_cast<std::size_t>(v)])
          c.a.emplace_back(nops + nser + g, r);
      const Rat lo = base[static_cast<std::size_t>(v)] - Rat(cfg.window) - cst[static_cast<std::size_t>(v)];
      const Rat hi = base[static_cast<std::size_t>(v)] + Rat(cfg.window) - cst[static_cast<std::size_t>(v)];
      c.lo = static_cast<long>(ceil_rat(lo).numerator());
      c.hi = static_cast<long>(floor_rat(hi));
      if (c.a.empty()) {
        // the exponent is fixed; it must be an integer offset inside the window
        if (c.lo > 0 || c.hi < 0) return;
        continue;
      }
      cs.push_back(std::move(c));
    }
    int deg0 = 0;
    std::vector<int> sdeg;
    for (const auto& b : ket) {
      sdeg.push_back(b.mono.degree());
      deg0 += sdeg.back();
    }
    Lin fin;
    for (int a = 0; a < nops; ++a) {
      const OpRef& o = t.word[static_cast<std::size_t>(nops - 1 - a)];
      if (!o.op->annihilates()) box.lo[static_cast<std::size_t>(a)] = 0;
      if (!o.op->creates()) box.hi[static_cast<std::size_t>(a)] = 0;
      Lin pre;
      for (int a2 = 0; a2 <= a; ++a2)
        if (t.word[static_cast<std::size_t>(nops - 1 - a2)].slot == o.slot) pre.a.emplace_back(a2, 1);
      pre.lo = -sdeg[static_cast<std::size_t>(o.slot)];
      cs.push_back(std::move(pre));
      fin.a.emplace_back(a, 1);
    }
    if (deg0 > cfg.degree) return;
    if (nops > 0) {
      fin.hi = cfg.degree - deg0;
      cs.push_back(std::move(fin));
    }
    for (int f = 0; f < nser; ++f) box.lo[static_cast<std::size_t>(nops + f)] = t.series[static_cast<std::size_t>(f)].f->low();
    if (!propagate(cs, box)) return;

    TensorTerms start;
    start.emplace(ket, t.coef);
    walk(t, cs, box, 0, start, cst);
  }

  void walk(const Term& t, const std::vector<Lin>& cs, const Box& box, int a, const TensorTerms& st,
            const std::vector<Rat>& cst) {
    const int nops = static_cast<int>(t.word.size());
    const int nx = static_cast<int>(box.lo.size());
    if (a == nx) {
      finish(t, box, st, cst);
      return;
    }
    const long lo = box.lo[static_cast<std::size_t>(a)], hi = box.hi[static_cast<std::size_t>(a)];
    if (is_neg_inf(lo) || is_pos_inf(hi)) throw ValidationError("unbounded sum: a relation term has infinitely many contributions");
    for (long x = lo; x <= hi; ++x) {
      Box b = box;
      b.lo[static_cast<std::size_t>(a)] = b.hi[static_cast<std::size_t>(a)] = x;
      if (!propagate(cs, b)) continue;
      if (a < nops) {
        const OpRef& o = t.word[static_cast<std::size_t>(nops - 1 - a)];
        TensorTerms next;
        for (const auto& [vec, c] : st) {
          FockTerms out;
          o.op->apply(vec[static_cast<std::size_t>(o.slot)], c, static_cast<int>(x), out);
          for (const auto& [fb, fc] : out) {
            auto v = vec;
            v[static_cast<std::size_t>(o.slot)] = fb;
            add_tensor(next, v, fc);
          }
        }
        if (next.empty()) continue;
        walk(t, cs, b, a + 1, next, cst);
      } else {
        walk(t, cs, b, a + 1, st, cst);
      }
    }
  }

  void finish(const Term& t, const Box& box, const TensorTerms& st, const std::vector<Rat>& cst) {
    const int nops = static_cast<int>(t.word.size());
    const int nser = static_cast<int>(t.series.size());
    std::vector<Rat> E = cst;
    Scalar c(1);
    for (int a = 0; a < nops; ++a)
      E[static_cast<std::size_t>(t.word[static_cast<std::size_t>(nops - 1 - a)].var)] += Rat(box.lo[static_cast<std::size_t>(a)]);
    for (std::size_t f = 0; f < t.series.size(); ++f) {
      const long k = box.lo[static_cast<std::size_t>(nops) + f];
      c *= Scalar(t.series[f].f->coeff(static_cast<int>(k)));
      for (std::size_t v = 0; v < E.size(); ++v) E[v] += Rat(k * t.series[f].rho[v]);
    }
    for (std::size_t g = 0; g < t.deltas.size(); ++g) {
      const long k = box.lo[static_cast<std::size_t>(nops + nser) + g];
      c *= Scalar(t.deltas[g].mu.pow(k));
      for (std::size_t v = 0; v < E.size(); ++v) E[v] += Rat(k * t.deltas[g].rho[v]);
    }
    if (c.is_zero()) return;
    auto& cell = acc[E];
    for (const auto& [vec, x] : st) add_tensor(cell, vec, x * c);
  }
};

struct KetResult {
  std::size_t cells = 0;
  std::optional<Witness> witness;
  std::exception_ptr error;
};

}  // namespace

EvalReport eval_relation(const Fock& F, const Expr& e, const EvalConfig& cfg) {
  if (cfg.degree < 0 || cfg.window < 0) throw ValidationError("negative degree or window");
  for (const auto& t : e.terms()) {
    for (const auto& o : t.word) {
      if (o.slot < 0 || o.slot >= static_cast<int>(cfg.sectors.size())) throw ValidationError("operator slot out of range");
      if (o.op->fock().n() != F.n()) throw ValidationError("operator for a different n");
    }
    for (const auto& s : t.series)
      if (std::all_of(s.rho.begin(), s.rho.end(), [](long r) { return r == 0; }))
        throw ValidationError("series factor in a constant monomial");
  }
  const auto kets = tensor_kets(F, cfg.sectors, cfg.degree);
  std::vector<KetResult> res(kets.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < kets.size(); i = next++) {
      KetResult& r = res[i];
      try {
        KetEval ev{F, e, cfg, {}};
        std::vector<Rat> base;
        bool first = true;
        try {
          for (const auto& t : e.terms()) {
            ev.term(t, kets[i], first ? nullptr : &base, base);
            first = false;
          }
        } catch (const UnsupportedSum& u) {
          r.witness = Witness{basis_str(kets[i]), "", "", std::string("unsupported sum: ") + u.what()};
          continue;
        }
        r.cells = ev.acc.size();
        for (const auto& [E, tt] : ev.acc) {
          if (tt.empty()) continue;
          const auto& [bra, val] = *tt.begin();
          r.witness = Witness{basis_str(kets[i]), exps_str(e.vars(), E), basis_str(bra), val.str()};
          break;
        }
      } catch (...) {
        r.error = std::current_exception();
      }
    }
  };
  const int nt = std::min<int>(resolve_threads(cfg.threads), static_cast<int>(std::max<std::size_t>(1, kets.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < nt; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  EvalReport rep;
  rep.kets = kets.size();
  for (auto& r : res) {
    if (r.error) std::rethrow_exception(r.error);
    rep.cells += r.cells;
    if (r.witness && !rep.witness) {
      rep.pass = false;
      rep.witness = r.witness;
    }
  }
  return rep;
}

}  // namespace qv
