// Acceptance run: one line per criterion on stdout, failure witnesses on stderr.
// Exit status is nonzero when a check fails that is not on the list of known
// discrepancies below; known ones still print FAIL.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qvertex/fock.hpp"
#include "qvertex/intertwiners.hpp"
#include "qvertex/uq_algebra.hpp"

using namespace qv;

namespace {

struct Known {
  std::string suite;
  int n;
  std::function<bool(const std::string&)> match;
  std::string why;
  mutable int hits = 0;
};

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

const std::vector<Known>& known() {
  static const std::vector<Known> k{
      {"normalization", 3, [](const std::string& name) { return contains(name, "_0^0("); },
       "i=0 vacuum matrix elements are -1 at n=3"},
      {"ope", 3,
       [](const std::string& name) {
         for (const char* p : {"PhiI_0 x+_1 ", "PhiI_1 x-_1 ", "PsiII_0 x+_1 ", "PhiI*_0 x-_1 ", "PsiII*_1 x+_1 ",
                               "PsiII*_0 x-_1 "})
           if (contains(name, std::string(": ") + p)) return true;
         return false;
       },
       "delta terms of the i=1 lines carry the opposite sign at n=3"},
      {"correlators", 2, [](const std::string& name) { return name == "<v, PhiI_1^(0,1)(z2) PhiI_0^(1,0)(z1), v>"; },
       "second sl_2 correlator has no (z1/z2)^(1/2) prefactor"},
  };
  return k;
}

const Known* explain(const SuiteReport& r, const Check& c) {
  for (const auto& k : known())
    if (k.suite == r.suite && k.n == r.n && k.match(c.name)) {
      ++k.hits;
      return &k;
    }
  return nullptr;
}

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void add(const SuiteReport& r) {
    elapsed_ += r.elapsed;
    for (const auto& c : r.checks) {
      ++checks_;
      if (c.pass) continue;
      ++failed_;
      if (const Known* k = explain(r, c)) {
        reasons_.push_back(k->why);
        std::cerr << "[" << id_ << "] known: " << r.suite << " n=" << r.n << " " << c.name << "\n";
      } else {
        ++unexplained_;
        std::cerr << "[" << id_ << "] FAIL " << r.suite << " n=" << r.n << " " << c.name << "\n    " << c.witness << "\n";
      }
    }
  }
  void add_check(const std::string& name, bool pass, const std::string& witness = "") {
    SuiteReport r;
    r.suite = "criterion" + std::to_string(id_);
    r.checks.push_back({name, pass, witness, ""});
    add(r);
  }

  bool acceptable() const { return unexplained_ == 0; }

  void print() const {
    std::ostringstream os;
    os << "criterion " << id_ << " " << (failed_ == 0 ? "PASS" : "FAIL") << ": " << title_ << " (" << checks_ - failed_ << "/"
       << checks_ << " checks";
    char buf[32];
    std::snprintf(buf, sizeof buf, ", %.1f s)", elapsed_);
    os << buf;
    if (failed_ > 0) {
      std::vector<std::string> uniq;
      for (const auto& w : reasons_)
        if (std::find(uniq.begin(), uniq.end(), w) == uniq.end()) uniq.push_back(w);
      if (unexplained_ > 0) os << "; " << unexplained_ << " unexpected failures";
      for (const auto& w : uniq) os << "; known: " << w;
    }
    std::cout << os.str() << std::endl;
  }

 private:
  int id_;
  std::string title_;
  std::size_t checks_ = 0, failed_ = 0, unexplained_ = 0;
  double elapsed_ = 0;
  std::vector<std::string> reasons_;
};

struct Mutation {
  std::string tweak;
  std::int64_t ticks;
  std::string target;
  std::function<SuiteReport(const Tweaks&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> all;

  {
    Criterion c(1, "defining relations, n=2 at (3,3) and n=3 at (2,2), every sector");
    for (int s = 0; s < 2; ++s) c.add(verify_def21(2, s, 3, 3));
    for (int s = 0; s < 3; ++s) c.add(verify_def21(3, s, 2, 2));
    c.print();
    all.push_back(c);
  }
  {
    Criterion c(2, "boson commutators and dual bosons, n=2..4, |k|<=6");
    for (int n = 2; n <= 4; ++n) c.add(verify_heisenberg(n, 6, 2));
    c.print();
    all.push_back(c);
  }
  {
    Criterion c(3, "Hopf structure on F_0 (x) F_0, n=2 at (2,2)");
    c.add(verify_hopf(2, 2, 2));
    c.print();
    all.push_back(c);
  }
  {
    Criterion c(4, "R-matrix intertwining, n=2, order 10, |l|<=3");
    c.add(verify_rmatrix(10, 3));
    c.print();
    all.push_back(c);
  }
  {
    Criterion c(5, "vertex operators: normalization, OPE lists, locality on window 3");
    for (int n = 2; n <= 3; ++n) c.add(verify_normalization(n));
    const std::vector<OPESuite> lists{OPESuite::typeI, OPESuite::typeII, OPESuite::dualI, OPESuite::dualII};
    c.add(verify_ope(2, lists, 3, 3));
    c.add(verify_ope(3, lists, 2, 2));
    c.add(verify_ope(2, {OPESuite::locality}, 3, 3));
    c.add(verify_ope(3, {OPESuite::locality}, 2, 3));
    c.print();
    all.push_back(c);
  }
  {
    Criterion c(6, "normal-ordering identities, n=2,3, 20 modes");
    for (int n = 2; n <= 3; ++n) c.add(verify_thm35_suite(n, 20));
    c.print();
    all.push_back(c);
  }
  {
    Criterion c(7, "sl_2 correlators to order 8");
    c.add(verify_correlators(8));
    c.print();
    all.push_back(c);
  }
  {
    Criterion c(8, "negative controls: single q-power perturbations");
    const int half = static_cast<int>(kTick / 2);
    auto def21 = [](int n) { return [n](const Tweaks& t) { return verify_def21(n, 0, 1, 1, 1, t); }; };
    auto ope = [](OPESuite s) { return [s](const Tweaks& t) { return verify_ope(2, {s}, 1, 2, 1, t); }; };
    const std::vector<Mutation> muts{
        {"fj.x+.create", half, "def21", def21(2)},
        {"fj.x-.annihilate", half, "def21", def21(2)},
        {"fj.x+.zero", kTick, "def21", def21(2)},
        {"fj.phi.zero", kTick, "def21", def21(2)},
        {"fj.psi.annihilate", kTick, "def21", def21(2)},
        {"def21.quadratic", kTick, "def21", def21(2)},
        {"def21.serre", kTick, "def21", def21(3)},
        {"fock.gram", kTick, "heisenberg", [](const Tweaks& t) { return verify_heisenberg(3, 3, 1, t); }},
        {"fock.astar", kTick, "heisenberg", [](const Tweaks& t) { return verify_heisenberg(3, 3, 1, t); }},
        {"fj.phi.create", kTick, "hopf", [](const Tweaks& t) { return verify_hopf(2, 1, 1, 1, t); }},
        {"vec.eigen", kTick, "rmatrix", [](const Tweaks& t) { return verify_rmatrix(6, 2, t); }},
        {"rmatrix.entry", kTick, "rmatrix", [](const Tweaks& t) { return verify_rmatrix(6, 2, t); }},
        {"vo.create", kTick, "ope typeI", ope(OPESuite::typeI)},
        {"vo.annihilate", kTick, "ope dualI", ope(OPESuite::dualI)},
        {"vo.zero", kTick, "ope typeII", ope(OPESuite::typeII)},
        {"ope.rational", kTick, "ope dualII", ope(OPESuite::dualII)},
        {"ope.delta", kTick, "ope typeI", ope(OPESuite::typeI)},
        {"ope.locality", kTick, "ope locality", ope(OPESuite::locality)},
        {"vo.const", kTick, "normalization", [](const Tweaks& t) { return verify_normalization(2, t); }},
        {"thm35.shift", half, "thm35", [](const Tweaks& t) { return verify_thm35_suite(2, 20, t); }},
    };
    std::map<std::string, SuiteReport> baselines;
    for (const auto& m : muts) {
      auto it = baselines.find(m.target);
      if (it == baselines.end()) {
        it = baselines.emplace(m.target, m.run(Tweaks{})).first;
        const Check* bad = nullptr;
        for (const auto& ck : it->second.checks)
          if (!ck.pass && !explain(it->second, ck)) bad = &ck;
        c.add_check("unperturbed " + m.target, bad == nullptr, bad ? bad->name + ": " + bad->witness : std::string());
      }
      std::set<std::string> failing_before;
      for (const auto& ck : it->second.checks)
        if (!ck.pass) failing_before.insert(ck.name);
      const SuiteReport r = m.run(Tweaks::single(m.tweak, m.ticks));
      const Check* f = nullptr;
      for (const auto& ck : r.checks)
        if (!ck.pass && !ck.witness.empty() && !failing_before.count(ck.name)) {
          f = &ck;
          break;
        }
      c.add_check(m.tweak + " caught by " + m.target, f != nullptr, f ? "" : "perturbation not detected");
      if (f) std::cerr << "[8] " << m.tweak << ": " << f->name << "\n    " << f->witness << "\n";
    }
    c.print();
    all.push_back(c);
  }

  bool ok = true;
  for (const auto& c : all) ok = ok && c.acceptable();
  for (const auto& k : known())
    if (k.hits == 0) {
      std::cout << "known discrepancy no longer observed: " << k.why << std::endl;
      ok = false;
    }
  std::cout << (ok ? "acceptance: every failure is a known discrepancy" : "acceptance: unexpected failures") << std::endl;
  return ok ? 0 : 1;
}
