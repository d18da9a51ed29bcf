// qvertex: verification suites, correlators and operator dumps.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvertex/designator.hpp"
#include "qvertex/fock.hpp"
#include "qvertex/intertwiners.hpp"
#include "qvertex/uq_algebra.hpp"

namespace {

using qv::SuiteReport;
using json = nlohmann::ordered_json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json to_json(const SuiteReport& r) {
  json j;
  j["suite"] = r.suite;
  j["n"] = r.n;
  json p = json::object();
  for (const auto& [k, v] : r.parameters) p[k] = v;
  j["parameters"] = p;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj;
    cj["name"] = c.name;
    cj["status"] = c.pass ? "pass" : "fail";
    if (!c.pass) cj["witness"] = c.witness;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["elapsed"] = r.elapsed;
  return j;
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    if (c.pass) {
      os << "PASS " << r.suite << ": " << c.name;
    } else {
      ++failed;
      os << "FAIL " << r.suite << ": " << c.name << "\n     " << c.witness;
    }
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << "\n";
  }
  os << r.suite << " n=" << r.n << ": " << r.checks.size() - failed << "/" << r.checks.size() << " passed ("
     << r.elapsed << " s)\n";
  return os.str();
}

void check_n(int n) {
  if (n < 2) throw UsageError("--n must be at least 2");
  if (n > 6) throw UsageError("--n above 6 is not representable (q-exponents are kept in units of 1/120)");
  if (n >= 5) std::cerr << "warning: n=" << n << " enumerates large bases; expect long runtimes\n";
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

struct VerifyOpts {
  std::vector<std::string> suites;
  int n = 2, degree = 2, window = 2, order = 10, modes = 20, rmodes = 3, threads = 0;
  std::optional<int> sector;
  std::string out, format = "json";
};

std::vector<SuiteReport> run_verify(const VerifyOpts& o) {
  check_n(o.n);
  if (o.degree < 0 || o.window < 0) throw UsageError("--degree and --window must be non-negative");
  if (o.order < 1 || o.modes < 1) throw UsageError("--order and --modes must be positive");
  if (o.sector && (*o.sector < 0 || *o.sector >= o.n)) throw UsageError("--sector out of range");
  std::vector<SuiteReport> reps;
  for (const auto& s : o.suites) {
    if (s == "def21") {
      if (o.sector) {
        reps.push_back(qv::verify_def21(o.n, *o.sector, o.degree, o.window, o.threads));
      } else {
        for (int sec = 0; sec < o.n; ++sec) reps.push_back(qv::verify_def21(o.n, sec, o.degree, o.window, o.threads));
      }
    } else if (s == "hopf") {
      reps.push_back(qv::verify_hopf(o.n, o.degree, o.window, o.threads));
    } else if (s == "rmatrix") {
      if (o.n != 2) throw UsageError("the R-matrix suite is defined for n=2 only");
      reps.push_back(qv::verify_rmatrix(o.order, o.rmodes));
    } else if (s == "heisenberg") {
      reps.push_back(qv::verify_heisenberg(o.n, 6, o.degree));
    } else if (s == "normalization") {
      reps.push_back(qv::verify_normalization(o.n));
    } else if (s == "ope") {
      reps.push_back(qv::verify_ope(o.n, qv::all_ope_suites(), o.degree, o.window, o.threads));
    } else if (s.rfind("ope.", 0) == 0) {
      auto which = qv::parse_suite(s.substr(4));
      if (!which) throw UsageError("unknown OPE suite " + s);
      reps.push_back(qv::verify_ope(o.n, {*which}, o.degree, o.window, o.threads));
    } else if (s == "thm35") {
      reps.push_back(qv::verify_thm35_suite(o.n, o.modes));
    } else if (s == "correlators") {
      if (o.n != 2) throw UsageError("the registered correlators are sl_2 (n=2) only");
      reps.push_back(qv::verify_correlators(o.order));
    } else {
      throw UsageError("unknown suite " + s);
    }
  }
  return reps;
}

int cmd_verify(const VerifyOpts& o) {
  const auto reps = run_verify(o);
  bool pass = true;
  for (const auto& r : reps) pass = pass && r.pass();
  std::string text;
  if (o.format == "json") {
    json j;
    j["status"] = pass ? "pass" : "fail";
    j["reports"] = json::array();
    for (const auto& r : reps) j["reports"].push_back(to_json(r));
    text = j.dump(2) + "\n";
  } else {
    for (const auto& r : reps) text += to_text(r);
    text += pass ? "all suites pass\n" : "verification failed\n";
  }
  emit(text, o.out);
  return pass ? kPass : kFail;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

int cmd_corr(int n, const std::string& ops, int order, const std::string& format, const std::string& out) {
  check_n(n);
  if (order < 1) throw UsageError("--order must be positive");
  const qv::Fock F(n);
  std::vector<qv::VOInsertion> ins;
  int k = 1;
  for (const auto& d : split(ops, ',')) {
    auto p = qv::parse_vo_designator(n, d);
    if (!p) throw UsageError("bad operator designator '" + d + "'");
    ins.push_back({qv::vo(F, p->family, p->i, p->j), p->var.empty() ? "z" + std::to_string(k) : p->var});
    ++k;
  }
  if (ins.empty()) throw UsageError("--ops is empty");
  const qv::Correlator c = qv::correlator(F, ins, order);
  std::optional<qv::Correlator> known;
  if (n == 2) known = qv::known_correlator(ins, order);
  bool match = true;
  if (known) match = known->lead_power == c.lead_power && known->series.terms() == c.series.terms();

  std::string text;
  if (format == "json") {
    auto series_json = [](const qv::Correlator& x) {
      json j;
      j["prefactor"] = x.left_var + "^" + qv::rat_short(x.lead_power);
      j["variable"] = x.series.var();
      j["order"] = qv::rat_short(x.series.order());
      json t = json::array();
      for (const auto& [e, v] : x.series.terms()) t.push_back({{"exponent", qv::rat_short(e)}, {"coefficient", v.str()}});
      j["terms"] = t;
      return j;
    };
    json j;
    j["ops"] = ops;
    j["computed"] = series_json(c);
    if (known) {
      j["formula"] = series_json(*known);
      j["verdict"] = match ? "match" : "mismatch";
    }
    text = j.dump(2) + "\n";
  } else {
    text = "computed: " + c.dump();
    if (known) {
      text += "formula:  " + known->dump();
      text += match ? "verdict: match\n" : "verdict: mismatch\n";
    }
  }
  emit(text, out);
  return match ? kPass : kFail;
}

int cmd_dump(int n, const std::string& op) {
  check_n(n);
  const qv::Fock F(n);
  if (auto c = qv::parse_current_designator(n, op)) {
    std::cout << qv::fj_current(F, c->kind, c->i).dump();
    return kPass;
  }
  if (auto p = qv::parse_vo_designator(n, op)) {
    const qv::VOComponent v = qv::vo(F, p->family, p->i, p->j);
    const qv::VOConstant k = qv::vo_constant(n, p->family, p->i, p->j);
    std::cout << "F_" << v.source(n) << " -> F_" << v.target(n) << "\n";
    std::cout << "constant " << k.value.str() << " z^" << qv::rat_short(k.zpow) << "\n";
    std::cout << v.tmpl.dump();
    return kPass;
  }
  throw UsageError("unknown operator designator '" + op + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the level-1 bosonization and its vertex operators"};
  app.require_subcommand(1);

  VerifyOpts vo;
  std::string suites;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify
      ->add_option("--suite", suites,
                   "comma-separated: def21,hopf,rmatrix,heisenberg,normalization,ope,ope.<typeI|typeII|dualI|dualII|locality>,"
                   "thm35,correlators")
      ->required();
  verify->add_option("--n", vo.n, "rank parameter of sl_n");
  verify->add_option("--degree", vo.degree, "maximal boson degree of basis states");
  verify->add_option("--window", vo.window, "mode window");
  verify->add_option("--order", vo.order, "series order (rmatrix, correlators)");
  verify->add_option("--modes", vo.modes, "mode coefficients compared in template equalities (thm35)");
  verify->add_option("--rmodes", vo.rmodes, "generator modes |l| checked by the R-matrix suite");
  verify->add_option("--sector", vo.sector, "Fock sector for def21 (default: all)");
  verify->add_option("--threads", vo.threads, "worker threads (default: QVERTEX_THREADS or hardware)");
  verify->add_option("--out", vo.out, "write the report to a file");
  verify->add_option("--format", vo.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  int cn = 2, corder = 8;
  std::string cops, cformat = "text", cout_path;
  auto* corr = app.add_subcommand("corr", "vacuum expectation value of a product of vertex operators");
  corr->add_option("--n", cn, "rank parameter of sl_n");
  corr->add_option("--ops", cops, "comma-separated designators, e.g. PhiI:0:1:j=1@z2")->required();
  corr->add_option("--order", corder, "series order");
  corr->add_option("--out", cout_path, "write the result to a file");
  corr->add_option("--format", cformat, "json or text")->check(CLI::IsMember({"json", "text"}));

  int dn = 2;
  std::string dop;
  auto* dump = app.add_subcommand("dump", "print the canonical form of an operator");
  dump->add_option("--n", dn, "rank parameter of sl_n");
  dump->add_option("--op", dop, "designator: x+:i, x-:i, phi:i, psi:i or family:a:b[:j=J]")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) {
      vo.suites = split(suites, ',');
      if (vo.suites.empty()) throw UsageError("--suite is empty");
      return cmd_verify(vo);
    }
    if (*corr) return cmd_corr(cn, cops, corder, cformat, cout_path);
    if (*dump) return cmd_dump(dn, dop);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
