#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qvertex/eval.hpp"
#include "qvertex/report.hpp"
#include "qvertex/uq_algebra.hpp"

namespace qv {

/// Phi (type I), Psi (type II) and their duals.
enum class VOFamily { I, II, dual_I, dual_II };

/// "PhiI", "PsiII", "PhiI*", "PsiII*"
std::string family_name(VOFamily f);
std::optional<VOFamily> parse_family(const std::string& s);
bool is_dual(VOFamily f);

/// Component j of the vertex operator with superscript (i, i+1), or (i+1, i)
/// for the duals.
struct VOComponent {
  VOFamily family = VOFamily::I;
  int i = 0;
  int j = 0;
  VertexTemplate tmpl;

  int source(int n) const { return is_dual(family) ? i : (i + 1) % n; }
  int target(int n) const { return is_dual(family) ? (i + 1) % n : i; }
};

/// Normalization constant: value * z^zpow.
struct VOConstant {
  Scalar value;
  Rat zpow;
};
VOConstant vo_constant(int n, VOFamily f, int i, int j, const Tweaks& tw = {});

VOComponent vo(const Fock& F, VOFamily f, int i, int j, const Tweaks& tw = {});

/// <target vacuum| V_i(z) |source vacuum> as value * z^zpow.
VOConstant vacuum_matrix_element(const Fock& F, const VOComponent& v);

SuiteReport verify_normalization(int n, const Tweaks& tw = {});

enum class OPESuite { typeI, typeII, dualI, dualII, locality };
std::string suite_name(OPESuite s);
std::optional<OPESuite> parse_suite(const std::string& s);
const std::vector<OPESuite>& all_ope_suites();

/// One line of an OPE list for fixed (sector, current index, component).
/// Either an expression that must vanish on matrix elements, or a pair of
/// operators that must commute exactly as templates.
struct OPECase {
  std::string id;
  OPESuite suite = OPESuite::typeI;
  int ket_sector = 0;
  bool template_level = false;
  NamedRelation relation{"", Expr({"z", "w"})};
  VertexTemplate left, right;  // template-level: left(z or w) right(...) in product order
};

std::vector<OPECase> ope_cases(const Fock& F, OPESuite suite, const Tweaks& tw = {});

/// Checks left * right == right * left with no contraction at all.
Check commute_exactly(const Fock& F, const std::string& name, const VertexTemplate& left, const VertexTemplate& right);

SuiteReport verify_ope(int n, const std::vector<OPESuite>& suites, int degree, int window, int threads = 0,
                       const Tweaks& tw = {});

struct VOInsertion {
  VOComponent op;
  std::string var;
};

/// <Lambda| V_1(z_1) V_2(z_2) |Lambda> = z_1^lead_power * series(z_2/z_1).
struct Correlator {
  std::string left_var, right_var;
  Rat lead_power{0};
  FracLaurentSeries series{"x", Rat(0)};
  std::string dump() const;
};

/// Vacuum expectation of a product of vertex operators in the source sector of
/// the rightmost one; `order` coefficients past the leading power. Products
/// with nonzero total charge give zero; otherwise only two-point functions are
/// expanded.
Correlator correlator(const Fock& F, const std::vector<VOInsertion>& ops, int order);

/// The sl_2 product formula registered for a two-point function, if any.
std::optional<Correlator> known_correlator(const std::vector<VOInsertion>& ops, int order, const Tweaks& tw = {});

SuiteReport verify_correlators(int order, const Tweaks& tw = {});

/// Normal-ordering identities (1)..(4) for every current index, K mode coefficients.
TemplateComparison thm35_case(const Fock& F, int which, int i, int K, const Tweaks& tw = {});
bool verify_thm35(int n, int which, int K, const Tweaks& tw = {});
SuiteReport verify_thm35_suite(int n, int K, const Tweaks& tw = {});

}  // namespace qv
