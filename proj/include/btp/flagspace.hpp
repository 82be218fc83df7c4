#pragma once
// Generalized flag manifolds K/H with H the centralizer of a torus: invariant
// complex structures from root orderings, diagonal invariant metrics, closed-form
// Bismut data, and a branch-and-verify solver for BTP metrics.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "btp/hermgeo.hpp"
#include "btp/rootsys.hpp"

namespace btp {

class FlagError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FlagManifold {
  ChevalleyData ch;
  /// Zero-based simple roots spanning the isotropy root system R_h.
  std::vector<int> isotropy_simple;
  /// Per root index: true for roots of the isotropy algebra.
  std::vector<bool> in_h;
  std::vector<int> h_roots;
  /// All roots of m in the RootSystem order (positive ones first).
  std::vector<int> m_roots;
  /// Roots of m that are positive for the base ordering.
  std::vector<int> m_positive;
  /// Per root index: metric parameter class of +-root, or -1 on R_h.
  std::vector<int> param_class;
  /// Base-positive roots of m grouped by parameter class (ad(h)-orbits).
  std::vector<std::vector<int>> summands;
  /// Per root index: position in m_roots, or -1.
  std::vector<int> m_position;

  const RootSystem& rs() const { return ch.root_system(); }
  int num_classes() const { return static_cast<int>(summands.size()); }
  int complex_dim() const { return static_cast<int>(m_positive.size()); }
  int real_dim() const { return 2 * complex_dim(); }
  std::string name() const;
};

/// Throws FlagError for out-of-range or repeated indices, or when every simple
/// root is listed (then m = 0).
FlagManifold build_flag(const CartanType& ct, const std::vector<int>& isotropy_simple);

/// Invariant complex structure: the set P = R_m^+ of roots with J = +i.
struct FlagComplexStructure {
  /// Per root index: +1 on P, -1 on -P, 0 on R_h.
  std::vector<int> sign;
  std::vector<int> positive;
  bool operator==(const FlagComplexStructure& o) const { return sign == o.sign; }
};

/// P = base-positive roots of m.
FlagComplexStructure standard_complex_structure(const FlagManifold& fm);
/// True when P satisfies both closure conditions.
bool is_integrable(const FlagManifold& fm, const FlagComplexStructure& j);
/// All sign choices on R_m passing the closure conditions. Throws FlagError if
/// |R_m^+| exceeds max_roots.
std::vector<FlagComplexStructure> enumerate_complex_structures(const FlagManifold& fm, int max_roots = 16);

/// Diagonal invariant metric: one positive value per parameter class.
struct FlagMetric {
  std::vector<Q> values;
  const Q& at(const FlagManifold& fm, int root) const { return values[fm.param_class[root]]; }
};

FlagMetric killing_metric(const FlagManifold& fm);
/// Throws FlagError on a wrong count or a non-positive value.
void validate_metric(const FlagManifold& fm, const FlagMetric& g);

/// Kaehler criterion: eps_a g_a + eps_b g_b = eps_{a+b} g_{a+b} whenever a, b, a+b lie in R_m.
bool is_kahler(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g);

/// Model on the basis {E_a : a in m_roots} with g(E_a, E_-a) = -g_a B(E_a, E_-a),
/// J E_a = i eps_a E_a and conj(E_a) = -E_-a.
InfinitesimalModel flag_model(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g);

/// Coefficient c with Lambda(E_a) E_b = c E_{a+b} (zero when a+b is not in R_m).
Q bismut_coefficient(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g, int a, int b);
Q levi_civita_coefficient(const FlagManifold& fm, const FlagMetric& g, int a, int b);
/// Coefficient t with T^b(E_a, E_b) = t E_{a+b}.
Q bismut_torsion_coefficient(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g, int a, int b);

/// Closed forms expressed on the flag_model basis.
NomizuOperator nomizu_bismut_flag(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g);
NomizuOperator nomizu_levi_civita_flag(const FlagManifold& fm, const FlagMetric& g);
Tensor bismut_torsion_flag(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g);

/// nabla^b T^b = 0 from the closed forms; stops at the first nonzero component.
/// The witness lists root indices (c, a, b) of a nonzero (nabla_{E_c} T)(E_a, E_b).
ConditionResult check_btp_flag(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g);

enum class FamilyTag { KahlerFamily, KillingRay, Other };
std::string to_string(FamilyTag tag);

/// Linear subspace of class parameters cut out by homogeneous relations,
/// intersected with the positive cone.
struct MetricFamily {
  /// Each row: coefficients over classes of a relation sum_c r_c g_c = 0.
  std::vector<std::vector<Q>> relations;
  /// Spanning vectors of the solution space.
  std::vector<std::vector<Q>> basis;
  FamilyTag tag = FamilyTag::Other;
  /// Points at which the family was verified exactly.
  std::vector<std::vector<Q>> verified_points;

  int dimension() const { return static_cast<int>(basis.size()); }
  bool contains(const std::vector<Q>& point) const;
  std::string describe(const FlagManifold& fm) const;
};

struct SolverOptions {
  int cap = 12;
  int samples = 10000;
  int max_den = 20;
  int verify_points = 3;
  std::uint64_t seed = 20240601;
};

struct SolverReport {
  std::vector<MetricFamily> families;
  /// Set when |R_m^+| exceeds the cap; families are then not computed.
  bool partial = false;
  int leaves = 0;
  int samples = 0;
  /// Sampled metrics that passed the BTP check.
  int sample_hits = 0;
  /// Sampled BTP metrics lying outside every family (completeness failures).
  std::vector<std::vector<Q>> outside_hits;
  std::string certification;
};

SolverReport solve_btp_metrics(const FlagManifold& fm, const FlagComplexStructure& j, const SolverOptions& options = {});

/// Exact feasibility of {x : A x = 0, x >= 1}; returns such an x or nullopt.
std::optional<std::vector<Q>> positive_solution(const std::vector<std::vector<Q>>& relations, int dim);

struct SimplyLacedReport {
  bool applicable = false;
  bool holds = true;
  int checked = 0;
  std::string note;
};

/// Equality chains (a) and (b) for simply-laced K on every non-Kaehler pair.
SimplyLacedReport simply_laced_properties(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g);

/// Lemma-type alternatives on one triple (a, b, a+b) in R_m^+: returns an
/// empty string when g satisfies the allowed alternative, otherwise a message.
std::string lemma_alternative_violation(const FlagManifold& fm, const FlagComplexStructure& j, const FlagMetric& g, int a,
                                        int b);

/// One row of the classification of flag manifolds with two isotropy summands.
struct ClassCRecord {
  char series;
  std::string k_algebra;
  std::string h_algebra;
  /// Fixed rank for exceptional rows; 0 for the classical series.
  int rank;
  /// One-based painted simple root for exceptional rows; 0 means "p".
  int painted;
  std::string dimension_formula;
  /// Dimension as listed in the classification table (exceptional rows).
  int listed_dimension;

  /// Dimension from the formula (classical rows) or the listed value.
  int formula_dimension(int ell, int p) const;
  /// Builds the instance: classical rows need ell and p.
  FlagManifold instance(int ell = 0, int p = 0) const;
};

std::vector<ClassCRecord> class_c_catalog();

}  // namespace btp
