#pragma once
// Left-invariant Hermitian structures on Lie groups: canonical metrics on
// complex simple groups, Samelson structures on compact groups, nilpotent
// normal forms, and two homogeneous examples (an LCK fourfold over SU(3)/T and
// Calabi-Eckmann products of spheres).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "btp/flagspace.hpp"
#include "btp/hermgeo.hpp"

namespace btp {

class GroupGeomError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Complex Lie groups with left-invariant Hermitian metrics.

/// A complex Lie algebra with a Hermitian metric h(X, Y) = X^T hermitian conj(Y)
/// on its complex basis. The underlying real manifold is the realification.
struct ComplexGroupMetric {
  std::string name;
  LieAlgebra algebra;
  Mat hermitian;
};

/// Real model on the basis b_k, i b_k with J = multiplication by i and
/// g = Re h. Throws GroupGeomError when the matrix is not Hermitian.
InfinitesimalModel to_model(const ComplexGroupMetric& metric);

/// Complex algebra in the basis of its compact real form, metric -B_R on u,
/// where B_R is the Killing form of the realification.
ComplexGroupMetric canonical_complex_metric(const CartanType& ct);
/// Realified canonical metric: g = -B_R on u, 0 between u and Ju, B_R on Ju.
InfinitesimalModel canonical_metric(const CartanType& ct);

struct Btp2Report {
  /// max_{i,j} | sum_r |T^j_ir|^2 - sum_r |T^i_jr|^2 | in a unitary frame.
  double residual = 0;
  int i = -1;
  int j = -1;
  /// Whether the model itself passes the exact BTP check.
  bool model_btp = false;
  /// The same maximum decided exactly: squared unitary components are rational
  /// in the exact orthogonal frame.
  Q exact_residual;
};
Btp2Report btp2_identity(const InfinitesimalModel& model);

/// B(X, Y) = sum_{r,s} T^r_{sX} T^s_{rY} built from the Chern torsion, keyed (x, y).
/// On a complex Lie group with its left-invariant frame this is the Killing form.
Tensor torsion_killing_form(const InfinitesimalModel& model);
/// Exact test of nabla^b B = 0; holds on every BTP model.
bool torsion_killing_parallel(const InfinitesimalModel& model);
/// Residual of the componentwise form of nabla^b B = 0 in a unitary frame. That
/// form drops the Chern connection, so it applies to complex Lie groups (Chern
/// connection zero on left-invariant frames) and not to general homogeneous models.
double torsion_killing_parallel_residual(const InfinitesimalModel& model);

struct BIsometryReport {
  /// a1^2 and a1'^2 in B tg^{-1} conj(B) = a1^2 g for the two metrics.
  Q a1_squared;
  Q a1p_squared;
  /// F with h(X, Y) = g(F X, Y); the B-isometry is f = (a1'/a1) F.
  Mat unscaled;
  /// f itself when a1'/a1 is rational.
  std::optional<Mat> f;
  /// max entry of (a1'/a1)^2 F^T B F - B; zero means f is a B-isometry.
  Q residual;
};
/// Throws GroupGeomError when the algebras differ, the algebra is not simple,
/// or a metric does not satisfy the scalar relation with its Killing form.
BIsometryReport b_isometry_relation(const ComplexGroupMetric& first, const ComplexGroupMetric& second);

/// exp(ad x) for a nilpotent ad x, computed exactly by its finite series.
Mat exp_ad_nilpotent(const LieAlgebra& alg, const Vec& x);
/// The metric h(X, Y) = g(A X, A Y).
ComplexGroupMetric pull_back(const ComplexGroupMetric& metric, const Mat& automorphism);

// ---------------------------------------------------------------------------
// Samelson structures on compact semisimple groups.

struct SamelsonStructure {
  /// Simple factors of the compact algebra.
  std::vector<CartanType> factors;
  /// Complex structure on the Cartan algebra, on the basis i h_1, ..., i h_r
  /// (coroots of all factors in order). Empty means the default pairing.
  Mat torus_j;
};

struct SamelsonMetric {
  /// One value per positive root, factor by factor, in root-system order.
  std::vector<Q> root_values;
  /// Metric on the Cartan algebra in the basis i h_1..i h_r. Empty means identity.
  Mat torus_metric;
};

/// Model on the complex basis h_1..h_r, E_a (all roots, factor by factor),
/// with conj(E_a) = -E_{-a}, J = +-i on root vectors, g(E_a, E_{-a}) = -g_a B(E_a, E_{-a}).
struct SamelsonModel {
  InfinitesimalModel model;
  std::vector<ChevalleyData> chevalley;
  int torus_dim = 0;
  /// Index of the first root vector of each factor in the model basis.
  std::vector<int> root_offset;
  /// Coroot coordinate offset of each factor.
  std::vector<int> torus_offset;
  /// (factor, root index) for each positive root in SamelsonMetric order.
  std::vector<std::pair<int, int>> positive_roots;

  int root_position(int factor, int root) const { return root_offset[factor] + root; }
  /// Coordinate vector of [E_a, E_{-a}] (the coroot h_a) in the model basis.
  Vec coroot_vector(int factor, int root) const;
  /// a(H) for a torus vector H.
  GQ root_value(int factor, int root, const Vec& h) const;
};

/// Default torus structure: J(i h_{2k-1}) = i h_{2k}. Throws on odd rank.
Mat default_torus_j(int rank);
/// Throws GroupGeomError on odd dimension, invalid torus data or nonpositive values.
SamelsonModel samelson_model(const SamelsonStructure& s, const SamelsonMetric& metric);

/// Exact comparison of the generic Bismut connection with the closed forms:
/// Lambda(E_a)E_{-a} = 0, T(E_a, E_{-a}) = -[E_a, E_{-a}],
/// Lambda(H)E_a = (a(H) + g(H, H_a)/g_a) E_a, Lambda(E_a)H = 0, and the
/// root-root formulas. Here H_a = [E_a, E_{-a}] and g_a = -g(E_a, E_{-a}), so
/// the ratio does not depend on how root vectors are scaled. Returns an empty
/// string when all hold.
std::string samelson_formula_mismatch(const SamelsonModel& sm, const SamelsonMetric& metric);
/// Compares R^b(E_a, E_{-a})E_b = -(b(H_a) + g(H_a, H_b)) E_b against the
/// engine, with H_b = [E_b, E_{-b}] for root vectors normalised by
/// B(E_b, E_{-b}) = 1, and checks that no other component survives. All g_a = 1.
std::string samelson_curvature_mismatch(const SamelsonModel& sm);

struct SamelsonTripleExclusion {
  int factor;
  int a;
  int b;
  /// Torus basis index and value of the nonzero component of nabla^b T at the
  /// point g_a = g_b = 1, g_{a+b} = 2.
  int torus_index = -1;
  Q value;
  /// The same component read off the generic covariant derivative.
  GQ engine_value;
};

struct SamelsonFamilyReport {
  MetricFamily family;
  /// Connected classes of positive roots under the triple relations.
  std::vector<std::vector<int>> classes;
  std::vector<SamelsonTripleExclusion> exclusions;
  /// Points checked with the generic engine (root values; torus metric varied).
  int verified = 0;
};
/// Right-T-invariant BTP metrics: g_a = g_b = g_{a+b} on every triple, with the
/// additive alternative excluded per triple by an exact nonzero witness.
SamelsonFamilyReport solve_samelson_projectable(const SamelsonStructure& s, int verify_points = 2,
                                                std::uint64_t seed = 7);

// ---------------------------------------------------------------------------
// Nilpotent normal forms.

struct NilpotentNormalForm {
  int n = 0;
  int r = 0;
  /// (n - r) x r matrix Y_{alpha i}.
  Mat y;
};

/// Unitary frame e_1..e_n, conj e_1..conj e_n with [e_i, conj e_i] =
/// -sum_a Y_ai e_a + sum_a conj(Y_ai) conj e_a, all other brackets zero.
/// Throws GroupGeomError unless 0 < r < n and Y has shape (n - r) x r.
InfinitesimalModel nilpotent_model(const NilpotentNormalForm& nf);
/// Structure constants D^j_ik = <[conj e_j, e_k], e_i> with <,> the complex-bilinear
/// metric, i.e. the coefficient of conj e_i in [conj e_j, e_k]. Indexed [j][i][k].
std::vector<GQ> nilpotent_d_constants(const NilpotentNormalForm& nf);
/// R_{i jbar k lbar} from the quadratic D formula, indexed [i][j][k][l].
std::vector<GQ> nilpotent_chern_curvature(const NilpotentNormalForm& nf);
/// Exact R_{i jbar k lbar} = g(R(e_i, conj e_j) e_k, conj e_l) of the Chern connection
/// for a model whose basis is a unitary frame e_1..e_n, conj e_1..conj e_n.
std::vector<GQ> chern_curvature_in_basis(const InfinitesimalModel& model, int n);
/// Bismut connection forms theta_ij(X) = coefficient of e_j in Lambda^b(X) e_i,
/// indexed [i][j][x] over the 2n basis directions, taken from the engine.
std::vector<GQ> bismut_connection_forms(const InfinitesimalModel& model, int n);

// ---------------------------------------------------------------------------
// The LCK fourfold over the Wallach space and the Calabi-Eckmann search.

struct M4Report {
  InfinitesimalModel model;
  /// Base Kaehler values g_gamma = i gamma(l) for alpha, beta and alpha + beta.
  Q g_alpha;
  Q g_beta;
  Q g_sum;
  /// Lee form theta = c (J l)^flat; c is read off d omega(E_alpha, E_-alpha, J l)
  /// and equals 1/g(l, l).
  Q lee_scale;
  /// True when d omega - theta wedge omega vanishes identically.
  bool lck_identity = false;
  /// Per case (m,m,m), (m,m,l), (m,m,Jl), (m,l,Jl): max |d omega - theta wedge omega|.
  std::vector<Q> case_residuals;
  /// g([E_a, E_b], E_{-a-b}) + g(E_b, [E_a, E_{-a-b}]) for the simple roots a, b.
  GQ reductive_witness;
  /// g(E_{a+b}, E_{-a-b}) - g(E_b, E_{-b}); the witness is N_ab times this.
  GQ reductive_difference;
  CheckReport check;
};
/// Model on l, E_alpha, E_beta, E_{alpha+beta}, the negative root vectors, z,
/// with isotropy spanned by h. Throws GroupGeomError unless a1 < a2 < -a1/2
/// with both nonzero.
M4Report m4_example(long a1, long a2);

struct CalabiEckmannParams {
  int m1 = 1;
  int m2 = 1;
  Q alpha = 0;
  Q beta = 1;
  /// Metric on m_i is c_i (-B_i); on q it is q_scale times the standard J-Hermitian form.
  Q c1 = 1;
  Q c2 = 1;
  Q q_scale = 1;
};

struct CalabiEckmannResult {
  /// 2x2 map q -> a in the basis z_1, z_2 (a identified with q), or nullopt after exhaustion.
  std::optional<Mat> f;
  /// Column candidates evaluated; the condition separates over the columns of f.
  long candidates = 0;
  /// Number of maps f in the searched box.
  long double space_size = 0;
  int max_den = 0;
  int bound = 0;
  std::string note;
};

/// Homogeneous model of S^{2m1+1} x S^{2m2+1} on the tangent space q + m_1 + m_2
/// presented through hat g = hat h + V_f + hat m. Throws GroupGeomError on bad
/// parameters or when f is excluded.
InfinitesimalModel calabi_eckmann_model(const CalabiEckmannParams& p, const Mat& f);
/// Natural reductivity of that decomposition: the first failing index triple, or empty.
std::vector<int> calabi_eckmann_reductive_witness(const CalabiEckmannParams& p, const Mat& f);
/// Whether f rho has eigenvalue -1 (such f are excluded).
bool calabi_eckmann_excluded(const Mat& f);
/// The unique f making the decomposition naturally reductive: 1 + f = G_q^{-1} D
/// with D = diag(-c_i B_i(z_i, z_i)).
Mat calabi_eckmann_linear_solution(const CalabiEckmannParams& p);
/// Exhaustive search over f with entries p/q, q <= max_den, |p/q| <= bound.
CalabiEckmannResult calabi_eckmann_search(const CalabiEckmannParams& p, int max_den = 8, int bound = 8);

}  // namespace btp
