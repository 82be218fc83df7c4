#pragma once
// Hermitian geometry of infinitesimal models: connections, torsion, curvature,
// and exact decision procedures for the special-metric conditions.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "btp/liealg.hpp"
#include "btp/tensor.hpp"

namespace btp {

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reductive homogeneous data k = h + m with an invariant complex structure J
/// and metric g on m. Everything is expressed on a basis of the complexification
/// of m, which may be real (conj = identity) or complex (e.g. root vectors).
/// A Lie group with left-invariant data is the case dim_h = 0.
struct InfinitesimalModel {
  std::string name;
  int dim_m = 0;
  int dim_h = 0;
  std::vector<std::string> labels;
  /// [e_i, e_j]_m, keyed (k, i, j).
  Tensor bracket_m{3};
  /// [e_i, e_j]_h, keyed (a, i, j) with a indexing a basis of h.
  Tensor bracket_h{3};
  /// Isotropy action ad(h_a) restricted to m.
  std::vector<Mat> isotropy;
  Mat J;
  /// Complex-bilinear extension of the metric.
  Mat g;
  /// Conjugation: conj(e_j) = sum_k conj(k, j) e_k.
  Mat conj;

  /// Builds a model with zero brackets, identity conjugation, and empty J/g.
  static InfinitesimalModel blank(std::string name, int dim_m, int dim_h = 0);
  void set_bracket_m(int i, int j, int k, const GQ& c);
  void set_bracket_h(int i, int j, int a, const GQ& c);
  /// [x, y]_m for coordinate vectors.
  Vec bracket(const Vec& x, const Vec& y) const;
  /// Hermitian product H(x, y) = g(x, conj y).
  GQ hermitian(const Vec& x, const Vec& y) const;
  Vec conjugate(const Vec& x) const;
};

/// Left-invariant model of a real Lie algebra with the given J and metric.
InfinitesimalModel group_model(const std::string& name, const LieAlgebra& real_alg, const Mat& J, const Mat& g);

/// Throws ModelError on: J^2 != -1, g not symmetric, J not g-orthogonal,
/// conjugation inconsistent, isotropy not g-skew or not J-commuting,
/// Hermitian form not positive definite, or nonzero Nijenhuis tensor.
void validate(const InfinitesimalModel& model);

/// Map Lambda^LC(x) y = 1/2 [x,y]_m + U(x,y).
NomizuOperator levi_civita(const InfinitesimalModel& model);
/// g(tNabla_x y, z) = g(LC_x y, z) - (t-1)/4 dw(Jx,Jy,Jz) - (t+1)/4 dw(Jx,y,z).
NomizuOperator gauduchon_connection(const InfinitesimalModel& model, const Q& t);
NomizuOperator bismut_connection(const InfinitesimalModel& model);
NomizuOperator chern_connection(const InfinitesimalModel& model);

/// T(x,y) = Lambda(x)y - Lambda(y)x - [x,y]_m keyed (out, x, y).
Tensor torsion(const InfinitesimalModel& model, const NomizuOperator& nabla);
/// R(x,y) = [Lambda(x), Lambda(y)] - Lambda([x,y]_m) - ad([x,y]_h), keyed (out, x, y, w).
Tensor curvature(const InfinitesimalModel& model, const NomizuOperator& nabla);
/// Fundamental form w(x,y) = g(Jx, y) as a matrix.
Mat fundamental_form(const InfinitesimalModel& model);
/// dw as an alternating 3-form keyed (x, y, z).
Tensor d_omega(const InfinitesimalModel& model);
/// Exterior derivative of an invariant k-form (keyed by its k arguments).
Tensor exterior_derivative(const InfinitesimalModel& model, const Tensor& form);
/// Lowers the output index: (x,..) -> g(T(..), e_x), keyed (args..., x).
Tensor lower_output(const InfinitesimalModel& model, const Tensor& t);

/// Outcome of one exact check. `witness` lists the first failing basis indices.
struct ConditionResult {
  bool holds = false;
  bool applicable = true;
  std::vector<int> witness;
  std::string witness_value;
  std::string note;
};

ConditionResult check_btp(const InfinitesimalModel& model);
ConditionResult check_bas(const InfinitesimalModel& model);
ConditionResult check_naturally_reductive(const InfinitesimalModel& model);

/// g-orthogonal basis f_1..f_n of T^{1,0} with exact squared norms.
struct OrthogonalFrame {
  std::vector<Vec> vectors;
  std::vector<Q> norms;
  int size() const { return static_cast<int>(vectors.size()); }
};
OrthogonalFrame holomorphic_frame(const InfinitesimalModel& model);

using cplx = std::complex<double>;

/// Components in a unitary (1,0) frame, obtained by normalising an exact
/// orthogonal frame in double precision.
struct UnitaryComponents {
  int n = 0;
  /// Chern torsion T^k_ij, indexed [k][i][j].
  std::vector<cplx> torsion;
  /// Bismut derivative of the Chern torsion, T^l_{ik,jbar}, indexed [l][i][k][j].
  std::vector<cplx> torsion_derivative;
  /// R_{i jbar k lbar} for Chern and Bismut curvature, indexed [i][j][k][l].
  std::vector<cplx> chern_curvature;
  std::vector<cplx> bismut_curvature;

  cplx T(int k, int i, int j) const { return torsion[(k * n + i) * n + j]; }
  cplx dT(int l, int i, int k, int j) const { return torsion_derivative[((l * n + i) * n + k) * n + j]; }
  cplx R(int i, int j, int k, int l) const { return chern_curvature[((i * n + j) * n + k) * n + l]; }
  cplx Rb(int i, int j, int k, int l) const { return bismut_curvature[((i * n + j) * n + k) * n + l]; }
};

UnitaryComponents unitary_components(const InfinitesimalModel& model);
/// Exact Chern torsion components in the orthogonal frame: [k][i][j] with
/// T(f_i, f_j) = sum_k tau^k_ij f_k.
std::vector<GQ> chern_torsion_components(const InfinitesimalModel& model, const OrthogonalFrame& frame);

struct FrameResiduals {
  /// Max modulus over indices of the left sides of the two quadratic equations.
  /// The first vanishes on every BTP model; the second as written vanishes on
  /// Chern-flat BTP groups but not on Vaisman surfaces or flag manifolds.
  double quadratic_first = 0;
  double quadratic_second = 0;
  /// Max |(Rb - R) - torsion expression| over indices.
  double curvature_difference = 0;
  /// Max difference between frame-formula nabla^b T and the exact tensor in the frame.
  double frame_formula_gap = 0;
  /// Max |T^l_{ik,a}| over all frame directions a, with the Bismut connection
  /// rebuilt from Levi-Civita and Chern; zero iff BTP up to rounding.
  double componentwise_btp = 0;
};
FrameResiduals frame_residuals(const InfinitesimalModel& model);

/// Exact identities relating Bismut, Chern and Levi-Civita in (1,0) directions:
/// Bismut(e_i)e_j = 2 LC(e_i)e_j - Chern(e_i)e_j and the conjugate-direction relation.
/// Returns the first failing (i, j) pair, or empty.
std::vector<int> bismut_frame_relation_witness(const InfinitesimalModel& model);

struct CheckReport {
  std::string name;
  bool kahler = false;
  bool balanced = false;
  bool pluriclosed = false;
  bool chern_flat = false;
  bool bismut_flat = false;
  bool btp = false;
  bool bas = false;
  bool naturally_reductive = false;
  /// Curvature symmetries under btp; unset when btp fails.
  std::optional<bool> symmetry_rb_ijkl;
  std::optional<bool> symmetry_rb_chern_swap;
  std::optional<bool> symmetry_rb_pair_swap;
  /// Parallel Chern torsion under the Bismut connection, decided independently.
  bool bismut_parallel_chern_torsion = false;
  std::vector<GQ> eta;
  int r_B = 0;
  std::vector<std::pair<std::string, ConditionResult>> details;
};

struct CheckOptions {
  bool compute_symmetries = true;
};

CheckReport check_conditions(const InfinitesimalModel& model, const CheckOptions& options = {});
nlohmann::json to_json(const CheckReport& report);
std::string to_text(const CheckReport& report);

/// Formats an index witness using model labels, e.g. "(E1, E2, E-3)".
std::string describe_witness(const InfinitesimalModel& model, const std::vector<int>& idx);

}  // namespace btp
