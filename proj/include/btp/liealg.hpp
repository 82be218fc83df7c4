#pragma once
// Finite-dimensional Lie algebras as exact sparse structure-constant tensors.

#include <string>
#include <utility>
#include <vector>

#include "btp/linalg.hpp"
#include "btp/rootsys.hpp"
#include "json.hpp"

namespace btp {

enum class Field { Real, Complex };

using SparseVec = std::vector<std::pair<int, GQ>>;

SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, int dim);

/// Structure constants c^k_ij with [b_i, b_j] = sum_k c^k_ij b_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(int dim, std::vector<std::string> labels, Field field);

  int dim() const { return dim_; }
  Field field() const { return field_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Sets [b_i, b_j] = v and [b_j, b_i] = -v.
  void set_bracket(int i, int j, const SparseVec& v);
  void add_bracket_term(int i, int j, int k, const GQ& c);
  const SparseVec& bracket(int i, int j) const { return table_[static_cast<std::size_t>(i) * dim_ + j]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  /// Matrix of ad(b_i) acting on coordinate columns.
  Mat ad(int i) const;
  Mat ad(const Vec& x) const;
  /// False when some recorded pair violates [b_i, b_j] = -[b_j, b_i].
  bool is_antisymmetric() const;

 private:
  int dim_ = 0;
  std::vector<std::string> labels_;
  Field field_ = Field::Real;
  std::vector<SparseVec> table_;
};

/// Max over basis triples of the max-norm of the Jacobiator; zero iff Jacobi holds.
Q check_jacobi(const LieAlgebra& alg);

struct BilinearForm {
  Mat matrix;
  bool symmetric = false;
};

/// Killing form B(x, y) = tr(ad x ad y).
BilinearForm killing_form(const LieAlgebra& alg);
/// Returns the first basis triple (i, j, k) with B([x,y],z) + B(y,[x,z]) != 0, or {-1,-1,-1}.
std::vector<int> ad_invariance_witness(const LieAlgebra& alg, const Mat& form);

struct IdealSplit {
  std::vector<Vec> center;
  std::vector<std::vector<Vec>> ideals;
  std::vector<bool> simple;
};

/// Span of the ideal generated by a vector.
std::vector<Vec> generated_ideal(const LieAlgebra& alg, const Vec& v);
/// Nonzero and without a proper nonzero ideal generated by a basis vector.
bool is_simple(const LieAlgebra& alg);
/// Orthogonal splitting into the center and ideals, for a Hermitian positive
/// definite metric (symmetric positive definite in the real case).
/// Throws std::invalid_argument on a degenerate metric.
IdealSplit orthogonal_ideal_split(const LieAlgebra& alg, const Mat& metric);

/// New algebra in the basis given by the columns of `basis` (coordinates in the old basis).
/// Throws if the structure constants in the new basis are not real when field is Real.
LieAlgebra change_basis(const LieAlgebra& alg, const Mat& basis, std::vector<std::string> labels, Field field);

/// Complex algebra with basis h_1..h_l, E_a (all roots), in Chevalley normalisation.
LieAlgebra chevalley_algebra(const ChevalleyData& ch);
/// Compact real form spanned by i h_j, v_a = E_a - E_{-a}, w_a = i(E_a + E_{-a}) (a > 0).
LieAlgebra compact_real_form(const ChevalleyData& ch);
/// Columns: compact-form basis vectors expressed in the chevalley_algebra basis.
Mat compact_form_embedding(const ChevalleyData& ch);

LieAlgebra complexify(const LieAlgebra& real_alg);

struct Realification {
  LieAlgebra algebra;
  Mat complex_structure;
};
/// Real algebra on the basis b_1..b_n, i b_1..i b_n with J = multiplication by i.
Realification realify(const LieAlgebra& complex_alg);

/// Direct sum with basis of the first summand followed by the second.
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

nlohmann::json to_json(const LieAlgebra& alg);
LieAlgebra lie_algebra_from_json(const nlohmann::json& j);

}  // namespace btp
