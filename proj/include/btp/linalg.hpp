#pragma once
// Dense exact linear algebra over Gaussian rationals.

#include <optional>
#include <vector>

#include "btp/scalar.hpp"

namespace btp {

using Vec = std::vector<GQ>;

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GQ& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const GQ& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Vec column(int j) const;
  void set_column(int j, const Vec& v);

  Mat transpose() const;
  Mat conj() const;
  /// Conjugate transpose.
  Mat adjoint() const;
  bool is_zero() const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(const GQ& s);

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const GQ& s) { return a *= s; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Vec operator*(const Mat& a, const Vec& v);
  friend bool operator==(const Mat& a, const Mat& b) { return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<GQ> data_;
};

Mat commutator(const Mat& a, const Mat& b);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Mat> inverse(const Mat& m);
/// Basis of the kernel {x : m x = 0}, in reduced echelon normalization.
std::vector<Vec> nullspace(const Mat& m);
int rank(const Mat& m);
GQ determinant(const Mat& m);
/// Solves m x = b; nullopt when inconsistent. Free variables are set to zero.
std::optional<Vec> solve(const Mat& m, const Vec& b);
/// Exact test that a Hermitian matrix is positive definite (all pivots of an
/// unpivoted elimination are real and positive, i.e. leading minors positive).
bool is_hermitian_positive_definite(const Mat& h);

GQ dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& v);
Vec scaled(const Vec& v, const GQ& s);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec conj(const Vec& v);

}  // namespace btp
