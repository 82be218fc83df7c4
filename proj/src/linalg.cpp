#include "btp/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace btp {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vec Mat::column(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_column(int j, const Vec& v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::conj() const {
  Mat c(*this);
  for (auto& z : c.data_) z.im = -z.im;
  return c;
}

Mat Mat::adjoint() const { return transpose().conj(); }

bool Mat::is_zero() const {
  for (const auto& z : data_)
    if (!z.is_zero()) return false;
  return true;
}

Mat& Mat::operator+=(const Mat& o) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Mat& Mat::operator*=(const GQ& s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Mat c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const GQ& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const GQ& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j).add_product(aik, bkj);
      }
    }
  }
  return c;
}

Vec operator*(const Mat& a, const Vec& v) {
  Vec out(a.rows_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k)
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i].add_product(a(i, k), v[k]);
  return out;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

namespace {

// Gauss-Jordan elimination in place; returns pivot columns.
std::vector<int> row_reduce(Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows(); ++r) {
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    }
    GQ inv = GQ(1) / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      GQ factor = m(r, col);
      for (int c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= factor * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<Mat> inverse(const Mat& m) {
  int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = row_reduce(aug);
  if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<Vec> nullspace(const Mat& m) {
  Mat r = m;
  auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(static_cast<int>(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank(const Mat& m) {
  Mat r = m;
  return static_cast<int>(row_reduce(r).size());
}

GQ determinant(const Mat& m) {
  int n = m.rows();
  Mat a = m;
  GQ det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (!a(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return GQ(0);
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    GQ inv = GQ(1) / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      GQ factor = a(r, col) * inv;
      for (int c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  int n = m.cols();
  Mat aug(m.rows(), n + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  Vec x(n);
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(static_cast<int>(k), n);
  return x;
}

bool is_hermitian_positive_definite(const Mat& h) {
  int n = h.rows();
  if (n != h.cols()) return false;
  if (!(h == h.adjoint())) return false;
  Mat a = h;
  for (int k = 0; k < n; ++k) {
    const GQ& piv = a(k, k);
    if (!piv.is_real() || sgn(piv.re) <= 0) return false;
    GQ inv = GQ(1) / piv;
    for (int r = k + 1; r < n; ++r) {
      if (a(r, k).is_zero()) continue;
      GQ factor = a(r, k) * inv;
      for (int c = k; c < n; ++c) a(r, c) -= factor * a(k, c);
    }
  }
  return true;
}

GQ dot(const Vec& a, const Vec& b) {
  GQ s;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].is_zero() && !b[k].is_zero()) s.add_product(a[k], b[k]);
  return s;
}

bool is_zero(const Vec& v) {
  for (const auto& z : v)
    if (!z.is_zero()) return false;
  return true;
}

Vec scaled(const Vec& v, const GQ& s) {
  Vec out(v);
  for (auto& z : out) z *= s;
  return out;
}

Vec add(const Vec& a, const Vec& b) {
  Vec out(a);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec out(a);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] -= b[k];
  return out;
}

Vec conj(const Vec& v) {
  Vec out(v);
  for (auto& z : out) z.im = -z.im;
  return out;
}

}  // namespace btp
