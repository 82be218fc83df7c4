#include "btp/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace btp {

Tensor::Key Tensor::pack(const int* idx) const {
  Key key = 0;
  for (int s = 0; s < order_; ++s) {
    if (idx[s] < 0 || idx[s] > 255) throw std::out_of_range("tensor index out of range");
    key = (key << 8) | static_cast<Key>(idx[s]);
  }
  return key;
}

void Tensor::unpack(Key key, int* idx) const {
  for (int s = order_ - 1; s >= 0; --s) {
    idx[s] = static_cast<int>(key & 0xFF);
    key >>= 8;
  }
}

void Tensor::add(Key key, const GQ& v) {
  if (v.is_zero()) return;
  auto [it, inserted] = data_.try_emplace(key, v);
  if (!inserted) it->second += v;
}

GQ Tensor::get(Key key) const {
  auto it = data_.find(key);
  return it == data_.end() ? GQ() : it->second;
}

void Tensor::prune() {
  for (auto it = data_.begin(); it != data_.end();) {
    if (it->second.is_zero()) {
      it = data_.erase(it);
    } else {
      ++it;
    }
  }
}

bool Tensor::is_zero() const {
  for (const auto& [k, v] : data_)
    if (!v.is_zero()) return false;
  return true;
}

std::vector<int> Tensor::first_nonzero() const {
  bool found = false;
  Key best = 0;
  for (const auto& [k, v] : data_) {
    if (v.is_zero()) continue;
    if (!found || k < best) {
      best = k;
      found = true;
    }
  }
  if (!found) return {};
  std::vector<int> idx(order_);
  unpack(best, idx.data());
  return idx;
}

Q Tensor::max_abs() const {
  Q best = 0;
  for (const auto& [k, v] : data_) {
    best = std::max(best, Q(abs(v.re)));
    best = std::max(best, Q(abs(v.im)));
  }
  return best;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  for (const auto& [k, v] : o.data_) add(k, v);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  for (const auto& [k, v] : o.data_) add(k, -v);
  return *this;
}

Tensor& Tensor::operator*=(const GQ& s) {
  for (auto& [k, v] : data_) v *= s;
  return *this;
}

Mat NomizuOperator::at(const Vec& v) const {
  int n = dim();
  Mat m(n, n);
  for (int x = 0; x < n; ++x)
    if (!v[x].is_zero()) m += op[x] * v[x];
  return m;
}

namespace {

struct SparseRows {
  // rows[r] = list of (c, value) with m(r, c) != 0; cols[c] = list of (r, value).
  std::vector<std::vector<std::pair<int, GQ>>> rows;
  std::vector<std::vector<std::pair<int, GQ>>> cols;
};

SparseRows index_matrix(const Mat& m) {
  SparseRows s;
  s.rows.resize(m.rows());
  s.cols.resize(m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) {
        s.rows[r].emplace_back(c, m(r, c));
        s.cols[c].emplace_back(r, m(r, c));
      }
  return s;
}

}  // namespace

Tensor apply_slot(const Tensor& t, int slot, const Mat& m) {
  SparseRows sm = index_matrix(m);
  Tensor out(t.order());
  int idx[8];
  for (const auto& [k, v] : t.data()) {
    if (v.is_zero()) continue;
    t.unpack(k, idx);
    int a = idx[slot];
    for (const auto& [x, c] : sm.rows[a]) {
      idx[slot] = x;
      out.add(out.pack(idx), v * c);
    }
  }
  out.prune();
  return out;
}

Tensor map_output(const Tensor& t, const Mat& m) {
  SparseRows sm = index_matrix(m);
  Tensor out(t.order());
  int idx[8];
  for (const auto& [k, v] : t.data()) {
    if (v.is_zero()) continue;
    t.unpack(k, idx);
    int o = idx[0];
    for (const auto& [target, c] : sm.cols[o]) {
      idx[0] = target;
      out.add(out.pack(idx), c * v);
    }
  }
  out.prune();
  return out;
}

Tensor covariant_derivative(const NomizuOperator& nabla, const Tensor& s, bool vector_valued) {
  int n = nabla.dim();
  std::vector<SparseRows> ops;
  ops.reserve(n);
  for (int x = 0; x < n; ++x) ops.push_back(index_matrix(nabla.op[x]));
  int order = s.order();
  if (order + 1 > 8) throw std::invalid_argument("tensor order too large for covariant derivative");
  Tensor out(order + 1);
  int idx[8];
  int res[8];
  int first_arg = vector_valued ? 1 : 0;
  for (const auto& [k, v] : s.data()) {
    if (v.is_zero()) continue;
    s.unpack(k, idx);
    for (int x = 0; x < n; ++x) {
      const SparseRows& lx = ops[x];
      res[0] = x;
      for (int q = 0; q < order; ++q) res[q + 1] = idx[q];
      if (vector_valued) {
        // Lambda(x) applied to the output: contributes to output index a.
        for (const auto& [a, c] : lx.cols[idx[0]]) {
          res[1] = a;
          out.add(out.pack(res), c * v);
        }
        res[1] = idx[0];
      }
      for (int slot = first_arg; slot < order; ++slot) {
        // S(.., q, ..) Lambda(x)_{q b} feeds argument b.
        int q = idx[slot];
        for (const auto& [b, c] : lx.rows[q]) {
          res[slot + 1] = b;
          out.add(out.pack(res), -(c * v));
        }
        res[slot + 1] = q;
      }
    }
  }
  out.prune();
  return out;
}

}  // namespace btp
