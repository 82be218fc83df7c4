#pragma once
// Sparse multi-index tensors over Gaussian rationals, and the Nomizu-operator
// derivation used to differentiate invariant tensors at the origin.

#include <cstdint>
#include <initializer_list>
#include <unordered_map>
#include <vector>

#include "btp/linalg.hpp"

namespace btp {

/// Sparse tensor with up to 8 indices, each below 256. Keys pack indices
/// big-endian so numeric key order equals lexicographic index order.
class Tensor {
 public:
  using Key = std::uint64_t;

  explicit Tensor(int order = 0) : order_(order) {}

  int order() const { return order_; }
  Key pack(const int* idx) const;
  void unpack(Key key, int* idx) const;
  Key pack(std::initializer_list<int> idx) const { return pack(idx.begin()); }

  void add(Key key, const GQ& v);
  void add(std::initializer_list<int> idx, const GQ& v) { add(pack(idx.begin()), v); }
  GQ get(Key key) const;
  GQ get(std::initializer_list<int> idx) const { return get(pack(idx.begin())); }

  const std::unordered_map<Key, GQ>& data() const { return data_; }
  /// Drops entries that cancelled to zero.
  void prune();
  bool is_zero() const;
  /// Lexicographically smallest index tuple with a nonzero value; empty when zero.
  std::vector<int> first_nonzero() const;
  /// Largest max(|re|, |im|) over entries.
  Q max_abs() const;

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(const GQ& s);
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }

 private:
  int order_;
  std::unordered_map<Key, GQ> data_;
};

/// Linear connection at the origin: op[x] is the endomorphism Lambda(e_x) in
/// column convention, Lambda(e_x) e_y = sum_o op[x](o, y) e_o.
struct NomizuOperator {
  std::vector<Mat> op;
  int dim() const { return static_cast<int>(op.size()); }
  /// Lambda(v) for a coordinate vector v (complex-linear extension).
  Mat at(const Vec& v) const;
  bool operator==(const NomizuOperator& o) const { return op == o.op; }
};

/// Result(.., x, ..) = sum_a t(.., a, ..) m(a, x): substitutes m-images into one slot.
Tensor apply_slot(const Tensor& t, int slot, const Mat& m);
/// Result(o', ..) = sum_o m(o', o) t(o, ..) on slot 0.
Tensor map_output(const Tensor& t, const Mat& m);

/// Covariant derivative of an invariant tensor at the origin.
/// For a vector-valued tensor (slot 0 = output) the result is keyed
/// (x, out, args...) and equals Lambda(x) S(args) - sum_m S(.., Lambda(x) arg_m, ..).
/// For a scalar-valued tensor the first term is absent; result keyed (x, args...).
Tensor covariant_derivative(const NomizuOperator& nabla, const Tensor& s, bool vector_valued);

}  // namespace btp
