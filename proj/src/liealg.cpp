#include "btp/liealg.hpp"

#include <algorithm>
#include <stdexcept>

namespace btp {

SparseVec to_sparse(const Vec& v) {
  SparseVec out;
  for (int k = 0; k < static_cast<int>(v.size()); ++k)
    if (!v[k].is_zero()) out.emplace_back(k, v[k]);
  return out;
}

Vec to_dense(const SparseVec& v, int dim) {
  Vec out(dim);
  for (const auto& [k, c] : v) out[k] += c;
  return out;
}

LieAlgebra::LieAlgebra(int dim, std::vector<std::string> labels, Field field)
    : dim_(dim), labels_(std::move(labels)), field_(field), table_(static_cast<std::size_t>(dim) * dim) {
  if (static_cast<int>(labels_.size()) != dim) {
    labels_.resize(dim);
    for (int k = 0; k < dim; ++k)
      if (labels_[k].empty()) labels_[k] = "b" + std::to_string(k + 1);
  }
}

void LieAlgebra::set_bracket(int i, int j, const SparseVec& v) {
  SparseVec cleaned;
  for (const auto& [k, c] : v)
    if (!c.is_zero()) cleaned.emplace_back(k, c);
  std::sort(cleaned.begin(), cleaned.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec neg = cleaned;
  for (auto& [k, c] : neg) c = -c;
  table_[static_cast<std::size_t>(i) * dim_ + j] = cleaned;
  table_[static_cast<std::size_t>(j) * dim_ + i] = neg;
}

void LieAlgebra::add_bracket_term(int i, int j, int k, const GQ& c) {
  Vec cur = to_dense(bracket(i, j), dim_);
  cur[k] += c;
  set_bracket(i, j, to_sparse(cur));
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      GQ xy = x[i] * y[j];
      for (const auto& [k, c] : bracket(i, j)) out[k].add_product(xy, c);
    }
  }
  return out;
}

Mat LieAlgebra::ad(int i) const {
  Mat m(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (const auto& [k, c] : bracket(i, j)) m(k, j) += c;
  return m;
}

Mat LieAlgebra::ad(const Vec& x) const {
  Mat m(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    m += ad(i) * x[i];
  }
  return m;
}

bool LieAlgebra::is_antisymmetric() const {
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      Vec a = to_dense(bracket(i, j), dim_);
      Vec b = to_dense(bracket(j, i), dim_);
      if (!is_zero(add(a, b))) return false;
    }
  }
  return true;
}

namespace {

Q max_norm(const Vec& v) {
  Q best = 0;
  for (const auto& z : v) {
    best = std::max(best, Q(abs(z.re)));
    best = std::max(best, Q(abs(z.im)));
  }
  return best;
}

// Incrementally maintained row-echelon basis for span membership tests.
class Span {
 public:
  explicit Span(int dim) : dim_(dim) {}

  // Inserts v; returns false if v was already in the span.
  bool insert(const Vec& v) {
    Vec r = reduce(v);
    int lead = leading(r);
    if (lead < 0) return false;
    GQ inv = GQ(1) / r[lead];
    for (auto& z : r) z *= inv;
    for (auto& [row_lead, row] : rows_) {
      if (!row[lead].is_zero()) {
        GQ f = row[lead];
        for (int k = 0; k < dim_; ++k) row[k] -= f * r[k];
      }
    }
    rows_.emplace_back(lead, r);
    originals_.push_back(v);
    return true;
  }
  bool contains(const Vec& v) const { return leading(reduce(v)) < 0; }
  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& vectors() const { return originals_; }

 private:
  Vec reduce(const Vec& v) const {
    Vec r = v;
    for (const auto& [lead, row] : rows_) {
      if (r[lead].is_zero()) continue;
      GQ f = r[lead];
      for (int k = 0; k < dim_; ++k)
        if (!row[k].is_zero()) r[k] -= f * row[k];
    }
    return r;
  }
  static int leading(const Vec& v) {
    for (int k = 0; k < static_cast<int>(v.size()); ++k)
      if (!v[k].is_zero()) return k;
    return -1;
  }
  int dim_;
  std::vector<std::pair<int, Vec>> rows_;
  std::vector<Vec> originals_;
};

Vec unit(int dim, int k) {
  Vec v(dim);
  v[k] = 1;
  return v;
}

// Hermitian pairing x^T M conj(y).
GQ hermitian(const Mat& m, const Vec& x, const Vec& y) { return dot(x, m * conj(y)); }

// Basis of {x in span(space) : H(x, s) = 0 for all s in others}.
std::vector<Vec> complement_within(const std::vector<Vec>& space, const std::vector<Vec>& others, const Mat& metric) {
  if (space.empty()) return {};
  if (others.empty()) return space;
  Mat conditions(static_cast<int>(others.size()), static_cast<int>(space.size()));
  for (std::size_t r = 0; r < others.size(); ++r)
    for (std::size_t c = 0; c < space.size(); ++c)
      conditions(static_cast<int>(r), static_cast<int>(c)) = hermitian(metric, space[c], others[r]);
  std::vector<Vec> result;
  for (const Vec& coeffs : nullspace(conditions)) {
    Vec v(space[0].size());
    for (std::size_t c = 0; c < space.size(); ++c)
      if (!coeffs[c].is_zero()) v = add(v, scaled(space[c], coeffs[c]));
    result.push_back(v);
  }
  return result;
}

}  // namespace

Q check_jacobi(const LieAlgebra& alg) {
  int n = alg.dim();
  Q worst = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Vec ei = unit(n, i);
        Vec ej = unit(n, j);
        Vec ek = unit(n, k);
        Vec total = alg.bracket(alg.bracket(ei, ej), ek);
        total = add(total, alg.bracket(alg.bracket(ej, ek), ei));
        total = add(total, alg.bracket(alg.bracket(ek, ei), ej));
        worst = std::max(worst, max_norm(total));
      }
    }
  }
  return worst;
}

BilinearForm killing_form(const LieAlgebra& alg) {
  int n = alg.dim();
  std::vector<Mat> ads;
  ads.reserve(n);
  for (int i = 0; i < n; ++i) ads.push_back(alg.ad(i));
  BilinearForm form{Mat(n, n), true};
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      GQ tr;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (!ads[i](k, l).is_zero() && !ads[j](l, k).is_zero()) tr.add_product(ads[i](k, l), ads[j](l, k));
      form.matrix(i, j) = tr;
      form.matrix(j, i) = tr;
    }
  }
  return form;
}

std::vector<int> ad_invariance_witness(const LieAlgebra& alg, const Mat& form) {
  int n = alg.dim();
  for (int i = 0; i < n; ++i) {
    Mat adx = alg.ad(i);
    // B(ad_x y, z) + B(y, ad_x z) = (ad_x^T B + B ad_x)_{yz}
    Mat s = adx.transpose() * form + form * adx;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!s(j, k).is_zero()) return {i, j, k};
  }
  return {-1, -1, -1};
}

std::vector<Vec> generated_ideal(const LieAlgebra& alg, const Vec& v) {
  int n = alg.dim();
  Span span(n);
  if (is_zero(v)) return {};
  span.insert(v);
  std::size_t processed = 0;
  while (processed < span.vectors().size()) {
    Vec cur = span.vectors()[processed++];
    for (int i = 0; i < n; ++i) {
      Vec w = alg.bracket(unit(n, i), cur);
      if (!is_zero(w)) span.insert(w);
    }
  }
  return span.vectors();
}

bool is_simple(const LieAlgebra& alg) {
  int n = alg.dim();
  if (n == 0) return false;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(generated_ideal(alg, unit(n, i)).size()) != n) return false;
  }
  return true;
}

IdealSplit orthogonal_ideal_split(const LieAlgebra& alg, const Mat& metric) {
  int n = alg.dim();
  if (!is_hermitian_positive_definite(metric)) {
    throw std::invalid_argument("metric is degenerate or not positive definite");
  }
  // Center: common kernel of all ad(b_i).
  Mat stacked(n * n, n);
  for (int i = 0; i < n; ++i) {
    Mat a = alg.ad(i);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) stacked(i * n + r, c) = a(r, c);
  }
  IdealSplit split;
  split.center = nullspace(stacked);
  std::vector<Vec> all;
  for (int k = 0; k < n; ++k) all.push_back(unit(n, k));
  std::vector<Vec> remaining = complement_within(all, split.center, metric);

  while (!remaining.empty()) {
    std::vector<Vec> best;
    for (const Vec& v : remaining) {
      auto ideal = generated_ideal(alg, v);
      if (best.empty() || ideal.size() < best.size()) best = ideal;
    }
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      for (const Vec& v : best) {
        auto ideal = generated_ideal(alg, v);
        if (ideal.size() < best.size()) {
          best = ideal;
          shrunk = true;
          break;
        }
      }
    }
    split.ideals.push_back(best);
    remaining = complement_within(remaining, best, metric);
  }
  for (const auto& ideal : split.ideals) {
    // Restrict the bracket to the ideal and test simplicity there.
    int d = static_cast<int>(ideal.size());
    Mat basis(n, d);
    for (int c = 0; c < d; ++c) basis.set_column(c, ideal[c]);
    bool simple = true;
    for (int c = 0; c < d && simple; ++c) {
      Span closure(n);
      closure.insert(ideal[c]);
      std::size_t processed = 0;
      while (processed < closure.vectors().size()) {
        Vec cur = closure.vectors()[processed++];
        for (int e = 0; e < d; ++e) {
          Vec w = alg.bracket(ideal[e], cur);
          if (!is_zero(w)) closure.insert(w);
        }
      }
      if (closure.size() != d) simple = false;
    }
    split.simple.push_back(simple && d > 1);
  }
  return split;
}

LieAlgebra change_basis(const LieAlgebra& alg, const Mat& basis, std::vector<std::string> labels, Field field) {
  int n = alg.dim();
  auto inv = inverse(basis);
  if (!inv) throw std::invalid_argument("change_basis: vectors are not a basis");
  LieAlgebra out(n, std::move(labels), field);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Vec coords = (*inv) * alg.bracket(basis.column(i), basis.column(j));
      if (field == Field::Real) {
        for (const auto& z : coords)
          if (!z.is_real()) throw std::invalid_argument("change_basis: structure constants are not real");
      }
      out.set_bracket(i, j, to_sparse(coords));
    }
  }
  return out;
}

namespace {

std::string root_label(const Root& r) {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  return s;
}

}  // namespace

LieAlgebra chevalley_algebra(const ChevalleyData& ch) {
  const RootSystem& rs = ch.root_system();
  int l = rs.rank();
  int count = rs.num_roots();
  std::vector<std::string> labels;
  for (int i = 0; i < l; ++i) labels.push_back("h" + std::to_string(i + 1));
  for (int a = 0; a < count; ++a) labels.push_back("E(" + root_label(rs.root(a)) + ")");
  LieAlgebra alg(l + count, labels, Field::Complex);
  for (int i = 0; i < l; ++i)
    for (int a = 0; a < count; ++a) alg.set_bracket(i, l + a, {{l + a, GQ(ch.root_on_coroot(a, i))}});
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      if (b == rs.negative_of(a)) {
        SparseVec h;
        for (int i = 0; i < l; ++i) h.emplace_back(i, GQ(ch.coroot(a)[i]));
        alg.set_bracket(l + a, l + b, h);
      } else if (int s = rs.sum_index(a, b); s >= 0) {
        alg.set_bracket(l + a, l + b, {{l + s, GQ(ch.n(a, b))}});
      }
    }
  }
  return alg;
}

Mat compact_form_embedding(const ChevalleyData& ch) {
  const RootSystem& rs = ch.root_system();
  int l = rs.rank();
  int npos = rs.num_positive();
  int n = l + 2 * npos;
  Mat basis(n, n);
  for (int i = 0; i < l; ++i) basis(i, i) = GQ::I();
  for (int a = 0; a < npos; ++a) {
    int neg = rs.negative_of(a);
    int col_v = l + 2 * a;
    basis(l + a, col_v) = 1;
    basis(l + neg, col_v) = -1;
    basis(l + a, col_v + 1) = GQ::I();
    basis(l + neg, col_v + 1) = GQ::I();
  }
  return basis;
}

LieAlgebra compact_real_form(const ChevalleyData& ch) {
  const RootSystem& rs = ch.root_system();
  int l = rs.rank();
  std::vector<std::string> labels;
  for (int i = 0; i < l; ++i) labels.push_back("ih" + std::to_string(i + 1));
  for (int a = 0; a < rs.num_positive(); ++a) {
    labels.push_back("v(" + root_label(rs.root(a)) + ")");
    labels.push_back("w(" + root_label(rs.root(a)) + ")");
  }
  return change_basis(chevalley_algebra(ch), compact_form_embedding(ch), labels, Field::Real);
}

LieAlgebra complexify(const LieAlgebra& real_alg) {
  LieAlgebra out(real_alg.dim(), real_alg.labels(), Field::Complex);
  for (int i = 0; i < real_alg.dim(); ++i)
    for (int j = i + 1; j < real_alg.dim(); ++j) out.set_bracket(i, j, real_alg.bracket(i, j));
  return out;
}

Realification realify(const LieAlgebra& complex_alg) {
  int n = complex_alg.dim();
  std::vector<std::string> labels = complex_alg.labels();
  for (int k = 0; k < n; ++k) labels.push_back("i*" + complex_alg.labels()[k]);
  LieAlgebra out(2 * n, labels, Field::Real);
  auto split = [&](const SparseVec& v, bool times_i, int sign) {
    SparseVec r;
    for (const auto& [k, c] : v) {
      if (!times_i) {
        if (sgn(c.re)) r.emplace_back(k, GQ(Q(sign * c.re)));
        if (sgn(c.im)) r.emplace_back(n + k, GQ(Q(sign * c.im)));
      } else {
        // i * (a + bi) b_k = -b b_k + a (i b_k)
        if (sgn(c.im)) r.emplace_back(k, GQ(Q(-sign * c.im)));
        if (sgn(c.re)) r.emplace_back(n + k, GQ(Q(sign * c.re)));
      }
    }
    return r;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const SparseVec& c = complex_alg.bracket(i, j);
      if (i < j) {
        out.set_bracket(i, j, split(c, false, 1));
        out.set_bracket(n + i, n + j, split(c, false, -1));
      }
      out.set_bracket(i, n + j, split(c, true, 1));
    }
  }
  Mat jmat(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    jmat(n + k, k) = 1;
    jmat(k, n + k) = -1;
  }
  return {out, jmat};
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  int n = a.dim() + b.dim();
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  Field f = (a.field() == Field::Complex || b.field() == Field::Complex) ? Field::Complex : Field::Real;
  LieAlgebra out(n, labels, f);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j) out.set_bracket(i, j, a.bracket(i, j));
  int off = a.dim();
  for (int i = 0; i < b.dim(); ++i) {
    for (int j = i + 1; j < b.dim(); ++j) {
      SparseVec v;
      for (const auto& [k, c] : b.bracket(i, j)) v.emplace_back(off + k, c);
      out.set_bracket(off + i, off + j, v);
    }
  }
  return out;
}

nlohmann::json to_json(const LieAlgebra& alg) {
  nlohmann::json j;
  j["dim"] = alg.dim();
  j["labels"] = alg.labels();
  j["field"] = alg.field() == Field::Real ? "real" : "complex";
  nlohmann::json entries = nlohmann::json::array();
  for (int a = 0; a < alg.dim(); ++a)
    for (int b = a + 1; b < alg.dim(); ++b)
      for (const auto& [k, c] : alg.bracket(a, b)) entries.push_back({a, b, k, to_string(c)});
  j["bracket"] = entries;
  return j;
}

LieAlgebra lie_algebra_from_json(const nlohmann::json& j) {
  int dim = j.at("dim").get<int>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  std::string field = j.value("field", std::string("real"));
  if (field != "real" && field != "complex") throw std::invalid_argument("field must be real or complex");
  LieAlgebra alg(dim, labels, field == "real" ? Field::Real : Field::Complex);
  for (const auto& e : j.at("bracket")) {
    int a = e.at(0).get<int>();
    int b = e.at(1).get<int>();
    int k = e.at(2).get<int>();
    if (a < 0 || b < 0 || k < 0 || a >= dim || b >= dim || k >= dim || a == b) {
      throw std::invalid_argument("bracket entry index out of range");
    }
    GQ c = e.at(3).is_string() ? parse_gaussian(e.at(3).get<std::string>()) : GQ(e.at(3).get<long>());
    if (field == "real" && !c.is_real()) throw std::invalid_argument("complex constant in a real algebra");
    alg.add_bracket_term(a, b, k, c);
  }
  return alg;
}

}  // namespace btp
