#include <algorithm>

#include "btp/hermgeo.hpp"
#include "internal.hpp"

namespace btp {

InfinitesimalModel InfinitesimalModel::blank(std::string name, int dim_m, int dim_h) {
  InfinitesimalModel m;
  m.name = std::move(name);
  m.dim_m = dim_m;
  m.dim_h = dim_h;
  for (int k = 0; k < dim_m; ++k) m.labels.push_back("e" + std::to_string(k + 1));
  m.J = Mat(dim_m, dim_m);
  m.g = Mat(dim_m, dim_m);
  m.conj = Mat::identity(dim_m);
  m.isotropy.assign(dim_h, Mat(dim_m, dim_m));
  return m;
}

void InfinitesimalModel::set_bracket_m(int i, int j, int k, const GQ& c) {
  bracket_m.add({k, i, j}, c);
  bracket_m.add({k, j, i}, -c);
}

void InfinitesimalModel::set_bracket_h(int i, int j, int a, const GQ& c) {
  bracket_h.add({a, i, j}, c);
  bracket_h.add({a, j, i}, -c);
}

Vec InfinitesimalModel::bracket(const Vec& x, const Vec& y) const {
  Vec out(dim_m);
  int idx[3];
  for (const auto& [key, c] : bracket_m.data()) {
    bracket_m.unpack(key, idx);
    if (x[idx[1]].is_zero() || y[idx[2]].is_zero()) continue;
    out[idx[0]] += c * x[idx[1]] * y[idx[2]];
  }
  return out;
}

Vec InfinitesimalModel::conjugate(const Vec& x) const { return conj * btp::conj(x); }

GQ InfinitesimalModel::hermitian(const Vec& x, const Vec& y) const { return dot(x, g * conjugate(y)); }

InfinitesimalModel group_model(const std::string& name, const LieAlgebra& real_alg, const Mat& J, const Mat& g) {
  InfinitesimalModel m = InfinitesimalModel::blank(name, real_alg.dim());
  m.labels = real_alg.labels();
  for (int i = 0; i < real_alg.dim(); ++i)
    for (int j = i + 1; j < real_alg.dim(); ++j)
      for (const auto& [k, c] : real_alg.bracket(i, j)) m.set_bracket_m(i, j, k, c);
  m.J = J;
  m.g = g;
  return m;
}

namespace detail {

BracketTable::BracketTable(const InfinitesimalModel& model) : n(model.dim_m), table(static_cast<std::size_t>(n) * n) {
  int idx[3];
  for (const auto& [key, c] : model.bracket_m.data()) {
    if (c.is_zero()) continue;
    model.bracket_m.unpack(key, idx);
    table[static_cast<std::size_t>(idx[1]) * n + idx[2]].emplace_back(idx[0], c);
  }
}

Vec BracketTable::apply(const Vec& x, const Vec& y) const {
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const auto& entries = at(i, j);
      if (entries.empty()) continue;
      GQ xy = x[i] * y[j];
      for (const auto& [k, c] : entries) out[k].add_product(xy, c);
    }
  }
  return out;
}

Vec unit(int n, int k) {
  Vec v(n);
  v[k] = 1;
  return v;
}

}  // namespace detail

void validate(const InfinitesimalModel& model) {
  int n = model.dim_m;
  auto shape_ok = [n](const Mat& m) { return m.rows() == n && m.cols() == n; };
  if (!shape_ok(model.J) || !shape_ok(model.g) || !shape_ok(model.conj)) {
    throw ModelError(model.name + ": J, g and conj must be square of size dim m");
  }
  if (static_cast<int>(model.isotropy.size()) != model.dim_h) {
    throw ModelError(model.name + ": isotropy list size differs from dim h");
  }
  Mat minus_id = Mat::identity(n) * GQ(-1);
  if (!(model.J * model.J == minus_id)) throw ModelError(model.name + ": J^2 != -1");
  if (!(model.g == model.g.transpose())) throw ModelError(model.name + ": metric is not symmetric");
  if (!(model.J.transpose() * model.g * model.J == model.g)) {
    throw ModelError(model.name + ": metric is not J-invariant");
  }
  const Mat& s = model.conj;
  if (!(s * s.conj() == Mat::identity(n))) throw ModelError(model.name + ": conjugation is not an involution");
  if (!(model.J * s == s * model.J.conj())) throw ModelError(model.name + ": J is not real");
  if (!(s.transpose() * model.g * s == model.g.conj())) throw ModelError(model.name + ": metric is not real");
  for (int a = 0; a < model.dim_h; ++a) {
    const Mat& lam = model.isotropy[a];
    if (!shape_ok(lam)) throw ModelError(model.name + ": isotropy matrix has wrong size");
    if (!(lam.transpose() * model.g + model.g * lam).is_zero()) {
      throw ModelError(model.name + ": isotropy is not g-skew");
    }
    if (!commutator(lam, model.J).is_zero()) throw ModelError(model.name + ": isotropy does not commute with J");
  }
  if (!is_hermitian_positive_definite(model.g * s)) {
    throw ModelError(model.name + ": Hermitian form is not positive definite");
  }
  detail::BracketTable br(model);
  for (int i = 0; i < n; ++i) {
    Vec x = detail::unit(n, i);
    Vec jx = model.J * x;
    for (int j = i + 1; j < n; ++j) {
      Vec y = detail::unit(n, j);
      Vec jy = model.J * y;
      Vec nij = br.apply(jx, jy);
      nij = sub(nij, model.J * br.apply(jx, y));
      nij = sub(nij, model.J * br.apply(x, jy));
      nij = sub(nij, br.apply(x, y));
      if (!is_zero(nij)) {
        throw ModelError(model.name + ": J is not integrable (Nijenhuis nonzero at " +
                         describe_witness(model, {i, j}) + ")");
      }
    }
  }
}

Mat fundamental_form(const InfinitesimalModel& model) { return model.J.transpose() * model.g; }

Tensor exterior_derivative(const InfinitesimalModel& model, const Tensor& form) {
  int k = form.order();
  // F(p, q, r_1..r_{k-1}) = form([e_p, e_q]_m, e_r1, ...).
  Tensor f(k + 1);
  std::vector<std::vector<std::pair<Tensor::Key, GQ>>> by_first(model.dim_m);
  int idx[8];
  for (const auto& [key, v] : form.data()) {
    if (v.is_zero()) continue;
    form.unpack(key, idx);
    by_first[idx[0]].emplace_back(key, v);
  }
  int bidx[3];
  int fidx[8];
  for (const auto& [bkey, c] : model.bracket_m.data()) {
    if (c.is_zero()) continue;
    model.bracket_m.unpack(bkey, bidx);
    for (const auto& [key, v] : by_first[bidx[0]]) {
      form.unpack(key, idx);
      fidx[0] = bidx[1];
      fidx[1] = bidx[2];
      for (int r = 1; r < k; ++r) fidx[r + 1] = idx[r];
      f.add(f.pack(fidx), c * v);
    }
  }
  Tensor out(k + 1);
  int place[8];
  for (const auto& [key, v] : f.data()) {
    if (v.is_zero()) continue;
    f.unpack(key, fidx);
    for (int i = 0; i <= k; ++i) {
      for (int j = i + 1; j <= k; ++j) {
        place[i] = fidx[0];
        place[j] = fidx[1];
        int r = 2;
        for (int pos = 0; pos <= k; ++pos) {
          if (pos == i || pos == j) continue;
          place[pos] = fidx[r++];
        }
        GQ signed_v = ((i + j) % 2 == 0) ? v : -v;
        out.add(out.pack(place), signed_v);
      }
    }
  }
  out.prune();
  return out;
}

Tensor d_omega(const InfinitesimalModel& model) {
  Mat omega = fundamental_form(model);
  Tensor w(2);
  for (int i = 0; i < model.dim_m; ++i)
    for (int j = 0; j < model.dim_m; ++j)
      if (!omega(i, j).is_zero()) w.add({i, j}, omega(i, j));
  return exterior_derivative(model, w);
}

Tensor lower_output(const InfinitesimalModel& model, const Tensor& t) {
  int order = t.order();
  Tensor out(order);
  int idx[8];
  int res[8];
  int n = model.dim_m;
  for (const auto& [key, v] : t.data()) {
    if (v.is_zero()) continue;
    t.unpack(key, idx);
    for (int s = 1; s < order; ++s) res[s - 1] = idx[s];
    for (int x = 0; x < n; ++x) {
      const GQ& gx = model.g(idx[0], x);
      if (gx.is_zero()) continue;
      res[order - 1] = x;
      out.add(out.pack(res), v * gx);
    }
  }
  out.prune();
  return out;
}

std::string describe_witness(const InfinitesimalModel& model, const std::vector<int>& idx) {
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ", ";
    int i = idx[k];
    s += (i >= 0 && i < static_cast<int>(model.labels.size())) ? model.labels[i] : std::to_string(i);
  }
  return s + ")";
}

}  // namespace btp
