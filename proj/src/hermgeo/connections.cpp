#include <stdexcept>

#include "btp/hermgeo.hpp"
#include "internal.hpp"

namespace btp {

namespace {

Mat metric_inverse(const InfinitesimalModel& model) {
  auto inv = inverse(model.g);
  if (!inv) throw ModelError(model.name + ": degenerate metric");
  return *inv;
}

// Adds sum_z ginv(w, z) low(x, y, z) into op[x](w, y).
void add_raised(NomizuOperator& nabla, const Tensor& low, const Mat& ginv) {
  int n = nabla.dim();
  int idx[3];
  for (const auto& [key, v] : low.data()) {
    if (v.is_zero()) continue;
    low.unpack(key, idx);
    int x = idx[0];
    int y = idx[1];
    int z = idx[2];
    for (int w = 0; w < n; ++w) {
      const GQ& gi = ginv(w, z);
      if (!gi.is_zero()) nabla.op[x](w, y).add_product(gi, v);
    }
  }
}

}  // namespace

NomizuOperator levi_civita(const InfinitesimalModel& model) {
  int n = model.dim_m;
  Mat ginv = metric_inverse(model);
  NomizuOperator nabla{std::vector<Mat>(n, Mat(n, n))};
  GQ half(Q(1, 2));
  int idx[3];
  for (const auto& [key, c] : model.bracket_m.data()) {
    if (c.is_zero()) continue;
    model.bracket_m.unpack(key, idx);
    nabla.op[idx[1]](idx[0], idx[2]) += half * c;
  }
  // A(z, a, b) = g([z, a]_m, b); U_low(x, y, z) = (A(z, x, y) + A(z, y, x)) / 2.
  Tensor a = lower_output(model, model.bracket_m);
  Tensor u_low(3);
  for (const auto& [key, v] : a.data()) {
    a.unpack(key, idx);
    GQ hv = half * v;
    u_low.add({idx[1], idx[2], idx[0]}, hv);
    u_low.add({idx[2], idx[1], idx[0]}, hv);
  }
  add_raised(nabla, u_low, ginv);
  return nabla;
}

NomizuOperator gauduchon_connection(const InfinitesimalModel& model, const Q& t) {
  NomizuOperator nabla = levi_civita(model);
  Tensor dw = d_omega(model);
  if (dw.is_zero()) return nabla;
  Mat ginv = metric_inverse(model);
  Tensor jx = apply_slot(dw, 0, model.J);
  Tensor jjj = apply_slot(apply_slot(jx, 1, model.J), 2, model.J);
  Tensor phi(3);
  GQ c1(Q(-(t - 1) / 4));
  GQ c2(Q(-(t + 1) / 4));
  if (!c1.is_zero()) {
    Tensor part = jjj;
    part *= c1;
    phi += part;
  }
  if (!c2.is_zero()) {
    Tensor part = jx;
    part *= c2;
    phi += part;
  }
  add_raised(nabla, phi, ginv);
  return nabla;
}

NomizuOperator bismut_connection(const InfinitesimalModel& model) { return gauduchon_connection(model, Q(-1)); }

NomizuOperator chern_connection(const InfinitesimalModel& model) { return gauduchon_connection(model, Q(1)); }

Tensor torsion(const InfinitesimalModel& model, const NomizuOperator& nabla) {
  int n = model.dim_m;
  Tensor t(3);
  for (int x = 0; x < n; ++x) {
    const Mat& lx = nabla.op[x];
    for (int o = 0; o < n; ++o) {
      for (int y = 0; y < n; ++y) {
        const GQ& v = lx(o, y);
        if (v.is_zero()) continue;
        t.add({o, x, y}, v);
        t.add({o, y, x}, -v);
      }
    }
  }
  t -= model.bracket_m;
  t.prune();
  return t;
}

Tensor curvature(const InfinitesimalModel& model, const NomizuOperator& nabla) {
  int n = model.dim_m;
  detail::BracketTable br(model);
  // [e_x, e_y]_h lookup.
  std::vector<std::vector<std::pair<int, GQ>>> hpart(static_cast<std::size_t>(n) * n);
  int idx[3];
  for (const auto& [key, c] : model.bracket_h.data()) {
    if (c.is_zero()) continue;
    model.bracket_h.unpack(key, idx);
    hpart[static_cast<std::size_t>(idx[1]) * n + idx[2]].emplace_back(idx[0], c);
  }
  Tensor r(4);
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      Mat m = commutator(nabla.op[x], nabla.op[y]);
      for (const auto& [k, c] : br.at(x, y)) m -= nabla.op[k] * c;
      for (const auto& [a, c] : hpart[static_cast<std::size_t>(x) * n + y]) m -= model.isotropy[a] * c;
      for (int o = 0; o < n; ++o) {
        for (int w = 0; w < n; ++w) {
          const GQ& v = m(o, w);
          if (v.is_zero()) continue;
          r.add({o, x, y, w}, v);
          r.add({o, y, x, w}, -v);
        }
      }
    }
  }
  return r;
}

}  // namespace btp
