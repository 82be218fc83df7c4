#include <algorithm>
#include <cmath>

#include "btp/hermgeo.hpp"
#include "internal.hpp"

namespace btp {

namespace {

struct FrameData {
  OrthogonalFrame frame;
  int n = 0;
  Mat basis;      // columns f_1..f_n, conj f_1..conj f_n
  Mat basis_inv;  // coordinates of a vector in that basis
  std::vector<double> scale;  // sqrt(nu) per frame index (both halves)
};

FrameData make_frame(const InfinitesimalModel& model) {
  FrameData fd;
  fd.frame = holomorphic_frame(model);
  fd.n = fd.frame.size();
  int n = fd.n;
  fd.basis = Mat(model.dim_m, 2 * n);
  for (int i = 0; i < n; ++i) {
    fd.basis.set_column(i, fd.frame.vectors[i]);
    fd.basis.set_column(n + i, model.conjugate(fd.frame.vectors[i]));
  }
  auto inv = inverse(fd.basis);
  if (!inv) throw ModelError(model.name + ": frame is not a basis");
  fd.basis_inv = *inv;
  fd.scale.resize(2 * n);
  for (int i = 0; i < n; ++i) fd.scale[i] = fd.scale[n + i] = std::sqrt(fd.frame.norms[i].get_d());
  return fd;
}

// Expresses a tensor in the frame basis. The output slot (if any) uses the
// inverse basis; argument slots substitute frame vectors.
Tensor to_frame(const Tensor& t, const FrameData& fd, int output_slot) {
  Tensor out = t;
  Mat out_map = fd.basis_inv.transpose();
  for (int s = 0; s < t.order(); ++s) out = apply_slot(out, s, s == output_slot ? out_map : fd.basis);
  return out;
}

// Nomizu operator in the frame basis: result[a](o, c) = coefficient of frame
// vector o in Lambda(frame a) frame c.
std::vector<Mat> operator_in_frame(const NomizuOperator& nabla, const FrameData& fd) {
  std::vector<Mat> out;
  for (int a = 0; a < 2 * fd.n; ++a) {
    out.push_back(fd.basis_inv * nabla.at(fd.basis.column(a)) * fd.basis);
  }
  return out;
}

std::size_t idx3(int n, int a, int b, int c) { return (static_cast<std::size_t>(a) * n + b) * n + c; }
std::size_t idx4(int n, int a, int b, int c, int d) {
  return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d;
}

}  // namespace

UnitaryComponents unitary_components(const InfinitesimalModel& model) {
  validate(model);
  FrameData fd = make_frame(model);
  int n = fd.n;
  const auto& s = fd.scale;
  UnitaryComponents uc;
  uc.n = n;

  NomizuOperator nb = bismut_connection(model);
  NomizuOperator nc = chern_connection(model);
  Tensor tc = torsion(model, nc);

  Tensor tf = to_frame(tc, fd, 0);
  uc.torsion.assign(static_cast<std::size_t>(n) * n * n, cplx{});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) uc.torsion[idx3(n, k, i, j)] = tf.get({k, i, j}).to_complex() * s[k] / (s[i] * s[j]);

  // Keyed (x, out, a, b).
  Tensor df = to_frame(covariant_derivative(nb, tc, true), fd, 1);
  uc.torsion_derivative.assign(static_cast<std::size_t>(n) * n * n * n, cplx{});
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          uc.torsion_derivative[idx4(n, l, i, k, j)] =
              df.get({n + j, l, i, k}).to_complex() * s[l] / (s[j] * s[i] * s[k]);

  auto lowered = [&](const Tensor& r) {
    Tensor rf = to_frame(lower_output(model, r), fd, -1);
    std::vector<cplx> out(static_cast<std::size_t>(n) * n * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            out[idx4(n, i, j, k, l)] = rf.get({i, n + j, k, n + l}).to_complex() / (s[i] * s[j] * s[k] * s[l]);
    return out;
  };
  uc.chern_curvature = lowered(curvature(model, nc));
  uc.bismut_curvature = lowered(curvature(model, nb));
  return uc;
}

FrameResiduals frame_residuals(const InfinitesimalModel& model) {
  UnitaryComponents uc = unitary_components(model);
  int n = uc.n;
  FrameResiduals res;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx first{};
          cplx second{};
          cplx quad{};
          for (int r = 0; r < n; ++r) {
            first += uc.T(l, r, i) * uc.T(r, j, k) + uc.T(l, r, j) * uc.T(r, k, i) + uc.T(l, r, k) * uc.T(r, i, j);
            second += uc.T(j, i, r) * std::conj(uc.T(k, l, r)) - uc.T(j, k, r) * std::conj(uc.T(i, l, r)) +
                      uc.T(r, i, k) * std::conj(uc.T(r, j, l));
            quad += uc.T(l, i, r) * std::conj(uc.T(k, j, r)) - uc.T(r, i, k) * std::conj(uc.T(r, j, l)) -
                    uc.T(j, i, r) * std::conj(uc.T(k, l, r)) - uc.T(l, k, r) * std::conj(uc.T(i, j, r));
          }
          res.quadratic_first = std::max(res.quadratic_first, std::abs(first));
          res.quadratic_second = std::max(res.quadratic_second, std::abs(second));
          cplx rhs = uc.dT(l, i, k, j) + std::conj(uc.dT(k, j, l, i)) + quad;
          cplx lhs = uc.Rb(i, j, k, l) - uc.R(i, j, k, l);
          res.curvature_difference = std::max(res.curvature_difference, std::abs(lhs - rhs));
        }

  // Bismut connection rebuilt from Levi-Civita and Chern through the frame
  // relations, then used to differentiate the Chern torsion in doubles.
  FrameData fd = make_frame(model);
  const auto& s = fd.scale;
  std::vector<Mat> lc = operator_in_frame(levi_civita(model), fd);
  std::vector<Mat> ch = operator_in_frame(chern_connection(model), fd);
  int m2 = 2 * n;
  // lb[a][o][c] in the unitary frame (u_1..u_n, conj u_1..conj u_n).
  std::vector<cplx> lb(static_cast<std::size_t>(m2) * m2 * m2);
  auto at = [&](int a, int o, int c) -> cplx& { return lb[(static_cast<std::size_t>(a) * m2 + o) * m2 + c]; };
  for (int a = 0; a < m2; ++a)
    for (int c = 0; c < n; ++c)
      for (int o = 0; o < m2; ++o) {
        GQ v = lc[a](o, c) * GQ(2) - ch[a](o, c);
        cplx u = v.to_complex() * s[o] / (s[a] * s[c]);
        if (a >= n && o >= n) u -= uc.T(a - n, c, o - n);
        at(a, o, c) = u;
      }
  for (int a = 0; a < m2; ++a)
    for (int c = n; c < m2; ++c)
      for (int o = 0; o < m2; ++o) at(a, o, c) = std::conj(at((a + n) % m2, (o + n) % m2, c - n));

  auto full_t = [&](int o, int a, int b) -> cplx {
    if (a < n && b < n) return o < n ? uc.T(o, a, b) : cplx{};
    if (a >= n && b >= n) return o >= n ? std::conj(uc.T(o - n, a - n, b - n)) : cplx{};
    return {};
  };
  for (int a = 0; a < m2; ++a)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          cplx v{};
          for (int o = 0; o < m2; ++o) {
            v += at(a, l, o) * full_t(o, i, k);
            v -= full_t(l, o, k) * at(a, o, i);
            v -= full_t(l, i, o) * at(a, o, k);
          }
          res.componentwise_btp = std::max(res.componentwise_btp, std::abs(v));
          if (a >= n) res.frame_formula_gap = std::max(res.frame_formula_gap, std::abs(v - uc.dT(l, i, k, a - n)));
        }
  return res;
}

std::vector<int> bismut_frame_relation_witness(const InfinitesimalModel& model) {
  validate(model);
  OrthogonalFrame frame = holomorphic_frame(model);
  int n = frame.size();
  NomizuOperator lc = levi_civita(model);
  NomizuOperator nb = bismut_connection(model);
  NomizuOperator nc = chern_connection(model);
  Tensor tc = torsion(model, nc);
  auto apply_t = [&](const Vec& x, const Vec& y) {
    Vec out(model.dim_m);
    int idx[3];
    for (const auto& [key, c] : tc.data()) {
      tc.unpack(key, idx);
      if (x[idx[1]].is_zero() || y[idx[2]].is_zero()) continue;
      out[idx[0]] += c * x[idx[1]] * y[idx[2]];
    }
    return out;
  };
  for (int i = 0; i < n; ++i) {
    const Vec& x = frame.vectors[i];
    Vec xbar = model.conjugate(x);
    for (int j = 0; j < n; ++j) {
      const Vec& y = frame.vectors[j];
      // Bismut = 2 LC - Chern in (1,0) directions.
      Vec diff1 = sub(nb.at(x) * y, sub(scaled(lc.at(x) * y, GQ(2)), nc.at(x) * y));
      if (!is_zero(diff1)) return {i, j, 0};
      // Conjugate direction: subtract the (0,1) vector W with g(W, z) = g(T(y, z), conj x).
      Vec w(model.dim_m);
      for (int k = 0; k < n; ++k) {
        GQ c = dot(apply_t(y, frame.vectors[k]), model.g * xbar) / GQ(frame.norms[k]);
        if (!c.is_zero()) w = add(w, scaled(model.conjugate(frame.vectors[k]), c));
      }
      Vec rhs = sub(sub(scaled(lc.at(xbar) * y, GQ(2)), w), nc.at(xbar) * y);
      if (!is_zero(sub(nb.at(xbar) * y, rhs))) return {i, j, 1};
    }
  }
  return {};
}

}  // namespace btp
