#include <algorithm>
#include <cmath>
#include <map>

#include "btp/groupgeom.hpp"

namespace btp {

namespace {

Q max_entry(const Mat& m) {
  Q best = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Q re = abs(m(i, j).re);
      Q im = abs(m(i, j).im);
      if (re > best) best = re;
      if (im > best) best = im;
    }
  return best;
}

std::optional<Q> rational_sqrt(const Q& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Q(rn, rd);
}

// Positive c with B tG^{-1} conj(B) = c G, or an error naming the metric.
Q killing_relation_constant(const Mat& killing, const ComplexGroupMetric& m) {
  auto inv = inverse(m.hermitian.transpose());
  if (!inv) throw GroupGeomError(m.name + ": metric matrix is singular");
  Mat lhs = killing * *inv * killing.conj();
  const GQ& g00 = m.hermitian(0, 0);
  GQ c = lhs(0, 0) / g00;
  if (!c.is_real() || sgn(c.re) <= 0 || !(lhs == m.hermitian * c)) {
    throw GroupGeomError(m.name + ": B tg^{-1} conj(B) is not a positive multiple of g; the metric is not BTP");
  }
  return c.re;
}

}  // namespace

InfinitesimalModel to_model(const ComplexGroupMetric& metric) {
  const Mat& h = metric.hermitian;
  int n = metric.algebra.dim();
  if (h.rows() != n || h.cols() != n) throw GroupGeomError("metric size does not match the algebra");
  if (!(h == h.adjoint())) throw GroupGeomError("metric matrix is not Hermitian");
  Realification real = realify(metric.algebra);
  Mat g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(i, j) = GQ(h(i, j).re);
      g(n + i, n + j) = GQ(h(i, j).re);
      g(i, n + j) = GQ(h(i, j).im);
      g(n + i, j) = GQ(Q(-h(i, j).im));
    }
  return group_model(metric.name, real.algebra, real.complex_structure, g);
}

ComplexGroupMetric canonical_complex_metric(const CartanType& ct) {
  ChevalleyData ch{RootSystem(ct)};
  LieAlgebra alg = complexify(compact_real_form(ch));
  // The Killing form of the realification is twice the real part of the
  // complex one; on u the complex form is already real.
  Mat b = killing_form(alg).matrix;
  return {"canonical " + ct.name(), alg, b * GQ(-2)};
}

InfinitesimalModel canonical_metric(const CartanType& ct) { return to_model(canonical_complex_metric(ct)); }

Btp2Report btp2_identity(const InfinitesimalModel& model) {
  Btp2Report rep;
  rep.model_btp = check_btp(model).holds;
  UnitaryComponents uc = unitary_components(model);
  int n = uc.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double lhs = 0;
      double rhs = 0;
      for (int r = 0; r < n; ++r) {
        lhs += std::norm(uc.T(j, i, r));
        rhs += std::norm(uc.T(i, j, r));
      }
      double d = std::abs(lhs - rhs);
      if (d > rep.residual) {
        rep.residual = d;
        rep.i = i;
        rep.j = j;
      }
    }
  // |T^k_ij|^2 in the unit frame is |tau^k_ij|^2 N_k / (N_i N_j).
  OrthogonalFrame frame = holomorphic_frame(model);
  std::vector<GQ> tau = chern_torsion_components(model, frame);
  auto sq = [&](int k, int i, int j) {
    const GQ& t = tau[(static_cast<std::size_t>(k) * n + i) * n + j];
    return Q((t.re * t.re + t.im * t.im) * frame.norms[k] / (frame.norms[i] * frame.norms[j]));
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Q d = 0;
      for (int r = 0; r < n; ++r) d += sq(j, i, r) - sq(i, j, r);
      if (abs(d) > rep.exact_residual) rep.exact_residual = abs(d);
    }
  return rep;
}

Tensor torsion_killing_form(const InfinitesimalModel& model) {
  Tensor tc = torsion(model, chern_connection(model));
  // Entries T^r(s, x) grouped by (r, s).
  std::map<std::pair<int, int>, std::vector<std::pair<int, GQ>>> by_pair;
  int idx[3];
  for (const auto& [key, v] : tc.data()) {
    if (v.is_zero()) continue;
    tc.unpack(key, idx);
    by_pair[{idx[0], idx[1]}].emplace_back(idx[2], v);
  }
  Tensor b(2);
  for (const auto& [rs, left] : by_pair) {
    auto it = by_pair.find({rs.second, rs.first});
    if (it == by_pair.end()) continue;
    for (const auto& [x, u] : left)
      for (const auto& [y, w] : it->second) b.add({x, y}, u * w);
  }
  b.prune();
  return b;
}

bool torsion_killing_parallel(const InfinitesimalModel& model) {
  return covariant_derivative(bismut_connection(model), torsion_killing_form(model), false).is_zero();
}

double torsion_killing_parallel_residual(const InfinitesimalModel& model) {
  UnitaryComponents uc = unitary_components(model);
  int n = uc.n;
  std::vector<cplx> b(static_cast<std::size_t>(n) * n);
  auto B = [&](int i, int j) -> cplx& { return b[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) B(i, j) += uc.T(r, s, i) * uc.T(s, r, j);
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        cplx holo = 0;
        cplx anti = 0;
        for (int l = 0; l < n; ++l) {
          holo += uc.T(l, k, i) * B(l, j) + uc.T(l, k, j) * B(i, l);
          anti += std::conj(uc.T(i, k, l)) * B(l, j) + std::conj(uc.T(j, k, l)) * B(i, l);
        }
        worst = std::max({worst, std::abs(holo), std::abs(anti)});
      }
  return worst;
}

BIsometryReport b_isometry_relation(const ComplexGroupMetric& first, const ComplexGroupMetric& second) {
  const LieAlgebra& alg = first.algebra;
  if (alg.dim() != second.algebra.dim() || to_json(alg) != to_json(second.algebra)) {
    throw GroupGeomError("metrics live on different Lie algebras");
  }
  if (!is_simple(alg)) throw GroupGeomError("the algebra is not simple");
  Mat killing = killing_form(alg).matrix;

  BIsometryReport rep;
  rep.a1_squared = killing_relation_constant(killing, first);
  rep.a1p_squared = killing_relation_constant(killing, second);
  // h(X, Y) = g(F X, Y) means F^T G = H.
  rep.unscaled = inverse(first.hermitian)->transpose() * second.hermitian.transpose();
  Q ratio = rep.a1p_squared / rep.a1_squared;
  Mat lhs = rep.unscaled.transpose() * killing * rep.unscaled * GQ(ratio);
  rep.residual = max_entry(lhs - killing);
  if (auto s = rational_sqrt(ratio)) rep.f = rep.unscaled * GQ(*s);
  return rep;
}

Mat exp_ad_nilpotent(const LieAlgebra& alg, const Vec& x) {
  Mat ad = alg.ad(x);
  int n = alg.dim();
  Mat out = Mat::identity(n);
  Mat term = Mat::identity(n);
  for (int k = 1; k <= n; ++k) {
    term = term * ad * GQ(Q(1, k));
    if (term.is_zero()) return out;
    out += term;
  }
  if (!(term * ad).is_zero()) throw GroupGeomError("ad x is not nilpotent");
  return out;
}

ComplexGroupMetric pull_back(const ComplexGroupMetric& metric, const Mat& automorphism) {
  return {metric.name + " pulled back", metric.algebra,
          automorphism.transpose() * metric.hermitian * automorphism.conj()};
}

}  // namespace btp
