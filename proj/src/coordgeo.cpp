#include "btp/coordgeo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace btp {

namespace {

const cplx kI(0.0, 1.0);

struct DirectionalPair {
  CMat holo;
  CMat anti;
};

// d/dz_m and d/dzbar_m of a matrix-valued function by central differences.
template <class F>
DirectionalPair wirtinger(const F& f, const CVec& z, int m, double h) {
  CVec zp = z, zm = z;
  zp[m] += h;
  zm[m] -= h;
  CMat dx = (f(zp) - f(zm)) / (2 * h);
  zp = z;
  zm = z;
  zp[m] += kI * h;
  zm[m] -= kI * h;
  CMat dy = (f(zp) - f(zm)) / (2 * h);
  return {0.5 * (dx - kI * dy), 0.5 * (dx + kI * dy)};
}

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<CMat> holomorphic_derivatives(const CoordinateMetric& metric, const CVec& z, double h) {
  if (metric.holomorphic_derivatives) return metric.holomorphic_derivatives(z);
  std::vector<CMat> d;
  for (int k = 0; k < metric.n; ++k) d.push_back(wirtinger(metric.metric, z, k, h).holo);
  return d;
}

// Everything at a point that needs no derivative of the frame.
struct Local {
  CMat g;
  CMat g_inv;
  std::vector<CMat> dg;     // d/dz_k G
  std::vector<CMat> gamma;  // gamma[k](i, j): nabla_{d_k} d_i = sum_j gamma[k](i, j) d_j
  CMat frame;
  CMat frame_inv;
  std::vector<cplx> torsion;  // [j][i][k] in the unitary frame
};

void check_point(const CoordinateMetric& metric, const CVec& z, double h) {
  if (z.size() != metric.n) throw CoordGeoError("point has dimension " + std::to_string(z.size()) + ", expected " +
                                                std::to_string(metric.n));
  if (!(h > 0)) throw CoordGeoError("finite-difference step must be positive");
}

CMat unitary_frame(const CMat& g) {
  Eigen::SelfAdjointEigenSolver<CMat> es(g.transpose());
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0) {
    throw CoordGeoError("metric is not positive definite at the sample point");
  }
  return es.operatorInverseSqrt();
}

Local local_data(const CoordinateMetric& metric, const CVec& z, double h) {
  int n = metric.n;
  Local loc;
  loc.g = metric.metric(z);
  if ((loc.g - loc.g.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, max_abs(loc.g))) {
    throw CoordGeoError(metric.name + ": metric matrix is not Hermitian");
  }
  loc.frame = unitary_frame(loc.g);
  loc.frame_inv = loc.frame.inverse();
  loc.g_inv = loc.g.inverse();
  loc.dg = holomorphic_derivatives(metric, z, h);
  for (int k = 0; k < n; ++k) loc.gamma.push_back(loc.dg[k] * loc.g_inv);

  // T(d_i, d_k) = sum_m (gamma[i](k, m) - gamma[k](i, m)) d_m, then moved to the frame.
  std::vector<cplx> coord(static_cast<std::size_t>(n) * n * n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) coord[(m * n + i) * n + k] = loc.gamma[i](k, m) - loc.gamma[k](i, m);
  loc.torsion.assign(coord.size(), cplx(0));
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        cplx s = 0;
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k) {
            cplx pk = loc.frame(i, a) * loc.frame(k, c);
            if (pk == cplx(0)) continue;
            for (int m = 0; m < n; ++m) s += pk * coord[(m * n + i) * n + k] * loc.frame_inv(j, m);
          }
        loc.torsion[(j * n + a) * n + c] = s;
      }
  return loc;
}

CMat torsion_as_matrix(const std::vector<cplx>& t) {
  CMat m(static_cast<Eigen::Index>(t.size()), 1);
  for (std::size_t i = 0; i < t.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = t[i];
  return m;
}

}  // namespace

CoordinateMetric euclidean_metric(int n) {
  CoordinateMetric m;
  m.name = "euclidean C^" + std::to_string(n);
  m.n = n;
  m.metric = [n](const CVec&) { return CMat::Identity(n, n); };
  m.holomorphic_derivatives = [n](const CVec&) { return std::vector<CMat>(n, CMat::Zero(n, n)); };
  return m;
}

CoordinateMetric hopf_metric(int n) {
  CoordinateMetric m;
  m.name = "isosceles Hopf n=" + std::to_string(n);
  m.n = n;
  m.metric = [n](const CVec& z) { return CMat(CMat::Identity(n, n) / z.squaredNorm()); };
  // d/dz_k |z|^{-2} = -conj(z_k) / |z|^4.
  m.holomorphic_derivatives = [n](const CVec& z) {
    double r2 = z.squaredNorm();
    std::vector<CMat> d;
    for (int k = 0; k < n; ++k) d.push_back(CMat::Identity(n, n) * (-std::conj(z[k]) / (r2 * r2)));
    return d;
  };
  return m;
}

CoordinateMetric perturbed_hopf_metric(int n, double eps) {
  CoordinateMetric m;
  m.name = "perturbed Hopf n=" + std::to_string(n);
  m.n = n;
  m.metric = [n, eps](const CVec& z) {
    return CMat(CMat::Identity(n, n) * ((1 + eps * std::norm(z[0])) / z.squaredNorm()));
  };
  return m;
}

CMat hopf_xi(const CVec& z) {
  int n = static_cast<int>(z.size());
  return CMat::Identity(n, n) - z.conjugate() * z.transpose() / z.squaredNorm();
}

MatrixForm hopf_bismut_closed_form(const CVec& z) {
  int n = static_cast<int>(z.size());
  double r2 = z.squaredNorm();
  MatrixForm f;
  for (int m = 0; m < n; ++m) {
    CMat holo = CMat::Identity(n, n) * (std::conj(z[m]) / (2 * r2));
    for (int i = 0; i < n; ++i) holo(i, m) -= std::conj(z[i]) / r2;
    CMat anti = CMat::Identity(n, n) * (-z[m] / (2 * r2));
    for (int j = 0; j < n; ++j) anti(m, j) += z[j] / r2;
    f.holo.push_back(holo);
    f.anti.push_back(anti);
  }
  return f;
}

PointFrameData chern_data_at(const CoordinateMetric& metric, const CVec& z, double h) {
  check_point(metric, z, h);
  int n = metric.n;
  Local loc = local_data(metric, z, h);
  PointFrameData d;
  d.z = z;
  d.frame = loc.frame;
  d.torsion = loc.torsion;
  d.xi = hopf_xi(z);

  auto frame_at = [&](const CVec& w) { return unitary_frame(metric.metric(w)); };
  for (int m = 0; m < n; ++m) {
    DirectionalPair dp = wirtinger(frame_at, z, m, h);
    // theta(X) = (X(P)^T + P^T gamma_X) P^{-T}.
    CMat holo = (dp.holo.transpose() + loc.frame.transpose() * loc.gamma[m]) * loc.frame_inv.transpose();
    CMat anti = dp.anti.transpose() * loc.frame_inv.transpose();
    d.chern.holo.push_back(holo);
    d.chern.anti.push_back(anti);
    // Bismut = Chern + gamma with gamma_ij = T^j_ik phi_k - conj(T^i_jk) conj(phi_k).
    CMat bh = holo;
    CMat ba = anti;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          bh(i, j) += d.T(j, i, k) * loc.frame_inv(k, m);
          ba(i, j) -= std::conj(d.T(i, j, k)) * std::conj(loc.frame_inv(k, m));
        }
    d.bismut.holo.push_back(bh);
    d.bismut.anti.push_back(ba);
  }

  // R_{i jbar k lbar} = -d_i dbar_j G_kl + sum G_{k q, i} Ginv_qp G_{p l, jbar}.
  double outer = metric.holomorphic_derivatives ? h : std::max(h, 1e-4);
  std::vector<std::vector<CMat>> ddbar(n);  // ddbar[j][i] = dbar_j d_i G
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      auto di = [&](const CVec& w) { return holomorphic_derivatives(metric, w, h)[i]; };
      ddbar[j].push_back(wirtinger(di, z, j, outer).anti);
    }
  std::vector<cplx> coord(static_cast<std::size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMat r = -ddbar[j][i] + loc.dg[i] * loc.g_inv * loc.dg[j].adjoint();
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) coord[((i * n + j) * n + k) * n + l] = r(k, l);
    }
  d.curvature.assign(coord.size(), cplx(0));
  const CMat& p = loc.frame;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          cplx s = 0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                  s += p(i, a) * std::conj(p(j, b)) * p(k, c) * std::conj(p(l, e)) * coord[((i * n + j) * n + k) * n + l];
          d.curvature[((a * n + b) * n + c) * n + e] = s;
        }
  return d;
}

HopfResidual hopf_btp_residual(const CoordinateMetric& metric, const std::vector<CVec>& points, double h) {
  HopfResidual res;
  if (h < 1e-7) res.warnings.push_back("step below 1e-7: round-off cancellation dominates central differences");
  int n = metric.n;
  auto torsion_at = [&](const CVec& w) { return torsion_as_matrix(local_data(metric, w, h).torsion); };
  for (const CVec& z : points) {
    PointFrameData d = chern_data_at(metric, z, h);
    MatrixForm closed = hopf_bismut_closed_form(z);
    for (int m = 0; m < n; ++m) {
      DirectionalPair dt = wirtinger(torsion_at, z, m, h);
      DirectionalPair dxi = wirtinger(hopf_xi, z, m, h);
      for (int side = 0; side < 2; ++side) {
        const CMat& th = side == 0 ? d.bismut.holo[m] : d.bismut.anti[m];
        const CMat& dT = side == 0 ? dt.holo : dt.anti;
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
              cplx v = dT((j * n + i) * n + k, 0);
              for (int r = 0; r < n; ++r) {
                v += d.T(r, i, k) * th(r, j);
                v -= th(i, r) * d.T(j, r, k);
                v -= th(k, r) * d.T(j, i, r);
              }
              res.btp = std::max(res.btp, std::abs(v));
            }
        const CMat& dx = side == 0 ? dxi.holo : dxi.anti;
        res.xi_identity = std::max(res.xi_identity, max_abs(dx - (th * d.xi - d.xi * th)));
        const CMat& cf = side == 0 ? closed.holo[m] : closed.anti[m];
        res.theta_gap = std::max(res.theta_gap, max_abs(th - cf));
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            cplx expected = k == l ? d.xi(i, j) : cplx(0);
            res.curvature_gap = std::max(res.curvature_gap, std::abs(d.R(i, j, k, l) - expected));
          }
    ++res.points;
  }
  return res;
}

std::vector<CVec> annulus_samples(int n, int count, std::uint64_t seed, double r_min, double r_max) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(r_min, r_max);
  std::vector<CVec> pts;
  for (int s = 0; s < count; ++s) {
    CVec z(n);
    for (int k = 0; k < n; ++k) z[k] = cplx(gauss(rng), gauss(rng));
    z *= radius(rng) / z.norm();
    pts.push_back(z);
  }
  return pts;
}

ConvergenceReport hopf_convergence(const CoordinateMetric& metric, const std::vector<CVec>& points, double h0,
                                   int levels) {
  ConvergenceReport rep;
  double h = h0;
  for (int k = 0; k < levels; ++k, h /= 2) {
    HopfResidual r = hopf_btp_residual(metric, points, h);
    rep.steps.push_back(h);
    rep.btp.push_back(r.btp);
    rep.xi_identity.push_back(r.xi_identity);
  }
  rep.order = INFINITY;
  for (int k = 0; k + 1 < levels; ++k) {
    rep.order = std::min(rep.order, std::log2(rep.btp[k] / rep.btp[k + 1]));
    rep.order = std::min(rep.order, std::log2(rep.xi_identity[k] / rep.xi_identity[k + 1]));
  }
  return rep;
}

}  // namespace btp
