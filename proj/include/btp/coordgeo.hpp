#pragma once
// Floating-point Hermitian geometry of explicit metrics g_{i jbar}(z) on open
// subsets of C^n, evaluated pointwise with central differences. Used for the
// isosceles Hopf metric, which is not left-invariant on any group.

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace btp {

class CoordGeoError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

struct CoordinateMetric {
  std::string name;
  int n = 0;
  /// Matrix G(z) with G(i, j) = g(d/dz_i, d/dzbar_j).
  std::function<CMat(const CVec&)> metric;
  /// Optional exact d/dz_k G(z), k = 0..n-1. Without it, central differences are used.
  std::function<std::vector<CMat>(const CVec&)> holomorphic_derivatives;
};

CoordinateMetric euclidean_metric(int n);
/// G = I / |z|^2, the metric with Kaehler form i ddbar|z|^2 / |z|^2.
CoordinateMetric hopf_metric(int n);
/// G = (1 + eps |z_1|^2) I / |z|^2; not BTP for eps != 0.
CoordinateMetric perturbed_hopf_metric(int n, double eps);

/// xi = I - conj(z) z^T / |z|^2.
CMat hopf_xi(const CVec& z);

/// A matrix-valued 1-form, stored by its values on d/dz_m and d/dzbar_m.
struct MatrixForm {
  std::vector<CMat> holo;
  std::vector<CMat> anti;
};

/// Closed-form Bismut connection matrix of the Hopf metric in the frame |z| d/dz_i:
/// (1/2)(d - dbar) log|z|^2 I + (dzbar z^T - zbar dz^T) / |z|^2.
MatrixForm hopf_bismut_closed_form(const CVec& z);

/// Geometry at one point in the unitary frame e_a = sum_i P_{ia} d/dz_i with
/// P = (G^T)^{-1/2}. Connection matrices follow nabla e_i = sum_j theta_ij e_j.
struct PointFrameData {
  CVec z;
  CMat frame;
  MatrixForm chern;
  MatrixForm bismut;
  /// Chern torsion T(e_i, e_k) = sum_j T^j_ik e_j, indexed [j][i][k].
  std::vector<cplx> torsion;
  /// Chern curvature R_{i jbar k lbar}, indexed [i][j][k][l].
  std::vector<cplx> curvature;
  CMat xi;

  int n() const { return static_cast<int>(z.size()); }
  cplx T(int j, int i, int k) const { return torsion[(static_cast<std::size_t>(j) * n() + i) * n() + k]; }
  cplx R(int i, int j, int k, int l) const {
    return curvature[((static_cast<std::size_t>(i) * n() + j) * n() + k) * n() + l];
  }
};

/// Throws CoordGeoError when z has the wrong size, h <= 0 or G(z) is not
/// Hermitian positive definite.
PointFrameData chern_data_at(const CoordinateMetric& metric, const CVec& z, double h = 1e-5);

struct HopfResidual {
  /// max over points of |nabla^b T| in the unitary frame.
  double btp = 0;
  /// max |d xi - [theta^b, xi]|.
  double xi_identity = 0;
  /// max |R_{i jbar k lbar} - xi_ij delta_kl|.
  double curvature_gap = 0;
  /// max |theta^b - closed form|.
  double theta_gap = 0;
  int points = 0;
  std::vector<std::string> warnings;
};

/// Finite-difference residuals at each point. The last three entries compare
/// with the Hopf closed forms and are only meaningful for hopf_metric.
HopfResidual hopf_btp_residual(const CoordinateMetric& metric, const std::vector<CVec>& points, double h = 1e-5);

/// Uniform samples in the annulus r_min < |z| < r_max.
std::vector<CVec> annulus_samples(int n, int count, std::uint64_t seed, double r_min = 0.5, double r_max = 2.0);

struct ConvergenceReport {
  std::vector<double> steps;
  std::vector<double> btp;
  std::vector<double> xi_identity;
  /// log2 of successive residual ratios; the smallest over both residuals.
  double order = 0;
};
/// Residuals at h0, h0/2, ..., h0/2^(levels-1).
ConvergenceReport hopf_convergence(const CoordinateMetric& metric, const std::vector<CVec>& points, double h0 = 1e-2,
                                   int levels = 3);

}  // namespace btp
