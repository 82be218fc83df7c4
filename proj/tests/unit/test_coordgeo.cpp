#include "btp/coordgeo.hpp"
#include "doctest.h"

using namespace btp;

TEST_CASE("euclidean metric has zero connection and torsion") {
  CVec z(2);
  z << cplx(0.3, -0.2), cplx(1.1, 0.4);
  PointFrameData d = chern_data_at(euclidean_metric(2), z);
  for (int m = 0; m < 2; ++m) {
    CHECK(d.chern.holo[m].cwiseAbs().maxCoeff() == 0.0);
    CHECK(d.bismut.anti[m].cwiseAbs().maxCoeff() == 0.0);
  }
  for (cplx t : d.torsion) CHECK(std::abs(t) == 0.0);
  for (cplx r : d.curvature) CHECK(std::abs(r) < 1e-12);
  HopfResidual r = hopf_btp_residual(euclidean_metric(2), annulus_samples(2, 5, 3), 1e-5);
  CHECK(r.btp < 1e-12);
}

TEST_CASE("Hopf metric at (1, 0)") {
  CVec z(2);
  z << 1, 0;
  PointFrameData d = chern_data_at(hopf_metric(2), z);
  CHECK(std::abs(d.xi(0, 0)) < 1e-15);
  CHECK(std::abs(d.xi(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(d.xi(0, 1)) < 1e-15);
  CHECK(std::abs(d.R(1, 1, 0, 0) - 1.0) < 1e-8);
  CHECK(std::abs(d.R(0, 0, 0, 0)) < 1e-8);
  CHECK(std::abs(d.R(1, 1, 1, 1) - 1.0) < 1e-8);
  CHECK(std::abs(d.R(1, 1, 0, 1)) < 1e-8);
}

TEST_CASE("Hopf metric is BTP and satisfies d xi = [theta^b, xi]") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    std::vector<CVec> pts = annulus_samples(n, 20, 2024);
    for (const CVec& z : pts) {
      double r = z.norm();
      CHECK(r > 0.5);
      CHECK(r < 2.0);
      // xi is a rank n-1 projection.
      Eigen::SelfAdjointEigenSolver<CMat> es(hopf_xi(z));
      CHECK(std::abs(es.eigenvalues()[0]) < 1e-10);
      for (int k = 1; k < n; ++k) CHECK(std::abs(es.eigenvalues()[k] - 1.0) < 1e-10);
    }
    HopfResidual res = hopf_btp_residual(hopf_metric(n), pts, 1e-5);
    CHECK(res.points == 20);
    CHECK(res.btp < 1e-6);
    CHECK(res.xi_identity < 1e-6);
    CHECK(res.theta_gap < 1e-6);
    CHECK(res.curvature_gap < 1e-6);
    CHECK(res.warnings.empty());

    ConvergenceReport conv = hopf_convergence(hopf_metric(n), pts);
    CHECK(conv.order >= 1.9);
  }
}

TEST_CASE("perturbed Hopf metric is not BTP") {
  std::vector<CVec> pts = annulus_samples(2, 10, 9);
  HopfResidual res = hopf_btp_residual(perturbed_hopf_metric(2, 0.3), pts, 1e-5);
  CHECK(res.btp > 1e-2);
  HopfResidual flat = hopf_btp_residual(perturbed_hopf_metric(2, 0.0), pts, 1e-5);
  CHECK(flat.btp < 1e-6);
}

TEST_CASE("coordinate engine rejects bad input") {
  CVec z(3);
  z << 1, 0, 0;
  CHECK_THROWS_AS(chern_data_at(hopf_metric(2), z), CoordGeoError);
  CVec w(2);
  w << 1, 0;
  CHECK_THROWS_AS(chern_data_at(hopf_metric(2), w, 0.0), CoordGeoError);
  CoordinateMetric bad;
  bad.name = "indefinite";
  bad.n = 2;
  bad.metric = [](const CVec&) {
    CMat g = CMat::Identity(2, 2);
    g(1, 1) = -1;
    return g;
  };
  CHECK_THROWS_AS(chern_data_at(bad, w), CoordGeoError);
  HopfResidual tiny = hopf_btp_residual(hopf_metric(2), {w}, 1e-9);
  CHECK_FALSE(tiny.warnings.empty());
}
