#include <iostream>

#include "btp/hermgeo.hpp"
#include "doctest.h"

using namespace btp;

namespace {

Mat int_matrix(std::initializer_list<std::initializer_list<int>> rows) {
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows.begin()->size());
  Mat m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int v : row) m(i, j++) = GQ(v);
    ++i;
  }
  return m;
}

// J e1 = e2, J e3 = e4 on a real basis.
Mat standard_j4() { return int_matrix({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}); }

InfinitesimalModel abelian_model() {
  InfinitesimalModel m = InfinitesimalModel::blank("R4", 4);
  m.J = standard_j4();
  m.g = Mat::identity(4);
  return m;
}

// su(2) + R with the bi-invariant metric and J e1 = e2, J e3 = e4.
InfinitesimalModel hopf_model() {
  InfinitesimalModel m = InfinitesimalModel::blank("su2+R", 4);
  m.set_bracket_m(0, 1, 2, GQ(1));
  m.set_bracket_m(1, 2, 0, GQ(1));
  m.set_bracket_m(2, 0, 1, GQ(1));
  m.J = standard_j4();
  m.g = Mat::identity(4);
  return m;
}

// Heisenberg + R with [e1, e2] = -e3.
InfinitesimalModel kodaira_thurston_model() {
  InfinitesimalModel m = InfinitesimalModel::blank("KT", 4);
  m.set_bracket_m(0, 1, 2, GQ(-1));
  m.J = standard_j4();
  m.g = Mat::identity(4);
  return m;
}

// Real hyperbolic plane as the group [e1, e2] = e2.
InfinitesimalModel hyperbolic_model() {
  InfinitesimalModel m = InfinitesimalModel::blank("aff", 2);
  m.set_bracket_m(0, 1, 1, GQ(1));
  m.J = int_matrix({{0, -1}, {1, 0}});
  m.g = Mat::identity(2);
  return m;
}

void expect_frame_identities(const InfinitesimalModel& m, bool btp) {
  FrameResiduals r = frame_residuals(m);
  CHECK(r.curvature_difference < 1e-9);
  CHECK(r.frame_formula_gap < 1e-9);
  if (btp) {
    CHECK(r.quadratic_first < 1e-9);
    CHECK(r.componentwise_btp < 1e-9);
  } else {
    CHECK(r.componentwise_btp > 1e-6);
  }
  CHECK(bismut_frame_relation_witness(m).empty());
}

}  // namespace

TEST_CASE("second quadratic equation as written fails on Vaisman surfaces") {
  // Both models are BTP; the residual is |T^1_12|^2 at (i,j,k,l) = (1,2,2,1).
  for (const InfinitesimalModel& m : {hopf_model(), kodaira_thurston_model()}) {
    REQUIRE(check_btp(m).holds);
    FrameResiduals r = frame_residuals(m);
    CHECK(r.quadratic_second == doctest::Approx(0.5));
    CHECK(r.componentwise_btp < 1e-9);
  }
}

TEST_CASE("abelian model is flat Kaehler and every condition holds") {
  InfinitesimalModel m = abelian_model();
  CheckReport rep = check_conditions(m);
  CHECK(rep.kahler);
  CHECK(rep.balanced);
  CHECK(rep.pluriclosed);
  CHECK(rep.chern_flat);
  CHECK(rep.bismut_flat);
  CHECK(rep.btp);
  CHECK(rep.bas);
  CHECK(rep.naturally_reductive);
  CHECK(rep.r_B == 0);
  CHECK(levi_civita(m) == chern_connection(m));
  expect_frame_identities(m, true);
}

TEST_CASE("bi-invariant su(2)+R with its left-invariant complex structure is Bismut flat") {
  InfinitesimalModel m = hopf_model();
  CHECK_NOTHROW(validate(m));
  CheckReport rep = check_conditions(m);
  CHECK_FALSE(rep.kahler);
  CHECK_FALSE(rep.balanced);
  CHECK(rep.pluriclosed);
  CHECK(rep.bismut_flat);
  CHECK_FALSE(rep.chern_flat);
  CHECK(rep.btp);
  CHECK(rep.bas);
  CHECK(rep.naturally_reductive);
  CHECK(rep.bismut_parallel_chern_torsion);
  // Left-invariant fields are Bismut parallel.
  NomizuOperator nb = bismut_connection(m);
  for (const Mat& op : nb.op) CHECK(op.is_zero());
  REQUIRE(rep.symmetry_rb_ijkl.has_value());
  CHECK(*rep.symmetry_rb_ijkl);
  CHECK(*rep.symmetry_rb_pair_swap);
  // Bismut flat but not Chern flat, so Rb cannot equal the swapped Chern curvature.
  CHECK_FALSE(*rep.symmetry_rb_chern_swap);
  expect_frame_identities(m, true);
}

TEST_CASE("Kodaira-Thurston nilmanifold: pluriclosed, BTP, not naturally reductive") {
  InfinitesimalModel m = kodaira_thurston_model();
  CheckReport rep = check_conditions(m);
  CHECK_FALSE(rep.kahler);
  CHECK(rep.pluriclosed);
  CHECK_FALSE(rep.balanced);
  CHECK(rep.btp);
  CHECK(rep.bismut_parallel_chern_torsion);
  CHECK_FALSE(rep.naturally_reductive);
  auto nr = check_naturally_reductive(m);
  CHECK_FALSE(nr.holds);
  CHECK_FALSE(nr.witness.empty());
  expect_frame_identities(m, true);
}

TEST_CASE("hyperbolic plane is Kaehler and locally symmetric but not flat") {
  InfinitesimalModel m = hyperbolic_model();
  CheckReport rep = check_conditions(m);
  CHECK(rep.kahler);
  CHECK(rep.balanced);
  CHECK_FALSE(rep.chern_flat);
  CHECK(rep.btp);
  CHECK(rep.bas);
  // Every Gauduchon connection collapses to Levi-Civita.
  CHECK(gauduchon_connection(m, Q(3)) == levi_civita(m));
  CHECK(bismut_connection(m) == chern_connection(m));
  expect_frame_identities(m, true);
}

TEST_CASE("Bismut torsion is totally skew and Chern torsion has no mixed part") {
  for (const auto& m : {hopf_model(), kodaira_thurston_model()}) {
    Tensor low = lower_output(m, torsion(m, bismut_connection(m)));
    int idx[3];
    for (const auto& [key, v] : low.data()) {
      low.unpack(key, idx);
      CHECK(low.get({idx[1], idx[0], idx[2]}) == -v);
      CHECK(low.get({idx[0], idx[2], idx[1]}) == -v);
    }
    OrthogonalFrame f = holomorphic_frame(m);
    Tensor tc = torsion(m, chern_connection(m));
    for (const Vec& x : f.vectors) {
      for (const Vec& y : f.vectors) {
        Vec out(m.dim_m);
        Vec ybar = m.conjugate(y);
        for (const auto& [key, v] : tc.data()) {
          tc.unpack(key, idx);
          out[idx[0]] += v * x[idx[1]] * ybar[idx[2]];
        }
        CHECK(is_zero(out));
      }
    }
  }
}

TEST_CASE("invalid models are rejected") {
  InfinitesimalModel m = InfinitesimalModel::blank("bad", 4);
  m.set_bracket_m(0, 1, 2, GQ(1));
  // J e1 = e3, J e2 = e4 is not integrable on Heisenberg + R.
  m.J = int_matrix({{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  m.g = Mat::identity(4);
  CHECK_THROWS_AS(validate(m), ModelError);

  InfinitesimalModel n = abelian_model();
  n.g = Mat::identity(4) * GQ(-1);
  CHECK_THROWS_AS(validate(n), ModelError);

  InfinitesimalModel k = abelian_model();
  k.J = Mat::identity(4);
  CHECK_THROWS_AS(validate(k), ModelError);
}

TEST_CASE("report serialises exact flags and witnesses") {
  CheckReport rep = check_conditions(kodaira_thurston_model());
  auto j = to_json(rep);
  CHECK(j["flags"]["kahler"] == false);
  CHECK(j["witnesses"].contains("kahler"));
  CHECK(j["witnesses"]["naturally_reductive"]["indices"].size() == 3);
  std::string text = to_text(rep);
  CHECK(text.find("btp: true") != std::string::npos);
}
