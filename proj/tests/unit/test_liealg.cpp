#include "doctest.h"

#include "btp/liealg.hpp"

using namespace btp;

namespace {

LieAlgebra so3(int perturbed = 1) {
  LieAlgebra alg(3, {"e1", "e2", "e3"}, Field::Real);
  alg.set_bracket(0, 1, {{2, GQ(perturbed)}});
  alg.set_bracket(1, 2, {{0, GQ(1)}});
  alg.set_bracket(2, 0, {{1, GQ(1)}});
  return alg;
}

LieAlgebra heisenberg() {
  LieAlgebra alg(3, {"x", "y", "z"}, Field::Real);
  alg.set_bracket(0, 1, {{2, GQ(1)}});
  return alg;
}

LieAlgebra sl2c() {
  return chevalley_algebra(chevalley_constants(build_root_system(CartanType::parse("A1"))));
}

// Independent double trace: sum_{k,l} c^k_{il} c^l_{jk}.
GQ double_trace(const LieAlgebra& alg, int i, int j) {
  int n = alg.dim();
  GQ s;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      Vec il = to_dense(alg.bracket(i, l), n);
      Vec jk = to_dense(alg.bracket(j, k), n);
      s += il[k] * jk[l];
    }
  return s;
}

}  // namespace

TEST_CASE("Jacobi residuals") {
  CHECK(check_jacobi(so3()) == 0);
  CHECK(check_jacobi(heisenberg()) == 0);
  // Rescaling one cyclic constant of a 3-dimensional bracket keeps Jacobi.
  CHECK(check_jacobi(so3(2)) == 0);
  LieAlgebra broken = so3();
  broken.set_bracket(0, 1, {{0, GQ(1)}, {2, GQ(1)}});
  CHECK(check_jacobi(broken) == 1);
  CHECK(check_jacobi(sl2c()) == 0);
}

TEST_CASE("Killing forms") {
  LieAlgebra abelian(2, {}, Field::Real);
  CHECK(killing_form(abelian).matrix.is_zero());
  CHECK(killing_form(heisenberg()).matrix.is_zero());
  Mat b = killing_form(so3()).matrix;
  CHECK(b == Mat::identity(3) * GQ(-2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(b(i, j) == double_trace(so3(), i, j));
  for (const char* name : {"A2", "B2", "G2"}) {
    LieAlgebra alg = chevalley_algebra(chevalley_constants(build_root_system(CartanType::parse(name))));
    BilinearForm kf = killing_form(alg);
    CHECK(ad_invariance_witness(alg, kf.matrix)[0] == -1);
  }
}

TEST_CASE("compact real forms are negative definite") {
  for (const char* name : {"A1", "A2", "B2", "G2"}) {
    ChevalleyData ch = chevalley_constants(build_root_system(CartanType::parse(name)));
    LieAlgebra u = compact_real_form(ch);
    CHECK(u.field() == Field::Real);
    CHECK(check_jacobi(u) == 0);
    Mat neg = killing_form(u).matrix * GQ(-1);
    CHECK_MESSAGE(is_hermitian_positive_definite(neg), name);
  }
  ChevalleyData a2 = chevalley_constants(build_root_system(CartanType::parse("A2")));
  CHECK(compact_real_form(a2).dim() == 8);
}

TEST_CASE("complexify and realify") {
  ChevalleyData a1 = chevalley_constants(build_root_system(CartanType::parse("A1")));
  LieAlgebra su2 = compact_real_form(a1);
  LieAlgebra c = complexify(su2);
  CHECK(c.field() == Field::Complex);
  // Back to the Chevalley basis: h = -i(ih), E = (v - i w)/2, F = -(v + i w)/2.
  Mat basis(3, 3);
  basis(0, 0) = -GQ::I();
  basis(1, 1) = GQ(Q(1, 2));
  basis(2, 1) = GQ(Q(0), Q(-1, 2));
  basis(1, 2) = GQ(Q(-1, 2));
  basis(2, 2) = GQ(Q(0), Q(-1, 2));
  LieAlgebra back = change_basis(c, basis, {"h", "E", "F"}, Field::Complex);
  LieAlgebra ref = sl2c();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(to_dense(back.bracket(i, j), 3) == to_dense(ref.bracket(i, j), 3));
  Realification r = realify(ref);
  CHECK(r.algebra.dim() == 6);
  CHECK(check_jacobi(r.algebra) == 0);
  CHECK(r.complex_structure * r.complex_structure == Mat::identity(6) * GQ(-1));
  CHECK(realify(complexify(su2)).algebra.dim() == 2 * su2.dim());
}

TEST_CASE("orthogonal ideal splitting") {
  LieAlgebra abelian(2, {}, Field::Complex);
  IdealSplit s0 = orthogonal_ideal_split(abelian, Mat::identity(2));
  CHECK(s0.center.size() == 2);
  CHECK(s0.ideals.empty());

  LieAlgebra line(1, {"z"}, Field::Complex);
  LieAlgebra sum = direct_sum(sl2c(), line);
  IdealSplit s1 = orthogonal_ideal_split(sum, Mat::identity(4));
  CHECK(s1.center.size() == 1);
  REQUIRE(s1.ideals.size() == 1);
  CHECK(s1.ideals[0].size() == 3);
  CHECK(s1.simple[0]);

  IdealSplit s2 = orthogonal_ideal_split(sl2c(), Mat::identity(3));
  CHECK(s2.center.empty());
  CHECK(s2.ideals.size() == 1);
  CHECK(is_simple(sl2c()));

  LieAlgebra two = direct_sum(sl2c(), sl2c());
  IdealSplit s3 = orthogonal_ideal_split(two, Mat::identity(6));
  CHECK(s3.ideals.size() == 2);
  CHECK_FALSE(is_simple(two));

  Mat degenerate(3, 3);
  CHECK_THROWS(orthogonal_ideal_split(sl2c(), degenerate));
}

TEST_CASE("JSON round trip") {
  LieAlgebra alg = sl2c();
  LieAlgebra back = lie_algebra_from_json(to_json(alg));
  CHECK(back.dim() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(to_dense(back.bracket(i, j), 3) == to_dense(alg.bracket(i, j), 3));
  CHECK(to_json(back) == to_json(alg));
}
