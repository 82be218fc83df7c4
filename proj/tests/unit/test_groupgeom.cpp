#include <random>

#include "btp/groupgeom.hpp"
#include "doctest.h"

using namespace btp;

namespace {

// Coordinates of the root vector E_a in the compact-form basis of the canonical algebra.
Vec root_vector(const CartanType& ct, int root) {
  ChevalleyData ch{RootSystem(ct)};
  Mat emb = compact_form_embedding(ch);
  Vec unit(emb.rows());
  unit[ct.rank + root] = GQ(1);
  return *solve(emb, unit);
}

bool abelian_j(const InfinitesimalModel& m) {
  for (int x = 0; x < m.dim_m; ++x)
    for (int y = 0; y < m.dim_m; ++y) {
      Vec ex(m.dim_m), ey(m.dim_m);
      ex[x] = GQ(1);
      ey[y] = GQ(1);
      if (m.bracket(m.J * ex, m.J * ey) != m.bracket(ex, ey)) return false;
    }
  return true;
}

std::size_t at4(int n, int i, int j, int k, int l) { return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l; }

}  // namespace

TEST_CASE("canonical metric on complex simple groups") {
  for (const char* name : {"A1", "A2"}) {
    CAPTURE(name);
    CartanType ct = CartanType::parse(name);
    ComplexGroupMetric cm = canonical_complex_metric(ct);
    InfinitesimalModel m = canonical_metric(ct);
    int n = cm.algebra.dim();

    // Block form: -B on u, zero between u and Ju, B on Ju (B the real Killing form).
    Mat killing = killing_form(realify(cm.algebra).algebra).matrix;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(m.g(i, j) == -killing(i, j));
        CHECK(m.g(i, n + j).is_zero());
        CHECK(m.g(n + i, n + j) == killing(n + i, n + j));
      }

    CheckReport rep = check_conditions(m);
    CHECK(rep.btp);
    CHECK(rep.bas);
    CHECK(rep.chern_flat);
    CHECK_FALSE(rep.kahler);

    // Chern torsion is minus the bracket; Bismut torsion on u is 3 times the bracket.
    Tensor tc = torsion(m, chern_connection(m));
    Tensor tb = torsion(m, bismut_connection(m));
    Tensor br = m.bracket_m;
    Tensor sum = tc + br;
    sum.prune();
    CHECK(sum.is_zero());
    int idx[3];
    for (const auto& [key, v] : br.data()) {
      br.unpack(key, idx);
      if (idx[1] < n && idx[2] < n && idx[0] < n) CHECK(tb.get({idx[0], idx[1], idx[2]}) == v * GQ(3));
    }

    // The Bismut connection vanishes on Ju.
    NomizuOperator nb = bismut_connection(m);
    for (int x = n; x < 2 * n; ++x) CHECK(nb.op[x].is_zero());

    CHECK(btp2_identity(m).residual < 1e-12);
    CHECK(btp2_identity(m).exact_residual == 0);
    CHECK(torsion_killing_parallel_residual(m) < 1e-12);
    CHECK(torsion_killing_parallel(m));
    // On the group the torsion form is the Killing form of the realification
    // restricted to (1,0) vectors; in particular it is nondegenerate on u.
    CHECK_FALSE(torsion_killing_form(m).is_zero());
  }
}

TEST_CASE("quadratic torsion identity and nabla^b B separate BTP from a rescaled metric") {
  CartanType ct = CartanType::parse("A2");
  ComplexGroupMetric cm = canonical_complex_metric(ct);
  Mat h = cm.hermitian;
  for (int i = 2; i < 4; ++i)
    for (int j = 0; j < h.cols(); ++j) {
      h(i, j) = h(i, j) * GQ(2);
      h(j, i) = h(j, i) * GQ(2);
    }
  ComplexGroupMetric scaled{"scaled", cm.algebra, h};
  InfinitesimalModel m = to_model(scaled);
  Btp2Report r = btp2_identity(m);
  CHECK_FALSE(r.model_btp);
  CHECK(r.residual == doctest::Approx(0.3125));
  CHECK(r.exact_residual == Q(5, 16));
  CHECK(torsion_killing_parallel_residual(m) > 0.1);
  CHECK_FALSE(torsion_killing_parallel(m));
  CHECK_THROWS_AS(b_isometry_relation(cm, scaled), GroupGeomError);
}

TEST_CASE("B-isometries between BTP metrics") {
  CartanType a2 = CartanType::parse("A2");
  ComplexGroupMetric cm = canonical_complex_metric(a2);

  BIsometryReport same = b_isometry_relation(cm, cm);
  CHECK(same.residual == 0);
  REQUIRE(same.f);
  CHECK(*same.f == Mat::identity(cm.algebra.dim()));

  ComplexGroupMetric twice{"2g", cm.algebra, cm.hermitian * GQ(2)};
  BIsometryReport r = b_isometry_relation(cm, twice);
  CHECK(r.a1_squared == Q(1, 4));
  CHECK(r.a1p_squared == Q(1, 16));
  CHECK(r.residual == 0);
  CHECK(r.unscaled == Mat::identity(cm.algebra.dim()) * GQ(2));
  REQUIRE(r.f);
  CHECK(*r.f == Mat::identity(cm.algebra.dim()));

  // Ad(exp ad E_a) pull-backs of the canonical metric are B-isometric to it.
  for (int root = 0; root < 6; ++root) {
    CAPTURE(root);
    Mat k = exp_ad_nilpotent(cm.algebra, root_vector(a2, root));
    ComplexGroupMetric pb = pull_back(cm, k);
    BIsometryReport rr = b_isometry_relation(cm, pb);
    CHECK(rr.residual == 0);
    CHECK(rr.a1p_squared == rr.a1_squared);
  }

  CartanType a1 = CartanType::parse("A1");
  ComplexGroupMetric c1 = canonical_complex_metric(a1);
  ComplexGroupMetric pb = pull_back(c1, exp_ad_nilpotent(c1.algebra, root_vector(a1, 0)));
  InfinitesimalModel m = to_model(pb);
  CheckReport rep = check_conditions(m);
  CHECK(rep.btp);
  CHECK(rep.bas);
  CHECK(torsion_killing_parallel_residual(m) < 1e-12);

  CHECK_THROWS_AS(b_isometry_relation(c1, cm), GroupGeomError);
  Vec cartan(c1.algebra.dim());
  cartan[0] = GQ(1);
  CHECK_THROWS_AS(exp_ad_nilpotent(c1.algebra, cartan), GroupGeomError);
}

TEST_CASE("Samelson structures: closed forms and curvature") {
  SamelsonStructure s{{CartanType::parse("A2")}, Mat()};
  SamelsonMetric unit{{1, 1, 1}, Mat()};
  SamelsonModel sm = samelson_model(s, unit);
  CHECK(sm.model.dim_m == 8);
  CHECK(samelson_formula_mismatch(sm, unit).empty());
  CHECK(samelson_curvature_mismatch(sm).empty());
  CheckReport rep = check_conditions(sm.model);
  CHECK(rep.btp);
  CHECK(rep.bas);
  CHECK(torsion_killing_parallel(sm.model));

  // The closed forms hold for any root values; BTP needs them equal.
  SamelsonMetric generic{{Q(2), Q(3), Q(7, 2)}, Mat()};
  SamelsonModel sg = samelson_model(s, generic);
  CHECK(samelson_formula_mismatch(sg, generic).empty());
  CHECK_FALSE(check_btp(sg.model).holds);
  SamelsonMetric additive{{1, 1, 2}, Mat()};
  CHECK_FALSE(check_btp(samelson_model(s, additive).model).holds);

  CHECK_THROWS_AS(samelson_model({{CartanType::parse("A1")}, Mat()}, {{1}, Mat()}), GroupGeomError);
  CHECK_THROWS_AS(samelson_model(s, {{1, 0, 1}, Mat()}), GroupGeomError);
  CHECK_THROWS_AS(default_torus_j(3), GroupGeomError);
}

TEST_CASE("Samelson projectable BTP metrics are the equal-value families") {
  SamelsonFamilyReport a2 = solve_samelson_projectable({{CartanType::parse("A2")}, Mat()});
  CHECK(a2.classes.size() == 1);
  CHECK(a2.family.dimension() == 1);
  CHECK(a2.verified >= 2);
  REQUIRE(a2.exclusions.size() == 1);
  const SamelsonTripleExclusion& ex = a2.exclusions.front();
  CHECK_FALSE(ex.value == 0);
  CHECK(ex.engine_value == GQ(ex.value));

  SamelsonFamilyReport prod =
      solve_samelson_projectable({{CartanType::parse("A1"), CartanType::parse("A1")}, Mat()});
  CHECK(prod.classes.size() == 2);
  CHECK(prod.family.dimension() == 2);
  SamelsonStructure s2{{CartanType::parse("A1"), CartanType::parse("A1")}, Mat()};
  SamelsonMetric g{{1, 3}, Mat()};
  SamelsonModel sm = samelson_model(s2, g);
  CHECK(check_btp(sm.model).holds);
  CHECK(samelson_formula_mismatch(sm, g).empty());
}

TEST_CASE("nilpotent normal forms") {
  NilpotentNormalForm nf{2, 1, Mat(1, 1)};
  nf.y(0, 0) = GQ(1);
  InfinitesimalModel m = nilpotent_model(nf);
  CHECK(abelian_j(m));
  std::vector<GQ> r = nilpotent_chern_curvature(nf);
  CHECK(r[at4(2, 0, 0, 1, 1)] == GQ(1));
  CHECK(r[at4(2, 0, 0, 0, 0)] == GQ(-1));
  CHECK(r == chern_curvature_in_basis(m, 2));
  CheckReport rep = check_conditions(m);
  CHECK(rep.btp);
  CHECK(rep.bas);
  CHECK(torsion_killing_parallel(m));

  // Y = 0 is the flat Kaehler abelian algebra.
  NilpotentNormalForm flat{2, 1, Mat(1, 1)};
  CheckReport fr = check_conditions(nilpotent_model(flat));
  CHECK(fr.kahler);
  CHECK(fr.chern_flat);
  for (const GQ& v : nilpotent_chern_curvature(flat)) CHECK(v.is_zero());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    NilpotentNormalForm g3{3, 2, Mat(1, 2)};
    for (int i = 0; i < 2; ++i) g3.y(0, i) = GQ(random_rational(rng, -3, 3, 5), random_rational(rng, -3, 3, 5));
    InfinitesimalModel m3 = nilpotent_model(g3);
    CHECK(abelian_j(m3));
    std::vector<GQ> r3 = nilpotent_chern_curvature(g3);
    CHECK(r3 == chern_curvature_in_basis(m3, 3));
    // Only R_{i ibar a bbar} = conj(Y_ai) Y_bi and R_{i jbar j ibar} = -sum_a conj(Y_ai) Y_aj survive.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            GQ expected;
            if (i == j && i < 2 && k == 2 && l == 2) expected += g3.y(0, i).conj() * g3.y(0, i);
            if (i < 2 && j < 2 && k == j && l == i) expected -= g3.y(0, i).conj() * g3.y(0, j);
            CHECK(r3[at4(3, i, j, k, l)] == expected);
          }
    CheckReport rep3 = check_conditions(m3);
    CHECK(rep3.btp);
    CHECK(rep3.bas);
    CHECK(torsion_killing_parallel(m3));

    // Bismut connection forms are diagonal, with theta_ii(e_a) = -conj(Y_ai), theta_ii(conj e_a) = Y_ai.
    std::vector<GQ> theta = bismut_connection_forms(m3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int x = 0; x < 6; ++x) {
          GQ expected;
          if (i == j && i < 2 && x == 2) expected = -g3.y(0, i).conj();
          if (i == j && i < 2 && x == 5) expected = g3.y(0, i);
          CHECK(theta[(static_cast<std::size_t>(i) * 3 + j) * 6 + x] == expected);
        }
  }

  CHECK_THROWS_AS(nilpotent_model({2, 2, Mat(0, 2)}), GroupGeomError);
  CHECK_THROWS_AS(nilpotent_model({3, 1, Mat(1, 1)}), GroupGeomError);
}

TEST_CASE("M4 is LCK and BTP but not BAS") {
  M4Report r = m4_example(-3, 1);
  CHECK(r.g_alpha == 4);
  CHECK(r.g_beta == 1);
  CHECK(r.g_sum == 5);
  CHECK(r.model.g(0, 0) == GQ(84));
  CHECK(r.lee_scale == Q(1, 84));
  CHECK(r.lck_identity);
  REQUIRE(r.case_residuals.size() == 4);
  for (const Q& c : r.case_residuals) CHECK(c == 0);
  CHECK(r.check.btp);
  CHECK_FALSE(r.check.bas);
  CHECK_FALSE(r.check.kahler);
  CHECK_FALSE(r.reductive_difference.is_zero());
  CHECK(r.reductive_witness == r.reductive_difference);
  CHECK(torsion_killing_parallel(r.model));

  for (auto [a1, a2] : {std::pair<long, long>{-5, 1}, {-5, 2}}) {
    M4Report o = m4_example(a1, a2);
    CHECK(o.lck_identity);
    CHECK(o.check.btp);
    CHECK_FALSE(o.check.bas);
    CHECK(o.g_sum == o.g_alpha + o.g_beta);
  }
  CHECK_THROWS_AS(m4_example(-1, 1), GroupGeomError);
  CHECK_THROWS_AS(m4_example(-4, 2), GroupGeomError);
  CHECK_THROWS_AS(m4_example(2, 3), GroupGeomError);
}

TEST_CASE("Calabi-Eckmann: naturally reductive presentations") {
  CalabiEckmannParams p;
  CalabiEckmannResult res = calabi_eckmann_search(p);
  REQUIRE(res.f);
  CHECK(*res.f == calabi_eckmann_linear_solution(p));
  CHECK(*res.f == Mat::identity(2) * GQ(7));
  CHECK(calabi_eckmann_reductive_witness(p, *res.f).empty());
  CheckReport rep = check_conditions(calabi_eckmann_model(p, *res.f));
  CHECK(rep.naturally_reductive);
  CHECK(rep.btp);
  CHECK(rep.bas);
  CHECK_FALSE(calabi_eckmann_reductive_witness(p, Mat(2, 2)).empty());

  // With the q metric equal to -B the trivial f already works.
  CalabiEckmannParams bi = p;
  bi.q_scale = 8;
  CHECK(calabi_eckmann_reductive_witness(bi, Mat(2, 2)).empty());
  CalabiEckmannResult bres = calabi_eckmann_search(bi, 2, 1);
  REQUIRE(bres.f);
  CHECK(bres.f->is_zero());

  // Nondiagonal J on q.
  CalabiEckmannParams skew = p;
  skew.alpha = 1;
  skew.beta = 2;
  skew.q_scale = 4;
  Mat lin = calabi_eckmann_linear_solution(skew);
  CHECK(calabi_eckmann_reductive_witness(skew, lin).empty());
  CalabiEckmannResult sres = calabi_eckmann_search(skew, 2, 8);
  REQUIRE(sres.f);
  CHECK(*sres.f == lin);

  // Outside the box the search reports exhaustion.
  CalabiEckmannParams big = p;
  big.m1 = 2;
  CalabiEckmannResult out = calabi_eckmann_search(big, 2, 2);
  CHECK_FALSE(out.f);
  CHECK(out.candidates > 0);
  Mat lin2 = calabi_eckmann_linear_solution(big);
  CHECK(lin2(0, 0) == GQ(35));
  CHECK(calabi_eckmann_reductive_witness(big, lin2).empty());

  Mat bad(2, 2);
  bad(0, 0) = GQ(-1);
  CHECK(calabi_eckmann_excluded(bad));
  CHECK_THROWS_AS(calabi_eckmann_model(p, bad), GroupGeomError);
  CalabiEckmannParams neg = p;
  neg.c1 = -1;
  CHECK_THROWS_AS(calabi_eckmann_search(neg), GroupGeomError);
}
