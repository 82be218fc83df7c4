#include <random>

#include "btp/flagspace.hpp"
#include "doctest.h"

using namespace btp;

namespace {

FlagMetric random_metric(const FlagManifold& fm, std::mt19937_64& rng) {
  FlagMetric g;
  for (int c = 0; c < fm.num_classes(); ++c) g.values.push_back(random_rational(rng, 1, 5, 7));
  return g;
}

int root_index(const FlagManifold& fm, Root r) { return fm.rs().index_of(r); }

}  // namespace

TEST_CASE("flag manifold construction and dimensions") {
  FlagManifold full = build_flag(CartanType::parse("A2"), {});
  CHECK(full.complex_dim() == 3);
  CHECK(full.num_classes() == 3);
  CHECK(full.h_roots.empty());

  FlagManifold g2 = build_flag(CartanType::parse("G2"), {0});
  CHECK(g2.real_dim() == 10);
  CHECK(g2.num_classes() == 2);

  for (int ell = 2; ell <= 5; ++ell) {
    FlagManifold c = build_flag(CartanType::make('C', ell), [&] {
      std::vector<int> iso;
      for (int i = 1; i < ell; ++i) iso.push_back(i);
      return iso;
    }());
    CHECK(c.real_dim() == 4 * ell - 2);
  }

  CHECK_THROWS_AS(build_flag(CartanType::parse("A2"), {0, 1}), FlagError);
  CHECK_THROWS_AS(build_flag(CartanType::parse("A2"), {2}), FlagError);
  CHECK_THROWS_AS(build_flag(CartanType::parse("A2"), {0, 0}), FlagError);
}

TEST_CASE("invariant complex structures") {
  FlagManifold full = build_flag(CartanType::parse("A2"), {});
  auto all = enumerate_complex_structures(full);
  // Six Weyl chambers out of eight sign choices.
  CHECK(all.size() == 6);
  CHECK(std::find(all.begin(), all.end(), standard_complex_structure(full)) != all.end());

  // CP^2: every sign choice closed under R_h is integrable (two of four survive R_h-closure).
  FlagManifold cp2 = build_flag(CartanType::parse("A2"), {1});
  auto cs = enumerate_complex_structures(cp2);
  CHECK(cs.size() == 2);
  for (const auto& j : cs) CHECK(is_integrable(cp2, j));

  FlagManifold a3 = build_flag(CartanType::parse("A3"), {});
  CHECK(enumerate_complex_structures(a3).size() == 24);
}

TEST_CASE("closed-form connections agree with the generic engine") {
  std::mt19937_64 rng(7);
  std::vector<FlagManifold> spaces = {build_flag(CartanType::parse("A2"), {}), build_flag(CartanType::parse("B2"), {}),
                                      build_flag(CartanType::parse("G2"), {0}), build_flag(CartanType::parse("A3"), {1})};
  for (const auto& fm : spaces) {
    auto structures = enumerate_complex_structures(fm);
    for (std::size_t t = 0; t < structures.size(); t += 3) {
      const auto& j = structures[t];
      FlagMetric g = random_metric(fm, rng);
      InfinitesimalModel m = flag_model(fm, j, g);
      CHECK_NOTHROW(validate(m));
      CHECK(nomizu_bismut_flag(fm, j, g) == bismut_connection(m));
      CHECK(nomizu_levi_civita_flag(fm, g) == levi_civita(m));
      Tensor diff = bismut_torsion_flag(fm, j, g) - torsion(m, bismut_connection(m));
      diff.prune();
      CHECK(diff.is_zero());
      CHECK(check_btp_flag(fm, j, g).holds == check_btp(m).holds);
      CHECK(is_kahler(fm, j, g) == d_omega(m).is_zero());
    }
  }
}

TEST_CASE("displayed cases of the Bismut connection and torsion") {
  std::mt19937_64 rng(11);
  FlagManifold fm = build_flag(CartanType::parse("A3"), {});
  FlagComplexStructure j = standard_complex_structure(fm);
  FlagMetric g = random_metric(fm, rng);
  const RootSystem& r = fm.rs();
  for (int a : fm.m_roots)
    for (int b : fm.m_roots) {
      int s = r.sum_index(a, b);
      if (s < 0) continue;
      Q n = fm.ch.n(a, b);
      const Q& ga = g.at(fm, a);
      const Q& gb = g.at(fm, b);
      const Q& gs = g.at(fm, s);
      bool pa = j.sign[a] == 1;
      bool pb = j.sign[b] == 1;
      bool ps = j.sign[s] == 1;
      if (pa && pb) {
        CHECK(bismut_coefficient(fm, j, g, a, b) == n * (1 - ga / gs));
        CHECK(bismut_torsion_coefficient(fm, j, g, a, b) == n * (1 - (ga + gb) / gs));
      }
      if (pa && !pb && ps) {
        CHECK(bismut_coefficient(fm, j, g, a, b) == 0);
        CHECK(bismut_torsion_coefficient(fm, j, g, a, b) == n * ((ga - gb) / gs - 1));
      }
      if (pa != pb && j.sign[s] == j.sign[b]) CHECK(bismut_coefficient(fm, j, g, a, b) == n * (gb - ga) / gs);
      if (pa && !pb && !ps) CHECK(bismut_torsion_coefficient(fm, j, g, a, b) == n * ((gb - ga) / gs - 1));
    }
}

TEST_CASE("Killing metric is BTP, BAS and balanced; Kaehler only when symmetric") {
  struct Case {
    const char* type;
    std::vector<int> iso;
    bool symmetric;
  };
  for (const Case& c : {Case{"A2", {}, false}, Case{"A2", {1}, true}, Case{"B2", {1}, true}, Case{"G2", {0}, false},
                        Case{"C3", {1, 2}, false}}) {
    FlagManifold fm = build_flag(CartanType::parse(c.type), c.iso);
    FlagComplexStructure j = standard_complex_structure(fm);
    FlagMetric g = killing_metric(fm);
    InfinitesimalModel m = flag_model(fm, j, g);
    CheckReport rep = check_conditions(m);
    CHECK(rep.btp);
    CHECK(rep.bas);
    CHECK(rep.balanced);
    CHECK(rep.kahler == c.symmetric);
    CHECK(is_kahler(fm, j, g) == c.symmetric);
    // The Bismut connection is the canonical connection.
    for (const Mat& op : nomizu_bismut_flag(fm, j, g).op) CHECK(op.is_zero());
  }
}

TEST_CASE("every invariant Hermitian metric on a flag is balanced") {
  std::mt19937_64 rng(3);
  FlagManifold fm = build_flag(CartanType::parse("A2"), {});
  for (const auto& j : enumerate_complex_structures(fm)) {
    CheckReport rep = check_conditions(flag_model(fm, j, random_metric(fm, rng)));
    CHECK(rep.balanced);
  }
}

TEST_CASE("positive feasibility") {
  // g1 = g2 + g3 and g2 = g1 force g3 = 0.
  std::vector<std::vector<Q>> rel = {{Q(1), Q(-1), Q(-1)}, {Q(1), Q(-1), Q(0)}};
  CHECK_FALSE(positive_solution(rel, 3).has_value());
  rel.pop_back();
  auto x = positive_solution(rel, 3);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == (*x)[1] + (*x)[2]);
  for (const auto& v : *x) CHECK(v >= 1);
}

TEST_CASE("SU(3)/T: BTP metrics are the Kaehler family and the Killing ray") {
  FlagManifold fm = build_flag(CartanType::parse("A2"), {});
  FlagComplexStructure j = standard_complex_structure(fm);
  SolverOptions opt;
  opt.samples = 2000;
  SolverReport rep = solve_btp_metrics(fm, j, opt);
  REQUIRE(rep.families.size() == 2);
  CHECK(rep.families[0].tag == FamilyTag::KahlerFamily);
  CHECK(rep.families[0].dimension() == 2);
  CHECK(rep.families[1].tag == FamilyTag::KillingRay);
  CHECK(rep.outside_hits.empty());
  for (const auto& fam : rep.families)
    for (const auto& p : fam.verified_points) {
      FlagMetric g{p};
      CHECK(check_btp(flag_model(fm, j, g)).holds);
      for (int a : j.positive)
        for (int b : j.positive) CHECK(lemma_alternative_violation(fm, j, g, a, b).empty());
    }
}

TEST_CASE("G2/U(2): Kaehler family or a multiple of the Killing metric") {
  FlagManifold fm = build_flag(CartanType::parse("G2"), {0});
  SolverOptions opt;
  opt.samples = 1000;
  SolverReport rep = solve_btp_metrics(fm, standard_complex_structure(fm), opt);
  REQUIRE(rep.families.size() == 2);
  CHECK(rep.families[0].tag == FamilyTag::KahlerFamily);
  CHECK(rep.families[1].tag == FamilyTag::KillingRay);
  CHECK(rep.outside_hits.empty());
}

TEST_CASE("Hermitian symmetric flag: every invariant metric is BTP") {
  FlagManifold fm = build_flag(CartanType::parse("A3"), {0, 2});  // Grassmannian of 2-planes in C^4
  SolverOptions opt;
  opt.samples = 200;
  SolverReport rep = solve_btp_metrics(fm, standard_complex_structure(fm), opt);
  REQUIRE(rep.families.size() == 1);
  CHECK(rep.families[0].relations.empty());
  CHECK(rep.families[0].dimension() == fm.num_classes());
  CHECK(rep.sample_hits == rep.samples);
}

TEST_CASE("solver cap flags partial results") {
  FlagManifold fm = build_flag(CartanType::parse("A4"), {});
  SolverOptions opt;
  opt.cap = 5;
  SolverReport rep = solve_btp_metrics(fm, standard_complex_structure(fm), opt);
  CHECK(rep.partial);
  CHECK(rep.families.empty());
}

TEST_CASE("simply-laced properties on SU(4)/T") {
  FlagManifold fm = build_flag(CartanType::parse("A3"), {});
  FlagComplexStructure j = standard_complex_structure(fm);
  SimplyLacedReport k = simply_laced_properties(fm, j, killing_metric(fm));
  CHECK(k.applicable);
  CHECK(k.holds);
  CHECK(k.checked > 0);
  int e12 = root_index(fm, {1, 0, 0});
  int e23 = root_index(fm, {0, 1, 0});
  int e34 = root_index(fm, {0, 0, 1});
  FlagMetric g = killing_metric(fm);
  CHECK(g.at(fm, e12) == g.at(fm, e23));
  CHECK(g.at(fm, e23) == g.at(fm, e34));

  // Kaehler metric: g on a root = its height.
  FlagMetric kahler;
  for (int c = 0; c < fm.num_classes(); ++c) kahler.values.push_back(fm.rs().height(fm.summands[c][0]));
  REQUIRE(is_kahler(fm, j, kahler));
  CHECK_FALSE(simply_laced_properties(fm, j, kahler).applicable);

  // Equal on e12, e23, e13 but different on e34: violates (a), hence not BTP.
  FlagMetric bad = killing_metric(fm);
  bad.values[fm.param_class[e34]] = 2;
  CHECK_FALSE(check_btp_flag(fm, j, bad).holds);
  CHECK_FALSE(check_btp(flag_model(fm, j, bad)).holds);
  CHECK_FALSE(simply_laced_properties(fm, j, bad).applicable);
}

TEST_CASE("class C catalog") {
  auto rows = class_c_catalog();
  CHECK(rows.size() == 13);
  for (const auto& row : rows) {
    if (row.rank == 0) {
      for (int ell = 2; ell <= 5; ++ell) {
        int max_p = row.series == 'B' ? ell : (row.series == 'C' ? ell - 1 : ell - 2);
        if (row.series == 'D' && ell < 4) continue;
        for (int p = 1; p <= max_p; ++p) {
          FlagManifold fm = row.instance(ell, p);
          CHECK(fm.real_dim() == row.formula_dimension(ell, p));
          CHECK(fm.num_classes() <= 2);
        }
      }
    } else if (row.rank <= 7) {
      FlagManifold fm = row.instance();
      CHECK(fm.num_classes() == 2);
      if (row.h_algebra == "so(12)+R") {
        // dim e7 - dim so(12) - 1.
        CHECK(fm.real_dim() == 133 - 66 - 1);
      } else {
        CHECK(fm.real_dim() == row.listed_dimension);
      }
    }
  }
  CHECK_THROWS_AS(rows[1].instance(3, 3), FlagError);
}
