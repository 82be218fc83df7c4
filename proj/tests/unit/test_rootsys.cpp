#include "doctest.h"

#include <set>

#include "btp/liealg.hpp"
#include "btp/rootsys.hpp"

using namespace btp;

namespace {

int max_height(const RootSystem& rs) {
  int best = 0;
  for (int k = 0; k < rs.num_positive(); ++k) best = std::max(best, rs.height(k));
  return best;
}

}  // namespace

TEST_CASE("cartan type validation") {
  CHECK(CartanType::parse("E6").rank == 6);
  CHECK_THROWS_AS(CartanType::parse("E5"), CartanTypeError);
  CHECK_THROWS_AS(CartanType::parse("G3"), CartanTypeError);
  CHECK_THROWS_AS(CartanType::parse("F2"), CartanTypeError);
  CHECK_THROWS_AS(CartanType::parse("X1"), CartanTypeError);
  CHECK_THROWS_AS(CartanType::parse("A"), CartanTypeError);
}

TEST_CASE("root counts against the Weyl orbit enumeration") {
  struct Expect {
    const char* name;
    int count;
  };
  for (auto [name, count] : {Expect{"A1", 2}, Expect{"A2", 6}, Expect{"A3", 12}, Expect{"B2", 8}, Expect{"G2", 12},
                             Expect{"B3", 18}, Expect{"C3", 18}, Expect{"D4", 24}, Expect{"F4", 48}, Expect{"E6", 72},
                             Expect{"E7", 126}, Expect{"E8", 240}}) {
    RootSystem rs = build_root_system(CartanType::parse(name));
    CHECK_MESSAGE(rs.num_roots() == count, name);
    auto orbit = weyl_orbit_roots(rs);
    std::set<Root> a(orbit.begin(), orbit.end());
    std::set<Root> b(rs.roots().begin(), rs.roots().end());
    CHECK_MESSAGE(a == b, name);
    int simple = 0;
    for (int k = 0; k < rs.num_positive(); ++k) simple += rs.height(k) == 1;
    CHECK(simple == rs.rank());
  }
}

TEST_CASE("A1, A2 and G2 root data") {
  RootSystem a1 = build_root_system(CartanType::parse("A1"));
  CHECK(a1.roots() == std::vector<Root>{{1}, {-1}});
  RootSystem a2 = build_root_system(CartanType::parse("A2"));
  CHECK(a2.num_positive() == 3);
  CHECK(a2.index_of({1, 1}) >= 0);
  CHECK(a2.is_positive(a2.index_of({1, 1})));
  RootSystem g2 = build_root_system(CartanType::parse("G2"));
  CHECK(max_height(g2) == 5);
}

TEST_CASE("root strings") {
  RootSystem a2 = build_root_system(CartanType::parse("A2"));
  auto [p, q] = root_string(a2, a2.index_of({1, 0}), a2.index_of({0, 1}));
  CHECK(p == 0);
  CHECK(q == 1);
  CHECK_THROWS(root_string(a2, 0, 0));
  CHECK_THROWS(root_string(a2, 0, a2.negative_of(0)));
  for (const char* name : {"A3", "D4", "E6"}) {
    RootSystem rs = build_root_system(CartanType::parse(name));
    for (int a = 0; a < rs.num_roots(); ++a) {
      for (int b = 0; b < rs.num_roots(); ++b) {
        if (a == b || b == rs.negative_of(a)) continue;
        auto [pp, qq] = root_string(rs, a, b);
        CHECK(pp + qq <= 1);
        if (rs.sum_index(a, b) >= 0) {
          Root diff(rs.rank());
          for (int i = 0; i < rs.rank(); ++i) diff[i] = rs.root(a)[i] - rs.root(b)[i];
          CHECK(rs.index_of(diff) < 0);
        }
      }
    }
  }
  RootSystem b2 = build_root_system(CartanType::parse("B2"));
  bool long_string = false;
  for (int a = 0; a < b2.num_roots(); ++a)
    for (int b = 0; b < b2.num_roots(); ++b)
      if (a != b && b != b2.negative_of(a)) {
        auto [pp, qq] = root_string(b2, a, b);
        long_string |= (pp + qq == 2);
      }
  CHECK(long_string);
}

TEST_CASE("simply-laced systems have one root length") {
  for (const char* name : {"A3", "D5", "E7"}) {
    RootSystem rs = build_root_system(CartanType::parse(name));
    Q len = rs.pairing(0, 0);
    for (int k = 0; k < rs.num_roots(); ++k) CHECK(rs.pairing(k, k) == len);
  }
}

TEST_CASE("Chevalley invariants") {
  for (const char* name : {"A1", "A2", "A3", "B2", "G2", "B3", "C3", "D4", "F4"}) {
    ChevalleyData ch = chevalley_constants(build_root_system(CartanType::parse(name)));
    CHECK_MESSAGE(check_chevalley_invariants(ch) == "", name);
  }
  ChevalleyData a2 = chevalley_constants(build_root_system(CartanType::parse("A2")));
  const RootSystem& rs = a2.root_system();
  CHECK(std::abs(a2.n(rs.index_of({1, 0}), rs.index_of({0, 1}))) == 1);
  CHECK(a2.n(rs.index_of({1, 0}), rs.index_of({1, 1})) == 0);
  ChevalleyData g2 = chevalley_constants(build_root_system(CartanType::parse("G2")));
  std::set<int> magnitudes;
  for (int a = 0; a < g2.root_system().num_roots(); ++a)
    for (int b = 0; b < g2.root_system().num_roots(); ++b) magnitudes.insert(std::abs(g2.n(a, b)));
  CHECK(magnitudes.count(2) == 1);
  CHECK(magnitudes.count(3) == 1);
}

TEST_CASE("Killing pairing agrees with the double trace form") {
  for (const char* name : {"A1", "A2", "B2", "G2", "C3"}) {
    ChevalleyData ch = chevalley_constants(build_root_system(CartanType::parse(name)));
    const RootSystem& rs = ch.root_system();
    LieAlgebra alg = chevalley_algebra(ch);
    BilinearForm b = killing_form(alg);
    int l = rs.rank();
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) CHECK(b.matrix(i, j) == GQ(ch.killing_h(i, j)));
    for (int a = 0; a < rs.num_roots(); ++a) CHECK(b.matrix(l + a, l + rs.negative_of(a)) == GQ(ch.killing_e(a)));
  }
}
