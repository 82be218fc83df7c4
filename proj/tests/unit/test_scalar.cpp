#include "doctest.h"

#include "btp/linalg.hpp"
#include "btp/scalar.hpp"

using namespace btp;

TEST_CASE("rational text round trip") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2")) == "-2");
  CHECK(to_string(parse_rational(" 0/5 ")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), ScalarParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ScalarParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ScalarParseError);
}

TEST_CASE("gaussian text round trip") {
  CHECK(parse_gaussian("1/2-3/4i") == GQ(Q(1, 2), Q(-3, 4)));
  CHECK(parse_gaussian("i") == GQ::I());
  CHECK(parse_gaussian("-i") == -GQ::I());
  CHECK(parse_gaussian("-2/3i") == GQ(Q(0), Q(-2, 3)));
  CHECK(parse_gaussian("5") == GQ(5));
  CHECK(to_string(GQ(Q(1, 2), Q(-1))) == "1/2-i");
  CHECK(to_string(GQ(Q(0), Q(3))) == "3i");
  for (const char* s : {"1+i", "-7/3+2/5i", "4i", "-1", "0"}) CHECK(to_string(parse_gaussian(s)) == s);
  CHECK_THROWS_AS(parse_gaussian("2+1/0i"), ScalarParseError);
}

TEST_CASE("gaussian field arithmetic") {
  GQ a(Q(1), Q(2));
  GQ b(Q(3, 2), Q(-1));
  CHECK((a * b) / b == a);
  CHECK(a * a.conj() == GQ(a.norm2()));
  CHECK((a - a).is_zero());
  CHECK_THROWS(a / GQ(0));
}

TEST_CASE("exact inverse, kernel and positivity") {
  Mat m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = GQ::I();
  m(1, 0) = -GQ::I();
  m(1, 1) = 1;
  CHECK(is_hermitian_positive_definite(m));
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK((*inv * m) == Mat::identity(2));
  Mat s(2, 2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  CHECK_FALSE(inverse(s).has_value());
  CHECK(nullspace(s).size() == 1);
  CHECK(rank(s) == 1);
  CHECK(determinant(m) == GQ(1));
  CHECK_FALSE(is_hermitian_positive_definite(s));
}
