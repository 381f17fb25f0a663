#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "unitri/census.hpp"

using namespace unitri;

namespace {

const QPoly q = QPoly::variable();
const QPoly one(Rational(1));

QPoly qm1() { return q - one; }

}  // namespace

TEST_CASE("polynomial arithmetic") {
  QPoly p = (q - one) * (q + one);
  CHECK(p == QPoly::power(2) - one);
  CHECK(p.evaluate_int(5) == 24);
  CHECK(p.to_string() == "q^2 - 1");
  CHECK((QPoly(Rational(2)) * q).to_string() == "2q");
  CHECK(QPoly{}.to_string() == "0");
  CHECK(QPoly{}.degree() == -1);
  CHECK(p.pow(0) == one);
  CHECK(p.pow(2) == p * p);

  QPoly half = QPoly::from_coefficients({Rational(1, 2)});
  CHECK_FALSE(half.has_integer_coefficients());
  CHECK_THROWS_AS(half.evaluate_int(1), InternalError);

  // (u+1)^2 expanded in u.
  QPoly shifted = QPoly::power(2).shifted_down_one();
  CHECK(shifted == QPoly::power(2) + QPoly(Rational(2)) * q + one);
}

TEST_CASE("integer-valuedness probes") {
  // n(n+1)/2 is integer valued; n/2 is not.
  QPoly triangular = QPoly::from_coefficients({Rational(0), Rational(1, 2), Rational(1, 2)});
  CHECK(is_integer_valued(triangular, 0));
  QPoly halfline = QPoly::from_coefficients({Rational(0), Rational(1, 2)});
  CHECK_FALSE(is_integer_valued(halfline, 0));

  const auto polys = sextuple_coefficient_polynomials();
  for (const QPoly& p : polys) CHECK(is_integer_valued(p, 7));
}

TEST_CASE("mu") {
  CHECK(mu(1) == 0);
  CHECK(mu(2) == 0);
  CHECK(mu(3) == 1);
  CHECK(mu(4) == 2);
  CHECK(mu(5) == 4);
  CHECK(mu(6) == 6);
  CHECK(mu(7) == 9);
  CHECK(mu(12) == 30);
  CHECK_THROWS_AS(mu(0), ValidationError);
}

TEST_CASE("closed-form counts") {
  CHECK(count(3, 1) == qm1());
  CHECK(count(4, 1) == q * qm1() * (q + one));
  CHECK(count(5, 1) == QPoly::power(2) * qm1() * (QPoly(Rational(2)) * q + one));
  CHECK(count(5, 2) ==
        q * qm1() * (QPoly(Rational(2)) * QPoly::power(2) + q - one));
  CHECK(count(4, 2) == q * qm1());
  CHECK(count(5, 3) == q * qm1() * (QPoly(Rational(2)) * q - one));
  CHECK(count(5, 3).evaluate_int(2) == 6);
  CHECK(count(6, 3).evaluate_int(2) == 60);
  CHECK(count(7, 3) ==
        QPoly::power(2) * qm1() *
            QPoly::from_coefficients({Rational(1), Rational(-5), Rational(-2),
                                      Rational(6), Rational(3)}));

  for (int n = 1; n <= 12; ++n) CHECK(count(n, 0) == QPoly::power(n - 1));
  CHECK(count(10, 0).evaluate_int(2) == 512);

  // Vanishing above mu(n).
  CHECK(count(2, 1).is_zero());
  CHECK(count(3, 2).is_zero());
  CHECK(count(4, 3).is_zero());
  CHECK_FALSE(count(5, 3).is_zero());

  CHECK_THROWS_AS(count(5, 4), UnsupportedError);
  CHECK_THROWS_AS(count(0, 1), ValidationError);

  for (int n = 2; n <= 40; ++n)
    for (int e = 0; e <= 3; ++e) CHECK(count(n, e).has_integer_coefficients());
}

TEST_CASE("recursion reproduces the closed forms") {
  CHECK(count_via_recursion(5, 1) == count(5, 1));
  for (int n = 5; n <= 40; ++n) CHECK(count_via_recursion(n, 1) == count(n, 1));
  for (int n = 6; n <= 40; ++n) CHECK(count_via_recursion(n, 2) == count(n, 2));
  for (int n = 8; n <= 40; ++n) CHECK(count_via_recursion(n, 3) == count(n, 3));

  CHECK(count_via_recursion(6, 2).evaluate_int(2) == 80);
  CHECK(count_via_recursion(8, 3).evaluate_int(2) == 1208);

  CHECK_THROWS_AS(count_via_recursion(4, 1), ValidationError);
  CHECK_THROWS_AS(count_via_recursion(5, 2), ValidationError);
  CHECK_THROWS_AS(count_via_recursion(7, 3), ValidationError);
  CHECK_THROWS_AS(count_via_recursion(9, 0), ValidationError);
}

TEST_CASE("helper counts for P_{n,2} and Q_{n,1,3}") {
  CHECK(nq_P_n2(3).is_zero());
  CHECK(nq_P_n2(4) == q * (QPoly::power(2) - one));
  CHECK(nq_P_n2(5).evaluate_int(2) == 28);
  CHECK(nq_Q_n13(4).is_zero());
  CHECK(nq_Q_n13(5) == QPoly::power(3) * (QPoly::power(2) - one));
  CHECK(nq_Q_n13(6).evaluate_int(2) == 112);
  for (int n = 4; n <= 30; ++n)
    CHECK(nq_Q_n13(n) == QPoly::power(2) * nq_P_n2(n - 1));
  CHECK_THROWS_AS(nq_P_n2(2), ValidationError);
  CHECK_THROWS_AS(nq_Q_n13(3), ValidationError);
}

TEST_CASE("collapsed recursion steps") {
  for (int n = 8; n <= 40; ++n) {
    CHECK(nq2_consecutive_difference(n) == count(n - 1, 2) - count(n - 2, 2));
    CHECK(count(n, 3) == q * count(n - 1, 3) + nq3_recursion_increment(n));
  }
  // Consistency of the two e=2 recursion routes:
  // count(n,2) - q count(n-1,2) = (q-1)(q^{n-2} + N_q(P_{n-1,2})).
  for (int n = 5; n <= 40; ++n)
    CHECK(count(n, 2) - q * count(n - 1, 2) ==
          qm1() * (QPoly::power(n - 2) + nq_P_n2(n - 1)));
  // Degree-zero identity.
  for (int n = 2; n <= 40; ++n) CHECK(count(n, 0) == q * count(n - 1, 0));
}

TEST_CASE("coefficient sextuple") {
  CHECK(sextuple(7) == CoefficientSextuple{0, 3, 6, -2, -5, 1});
  CHECK(sextuple(8) == CoefficientSextuple{1, 5, 10, -7, -8, 3});
  CHECK(sextuple(7).f == 1);
  CHECK_THROWS_AS(sextuple(6), ValidationError);

  // The closed form at n=7 must reproduce the explicit n=7 polynomial.
  const CoefficientSextuple s7 = sextuple(7);
  QPoly body = QPoly::from_coefficients({Rational(s7.f), Rational(s7.e), Rational(s7.d),
                                         Rational(s7.c), Rational(s7.b), Rational(s7.a)});
  CHECK(QPoly::power(2) * qm1() * body == count(7, 3));

  for (int n = 7; n <= 2000; ++n) sextuple(n);  // integrality asserted inside

  // Extrapolating the sextuple form below n=7 is wrong by design: the honest
  // n=6 value differs from the formula shape evaluated at n=6.
  const auto polys = sextuple_coefficient_polynomials();
  QPoly fake;
  for (int k = 0; k < 6; ++k)
    fake += QPoly::power(5 - k) * QPoly(polys[static_cast<size_t>(k)].evaluate(Rational(6)));
  QPoly extrapolated = QPoly::power(1) * qm1() * fake;
  CHECK(extrapolated.evaluate_int(2) == 52);
  CHECK(count(6, 3).evaluate_int(2) == 60);
}

TEST_CASE("q-1 basis expansion") {
  QMinusOneExpansion e = to_qminus1_basis(count(4, 1));
  CHECK(e.coefficients == std::vector<BigInt>{0, 2, 3, 1});
  CHECK(e.all_nonnegative);

  QMinusOneExpansion sq = to_qminus1_basis(QPoly::power(2));
  CHECK(sq.coefficients == std::vector<BigInt>{1, 2, 1});

  QMinusOneExpansion e53 = to_qminus1_basis(count(5, 3));
  CHECK(e53.coefficients == std::vector<BigInt>{0, 1, 3, 2});
  CHECK(e53.all_nonnegative);

  for (int n = 2; n <= 30; ++n)
    for (int e2 = 0; e2 <= 3; ++e2) CHECK(to_qminus1_basis(count(n, e2)).all_nonnegative);

  CHECK_THROWS_AS(to_qminus1_basis(QPoly::from_coefficients({Rational(1, 2)})),
                  ValidationError);
}
