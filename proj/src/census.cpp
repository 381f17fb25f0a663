#include "unitri/census.hpp"

#include <string>

#include "unitri/pattern.hpp"

namespace unitri {

namespace {

const QPoly kQ = QPoly::variable();
const QPoly kQMinus1 = QPoly::variable() - QPoly(Rational(1));

QPoly bracket(std::initializer_list<Rational> descending) {
  std::vector<Rational> asc(descending.size());
  size_t k = asc.size();
  for (const Rational& c : descending) asc[--k] = c;
  return QPoly::from_coefficients(std::move(asc));
}

QPoly checked(QPoly p, const char* what) {
  if (!p.has_integer_coefficients())
    throw InternalError(std::string(what) + ": non-integer coefficients in " + p.to_string());
  return p;
}

}  // namespace

int mu(int n) {
  if (n < 1) throw ValidationError("mu: n must be >= 1");
  const int m = n / 2;
  return n % 2 == 0 ? m * (m - 1) : m * m;
}

QPoly count(int n, int e) {
  if (n < 1) throw ValidationError("count: n must be >= 1");
  if (e < 0) throw ValidationError("count: e must be >= 0");
  if (e > 3) throw UnsupportedError("count: only degrees q^e with e <= 3 are covered");
  if (e > mu(n)) return QPoly{};
  switch (e) {
    case 0:
      return QPoly::power(n - 1);
    case 1:
      // q^{n-3}(q-1)((n-3)q + 1); already exact at the n=3, n=4 bases.
      return checked(QPoly::power(n - 3) * kQMinus1 * bracket({Rational(n - 3), 1}),
                     "count e=1");
    case 2:
      if (n == 4) return kQ * kQMinus1;
      return checked(
          QPoly::power(n - 4) * kQMinus1 *
              bracket({Rational(n - 5), Rational(n - 5) * (n - 4) / 2 + 2,
                       Rational(1) - Rational(n - 6) * (n - 5) / 2, Rational(4 - n)}),
          "count e=2");
    case 3: {
      if (n == 5) return kQ * kQMinus1 * bracket({2, -1});
      if (n == 6) return QPoly::power(2) * kQMinus1 * bracket({4, 1, -3});
      const CoefficientSextuple s = sextuple(n);
      return checked(QPoly::power(n - 5) * kQMinus1 *
                         bracket({Rational(s.a), Rational(s.b), Rational(s.c),
                                  Rational(s.d), Rational(s.e), Rational(s.f)}),
                     "count e=3");
    }
    default:
      throw InternalError("count: unreachable");
  }
}

QPoly count_via_recursion(int n, int e) {
  switch (e) {
    case 1: {
      if (n < 5)
        throw ValidationError("count_via_recursion: the e=1 recursion holds for n >= 5");
      QPoly acc = count(4, 1);
      for (int m = 5; m <= n; ++m)
        acc = kQ * acc + kQMinus1 * linear_character_count(pattern_P(m - 1, 2));
      return checked(std::move(acc), "count_via_recursion e=1");
    }
    case 2: {
      if (n < 6)
        throw ValidationError("count_via_recursion: the e=2 recursion holds for n >= 6");
      QPoly acc = count(5, 2);
      for (int m = 6; m <= n; ++m)
        acc = kQ * acc + kQ * count(m - 1, 1) - kQ * count(m - 2, 1) +
              kQMinus1 * kQMinus1 * linear_character_count(pattern_Q(m - 2, 1, 3));
      return checked(std::move(acc), "count_via_recursion e=2");
    }
    case 3: {
      if (n < 8)
        throw ValidationError("count_via_recursion: the e=3 recursion holds for n >= 8");
      QPoly acc = count(7, 3);
      for (int m = 8; m <= n; ++m)
        acc = kQ * acc + kQ * count(m - 1, 2) - kQ * count(m - 2, 2) +
              kQMinus1 * kQMinus1 *
                  (nq_Q_n13(m - 2) + linear_character_count(pattern_Q(m - 2, 2, 3)) +
                   linear_character_count(pattern_Q(m - 2, 1, 4)));
      return checked(std::move(acc), "count_via_recursion e=3");
    }
    default:
      throw ValidationError("count_via_recursion: recursions exist for e in {1,2,3}");
  }
}

QPoly nq_P_n2(int n) {
  if (n < 3) throw ValidationError("nq_P_n2: n must be >= 3");
  if (n == 3) return QPoly{};
  if (n == 4) return kQ * bracket({1, 0, -1});
  return QPoly::power(n - 3) * kQMinus1 * bracket({1, Rational(n - 4), 1});
}

QPoly nq_Q_n13(int n) {
  if (n < 4) throw ValidationError("nq_Q_n13: n must be >= 4");
  if (n == 4) return QPoly{};
  if (n == 5) return QPoly::power(3) * bracket({1, 0, -1});
  return QPoly::power(n - 2) * kQMinus1 * bracket({1, Rational(n - 5), 1});
}

QPoly nq2_consecutive_difference(int n) {
  if (n < 8) throw ValidationError("nq2_consecutive_difference: stated for n >= 8");
  return checked(
      QPoly::power(n - 6) * kQMinus1 *
          bracket({Rational(n - 6), Rational(n - 6) * (n - 5) / 2 - (n - 7) + 2,
                   Rational(-((n - 7) * (n - 6) + 1)),
                   Rational(4 - n) + Rational(n - 8) * (n - 7) / 2, Rational(n - 6)}),
      "nq2_consecutive_difference");
}

QPoly nq3_recursion_increment(int n) {
  if (n < 8) throw ValidationError("nq3_recursion_increment: stated for n >= 8");
  return checked(
      QPoly::power(n - 5) * kQMinus1 *
          bracket({1, Rational(2 * n - 14),
                   Rational(25 - 3 * n) + Rational(n - 6) * (n - 5) / 2,
                   Rational(n - 11 - (n - 7) * (n - 6)),
                   Rational(5 - n) + Rational(n - 8) * (n - 7) / 2, Rational(n - 6)}),
      "nq3_recursion_increment");
}

std::array<QPoly, 6> sextuple_coefficient_polynomials() {
  const QPoly n = QPoly::variable();
  auto c = [](long v) { return QPoly(Rational(v)); };
  const QPoly n_minus_7 = n - c(7);
  // n(n+1)(2n+1), shared by C, D and E.
  const QPoly square_pyramid = n * (n + c(1)) * (QPoly(Rational(2)) * n + c(1));

  QPoly a = n_minus_7;
  QPoly b = c(3) + n_minus_7 * (n - c(6));
  QPoly cc = c(40) * n_minus_7 - Rational(17, 4) * ((n + c(8)) * n_minus_7) +
             Rational(1, 12) * square_pyramid - c(64);
  QPoly d = n_minus_7 * (QPoly(Rational(7)) * n + c(3)) -
            Rational(1, 6) * square_pyramid + c(138);
  QPoly e = n_minus_7 * (Rational(-17, 4) * n - c(1)) +
            Rational(1, 12) * square_pyramid - c(75);
  QPoly f = c(1) + Rational(1, 2) * (n_minus_7 * (n - c(4)));
  return {std::move(a), std::move(b), std::move(cc), std::move(d), std::move(e),
          std::move(f)};
}

CoefficientSextuple sextuple(int n) {
  if (n < 7) throw ValidationError("sextuple: defined for n >= 7");
  const auto polys = sextuple_coefficient_polynomials();
  std::array<BigInt, 6> vals;
  for (size_t k = 0; k < 6; ++k) {
    const Rational v = polys[k].evaluate(Rational(n));
    if (denominator(v) != 1)
      throw InternalError("sextuple: coefficient " + std::string(1, char('A' + k)) +
                          " is not an integer at n = " + std::to_string(n));
    vals[k] = numerator(v);
  }
  return {vals[0], vals[1], vals[2], vals[3], vals[4], vals[5]};
}

QMinusOneExpansion to_qminus1_basis(const QPoly& p) {
  if (!p.has_integer_coefficients())
    throw ValidationError("to_qminus1_basis: polynomial must have integer coefficients");
  const QPoly shifted = p.shifted_down_one();
  QMinusOneExpansion out;
  out.all_nonnegative = true;
  for (int k = 0; k <= shifted.degree(); ++k) {
    const Rational c = shifted.coefficient(k);
    if (denominator(c) != 1)
      throw InternalError("to_qminus1_basis: shift produced a non-integer coefficient");
    out.coefficients.push_back(numerator(c));
    if (out.coefficients.back() < 0) out.all_nonnegative = false;
  }
  return out;
}

}  // namespace unitri
