#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "unitri/errors.hpp"

namespace unitri {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact polynomial in one symbolic variable (written q by default) with
/// rational coefficients. Census counts are assembled here and checked for
/// integer coefficients before they leave the census module.
class QPoly {
 public:
  QPoly() = default;  // zero polynomial
  explicit QPoly(Rational constant);
  explicit QPoly(long constant) : QPoly(Rational(constant)) {}

  static QPoly variable();            // q
  static QPoly power(int k);          // q^k, k >= 0
  static QPoly from_coefficients(std::vector<Rational> ascending);

  bool is_zero() const { return coeff_.empty(); }
  int degree() const { return static_cast<int>(coeff_.size()) - 1; }  // -1 for zero
  Rational coefficient(int k) const;
  const std::vector<Rational>& coefficients() const { return coeff_; }

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  QPoly& operator*=(const Rational& c);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
  friend QPoly operator*(QPoly a, const Rational& c) { return a *= c; }
  friend QPoly operator*(const Rational& c, QPoly a) { return a *= c; }
  QPoly operator-() const;
  bool operator==(const QPoly& o) const { return coeff_ == o.coeff_; }

  QPoly pow(int k) const;  // k >= 0

  Rational evaluate(const Rational& x) const;
  /// Evaluates at an integer point; the result must be an integer.
  BigInt evaluate_int(const BigInt& x) const;

  bool has_integer_coefficients() const;

  /// Coefficients of the same polynomial in u = x - 1, i.e. of P(u + 1).
  QPoly shifted_down_one() const;

  std::string to_string(std::string_view var = "q") const;

 private:
  void trim();
  std::vector<Rational> coeff_;  // ascending powers, no trailing zeros
};

/// True iff P takes integer values at probe_start, ..., probe_start + deg(P);
/// by the finite-difference lemma this certifies integrality at every integer.
bool is_integer_valued(const QPoly& p, const BigInt& probe_start);

}  // namespace unitri
