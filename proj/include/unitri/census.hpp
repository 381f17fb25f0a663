#pragma once

#include <array>

#include "unitri/qpoly.hpp"

namespace unitri {

/// Largest e with q^e an irreducible character degree of U_n:
/// m(m-1) for n = 2m, m^2 for n = 2m+1.
int mu(int n);

/// Number of irreducible characters of U_n of degree q^e, as an exact
/// integer polynomial in q. Supported for e <= 3 (UnsupportedError beyond);
/// zero whenever e exceeds mu(n).
QPoly count(int n, int e);

/// Same count produced by the recursion in n instead of the closed form.
/// Valid from n = 5 (e=1), n = 6 (e=2), n = 8 (e=3); ValidationError below
/// that, naming the range. The steps are assembled from the pattern-group
/// helper counts, so agreement with count() is a genuine identity check.
QPoly count_via_recursion(int n, int e);

/// N_q(P_{n,2}): 0 for n=3, q(q^2-1) for n=4, q^{n-3}(q-1)[q^2+(n-4)q+1] after.
QPoly nq_P_n2(int n);

/// N_q(Q_{n,1,3}): 0 for n=4, q^3(q^2-1) for n=5,
/// q^{n-2}(q-1)[q^2+(n-5)q+1] after. Equals q^2 * nq_P_n2(n-1) throughout.
QPoly nq_Q_n13(int n);

/// Difference of consecutive e=2 counts, N_{q^2}(U_{n-1}) - N_{q^2}(U_{n-2}),
/// in the collapsed closed form used inside the e=3 recursion (n >= 8).
QPoly nq2_consecutive_difference(int n);

/// The polynomial step of the collapsed e=3 recursion:
/// count(n,3) = q * count(n-1,3) + nq3_recursion_increment(n) for n >= 8.
QPoly nq3_recursion_increment(int n);

/// Exact coefficients A_n..F_n of the degree-q^3 closed form
/// q^{n-5}(q-1)(A_n q^5 + B_n q^4 + C_n q^3 + D_n q^2 + E_n q + F_n), n >= 7.
/// Each value is asserted to be an integer (InternalError otherwise).
struct CoefficientSextuple {
  BigInt a, b, c, d, e, f;
  bool operator==(const CoefficientSextuple&) const = default;
};

CoefficientSextuple sextuple(int n);

/// The six coefficient formulas as polynomials in n (rational coefficients),
/// in the order A..F, for finite-difference integrality certification.
std::array<QPoly, 6> sextuple_coefficient_polynomials();

/// Expansion of an integer-coefficient polynomial in u = q - 1, plus the
/// nonnegativity verdict (every census count expands with nonnegative
/// integer coefficients).
struct QMinusOneExpansion {
  std::vector<BigInt> coefficients;  // ascending powers of u
  bool all_nonnegative = false;
};

QMinusOneExpansion to_qminus1_basis(const QPoly& p);

}  // namespace unitri
