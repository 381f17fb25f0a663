#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unitri/ffmat.hpp"
#include "unitri/qpoly.hpp"

namespace unitri {

/// One entry of a quasimonomial matrix: coefficient f at position (row, col),
/// 1-based.
struct QuasiTerm {
  int row = 0;
  int col = 0;
  uint32_t coeff = 0;
  auto operator<=>(const QuasiTerm&) const = default;
};

/// Standard form f_1 E_{i_1,j_1} + ... + f_k E_{i_k,j_k} with strictly
/// increasing columns and pairwise distinct rows; k is the length.
struct QuasimonomialForm {
  int rows = 0;
  int cols = 0;
  std::vector<QuasiTerm> terms;  // sorted by column

  int length() const { return static_cast<int>(terms.size()); }
  std::string to_string() const;  // "f@(i,j) + ...", "0" when empty
};

/// At most one nonzero entry in every row and every column.
bool is_quasimonomial(const FieldMatrix& m);

struct ReductionResult {
  FieldMatrix canonical;  // the quasimonomial representative Q
  FieldMatrix left;       // A in U_s
  FieldMatrix right;      // B in U_t, with Q = A^{-1} X B
};

/// Canonical form of X under (A,B) . X = A^{-1} X B with A in U_s, B in U_t.
/// Deterministic: rows are settled bottom-up, then the current row is cleared
/// at the pivots of the rows below (left to right) and its tail is cleared by
/// column additions from its first surviving entry.
ReductionResult reduce(const FieldMatrix& x);

/// ValidationError when the input is not quasimonomial.
QuasimonomialForm standard_form(const FieldMatrix& q);

/// All quasimonomial matrices of F^{s x t}, each exactly once, ordered by
/// length and then lexicographically by (i_1, j_1, f_1, ...).
std::vector<FieldMatrix> enumerate_representatives(int s, int t, const PrimeField& field);

/// Orbit count of the action as a polynomial in q:
/// sum over k of C(t,k) * s(s-1)...(s-k+1) * (q-1)^k.
QPoly count_representatives(int s, int t);

/// Exhaustive partition of F^{s x t} into orbits, by closure under row
/// additions from below and column additions from the left (all adjacent
/// transvection moves). Guard: p^{s t} <= 10^6.
struct OrbitPartition {
  int s = 0;
  int t = 0;
  uint64_t total = 0;              // p^{s t}
  std::vector<uint32_t> orbit_of;  // orbit index per matrix id
  std::vector<uint64_t> rep_ids;   // smallest id per orbit
  std::vector<uint64_t> sizes;

  size_t count() const { return rep_ids.size(); }
};

OrbitPartition brute_orbits(int s, int t, const PrimeField& field);

/// Matrix id used by brute_orbits: row-major base-p digits, entry (0,0)
/// least significant.
uint64_t dense_matrix_id(const FieldMatrix& m);
FieldMatrix dense_matrix_from_id(uint64_t id, int s, int t, const PrimeField& field);

/// Closed-form orbit size for t in {1, 2} (UnsupportedError otherwise):
/// t=1: |O| = q^{i-1}; t=2: q^i / q^{i-1} for length one in column 1 / 2,
/// and q^{i1+i2-1} (i1 > i2) or q^{i1+i2-2} (i1 < i2) for length two.
BigInt orbit_size_formula(const QuasimonomialForm& form, const PrimeField& field);

}  // namespace unitri
