#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "unitri/errors.hpp"
#include "unitri/pattern.hpp"

namespace unitri {

/// Arithmetic in GF(p) for a prime p; elements are canonical residues in [0, p).
class PrimeField {
 public:
  explicit PrimeField(uint32_t p);

  uint32_t order() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p_);
  }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t inv(uint32_t a) const;  // DomainError on 0

  /// Canonical residue of an arbitrary signed value.
  uint32_t reduce(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }

  bool operator==(const PrimeField&) const = default;

 private:
  uint32_t p_;
};

/// Dense matrix over a prime field. Entries are canonical residues,
/// row-major, 0-based accessors.
class FieldMatrix {
 public:
  FieldMatrix(int rows, int cols, PrimeField field);  // zero matrix
  static FieldMatrix identity(int n, PrimeField field);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  uint32_t at(int r, int c) const { return entries_[index(r, c)]; }
  void set(int r, int c, uint32_t v);

  std::span<const uint32_t> entries() const { return entries_; }

  bool is_unitriangular() const;
  bool is_zero() const;

  bool operator==(const FieldMatrix&) const = default;

  std::string to_string() const;

 private:
  size_t index(int r, int c) const { return static_cast<size_t>(r) * cols_ + c; }
  int rows_, cols_;
  PrimeField field_;
  std::vector<uint32_t> entries_;

  friend FieldMatrix mat_mul(const FieldMatrix&, const FieldMatrix&);
  friend FieldMatrix unitri_inverse(const FieldMatrix&);
  friend class QuasimonomialReducer;
};

/// Exact product; ValidationError on dimension or field mismatch.
FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);

/// Inverse of an upper unitriangular matrix (again unitriangular).
FieldMatrix unitri_inverse(const FieldMatrix& a);

/// Mixed-radix id of a pattern-group element: the pattern positions in
/// row-major order are base-p digits, first position least significant.
/// Bijection onto [0, p^{|pattern|}).
uint64_t encode_element(const FieldMatrix& a, const ClosedPattern& pattern);
FieldMatrix decode_element(uint64_t id, const ClosedPattern& pattern,
                           const PrimeField& field);

/// Matrix text format: first line "rows cols p", then one line per row of
/// space-separated residues. ParseError mentions the offending line.
FieldMatrix read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const FieldMatrix& m);

}  // namespace unitri
