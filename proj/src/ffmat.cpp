#include "unitri/ffmat.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace unitri {

namespace {

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (uint32_t d = 3; static_cast<uint64_t>(d) * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (!is_prime(p))
    throw ValidationError("PrimeField: modulus " + std::to_string(p) + " is not prime");
}

uint32_t PrimeField::inv(uint32_t a) const {
  if (a == 0) throw DomainError("PrimeField::inv: zero has no inverse");
  // Extended Euclid on (a, p).
  int64_t t = 0, new_t = 1;
  int64_t r = p_, new_r = a % p_;
  while (new_r != 0) {
    int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  return reduce(t);
}

FieldMatrix::FieldMatrix(int rows, int cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field) {
  if (rows < 1 || cols < 1) throw ValidationError("FieldMatrix: dimensions must be >= 1");
  entries_.assign(static_cast<size_t>(rows) * cols, 0);
}

FieldMatrix FieldMatrix::identity(int n, PrimeField field) {
  FieldMatrix m(n, n, field);
  for (int i = 0; i < n; ++i) m.entries_[m.index(i, i)] = 1;
  return m;
}

void FieldMatrix::set(int r, int c, uint32_t v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw ValidationError("FieldMatrix::set: index out of range");
  if (v >= field_.order())
    throw ValidationError("FieldMatrix::set: entry is not a canonical residue");
  entries_[index(r, c)] = v;
}

bool FieldMatrix::is_unitriangular() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    if (at(i, i) != 1) return false;
    for (int j = 0; j < i; ++j)
      if (at(i, j) != 0) return false;
  }
  return true;
}

bool FieldMatrix::is_zero() const {
  for (uint32_t v : entries_)
    if (v != 0) return false;
  return true;
}

std::string FieldMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << at(i, j);
    }
    if (i + 1 < rows_) os << "\n";
  }
  return os.str();
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.field() != b.field()) throw ValidationError("mat_mul: field mismatch");
  if (a.cols() != b.rows()) throw ValidationError("mat_mul: inner dimensions differ");
  const uint32_t p = a.field().order();
  FieldMatrix out(a.rows(), b.cols(), a.field());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      uint64_t acc = 0;
      for (int k = 0; k < a.cols(); ++k)
        acc += static_cast<uint64_t>(a.at(i, k)) * b.at(k, j);
      out.entries_[out.index(i, j)] = static_cast<uint32_t>(acc % p);
    }
  return out;
}

FieldMatrix unitri_inverse(const FieldMatrix& a) {
  if (!a.is_unitriangular())
    throw ValidationError("unitri_inverse: matrix is not unitriangular");
  const int n = a.rows();
  const PrimeField& f = a.field();
  FieldMatrix b = FieldMatrix::identity(n, f);
  // Back substitution per column: b[i][j] = -sum_{k=i+1..j} a[i][k] b[k][j].
  for (int j = 1; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      uint64_t acc = 0;
      for (int k = i + 1; k <= j; ++k)
        acc += static_cast<uint64_t>(a.at(i, k)) * b.at(k, j);
      b.entries_[b.index(i, j)] = f.neg(static_cast<uint32_t>(acc % f.order()));
    }
  return b;
}

uint64_t encode_element(const FieldMatrix& a, const ClosedPattern& pattern) {
  if (a.rows() != pattern.n() || a.cols() != pattern.n())
    throw ValidationError("encode_element: matrix size does not match pattern");
  if (!a.is_unitriangular())
    throw ValidationError("encode_element: matrix is not unitriangular");
  const uint32_t p = a.field().order();
  const auto& pairs = pattern.pairs();
  if (pairs.size() * std::log2(static_cast<double>(p)) > 62.0)
    throw ResourceError("encode_element: id does not fit in 64 bits");
  // Off-pattern support check.
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (a.at(i, j) != 0 && !pattern.contains(i + 1, j + 1))
        throw ValidationError("encode_element: nonzero entry off the pattern");
  uint64_t id = 0;
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it)
    id = id * p + a.at(it->i - 1, it->j - 1);
  return id;
}

FieldMatrix decode_element(uint64_t id, const ClosedPattern& pattern,
                           const PrimeField& field) {
  const uint32_t p = field.order();
  FieldMatrix m = FieldMatrix::identity(pattern.n(), field);
  for (const Pair& pr : pattern.pairs()) {
    m.set(pr.i - 1, pr.j - 1, static_cast<uint32_t>(id % p));
    id /= p;
  }
  if (id != 0) throw ValidationError("decode_element: id out of range");
  return m;
}

FieldMatrix read_matrix_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("matrix file: line 1: missing header \"rows cols p\"");
  std::istringstream head(line);
  long long s = 0, t = 0, p = 0;
  if (!(head >> s >> t >> p) || s < 1 || t < 1 || p < 2)
    throw ParseError("matrix file: line 1: expected \"rows cols p\" with positive values");
  std::string trailing;
  if (head >> trailing) throw ParseError("matrix file: line 1: trailing tokens");
  PrimeField field(static_cast<uint32_t>(p));
  FieldMatrix m(static_cast<int>(s), static_cast<int>(t), field);
  for (int i = 0; i < s; ++i) {
    const std::string where = "matrix file: line " + std::to_string(i + 2);
    if (!std::getline(in, line)) throw ParseError(where + ": missing row");
    std::istringstream row(line);
    for (int j = 0; j < t; ++j) {
      long long v;
      if (!(row >> v)) throw ParseError(where + ": expected " + std::to_string(t) + " entries");
      if (v < 0 || v >= p)
        throw ParseError(where + ": entry " + std::to_string(v) + " not in [0, " +
                         std::to_string(p) + ")");
      m.set(i, j, static_cast<uint32_t>(v));
    }
    if (row >> trailing) throw ParseError(where + ": trailing tokens");
  }
  return m;
}

void write_matrix_text(std::ostream& out, const FieldMatrix& m) {
  out << m.rows() << " " << m.cols() << " " << m.field().order() << "\n";
  out << m.to_string() << "\n";
}

}  // namespace unitri
