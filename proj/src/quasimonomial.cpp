#include "unitri/quasimonomial.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace unitri {

std::string QuasimonomialForm::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const QuasiTerm& t : terms) {
    if (!first) os << " + ";
    os << t.coeff << "@(" << t.row << "," << t.col << ")";
    first = false;
  }
  return os.str();
}

bool is_quasimonomial(const FieldMatrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    int nz = 0;
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) ++nz;
    if (nz > 1) return false;
  }
  for (int j = 0; j < m.cols(); ++j) {
    int nz = 0;
    for (int i = 0; i < m.rows(); ++i)
      if (m.at(i, j) != 0) ++nz;
    if (nz > 1) return false;
  }
  return true;
}

// Helper with raw access to matrix storage for the row/column sweeps.
class QuasimonomialReducer {
 public:
  explicit QuasimonomialReducer(const FieldMatrix& x)
      : f_(x.field()),
        s_(x.rows()),
        t_(x.cols()),
        y_(x),
        left_(FieldMatrix::identity(x.rows(), x.field())),
        right_(FieldMatrix::identity(x.cols(), x.field())) {}

  ReductionResult run() {
    for (int r = s_ - 1; r >= 0; --r) settle_row(r);
    return ReductionResult{y_, unitri_inverse(left_), right_};
  }

 private:
  // Row r of Y gains a * row i (i > r); mirrored into the accumulated
  // left factor so that Y = left * X * right stays true.
  void add_row(int r, int i, uint32_t a) {
    for (int c = 0; c < t_; ++c)
      y_.entries_[y_.index(r, c)] = f_.add(y_.at(r, c), f_.mul(a, y_.at(i, c)));
    for (int c = 0; c < s_; ++c)
      left_.entries_[left_.index(r, c)] = f_.add(left_.at(r, c), f_.mul(a, left_.at(i, c)));
  }

  // Column c2 of Y gains a * column c1 (c1 < c2).
  void add_col(int c2, int c1, uint32_t a) {
    for (int r = 0; r < s_; ++r)
      y_.entries_[y_.index(r, c2)] = f_.add(y_.at(r, c2), f_.mul(a, y_.at(r, c1)));
    for (int r = 0; r < t_; ++r)
      right_.entries_[right_.index(r, c2)] = f_.add(right_.at(r, c2), f_.mul(a, right_.at(r, c1)));
  }

  void settle_row(int r) {
    // Rows r+1 .. s-1 are already quasimonomial; kill the entries of row r
    // sitting above their pivots, smallest pivot column first.
    for (int c = 0; c < t_; ++c) {
      if (y_.at(r, c) == 0) continue;
      for (int i = r + 1; i < s_; ++i) {
        if (y_.at(i, c) != 0) {
          add_row(r, i, f_.neg(f_.mul(y_.at(r, c), f_.inv(y_.at(i, c)))));
          break;
        }
      }
    }
    // First survivor of row r lives in a column that is zero below row r;
    // clear the rest of the row with column additions from it.
    int lead = -1;
    for (int c = 0; c < t_; ++c)
      if (y_.at(r, c) != 0) {
        lead = c;
        break;
      }
    if (lead < 0) return;
    const uint32_t lead_inv = f_.inv(y_.at(r, lead));
    for (int c = lead + 1; c < t_; ++c)
      if (y_.at(r, c) != 0) add_col(c, lead, f_.neg(f_.mul(y_.at(r, c), lead_inv)));
  }

  PrimeField f_;
  int s_, t_;
  FieldMatrix y_, left_, right_;
};

ReductionResult reduce(const FieldMatrix& x) { return QuasimonomialReducer(x).run(); }

QuasimonomialForm standard_form(const FieldMatrix& q) {
  if (!is_quasimonomial(q))
    throw ValidationError("standard_form: matrix is not quasimonomial");
  QuasimonomialForm form;
  form.rows = q.rows();
  form.cols = q.cols();
  for (int j = 0; j < q.cols(); ++j)
    for (int i = 0; i < q.rows(); ++i)
      if (q.at(i, j) != 0) form.terms.push_back({i + 1, j + 1, q.at(i, j)});
  return form;
}

namespace {

void emit_representatives(int s, int t, const PrimeField& field, int k,
                          std::vector<QuasiTerm>& acc, std::vector<char>& row_used,
                          std::vector<FieldMatrix>& out) {
  if (static_cast<int>(acc.size()) == k) {
    FieldMatrix m(s, t, field);
    for (const QuasiTerm& term : acc) m.set(term.row - 1, term.col - 1, term.coeff);
    out.push_back(std::move(m));
    return;
  }
  const int min_col = acc.empty() ? 1 : acc.back().col + 1;
  const int remaining = k - static_cast<int>(acc.size());
  for (int i = 1; i <= s; ++i) {
    if (row_used[static_cast<size_t>(i)]) continue;
    for (int j = min_col; j + remaining - 1 <= t; ++j) {
      for (uint32_t f = 1; f < field.order(); ++f) {
        acc.push_back({i, j, f});
        row_used[static_cast<size_t>(i)] = 1;
        emit_representatives(s, t, field, k, acc, row_used, out);
        row_used[static_cast<size_t>(i)] = 0;
        acc.pop_back();
      }
    }
  }
}

}  // namespace

std::vector<FieldMatrix> enumerate_representatives(int s, int t, const PrimeField& field) {
  if (s < 1 || t < 1) throw ValidationError("enumerate_representatives: s,t >= 1");
  std::vector<FieldMatrix> out;
  for (int k = 0; k <= std::min(s, t); ++k) {
    std::vector<QuasiTerm> acc;
    std::vector<char> row_used(static_cast<size_t>(s) + 1, 0);
    emit_representatives(s, t, field, k, acc, row_used, out);
  }
  return out;
}

QPoly count_representatives(int s, int t) {
  if (s < 1 || t < 1) throw ValidationError("count_representatives: s,t >= 1");
  const QPoly q_minus_1 = QPoly::variable() - QPoly(Rational(1));
  QPoly total;
  for (int k = 0; k <= std::min(s, t); ++k) {
    BigInt ways = 1;  // C(t,k) column choices times ordered distinct rows
    for (int i = 0; i < k; ++i) ways = ways * (t - i) / (i + 1);
    for (int i = 0; i < k; ++i) ways *= (s - i);
    total += QPoly(Rational(ways)) * q_minus_1.pow(k);
  }
  return total;
}

uint64_t dense_matrix_id(const FieldMatrix& m) {
  const uint32_t p = m.field().order();
  uint64_t id = 0;
  const auto entries = m.entries();
  for (size_t idx = entries.size(); idx-- > 0;) id = id * p + entries[idx];
  return id;
}

FieldMatrix dense_matrix_from_id(uint64_t id, int s, int t, const PrimeField& field) {
  FieldMatrix m(s, t, field);
  const uint32_t p = field.order();
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < t; ++c) {
      m.set(r, c, static_cast<uint32_t>(id % p));
      id /= p;
    }
  return m;
}

OrbitPartition brute_orbits(int s, int t, const PrimeField& field) {
  if (s < 1 || t < 1) throw ValidationError("brute_orbits: s,t >= 1");
  const uint32_t p = field.order();
  const double size_estimate = std::pow(static_cast<double>(p), s * t);
  if (size_estimate > 1e6)
    throw ResourceError("brute_orbits: p^(s t) exceeds the 10^6 element guard");
  uint64_t total = 1;
  for (int i = 0; i < s * t; ++i) total *= p;

  constexpr uint32_t kUnassigned = UINT32_MAX;
  OrbitPartition part;
  part.s = s;
  part.t = t;
  part.total = total;
  part.orbit_of.assign(total, kUnassigned);

  std::vector<uint32_t> buf(static_cast<size_t>(s) * t);
  auto decode = [&](uint64_t id) {
    for (size_t idx = 0; idx < buf.size(); ++idx) {
      buf[idx] = static_cast<uint32_t>(id % p);
      id /= p;
    }
  };
  auto encode = [&]() {
    uint64_t id = 0;
    for (size_t idx = buf.size(); idx-- > 0;) id = id * p + buf[idx];
    return id;
  };

  std::deque<uint64_t> queue;
  for (uint64_t start = 0; start < total; ++start) {
    if (part.orbit_of[start] != kUnassigned) continue;
    const uint32_t orbit = static_cast<uint32_t>(part.rep_ids.size());
    part.rep_ids.push_back(start);
    part.sizes.push_back(0);
    part.orbit_of[start] = orbit;
    queue.push_back(start);
    while (!queue.empty()) {
      const uint64_t cur = queue.front();
      queue.pop_front();
      ++part.sizes[orbit];
      auto visit = [&]() {
        const uint64_t nxt = encode();
        if (part.orbit_of[nxt] == kUnassigned) {
          part.orbit_of[nxt] = orbit;
          queue.push_back(nxt);
        }
      };
      // Row moves: row k gains a * row k+1.
      for (int k = 0; k + 1 < s; ++k)
        for (uint32_t a = 1; a < p; ++a) {
          decode(cur);
          for (int c = 0; c < t; ++c) {
            const size_t hi = static_cast<size_t>(k) * t + c;
            buf[hi] = field.add(buf[hi], field.mul(a, buf[hi + t]));
          }
          visit();
        }
      // Column moves: column k+1 gains a * column k.
      for (int k = 0; k + 1 < t; ++k)
        for (uint32_t a = 1; a < p; ++a) {
          decode(cur);
          for (int r = 0; r < s; ++r) {
            const size_t lo = static_cast<size_t>(r) * t + k;
            buf[lo + 1] = field.add(buf[lo + 1], field.mul(a, buf[lo]));
          }
          visit();
        }
    }
  }
  return part;
}

BigInt orbit_size_formula(const QuasimonomialForm& form, const PrimeField& field) {
  const BigInt q = field.order();
  auto qpow = [&](int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
  };
  if (form.cols == 1) {
    if (form.length() == 0) return 1;
    return qpow(form.terms[0].row - 1);
  }
  if (form.cols == 2) {
    switch (form.length()) {
      case 0:
        return 1;
      case 1: {
        const QuasiTerm& term = form.terms[0];
        return term.col == 1 ? qpow(term.row) : qpow(term.row - 1);
      }
      case 2: {
        const int i1 = form.terms[0].row;  // column 1 entry
        const int i2 = form.terms[1].row;  // column 2 entry
        return i1 > i2 ? qpow(i1 + i2 - 1) : qpow(i1 + i2 - 2);
      }
      default:
        break;
    }
  }
  throw UnsupportedError("orbit_size_formula: closed form known only for t <= 2");
}

}  // namespace unitri
