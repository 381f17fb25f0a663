#include "unitri/oracle.hpp"

#include "unitri/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

namespace unitri {

namespace {

constexpr uint32_t kUnassigned = UINT32_MAX;

void run_chunked(uint64_t total, int threads,
                 const std::function<void(uint64_t, uint64_t, int)>& body) {
  if (threads <= 1 || total < 1024) {
    body(0, total, 0);
    return;
  }
  const int workers = std::min<int>(threads, 64);
  std::vector<std::thread> pool;
  const uint64_t chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const uint64_t lo = std::min<uint64_t>(total, chunk * w);
    const uint64_t hi = std::min<uint64_t>(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi, w] { body(lo, hi, w); });
  }
  for (auto& t : pool) t.join();
}

bool is_prime_u64(uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (uint64_t d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

/// Smallest prime ell = 1 (mod m) with ell >= lower and ell > previous.
uint64_t next_splitting_modulus(uint32_t m, uint64_t lower, uint64_t previous) {
  uint64_t start = std::max<uint64_t>(lower, previous + 1);
  uint64_t candidate = m == 1 ? start : ((start + m - 2) / m) * m + 1;
  if (m == 1 && candidate < 3) candidate = 3;
  while (!is_prime_u64(candidate) || candidate <= previous || candidate < lower)
    candidate += (m == 1 ? 1 : m);
  return candidate;
}

struct Mod {
  uint64_t ell;
  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= ell ? s - ell : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + ell - b; }
  uint64_t mul(uint64_t a, uint64_t b) const { return a * b % ell; }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    a %= ell;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint64_t inv(uint64_t a) const {
    if (a % ell == 0) throw InternalError("Mod::inv of zero");
    return pow(a, ell - 2);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// GroupTable

GroupTable::GroupTable(ClosedPattern pattern, PrimeField field, uint64_t max_order)
    : n_(pattern.n()), field_(field), pattern_(std::move(pattern)) {
  const uint32_t p = field_.order();
  uint64_t order = 1;
  for (size_t i = 0; i < pattern_.size(); ++i) {
    if (order > max_order / p)
      throw ResourceError("enumerate_group: p^" + std::to_string(pattern_.size()) +
                          " exceeds the configured order bound");
    order *= p;
  }
  size_ = order;
  positions_.reserve(pattern_.size());
  for (const Pair& pr : pattern_.pairs())
    positions_.push_back(static_cast<size_t>(pr.i - 1) * n_ + (pr.j - 1));
}

GroupTable::GroupTable(int ambient_n, PrimeField field,
                       const std::vector<FieldMatrix>& elements)
    : n_(ambient_n), field_(field), pattern_(pattern_U(ambient_n)), explicit_mode_(true) {
  if (elements.empty()) throw ValidationError("GroupTable: empty element list");
  if (elements.size() > (size_t(1) << 13))
    throw ResourceError("GroupTable: explicit subgroup too large");
  positions_.reserve(pattern_.size());
  for (const Pair& pr : pattern_.pairs())
    positions_.push_back(static_cast<size_t>(pr.i - 1) * n_ + (pr.j - 1));

  std::vector<std::pair<uint64_t, const FieldMatrix*>> coded;
  coded.reserve(elements.size());
  for (const FieldMatrix& m : elements) {
    if (m.rows() != n_ || m.cols() != n_ || m.field() != field_ || !m.is_unitriangular())
      throw ValidationError("GroupTable: element is not unitriangular of the ambient size");
    coded.emplace_back(encode_element(m, pattern_), &m);
  }
  std::sort(coded.begin(), coded.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 1; i < coded.size(); ++i)
    if (coded[i].first == coded[i - 1].first)
      throw ValidationError("GroupTable: duplicate element");
  elements_.reserve(coded.size());
  element_codes_.reserve(coded.size());
  for (const auto& [code, m] : coded) {
    element_codes_.push_back(code);
    const auto span = m->entries();
    elements_.emplace_back(span.begin(), span.end());
  }
  size_ = elements_.size();
  if (element_codes_.empty() || element_codes_[0] != 0)
    throw ValidationError("GroupTable: identity missing from element list");
}

uint64_t GroupTable::identity_id() const { return 0; }

void GroupTable::decode_into(uint64_t id, uint32_t* m) const {
  const uint32_t p = field_.order();
  std::fill(m, m + static_cast<size_t>(n_) * n_, 0);
  for (int i = 0; i < n_; ++i) m[static_cast<size_t>(i) * n_ + i] = 1;
  for (size_t pos : positions_) {
    m[pos] = static_cast<uint32_t>(id % p);
    id /= p;
  }
}

uint64_t GroupTable::encode_from(const uint32_t* m) const {
  const uint32_t p = field_.order();
  uint64_t id = 0;
  for (size_t i = positions_.size(); i-- > 0;) id = id * p + m[positions_[i]];
  return id;
}

void GroupTable::matrix_into(uint64_t id, uint32_t* m) const {
  if (explicit_mode_) {
    const auto& src = elements_[id];
    std::copy(src.begin(), src.end(), m);
  } else {
    decode_into(id, m);
  }
}

uint64_t GroupTable::id_from(const uint32_t* m) const {
  const uint64_t code = encode_from(m);
  if (!explicit_mode_) return code;
  auto it = std::lower_bound(element_codes_.begin(), element_codes_.end(), code);
  if (it == element_codes_.end() || *it != code)
    throw InternalError("GroupTable: product left the subgroup; elements not closed");
  return static_cast<uint64_t>(it - element_codes_.begin());
}

void GroupTable::mul_into(const uint32_t* a, const uint32_t* b, uint32_t* c) const {
  const int n = n_;
  const uint32_t p = field_.order();
  for (int i = 0; i < n; ++i) {
    uint32_t* row = c + static_cast<size_t>(i) * n;
    for (int j = 0; j < i; ++j) row[j] = 0;
    row[i] = 1;
    for (int j = i + 1; j < n; ++j) {
      uint64_t acc = 0;
      for (int k = i; k <= j; ++k)
        acc += static_cast<uint64_t>(a[static_cast<size_t>(i) * n + k]) *
               b[static_cast<size_t>(k) * n + j];
      row[j] = static_cast<uint32_t>(acc % p);
    }
  }
}

void GroupTable::inv_into(const uint32_t* a, uint32_t* c) const {
  const int n = n_;
  const uint32_t p = field_.order();
  std::fill(c, c + static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) c[static_cast<size_t>(i) * n + i] = 1;
  for (int j = 1; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      uint64_t acc = 0;
      for (int k = i + 1; k <= j; ++k)
        acc += static_cast<uint64_t>(a[static_cast<size_t>(i) * n + k]) *
               c[static_cast<size_t>(k) * n + j];
      const uint32_t r = static_cast<uint32_t>(acc % p);
      c[static_cast<size_t>(i) * n + j] = r == 0 ? 0 : p - r;
    }
}

FieldMatrix GroupTable::matrix_of(uint64_t id) const {
  if (id >= size_) throw ValidationError("GroupTable::matrix_of: id out of range");
  std::vector<uint32_t> buf(static_cast<size_t>(n_) * n_);
  matrix_into(id, buf.data());
  FieldMatrix m(n_, n_, field_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.set(i, j, buf[static_cast<size_t>(i) * n_ + j]);
  return m;
}

uint64_t GroupTable::id_of(const FieldMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_ || m.field() != field_)
    throw ValidationError("GroupTable::id_of: shape or field mismatch");
  if (!explicit_mode_) return encode_element(m, pattern_);
  std::vector<uint32_t> buf(m.entries().begin(), m.entries().end());
  return id_from(buf.data());
}

uint64_t GroupTable::multiply(uint64_t a, uint64_t b) const {
  if (a >= size_ || b >= size_) throw ValidationError("GroupTable::multiply: id out of range");
  const size_t nn = static_cast<size_t>(n_) * n_;
  std::vector<uint32_t> ma(nn), mb(nn), mc(nn);
  matrix_into(a, ma.data());
  matrix_into(b, mb.data());
  mul_into(ma.data(), mb.data(), mc.data());
  return id_from(mc.data());
}

uint64_t GroupTable::inverse(uint64_t a) const {
  if (a >= size_) throw ValidationError("GroupTable::inverse: id out of range");
  const size_t nn = static_cast<size_t>(n_) * n_;
  std::vector<uint32_t> ma(nn), mc(nn);
  matrix_into(a, ma.data());
  inv_into(ma.data(), mc.data());
  return id_from(mc.data());
}

uint32_t GroupTable::exponent() const {
  if (exponent_cache_) return exponent_cache_;
  const uint32_t p = field_.order();
  const size_t nn = static_cast<size_t>(n_) * n_;
  std::vector<uint32_t> x(nn), y(nn), t(nn), sq(nn);
  std::vector<uint32_t> ident(nn, 0);
  for (int i = 0; i < n_; ++i) ident[static_cast<size_t>(i) * n_ + i] = 1;
  auto pow_p = [&](const uint32_t* base, uint32_t* out) {
    // out = base^p by square and multiply
    std::copy(ident.begin(), ident.end(), out);
    std::copy(base, base + nn, sq.data());
    uint32_t e = p;
    while (e) {
      if (e & 1) {
        mul_into(out, sq.data(), t.data());
        std::copy(t.begin(), t.end(), out);
      }
      e >>= 1;
      if (e) {
        mul_into(sq.data(), sq.data(), t.data());
        std::copy(t.begin(), t.end(), sq.data());
      }
    }
  };
  uint32_t exponent = 1;
  for (uint64_t id = 0; id < size_; ++id) {
    matrix_into(id, x.data());
    uint32_t order = 1;
    while (!std::equal(x.begin(), x.end(), ident.begin())) {
      pow_p(x.data(), y.data());
      std::swap(x, y);
      order *= p;
    }
    exponent = std::max(exponent, order);
  }
  exponent_cache_ = exponent;
  return exponent;
}

std::vector<FieldMatrix> GroupTable::generator_matrices() const {
  std::vector<FieldMatrix> gens;
  if (explicit_mode_) {
    for (uint64_t id = 1; id < size_; ++id) gens.push_back(matrix_of(id));
    return gens;
  }
  const uint32_t p = field_.order();
  for (const Pair& pr : minimal_pairs(pattern_))
    for (uint32_t a = 1; a < p; ++a) {
      FieldMatrix m = FieldMatrix::identity(n_, field_);
      m.set(pr.i - 1, pr.j - 1, a);
      gens.push_back(std::move(m));
    }
  return gens;
}

GroupTable enumerate_group(const ClosedPattern& pattern, const PrimeField& field,
                           const OracleOptions& opts) {
  return GroupTable(pattern, field, opts.max_group_order);
}

// ---------------------------------------------------------------------------
// Conjugacy classes

ConjugacyClassData conjugacy_classes(const GroupTable& g) {
  const uint64_t total = g.size();
  if (total > kUnassigned) throw ResourceError("conjugacy_classes: group too large");
  ConjugacyClassData out;
  out.class_of.assign(total, kUnassigned);
  const size_t nn = static_cast<size_t>(g.dim()) * g.dim();

  if (g.is_pattern_group()) {
    // Orbit closure under conjugation by the transvection generators
    // (the set carries every scalar a, so it is inverse closed).
    const auto gens = g.generator_matrices();
    std::vector<std::vector<uint32_t>> gen_mats, gen_invs;
    for (const FieldMatrix& m : gens) {
      std::vector<uint32_t> flat(m.entries().begin(), m.entries().end());
      std::vector<uint32_t> inv(nn);
      g.inv_into(flat.data(), inv.data());
      gen_mats.push_back(std::move(flat));
      gen_invs.push_back(std::move(inv));
    }
    std::vector<uint32_t> y(nn), t1(nn), t2(nn);
    std::vector<uint64_t> stack;
    for (uint64_t start = 0; start < total; ++start) {
      if (out.class_of[start] != kUnassigned) continue;
      const uint32_t cls = static_cast<uint32_t>(out.reps.size());
      out.reps.push_back(start);
      out.sizes.push_back(0);
      out.class_of[start] = cls;
      stack.assign(1, start);
      while (!stack.empty()) {
        const uint64_t cur = stack.back();
        stack.pop_back();
        ++out.sizes[cls];
        g.matrix_into(cur, y.data());
        for (size_t gi = 0; gi < gen_mats.size(); ++gi) {
          g.mul_into(gen_invs[gi].data(), y.data(), t1.data());
          g.mul_into(t1.data(), gen_mats[gi].data(), t2.data());
          const uint64_t nid = g.id_from(t2.data());
          if (out.class_of[nid] == kUnassigned) {
            out.class_of[nid] = cls;
            stack.push_back(nid);
          }
        }
      }
    }
  } else {
    // Small explicit subgroup: conjugate each fresh representative by the
    // whole group in one pass.
    std::vector<uint32_t> x(nn), gm(nn), gi(nn), t1(nn), t2(nn);
    for (uint64_t start = 0; start < total; ++start) {
      if (out.class_of[start] != kUnassigned) continue;
      const uint32_t cls = static_cast<uint32_t>(out.reps.size());
      out.reps.push_back(start);
      uint64_t size = 0;
      g.matrix_into(start, x.data());
      for (uint64_t gid = 0; gid < total; ++gid) {
        g.matrix_into(gid, gm.data());
        g.inv_into(gm.data(), gi.data());
        g.mul_into(gi.data(), x.data(), t1.data());
        g.mul_into(t1.data(), gm.data(), t2.data());
        const uint64_t nid = g.id_from(t2.data());
        if (out.class_of[nid] == kUnassigned) {
          out.class_of[nid] = cls;
          ++size;
        }
      }
      out.sizes.push_back(size);
    }
  }
  out.inverse_class.resize(out.reps.size());
  for (size_t c = 0; c < out.reps.size(); ++c)
    out.inverse_class[c] = out.class_of[g.inverse(out.reps[c])];
  return out;
}

// ---------------------------------------------------------------------------
// Class algebra over GF(ell)

namespace {

struct Subspace {
  std::vector<std::vector<uint64_t>> basis;  // reduced echelon rows, v[pivot] = 1
  std::vector<uint32_t> pivots;
  size_t dim() const { return basis.size(); }
};

Subspace echelonize(std::vector<std::vector<uint64_t>> vecs, const Mod& mod) {
  Subspace s;
  for (auto& v : vecs) {
    for (size_t l = 0; l < s.basis.size(); ++l) {
      const uint64_t c = v[s.pivots[l]];
      if (c == 0) continue;
      const auto& b = s.basis[l];
      for (size_t j = 0; j < v.size(); ++j)
        if (b[j]) v[j] = mod.sub(v[j], mod.mul(c, b[j]));
    }
    size_t piv = v.size();
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j]) {
        piv = j;
        break;
      }
    if (piv == v.size())
      throw InternalError("echelonize: dependent vector in a supposed basis");
    const uint64_t scale = mod.inv(v[piv]);
    for (auto& x : v) x = mod.mul(x, scale);
    // Keep the existing rows reduced at the new pivot.
    for (size_t l = 0; l < s.basis.size(); ++l) {
      const uint64_t c = s.basis[l][piv];
      if (c == 0) continue;
      for (size_t j = 0; j < v.size(); ++j)
        if (v[j]) s.basis[l][j] = mod.sub(s.basis[l][j], mod.mul(c, v[j]));
    }
    s.basis.push_back(std::move(v));
    s.pivots.push_back(static_cast<uint32_t>(piv));
  }
  // Deterministic row order.
  std::vector<size_t> order(s.basis.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return s.pivots[a] < s.pivots[b]; });
  Subspace sorted;
  for (size_t idx : order) {
    sorted.basis.push_back(std::move(s.basis[idx]));
    sorted.pivots.push_back(s.pivots[idx]);
  }
  return sorted;
}

/// R with M * basis_col = sum_l R[l][col] * basis_l (d x d, row-major).
std::vector<uint64_t> restrict_action(const std::vector<uint64_t>& m, size_t k,
                                      const Subspace& w, const Mod& mod) {
  const size_t d = w.dim();
  std::vector<uint64_t> r(d * d, 0);
  std::vector<uint64_t> u(k);
  for (size_t col = 0; col < d; ++col) {
    const auto& b = w.basis[col];
    for (size_t row = 0; row < k; ++row) {
      uint64_t acc = 0;
      const uint64_t* mrow = m.data() + row * k;
      for (size_t j = 0; j < k; ++j)
        if (b[j]) acc = (acc + mrow[j] * b[j]) % mod.ell;
      u[row] = acc;
    }
    for (size_t l = 0; l < d; ++l) {
      const uint64_t c = u[w.pivots[l]];
      r[l * d + col] = c;
      if (c == 0) continue;
      const auto& bl = w.basis[l];
      for (size_t j = 0; j < k; ++j)
        if (bl[j]) u[j] = mod.sub(u[j], mod.mul(c, bl[j]));
    }
    for (uint64_t x : u)
      if (x) throw InternalError("class algebra: subspace is not invariant");
  }
  return r;
}

/// Coefficients (ascending) of det(lambda I - A) via Hessenberg reduction.
std::vector<uint64_t> char_poly(std::vector<uint64_t> h, size_t d, const Mod& mod) {
  if (d == 0) return {1};
  auto at = [&](size_t i, size_t j) -> uint64_t& { return h[i * d + j]; };
  for (size_t j = 0; j + 2 <= d; ++j) {
    size_t piv = j + 1;
    while (piv < d && at(piv, j) == 0) ++piv;
    if (piv == d) continue;
    if (piv != j + 1) {
      for (size_t c = 0; c < d; ++c) std::swap(at(piv, c), at(j + 1, c));
      for (size_t r2 = 0; r2 < d; ++r2) std::swap(at(r2, piv), at(r2, j + 1));
    }
    const uint64_t pinv = mod.inv(at(j + 1, j));
    for (size_t r2 = j + 2; r2 < d; ++r2) {
      const uint64_t f = mod.mul(at(r2, j), pinv);
      if (f == 0) continue;
      for (size_t c = 0; c < d; ++c) at(r2, c) = mod.sub(at(r2, c), mod.mul(f, at(j + 1, c)));
      for (size_t r3 = 0; r3 < d; ++r3) at(r3, j + 1) = mod.add(at(r3, j + 1), mod.mul(f, at(r3, r2)));
    }
  }
  // det(lambda I - H) for Hessenberg H, leading minors recurrence.
  std::vector<std::vector<uint64_t>> p(d + 1);
  p[0] = {1};
  for (size_t m = 1; m <= d; ++m) {
    std::vector<uint64_t> cur(m + 1, 0);
    const auto& prev = p[m - 1];
    const uint64_t diag = at(m - 1, m - 1);
    for (size_t t = 0; t < prev.size(); ++t) {
      cur[t + 1] = mod.add(cur[t + 1], prev[t]);                 // lambda * prev
      cur[t] = mod.sub(cur[t], mod.mul(diag, prev[t]));          // - h_mm * prev
    }
    uint64_t prod = 1;
    for (size_t i = m - 1; i >= 1; --i) {
      prod = mod.mul(prod, at(i, i - 1));
      if (prod == 0) break;
      const uint64_t coefficient = mod.mul(at(i - 1, m - 1), prod);
      if (coefficient == 0) continue;
      const auto& pi = p[i - 1];
      for (size_t t = 0; t < pi.size(); ++t)
        cur[t] = mod.sub(cur[t], mod.mul(coefficient, pi[t]));
    }
    p[m] = std::move(cur);
  }
  return p[d];
}

std::vector<uint64_t> poly_roots(const std::vector<uint64_t>& coeffs, const Mod& mod) {
  std::vector<uint64_t> roots;
  for (uint64_t x = 0; x < mod.ell; ++x) {
    uint64_t acc = 0;
    for (size_t t = coeffs.size(); t-- > 0;) acc = (acc * x + coeffs[t]) % mod.ell;
    if (acc == 0) roots.push_back(x);
  }
  return roots;
}

/// Kernel of (A - lambda I), d x d; basis vectors in canonical RREF form.
std::vector<std::vector<uint64_t>> eigen_kernel(std::vector<uint64_t> a, size_t d,
                                                uint64_t lambda, const Mod& mod) {
  for (size_t i = 0; i < d; ++i) a[i * d + i] = mod.sub(a[i * d + i], lambda);
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < d && row < d; ++col) {
    size_t sel = row;
    while (sel < d && a[sel * d + col] == 0) ++sel;
    if (sel == d) continue;
    if (sel != row)
      for (size_t c = 0; c < d; ++c) std::swap(a[sel * d + c], a[row * d + c]);
    const uint64_t s = mod.inv(a[row * d + col]);
    for (size_t c = 0; c < d; ++c) a[row * d + c] = mod.mul(a[row * d + c], s);
    for (size_t r2 = 0; r2 < d; ++r2) {
      if (r2 == row) continue;
      const uint64_t f = a[r2 * d + col];
      if (f == 0) continue;
      for (size_t c = 0; c < d; ++c)
        a[r2 * d + c] = mod.sub(a[r2 * d + c], mod.mul(f, a[row * d + c]));
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<std::vector<uint64_t>> kernel;
  std::vector<char> is_pivot(d, 0);
  for (size_t c : pivot_col) is_pivot[c] = 1;
  for (size_t free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    std::vector<uint64_t> v(d, 0);
    v[free] = 1;
    for (size_t r2 = 0; r2 < pivot_col.size(); ++r2)
      v[pivot_col[r2]] = mod.sub(0, a[r2 * d + free]);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dixon-style degree computation

struct OracleKernel {
  const GroupTable& g;
  const ConjugacyClassData& cls;
  size_t k;
  size_t nn;
  std::vector<std::vector<uint32_t>> rep_mats;
  std::vector<uint32_t> inv_ids;
  std::vector<std::vector<uint32_t>> members;

  OracleKernel(const GroupTable& group, const ConjugacyClassData& classes, int threads)
      : g(group), cls(classes), k(classes.count()),
        nn(static_cast<size_t>(group.dim()) * group.dim()) {
    rep_mats.assign(k, std::vector<uint32_t>(nn));
    for (size_t c = 0; c < k; ++c) g.matrix_into(cls.reps[c], rep_mats[c].data());
    inv_ids.resize(g.size());
    run_chunked(g.size(), threads, [&](uint64_t lo, uint64_t hi, int) {
      std::vector<uint32_t> a(nn), b(nn);
      for (uint64_t id = lo; id < hi; ++id) {
        g.matrix_into(id, a.data());
        g.inv_into(a.data(), b.data());
        inv_ids[id] = static_cast<uint32_t>(g.id_from(b.data()));
      }
    });
    members.assign(k, {});
    for (size_t c = 0; c < k; ++c) members[c].reserve(cls.sizes[c]);
    for (uint64_t id = 0; id < g.size(); ++id)
      members[cls.class_of[id]].push_back(static_cast<uint32_t>(id));
  }

  /// Counts a_{i j k'} for fixed class i, as the k x k array M[k'][j] =
  /// #{x in C_i : x^{-1} z_{k'} in C_j}.
  std::vector<uint32_t> class_constants(size_t i, int threads) const {
    std::vector<std::vector<uint32_t>> partial;
    const auto& xs = members[i];
    const int workers = (threads <= 1 || xs.size() < 256) ? 1 : std::min<int>(threads, 64);
    partial.assign(workers, std::vector<uint32_t>(k * k, 0));
    run_chunked(xs.size(), workers, [&](uint64_t lo, uint64_t hi, int w) {
      std::vector<uint32_t> a(nn), prod(nn);
      auto& acc = partial[w];
      for (uint64_t t = lo; t < hi; ++t) {
        g.matrix_into(inv_ids[xs[t]], a.data());
        for (size_t kk = 0; kk < k; ++kk) {
          g.mul_into(a.data(), rep_mats[kk].data(), prod.data());
          const uint32_t j = cls.class_of[g.id_from(prod.data())];
          ++acc[kk * k + j];
        }
      }
    });
    for (int w = 1; w < static_cast<int>(partial.size()); ++w)
      for (size_t t = 0; t < partial[0].size(); ++t) partial[0][t] += partial[w][t];
    return std::move(partial[0]);
  }

  /// Class of x^{-1} z_{j0} for every element x.
  std::vector<uint32_t> transition(size_t j0, int threads) const {
    std::vector<uint32_t> trans(g.size());
    run_chunked(g.size(), threads, [&](uint64_t lo, uint64_t hi, int) {
      std::vector<uint32_t> a(nn), prod(nn);
      for (uint64_t id = lo; id < hi; ++id) {
        g.matrix_into(inv_ids[id], a.data());
        g.mul_into(a.data(), rep_mats[j0].data(), prod.data());
        trans[id] = cls.class_of[g.id_from(prod.data())];
      }
    });
    return trans;
  }
};

namespace {

DegreeHistogram dixon_degrees(const OracleKernel& kernel, const Mod& mod,
                              const OracleOptions& opts) {
  const size_t k = kernel.k;
  const auto& cls = kernel.cls;

  // Classes in ascending size with representative id as the tie break.
  std::vector<size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::make_pair(cls.sizes[a], cls.reps[a]) <
           std::make_pair(cls.sizes[b], cls.reps[b]);
  });

  std::vector<Subspace> spaces;
  {
    std::vector<std::vector<uint64_t>> idbasis(k, std::vector<uint64_t>(k, 0));
    for (size_t i = 0; i < k; ++i) idbasis[i][i] = 1;
    spaces.push_back(echelonize(std::move(idbasis), mod));
  }

  auto fully_split = [&] {
    for (const Subspace& s : spaces)
      if (s.dim() > 1) return false;
    return true;
  };

  for (size_t oi = 0; oi < k && !fully_split(); ++oi) {
    const size_t i = order[oi];
    const std::vector<uint32_t> counts = kernel.class_constants(i, opts.threads);
    std::vector<uint64_t> m(k * k);
    for (size_t t = 0; t < m.size(); ++t) m[t] = counts[t] % mod.ell;

    std::vector<Subspace> next;
    for (Subspace& w : spaces) {
      if (w.dim() <= 1) {
        next.push_back(std::move(w));
        continue;
      }
      const size_t d = w.dim();
      const std::vector<uint64_t> r = restrict_action(m, k, w, mod);
      const std::vector<uint64_t> poly = char_poly(r, d, mod);
      size_t split_total = 0;
      for (uint64_t lambda : poly_roots(poly, mod)) {
        auto kern = eigen_kernel(r, d, lambda, mod);
        if (kern.empty()) continue;
        split_total += kern.size();
        std::vector<std::vector<uint64_t>> ambient;
        for (const auto& kv : kern) {
          std::vector<uint64_t> v(k, 0);
          for (size_t l = 0; l < d; ++l) {
            if (kv[l] == 0) continue;
            const auto& b = w.basis[l];
            for (size_t j = 0; j < k; ++j)
              if (b[j]) v[j] = mod.add(v[j], mod.mul(kv[l], b[j]));
          }
          ambient.push_back(std::move(v));
        }
        next.push_back(echelonize(std::move(ambient), mod));
      }
      if (split_total != d)
        throw InternalError("class algebra did not diagonalize; retry modulus");
    }
    spaces = std::move(next);
  }
  if (!fully_split())
    throw InternalError("class algebra did not fully split; retry modulus");

  // Degree recovery per one-dimensional common eigenvector.
  const uint32_t p = kernel.g.field().order();
  const uint64_t group_order = kernel.g.size();
  std::vector<uint64_t> inv_sizes(k);
  for (size_t c = 0; c < k; ++c) inv_sizes[c] = mod.inv(cls.sizes[c] % mod.ell);

  std::vector<std::vector<size_t>> by_pivot(k);
  for (size_t s = 0; s < spaces.size(); ++s) by_pivot[spaces[s].pivots[0]].push_back(s);

  DegreeHistogram hist;
  std::vector<uint64_t> omega(k), w_acc(k);
  for (size_t j0 = 0; j0 < k; ++j0) {
    if (by_pivot[j0].empty()) continue;
    const std::vector<uint32_t> trans = kernel.transition(j0, opts.threads);
    for (size_t sidx : by_pivot[j0]) {
      const std::vector<uint64_t>& v = spaces[sidx].basis[0];  // v[j0] = 1
      std::fill(w_acc.begin(), w_acc.end(), 0);
      for (uint64_t id = 0; id < group_order; ++id)
        w_acc[cls.class_of[id]] += v[trans[id]];  // raw sums < 2^52, reduce later
      uint64_t s_sum = 0;
      for (size_t c = 0; c < k; ++c) omega[c] = w_acc[c] % mod.ell;
      for (size_t c = 0; c < k; ++c)
        s_sum = mod.add(s_sum, mod.mul(mod.mul(omega[c], omega[cls.inverse_class[c]]),
                                       inv_sizes[c]));
      if (s_sum == 0)
        throw InternalError("degree recovery: vanishing norm sum; retry modulus");
      const uint64_t dd = mod.mul(group_order % mod.ell, mod.inv(s_sum));
      uint64_t degree = 0;
      int hits = 0;
      for (uint64_t cand = 1; cand * cand <= group_order; cand *= p) {
        if (mod.mul(cand % mod.ell, cand % mod.ell) == dd) {
          degree = cand;
          ++hits;
        }
        if (cand > group_order / p) break;  // overflow guard
      }
      if (hits != 1)
        throw InternalError("degree recovery: ambiguous p-power lift; retry modulus");
      ++hist[degree];
    }
  }

  // Structural checks on every run.
  uint64_t total_chars = 0;
  BigInt square_sum = 0;
  for (const auto& [d, m] : hist) {
    total_chars += m;
    square_sum += BigInt(d) * d * m;
  }
  if (total_chars != k)
    throw InternalError("histogram: character count differs from class count");
  if (square_sum != BigInt(group_order))
    throw InternalError("histogram: sum of squared degrees differs from |G|");
  return hist;
}

}  // namespace

DegreeHistogram character_degrees(const GroupTable& g, const ConjugacyClassData& classes,
                                  const OracleOptions& opts) {
  const double work = static_cast<double>(classes.count()) * static_cast<double>(g.size());
  if (work > opts.max_class_work)
    throw ResourceError("character_degrees: #classes * |G| exceeds the work guard");
  OracleKernel kernel(g, classes, opts.threads);
  const uint32_t exponent = g.exponent();
  const uint64_t lower =
      static_cast<uint64_t>(2.0 * std::sqrt(static_cast<double>(g.size()))) + 1;
  uint64_t ell = 0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    ell = next_splitting_modulus(exponent, lower, ell);
    try {
      return dixon_degrees(kernel, Mod{ell}, opts);
    } catch (const InternalError&) {
      if (attempt == 7) throw;
    }
  }
  throw InternalError("character_degrees: no splitting modulus succeeded");
}

// ---------------------------------------------------------------------------
// Disk cache

std::string pattern_digest(const ClosedPattern& pattern, uint32_t p) {
  std::ostringstream os;
  os << "n=" << pattern.n() << ";p=" << p << ";";
  for (const Pair& pr : pattern.pairs()) os << "(" << pr.i << "," << pr.j << ")";
  const std::string s = os.str();
  uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::filesystem::path cache_file(const std::filesystem::path& dir,
                                 const ClosedPattern& pattern, uint32_t p) {
  return dir / (pattern_digest(pattern, p) + "-p" + std::to_string(p) + ".txt");
}

struct CachedRun {
  std::vector<uint32_t> class_of;
  DegreeHistogram hist;
};

std::optional<CachedRun> load_cache(const std::filesystem::path& file,
                                    const ClosedPattern& pattern, uint32_t p,
                                    uint64_t order) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "unitri-oracle-cache" || version != 1)
    return std::nullopt;
  std::string key;
  uint64_t n = 0, fp = 0, pairs = 0, ord = 0, classes = 0, exponent = 0;
  if (!(in >> key >> n) || key != "n") return std::nullopt;
  if (!(in >> key >> fp) || key != "p") return std::nullopt;
  if (!(in >> key >> pairs) || key != "pairs") return std::nullopt;
  if (!(in >> key >> ord) || key != "order") return std::nullopt;
  if (!(in >> key >> classes) || key != "classes") return std::nullopt;
  if (!(in >> key >> exponent) || key != "exponent") return std::nullopt;
  if (n != static_cast<uint64_t>(pattern.n()) || fp != p || pairs != pattern.size() ||
      ord != order)
    return std::nullopt;
  if (!(in >> key) || key != "class_of") return std::nullopt;
  CachedRun run;
  run.class_of.resize(order);
  for (uint64_t i = 0; i < order; ++i) {
    uint64_t v;
    if (!(in >> v) || v >= classes) return std::nullopt;
    run.class_of[i] = static_cast<uint32_t>(v);
  }
  uint64_t hlines = 0;
  if (!(in >> key >> hlines) || key != "histogram") return std::nullopt;
  uint64_t char_count = 0;
  for (uint64_t i = 0; i < hlines; ++i) {
    uint64_t deg, mult;
    if (!(in >> deg >> mult)) return std::nullopt;
    run.hist[deg] = mult;
    char_count += mult;
  }
  if (!(in >> key) || key != "end") return std::nullopt;
  if (char_count != classes) return std::nullopt;
  return run;
}

void store_cache(const std::filesystem::path& file, const ClosedPattern& pattern,
                 uint32_t p, uint64_t order, uint32_t exponent,
                 const ConjugacyClassData& cls, const DegreeHistogram& hist) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;  // cache is best effort
    out << "unitri-oracle-cache 1\n";
    out << "n " << pattern.n() << " p " << p << " pairs " << pattern.size() << " order "
        << order << " classes " << cls.count() << " exponent " << exponent << "\n";
    out << "class_of\n";
    for (size_t i = 0; i < cls.class_of.size(); ++i) {
      out << cls.class_of[i];
      out << ((i % 20 == 19 || i + 1 == cls.class_of.size()) ? '\n' : ' ');
    }
    out << "histogram " << hist.size() << "\n";
    for (const auto& [deg, mult] : hist) out << deg << " " << mult << "\n";
    out << "end\n";
  }
  std::filesystem::rename(tmp, file, ec);
}

}  // namespace

DegreeHistogram character_degrees(const ClosedPattern& pattern, const PrimeField& field,
                                  const OracleOptions& opts) {
  const uint32_t p = field.order();
  if (opts.cache_dir) {
    GroupTable probe(pattern, field, opts.max_group_order);  // validates the order bound
    const auto file = cache_file(*opts.cache_dir, pattern, p);
    if (auto cached = load_cache(file, pattern, p, probe.size())) return cached->hist;
    const ConjugacyClassData cls = conjugacy_classes(probe);
    DegreeHistogram hist = character_degrees(probe, cls, opts);
    store_cache(file, pattern, p, probe.size(), probe.exponent(), cls, hist);
    return hist;
  }
  GroupTable g(pattern, field, opts.max_group_order);
  const ConjugacyClassData cls = conjugacy_classes(g);
  return character_degrees(g, cls, opts);
}

// ---------------------------------------------------------------------------
// Clifford census for full-first-row patterns

DegreeHistogram clifford_first_row_census(const ClosedPattern& pattern,
                                          const PrimeField& field,
                                          const OracleOptions& opts) {
  const int n = pattern.n();
  const uint32_t p = field.order();
  for (int j = 2; j <= n; ++j)
    if (!pattern.contains(1, j))
      throw UnsupportedError("clifford census: pattern must contain the whole first row");
  std::vector<Pair> h_pairs;
  for (const Pair& pr : pattern.pairs())
    if (pr.i >= 2) h_pairs.push_back({pr.i - 1, pr.j - 1});
  if (!ClosedPattern::is_closed(n - 1, h_pairs))
    throw UnsupportedError("clifford census: pattern minus its first row is not closed");
  const ClosedPattern h_pattern(n - 1, h_pairs);
  const GroupTable h(h_pattern, field, opts.max_group_order);

  // Orbits of H on Irr(M) = F^{(n-1) x 1}; the action is linear, so the
  // inverse-closed transvection moves of H generate each orbit.
  uint64_t dual_size = 1;
  for (int i = 0; i < n - 1; ++i) {
    if (dual_size > opts.max_group_order / p)
      throw ResourceError("clifford census: dual space exceeds the order bound");
    dual_size *= p;
  }
  const int dim = n - 1;
  std::vector<uint32_t> vec(dim);
  auto decode_vec = [&](uint64_t id) {
    for (int i = 0; i < dim; ++i) {
      vec[i] = static_cast<uint32_t>(id % p);
      id /= p;
    }
  };
  auto encode_vec = [&]() {
    uint64_t id = 0;
    for (int i = dim; i-- > 0;) id = id * p + vec[i];
    return id;
  };

  const auto h_gens = h.generator_matrices();
  std::vector<uint32_t> orbit_of(dual_size, kUnassigned);
  std::vector<uint64_t> orbit_reps;
  std::vector<uint64_t> orbit_sizes;
  std::vector<uint64_t> stack;
  std::vector<uint32_t> image(dim);
  for (uint64_t start = 0; start < dual_size; ++start) {
    if (orbit_of[start] != kUnassigned) continue;
    const uint32_t orbit = static_cast<uint32_t>(orbit_reps.size());
    orbit_reps.push_back(start);
    orbit_sizes.push_back(0);
    orbit_of[start] = orbit;
    stack.assign(1, start);
    while (!stack.empty()) {
      const uint64_t cur = stack.back();
      stack.pop_back();
      ++orbit_sizes[orbit];
      for (const FieldMatrix& gmat : h_gens) {
        decode_vec(cur);
        for (int i = 0; i < dim; ++i) {
          uint64_t acc = 0;
          for (int j = 0; j < dim; ++j)
            acc += static_cast<uint64_t>(gmat.at(i, j)) * vec[j];
          image[i] = static_cast<uint32_t>(acc % p);
        }
        std::copy(image.begin(), image.end(), vec.begin());
        const uint64_t nid = encode_vec();
        if (orbit_of[nid] == kUnassigned) {
          orbit_of[nid] = orbit;
          stack.push_back(nid);
        }
      }
    }
  }

  DegreeHistogram hist;
  std::vector<uint32_t> xmat(static_cast<size_t>(dim) * dim);
  for (size_t orbit = 0; orbit < orbit_reps.size(); ++orbit) {
    decode_vec(orbit_reps[orbit]);
    const std::vector<uint32_t> chi(vec.begin(), vec.end());
    std::vector<FieldMatrix> stabilizer;
    for (uint64_t id = 0; id < h.size(); ++id) {
      h.matrix_into(id, xmat.data());
      bool fixes = true;
      for (int i = 0; i < dim && fixes; ++i) {
        uint64_t acc = 0;
        for (int j = 0; j < dim; ++j)
          acc += static_cast<uint64_t>(xmat[static_cast<size_t>(i) * dim + j]) * chi[j];
        fixes = (acc % p) == chi[i];
      }
      if (fixes) stabilizer.push_back(h.matrix_of(id));
    }
    if (h.size() % stabilizer.size() != 0 ||
        h.size() / stabilizer.size() != orbit_sizes[orbit])
      throw InternalError("clifford census: stabilizer size does not match the orbit");
    const GroupTable sub(dim, field, stabilizer);
    const ConjugacyClassData sub_cls = conjugacy_classes(sub);
    for (const auto& [deg, mult] : character_degrees(sub, sub_cls, opts))
      hist[deg * orbit_sizes[orbit]] += mult;
  }

  BigInt square_sum = 0;
  for (const auto& [deg, mult] : hist) square_sum += BigInt(deg) * deg * mult;
  BigInt expected = 1;
  for (size_t i = 0; i < pattern.size(); ++i) expected *= p;
  if (square_sum != expected)
    throw InternalError("clifford census: sum of squared degrees differs from |G|");
  return hist;
}

// ---------------------------------------------------------------------------

DegreeCensus degree_census_oracle(int n, uint32_t p, int e_max, const OracleOptions& opts) {
  const PrimeField field(p);
  const ClosedPattern pattern = pattern_U(n);
  const DegreeHistogram hist = character_degrees(pattern, field, opts);
  DegreeCensus census;
  census.n = n;
  census.p = p;
  int top = 0;
  for (const auto& [deg, mult] : hist) {
    uint64_t d = deg;
    int e = 0;
    while (d > 1 && d % p == 0) {
      d /= p;
      ++e;
    }
    if (d != 1) throw InternalError("oracle census: degree is not a power of p");
    census.by_exponent[e] = mult;
    top = std::max(top, e);
  }
  if (top != mu(n))
    throw InternalError("oracle census: top degree exponent differs from mu(n)");
  if (e_max >= 0) {
    for (auto it = census.by_exponent.begin(); it != census.by_exponent.end();)
      it = it->first > e_max ? census.by_exponent.erase(it) : std::next(it);
  }
  return census;
}

}  // namespace unitri
