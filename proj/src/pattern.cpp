#include "unitri/pattern.hpp"

#include <algorithm>
#include <sstream>

namespace unitri {

namespace {

void validate_pairs(int n, const std::vector<Pair>& pairs) {
  if (n < 1) throw ValidationError("pattern: n must be >= 1");
  for (const Pair& p : pairs) {
    if (p.i < 1 || p.j > n || p.i >= p.j)
      throw ValidationError("pattern: pair (" + std::to_string(p.i) + "," +
                            std::to_string(p.j) + ") out of range for n = " +
                            std::to_string(n));
  }
}

std::vector<Pair> sorted_unique(std::vector<Pair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

ClosedPattern::ClosedPattern(int n, std::vector<Pair> pairs) {
  validate_pairs(n, pairs);
  pairs = sorted_unique(std::move(pairs));
  if (!is_closed(n, pairs)) throw ValidationError("pattern: pair set is not closed");
  n_ = n;
  pairs_ = std::move(pairs);
}

bool ClosedPattern::is_closed(int n, const std::vector<Pair>& pairs) {
  validate_pairs(n, pairs);
  std::vector<char> has(static_cast<size_t>(n + 1) * (n + 1), 0);
  auto idx = [n](int i, int j) { return static_cast<size_t>(i) * (n + 1) + j; };
  for (const Pair& p : pairs) has[idx(p.i, p.j)] = 1;
  for (const Pair& p : pairs)
    for (int k = p.j + 1; k <= n; ++k)
      if (has[idx(p.j, k)] && !has[idx(p.i, k)]) return false;
  return true;
}

ClosedPattern ClosedPattern::closure(int n, std::vector<Pair> pairs) {
  validate_pairs(n, pairs);
  std::vector<char> has(static_cast<size_t>(n + 1) * (n + 1), 0);
  auto idx = [n](int i, int j) { return static_cast<size_t>(i) * (n + 1) + j; };
  for (const Pair& p : pairs) has[idx(p.i, p.j)] = 1;
  // Chains only ever move right, so a Floyd-Warshall pass over the middle
  // index settles everything.
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i < j; ++i)
      if (has[idx(i, j)])
        for (int k = j + 1; k <= n; ++k)
          if (has[idx(j, k)]) has[idx(i, k)] = 1;
  std::vector<Pair> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (has[idx(i, j)]) out.push_back({i, j});
  ClosedPattern r;
  r.n_ = n;
  r.pairs_ = std::move(out);
  return r;
}

bool ClosedPattern::contains(int i, int j) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair{i, j});
}

std::string ClosedPattern::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const Pair& p : pairs_) {
    if (!first) os << " ";
    os << "(" << p.i << "," << p.j << ")";
    first = false;
  }
  return os.str();
}

ClosedPattern pattern_U(int n) {
  if (n < 1) throw ValidationError("pattern_U: n must be >= 1");
  std::vector<Pair> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
  return ClosedPattern(n, std::move(pairs));
}

ClosedPattern pattern_P(int n, int i) {
  if (n < 1 || i < 1 || i > n) throw ValidationError("pattern_P: need 1 <= i <= n");
  std::vector<Pair> pairs;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (b != i) pairs.push_back({a, b});
  return ClosedPattern(n, std::move(pairs));
}

ClosedPattern pattern_Q(int n, int i1, int i2) {
  if (n < 1 || i1 < 1 || i1 >= i2 || i2 > n)
    throw ValidationError("pattern_Q: need 1 <= i1 < i2 <= n");
  std::vector<Pair> pairs;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      if (b == i1) continue;
      if (b == i2 && a != i1) continue;
      pairs.push_back({a, b});
    }
  return ClosedPattern(n, std::move(pairs));
}

ClosedPattern pattern_intersection(const ClosedPattern& a, const ClosedPattern& b) {
  if (a.n() != b.n()) throw ValidationError("pattern_intersection: size mismatch");
  std::vector<Pair> out;
  std::set_intersection(a.pairs().begin(), a.pairs().end(), b.pairs().begin(),
                        b.pairs().end(), std::back_inserter(out));
  return ClosedPattern(a.n(), std::move(out));
}

std::vector<Pair> minimal_pairs(const ClosedPattern& p) {
  // Closure collapses any longer chain to a two-step one, so (i,k) is
  // non-minimal exactly when some (i,j),(j,k) are both present.
  std::vector<Pair> out;
  for (const Pair& pr : p.pairs()) {
    bool reachable = false;
    for (int j = pr.i + 1; j < pr.j && !reachable; ++j)
      reachable = p.contains(pr.i, j) && p.contains(j, pr.j);
    if (!reachable) out.push_back(pr);
  }
  return out;
}

ClosedPattern derived_pattern(const ClosedPattern& p) {
  const std::vector<Pair> min = minimal_pairs(p);
  std::vector<Pair> out;
  std::set_difference(p.pairs().begin(), p.pairs().end(), min.begin(), min.end(),
                      std::back_inserter(out));
  return ClosedPattern(p.n(), std::move(out));
}

QPoly linear_character_count(const ClosedPattern& p) {
  return QPoly::power(static_cast<int>(minimal_pairs(p).size()));
}

}  // namespace unitri
