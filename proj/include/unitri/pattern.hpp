#pragma once

#include <compare>
#include <string>
#include <vector>

#include "unitri/qpoly.hpp"

namespace unitri {

/// Index pair (i, j), 1-based, with i < j; a position strictly above the
/// diagonal of an n x n matrix.
struct Pair {
  int i = 0;
  int j = 0;
  auto operator<=>(const Pair&) const = default;
};

/// A set of positions closed under chains: (i,j) and (j,k) force (i,k).
/// Defines the pattern subgroup of U_n supported on those positions.
class ClosedPattern {
 public:
  ClosedPattern(int n, std::vector<Pair> pairs);  // validates closure

  static bool is_closed(int n, const std::vector<Pair>& pairs);
  /// Smallest closed superset of the given pairs.
  static ClosedPattern closure(int n, std::vector<Pair> pairs);

  int n() const { return n_; }
  const std::vector<Pair>& pairs() const { return pairs_; }  // sorted, unique
  size_t size() const { return pairs_.size(); }
  bool contains(int i, int j) const;
  bool operator==(const ClosedPattern&) const = default;

  std::string to_string() const;

 private:
  ClosedPattern() = default;
  int n_ = 0;
  std::vector<Pair> pairs_;
};

ClosedPattern pattern_U(int n);
/// P_{n,i}: column i trivial.
ClosedPattern pattern_P(int n, int i);
/// Q_{n,i1,i2}: columns i1 and i2 trivial above the diagonal except (i1, i2).
ClosedPattern pattern_Q(int n, int i1, int i2);

/// Intersection of two patterns on the same n (closed again).
ClosedPattern pattern_intersection(const ClosedPattern& a, const ClosedPattern& b);

/// Pairs of P reachable by no chain of two or more P-pairs.
std::vector<Pair> minimal_pairs(const ClosedPattern& p);

/// Pattern of the commutator subgroup: the non-minimal pairs of P.
ClosedPattern derived_pattern(const ClosedPattern& p);

/// Number of linear characters of the pattern group, q^{#minimal pairs}.
QPoly linear_character_count(const ClosedPattern& p);

}  // namespace unitri
