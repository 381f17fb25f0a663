#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "unitri/pattern.hpp"

using namespace unitri;

namespace {

std::vector<Pair> adjacent_pairs(int n) {
  std::vector<Pair> out;
  for (int k = 1; k < n; ++k) out.push_back({k, k + 1});
  return out;
}

}  // namespace

TEST_CASE("closure and closedness") {
  ClosedPattern c = ClosedPattern::closure(3, {{1, 2}, {2, 3}});
  CHECK(c.pairs() == std::vector<Pair>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(ClosedPattern::is_closed(3, c.pairs()));

  CHECK(ClosedPattern::is_closed(3, {{1, 3}, {2, 3}}));
  CHECK_FALSE(ClosedPattern::is_closed(3, {{1, 2}, {2, 3}}));
  CHECK(ClosedPattern::is_closed(4, pattern_U(4).pairs()));

  CHECK_THROWS_AS(ClosedPattern(3, {{1, 2}, {2, 3}}), ValidationError);
  CHECK_THROWS_AS(ClosedPattern(3, {{2, 2}}), ValidationError);
  CHECK_THROWS_AS(ClosedPattern(3, {{1, 4}}), ValidationError);

  // A longer chain is collapsed too.
  ClosedPattern c4 = ClosedPattern::closure(4, adjacent_pairs(4));
  CHECK(c4 == pattern_U(4));
}

TEST_CASE("family constructors") {
  CHECK(pattern_P(4, 2).pairs() ==
        std::vector<Pair>{{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  for (int n = 2; n <= 7; ++n) CHECK(pattern_P(n, 1) == pattern_U(n));

  ClosedPattern q413 = pattern_Q(4, 1, 3);
  CHECK(q413.size() == 5);
  CHECK_FALSE(q413.contains(2, 3));
  const ClosedPattern u4 = pattern_U(4);
  for (const Pair& pr : u4.pairs())
    CHECK(q413.contains(pr.i, pr.j) == !(pr == Pair{2, 3}));

  for (int n = 3; n <= 7; ++n) CHECK(pattern_Q(n, 1, 2) == pattern_U(n));

  CHECK_THROWS_AS(pattern_P(4, 5), ValidationError);
  CHECK_THROWS_AS(pattern_Q(4, 3, 3), ValidationError);
}

TEST_CASE("minimal pairs") {
  for (int n = 2; n <= 7; ++n) CHECK(minimal_pairs(pattern_U(n)) == adjacent_pairs(n));
  CHECK(minimal_pairs(pattern_P(4, 2)) == std::vector<Pair>{{1, 3}, {2, 3}, {3, 4}});
  CHECK(minimal_pairs(pattern_Q(5, 2, 4)).size() == 5);
  CHECK(minimal_pairs(pattern_P(3, 3)) == std::vector<Pair>{{1, 2}});

  // The stated counts of the two families, over their stated ranges.
  for (int n = 3; n <= 8; ++n)
    for (int i = 1; i <= n - 1; ++i)
      CHECK(minimal_pairs(pattern_P(n, i)).size() == static_cast<size_t>(n - 1));
  for (int n = 4; n <= 8; ++n)
    for (int i = 2; i <= n - 2; ++i)
      CHECK(minimal_pairs(pattern_Q(n, i, i + 1)).size() == static_cast<size_t>(n - 1));
  // The q^n case of the split-column family needs j + 1 <= n so that the
  // minimal pair (j-1, j+1) exists.
  for (int n = 4; n <= 8; ++n)
    for (int i = 2; i <= n - 3; ++i)
      for (int j = i + 2; j <= n - 1; ++j)
        CHECK(minimal_pairs(pattern_Q(n, i, j)).size() == static_cast<size_t>(n));
  // Q_{n,1,j} with 3 <= j <= n-1 lands on q^n as well (the e=3 recursion
  // relies on this for Q_{n-2,1,4}).
  for (int n = 4; n <= 8; ++n)
    for (int j = 3; j <= n - 1; ++j)
      CHECK(minimal_pairs(pattern_Q(n, 1, j)).size() == static_cast<size_t>(n));
  // At the j = n boundary one of those chains leaves the matrix, so the
  // count drops to n - 1; the generic search gets this right.
  for (int n = 4; n <= 8; ++n)
    for (int i = 1; i <= n - 2; ++i)
      CHECK(minimal_pairs(pattern_Q(n, i, n)).size() == static_cast<size_t>(n - 1));
}

TEST_CASE("derived pattern") {
  CHECK(derived_pattern(pattern_U(3)).pairs() == std::vector<Pair>{{1, 3}});
  CHECK(derived_pattern(pattern_Q(4, 1, 3)).pairs() == std::vector<Pair>{{1, 4}});
  CHECK(derived_pattern(ClosedPattern(3, {{1, 3}, {2, 3}})).pairs().empty());
  // Derived of U_n is the pattern two off the diagonal.
  for (int n = 2; n <= 7; ++n) {
    ClosedPattern d = derived_pattern(pattern_U(n));
    for (const Pair& pr : d.pairs()) CHECK(pr.j - pr.i >= 2);
    CHECK(d.size() == pattern_U(n).size() - (n - 1));
  }
}

TEST_CASE("linear character counts") {
  for (int n = 3; n <= 7; ++n)
    for (int i = 1; i <= n - 1; ++i)
      CHECK(linear_character_count(pattern_P(n, i)) == QPoly::power(n - 1));
  for (int n = 4; n <= 7; ++n)
    for (int i = 2; i <= n - 2; ++i)
      CHECK(linear_character_count(pattern_Q(n, i, i + 1)) == QPoly::power(n - 1));
  for (int n = 5; n <= 7; ++n)
    for (int i = 2; i <= n - 3; ++i)
      for (int j = i + 2; j <= n - 1; ++j)
        CHECK(linear_character_count(pattern_Q(n, i, j)) == QPoly::power(n));
  // The column-n exception: P_{3,3} has a single minimal pair.
  CHECK(linear_character_count(pattern_P(3, 3)) == QPoly::power(1));
}

TEST_CASE("closure is idempotent and minimal on random pair sets") {
  uint64_t state = 0x2545f4914f6cdd1dULL;
  auto next = [&state](uint32_t bound) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<uint32_t>((state >> 33) % bound);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(next(6));
    std::vector<Pair> pairs;
    const int picks = static_cast<int>(next(static_cast<uint32_t>(n * n)));
    for (int k = 0; k < picks; ++k) {
      int i = 1 + static_cast<int>(next(static_cast<uint32_t>(n)));
      int j = 1 + static_cast<int>(next(static_cast<uint32_t>(n)));
      if (i != j) pairs.push_back({std::min(i, j), std::max(i, j)});
    }
    const ClosedPattern closed = ClosedPattern::closure(n, pairs);
    CHECK(ClosedPattern::is_closed(n, closed.pairs()));
    // Contains the generators and adds nothing beyond a second pass.
    for (const Pair& pr : pairs) CHECK(closed.contains(pr.i, pr.j));
    CHECK(ClosedPattern::closure(n, closed.pairs()) == closed);
    // Every added pair is genuinely forced: dropping it breaks closedness.
    std::vector<Pair> sorted = pairs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const Pair& pr : closed.pairs()) {
      if (std::binary_search(sorted.begin(), sorted.end(), pr)) continue;
      std::vector<Pair> without;
      for (const Pair& other : closed.pairs())
        if (!(other == pr)) without.push_back(other);
      CHECK_FALSE(ClosedPattern::is_closed(n, without));
    }
  }
}

TEST_CASE("structural identities behind the recursion") {
  // P_{n-2,i} meet P_{n-2,n-2} carries exactly the pairs of P_{n-3,i}.
  for (int n = 5; n <= 9; ++n)
    for (int i = 1; i <= n - 3; ++i) {
      ClosedPattern meet =
          pattern_intersection(pattern_P(n - 2, i), pattern_P(n - 2, n - 2));
      CHECK(meet.pairs() == pattern_P(n - 3, i).pairs());
      CHECK(minimal_pairs(meet).size() == minimal_pairs(pattern_P(n - 3, i)).size());
    }
  // Q_{n-2,i,n-2} has one extra free position over P_{n-3,i}.
  for (int n = 6; n <= 9; ++n)
    for (int i = 1; i <= n - 3; ++i)
      CHECK(pattern_Q(n - 2, i, n - 2).size() == pattern_P(n - 3, i).size() + 1);
}
