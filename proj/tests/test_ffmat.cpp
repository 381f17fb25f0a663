#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <sstream>

#include "unitri/ffmat.hpp"
#include "unitri/pattern.hpp"

using namespace unitri;

namespace {

FieldMatrix elementary(int n, int i, int j, uint32_t f, const PrimeField& field) {
  FieldMatrix m(n, n, field);
  m.set(i - 1, j - 1, f);
  return m;
}

FieldMatrix unitri_with(int n, const PrimeField& field,
                        std::initializer_list<std::tuple<int, int, uint32_t>> entries) {
  FieldMatrix m = FieldMatrix::identity(n, field);
  for (auto [i, j, f] : entries) m.set(i - 1, j - 1, f);
  return m;
}

// Small deterministic generator for property checks.
struct Lcg {
  uint64_t state = 0x853c49e6748fea9bULL;
  uint32_t next(uint32_t bound) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<uint32_t>((state >> 33) % bound);
  }
};

FieldMatrix random_matrix(int rows, int cols, const PrimeField& field, Lcg& rng) {
  FieldMatrix m(rows, cols, field);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, rng.next(field.order()));
  return m;
}

}  // namespace

TEST_CASE("prime field construction and scalar ops") {
  CHECK_THROWS_AS(PrimeField(0), ValidationError);
  CHECK_THROWS_AS(PrimeField(1), ValidationError);
  CHECK_THROWS_AS(PrimeField(4), ValidationError);
  CHECK_THROWS_AS(PrimeField(9), ValidationError);

  PrimeField f2(2), f3(3), f5(5);
  CHECK(f2.add(1, 1) == 0);
  CHECK(f3.inv(2) == 2);
  CHECK(f5.mul(3, 4) == 2);
  CHECK(f5.sub(1, 3) == 3);
  CHECK(f5.neg(2) == 3);
  CHECK(f5.reduce(-7) == 3);
  CHECK_THROWS_AS(f5.inv(0), DomainError);

  for (uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
    PrimeField f(p);
    for (uint32_t a = 1; a < p; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  }
}

TEST_CASE("matrix product basics") {
  PrimeField f2(2), f3(3);
  Lcg rng;
  FieldMatrix x = random_matrix(3, 3, f3, rng);
  CHECK(mat_mul(FieldMatrix::identity(3, f3), x) == x);
  CHECK(mat_mul(x, FieldMatrix::identity(3, f3)) == x);

  CHECK(mat_mul(elementary(3, 1, 2, 1, f2), elementary(3, 2, 3, 1, f2)) ==
        elementary(3, 1, 3, 1, f2));

  FieldMatrix a(2, 2, f3), b(2, 2, f3);
  a.set(0, 0, 1); a.set(0, 1, 2); a.set(1, 1, 1);
  b.set(0, 0, 1); b.set(0, 1, 1); b.set(1, 1, 1);
  CHECK(mat_mul(a, b) == FieldMatrix::identity(2, f3));

  CHECK_THROWS_AS(mat_mul(FieldMatrix(2, 3, f3), FieldMatrix(2, 3, f3)), ValidationError);
  CHECK_THROWS_AS(mat_mul(FieldMatrix(2, 2, f2), FieldMatrix(2, 2, f3)), ValidationError);
}

TEST_CASE("matrix product is associative") {
  // Exhaustive over all 2x2 matrices of GF(2), sampled for 3x3 over GF(3).
  PrimeField f2(2);
  std::vector<FieldMatrix> all;
  for (uint32_t bits = 0; bits < 16; ++bits) {
    FieldMatrix m(2, 2, f2);
    for (int e = 0; e < 4; ++e) m.set(e / 2, e % 2, (bits >> e) & 1);
    all.push_back(std::move(m));
  }
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all)
        CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));

  PrimeField f3(3);
  Lcg rng;
  for (int trial = 0; trial < 300; ++trial) {
    FieldMatrix a = random_matrix(3, 3, f3, rng);
    FieldMatrix b = random_matrix(3, 3, f3, rng);
    FieldMatrix c = random_matrix(3, 3, f3, rng);
    CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
  }
}

TEST_CASE("unitriangular inverse") {
  PrimeField f2(2), f3(3);
  CHECK(unitri_inverse(FieldMatrix::identity(4, f3)) == FieldMatrix::identity(4, f3));
  FieldMatrix t2 = unitri_with(2, f2, {{1, 2, 1}});
  CHECK(unitri_inverse(t2) == t2);
  CHECK(unitri_inverse(unitri_with(2, f3, {{1, 2, 2}})) == unitri_with(2, f3, {{1, 2, 1}}));

  FieldMatrix bad(2, 2, f2);
  CHECK_THROWS_AS(unitri_inverse(bad), ValidationError);

  // A * A^{-1} = I and the double inverse returns A, over all of U_3(3).
  ClosedPattern u3 = pattern_U(3);
  for (uint64_t id = 0; id < 27; ++id) {
    FieldMatrix a = decode_element(id, u3, f3);
    FieldMatrix inv = unitri_inverse(a);
    CHECK(inv.is_unitriangular());
    CHECK(mat_mul(a, inv) == FieldMatrix::identity(3, f3));
    CHECK(unitri_inverse(inv) == a);
  }
}

TEST_CASE("element encoding over a pattern") {
  PrimeField f2(2);
  ClosedPattern u2 = pattern_U(2);
  CHECK(encode_element(FieldMatrix::identity(2, f2), u2) == 0);
  CHECK(encode_element(unitri_with(2, f2, {{1, 2, 1}}), u2) == 1);

  ClosedPattern u3 = pattern_U(3);
  for (uint64_t id = 0; id < 8; ++id)
    CHECK(encode_element(decode_element(id, u3, f2), u3) == id);
  CHECK_THROWS_AS(decode_element(8, u3, f2), ValidationError);

  // Bijection for a proper pattern and p = 3.
  PrimeField f3(3);
  ClosedPattern p32 = pattern_P(3, 2);
  std::vector<char> seen(9, 0);
  for (uint64_t id = 0; id < 9; ++id) {
    FieldMatrix m = decode_element(id, p32, f3);
    uint64_t back = encode_element(m, p32);
    CHECK(back == id);
    seen[back] = 1;
  }
  for (char s : seen) CHECK(s == 1);

  // Off-pattern support is rejected.
  FieldMatrix off = unitri_with(3, f2, {{1, 2, 1}});
  CHECK_THROWS_AS(encode_element(off, p32), ValidationError);
}

TEST_CASE("matrix text format round trip and parse errors") {
  PrimeField f3(3);
  FieldMatrix m(2, 3, f3);
  m.set(0, 0, 1); m.set(0, 2, 2); m.set(1, 1, 1);
  std::stringstream s;
  write_matrix_text(s, m);
  CHECK(read_matrix_text(s) == m);

  auto expect_error = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      read_matrix_text(in);
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("", "line 1");
  expect_error("2 2\n", "line 1");
  expect_error("2 2 2\n1 0\n", "line 3");
  expect_error("2 2 2\n1 0 1\n0 1\n", "line 2");
  expect_error("1 2 3\n1 5\n", "line 2");
}
