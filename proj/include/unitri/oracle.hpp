#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "unitri/ffmat.hpp"
#include "unitri/pattern.hpp"

namespace unitri {

struct OracleOptions {
  uint64_t max_group_order = uint64_t(1) << 21;
  double max_class_work = 1e10;  // guard on #classes * |G|
  int threads = 1;
  std::optional<std::filesystem::path> cache_dir;
};

struct ConjugacyClassData {
  std::vector<uint32_t> class_of;       // class index per element id
  std::vector<uint64_t> reps;           // smallest id in each class
  std::vector<uint64_t> sizes;
  std::vector<uint32_t> inverse_class;  // class of rep^{-1}

  size_t count() const { return reps.size(); }
};

using DegreeHistogram = std::map<uint64_t, uint64_t>;  // degree -> multiplicity

/// Fully enumerated group of unitriangular matrices over GF(p). Either a
/// pattern group, where element ids are the mixed-radix pattern encodings,
/// or an explicit subgroup of some U_m, where ids index the elements sorted
/// by their full upper-triangular encoding.
class GroupTable {
 public:
  /// All p^{|pattern|} elements supported on the pattern.
  GroupTable(ClosedPattern pattern, PrimeField field, uint64_t max_order);
  /// Explicit subgroup; elements must be closed under multiplication.
  GroupTable(int ambient_n, PrimeField field, const std::vector<FieldMatrix>& elements);

  uint64_t size() const { return size_; }
  int dim() const { return n_; }
  const PrimeField& field() const { return field_; }
  bool is_pattern_group() const { return !explicit_mode_; }
  const ClosedPattern& pattern() const { return pattern_; }

  uint64_t identity_id() const;
  FieldMatrix matrix_of(uint64_t id) const;
  uint64_t id_of(const FieldMatrix& m) const;
  uint64_t multiply(uint64_t a, uint64_t b) const;
  uint64_t inverse(uint64_t a) const;

  /// Largest element order (a power of p), found by scanning the elements.
  uint32_t exponent() const;

 private:
  int n_;
  PrimeField field_;
  ClosedPattern pattern_;            // supporting pattern (full U_n in explicit mode)
  std::vector<size_t> positions_;    // flat 0-based offsets of pattern pairs
  bool explicit_mode_ = false;
  uint64_t size_ = 0;
  std::vector<std::vector<uint32_t>> elements_;      // explicit mode: flat matrices
  std::vector<uint64_t> element_codes_;              // explicit mode: sorted encodings
  mutable uint32_t exponent_cache_ = 0;

  void decode_into(uint64_t id, uint32_t* m) const;  // pattern-mode digits
  uint64_t encode_from(const uint32_t* m) const;
  void matrix_into(uint64_t id, uint32_t* m) const;  // either mode
  uint64_t id_from(const uint32_t* m) const;
  void mul_into(const uint32_t* a, const uint32_t* b, uint32_t* c) const;
  void inv_into(const uint32_t* a, uint32_t* c) const;
  std::vector<FieldMatrix> generator_matrices() const;

  friend struct OracleKernel;
  friend ConjugacyClassData conjugacy_classes(const GroupTable&);
  friend DegreeHistogram clifford_first_row_census(const ClosedPattern&,
                                                   const PrimeField&,
                                                   const OracleOptions&);
};

GroupTable enumerate_group(const ClosedPattern& pattern, const PrimeField& field,
                           const OracleOptions& opts = {});

/// Exact partition under conjugation; representative is the smallest id.
ConjugacyClassData conjugacy_classes(const GroupTable& g);

/// Irreducible character degrees via class multiplication constants and
/// simultaneous diagonalization of the class algebra over GF(ell), with ell
/// the smallest prime = 1 mod exp(G) above 2 sqrt(|G|). Each degree is
/// lifted as the unique power of p with p^{2e} <= |G| matching the central
/// character; a failed lift retries with the next admissible modulus.
DegreeHistogram character_degrees(const GroupTable& g, const ConjugacyClassData& classes,
                                  const OracleOptions& opts = {});

/// Cached variant for pattern groups, keyed by pattern_digest.
DegreeHistogram character_degrees(const ClosedPattern& pattern, const PrimeField& field,
                                  const OracleOptions& opts = {});

/// Independent census for groups whose pattern holds the whole first row and
/// is closed off it: splits G = M x| H with M the abelian first-row subgroup,
/// walks the H-orbits on Irr(M), and recurses into stabilizer subgroups.
DegreeHistogram clifford_first_row_census(const ClosedPattern& pattern,
                                          const PrimeField& field,
                                          const OracleOptions& opts = {});

struct DegreeCensus {
  int n = 0;
  uint32_t p = 0;
  std::map<int, uint64_t> by_exponent;  // e -> N_{p^e}(U_n(p))
};

/// Ground-truth histogram of U_n(p) re-expressed by exponent. Asserts that
/// every degree is a power of p and that the top exponent equals mu(n).
/// e_max < 0 keeps every exponent.
DegreeCensus degree_census_oracle(int n, uint32_t p, int e_max = -1,
                                  const OracleOptions& opts = {});

/// Content digest (FNV-1a, hex) of the sorted pattern and p; cache key.
std::string pattern_digest(const ClosedPattern& pattern, uint32_t p);

}  // namespace unitri
