#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rootcert {

/// Subset of {1,...,8}; member i is bit i-1.
struct CodeWord {
  std::uint8_t mask = 0;

  static CodeWord of(std::initializer_list<int> members);
  bool contains(int i) const { return mask >> (i - 1) & 1u; }
  int size() const { return __builtin_popcount(mask); }
  std::vector<int> members() const;
  std::string to_string() const;  // "{1,2,3,4}"

  friend CodeWord operator^(CodeWord a, CodeWord b) { return {static_cast<std::uint8_t>(a.mask ^ b.mask)}; }
  friend CodeWord operator&(CodeWord a, CodeWord b) { return {static_cast<std::uint8_t>(a.mask & b.mask)}; }
  friend CodeWord operator|(CodeWord a, CodeWord b) { return {static_cast<std::uint8_t>(a.mask | b.mask)}; }
  friend auto operator<=>(const CodeWord&, const CodeWord&) = default;
};

struct HammingCode {
  int length = 8;
  std::vector<CodeWord> words;  // sorted by mask

  bool contains(CodeWord w) const;
  /// The words of size 4.
  std::vector<CodeWord> weight4() const;
};

/// Span of {1,2,3,4},{1,2,5,6},{1,2,7,8},{1,3,5,7} under symmetric difference.
const HammingCode& build_h8();
/// Words of H8 avoiding 8.
const HammingCode& build_h7();

/// For a 2-subset t1 of {1..8}: the first (t2,t3,t4), in lexicographic order of
/// 2-subsets, that are pairwise disjoint from each other and t1 and whose
/// pairwise unions with each other and t1 all lie in H8(4).
std::array<CodeWord, 3> find_quadruple(CodeWord t1);
/// Same within {1..7} against H7(4).
std::array<CodeWord, 2> find_triple(CodeWord t1);

}  // namespace rootcert
