#include "rootcert/codes.hpp"

#include <algorithm>

#include "rootcert/error.hpp"

namespace rootcert {

CodeWord CodeWord::of(std::initializer_list<int> members) {
  CodeWord w;
  for (int i : members) {
    if (i < 1 || i > 8) throw UsageError("code word member out of range: " + std::to_string(i));
    w.mask = static_cast<std::uint8_t>(w.mask | 1u << (i - 1));
  }
  return w;
}

std::vector<int> CodeWord::members() const {
  std::vector<int> out;
  for (int i = 1; i <= 8; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string CodeWord::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : members()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

bool HammingCode::contains(CodeWord w) const { return std::binary_search(words.begin(), words.end(), w); }

std::vector<CodeWord> HammingCode::weight4() const {
  std::vector<CodeWord> out;
  for (auto w : words)
    if (w.size() == 4) out.push_back(w);
  return out;
}

const HammingCode& build_h8() {
  static const HammingCode code = [] {
    const std::array<CodeWord, 4> gens{CodeWord::of({1, 2, 3, 4}), CodeWord::of({1, 2, 5, 6}),
                                       CodeWord::of({1, 2, 7, 8}), CodeWord::of({1, 3, 5, 7})};
    HammingCode h;
    h.length = 8;
    for (unsigned combo = 0; combo < 16; ++combo) {
      CodeWord w;
      for (unsigned g = 0; g < 4; ++g)
        if (combo >> g & 1u) w = w ^ gens[g];
      h.words.push_back(w);
    }
    std::sort(h.words.begin(), h.words.end());
    h.words.erase(std::unique(h.words.begin(), h.words.end()), h.words.end());
    return h;
  }();
  return code;
}

const HammingCode& build_h7() {
  static const HammingCode code = [] {
    HammingCode h;
    h.length = 7;
    for (auto w : build_h8().words)
      if (!w.contains(8)) h.words.push_back(w);
    return h;
  }();
  return code;
}

namespace {

// 2-subsets of {1..n} in lexicographic order of their sorted member pairs.
std::vector<CodeWord> pairs_of(int n) {
  std::vector<CodeWord> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back(CodeWord::of({i, j}));
  return out;
}

bool union_in(const HammingCode& code, CodeWord a, CodeWord b) {
  return (a & b).mask == 0 && code.contains(a | b);
}

void check_pair(CodeWord t1, int n) {
  if (t1.size() != 2) throw UsageError("expected a 2-subset, got " + t1.to_string());
  for (int i : t1.members())
    if (i > n) throw UsageError("2-subset " + t1.to_string() + " is not inside {1.." + std::to_string(n) + "}");
}

}  // namespace

std::array<CodeWord, 3> find_quadruple(CodeWord t1) {
  check_pair(t1, 8);
  const auto& h8 = build_h8();
  const auto pairs = pairs_of(8);
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    if (!union_in(h8, t1, pairs[a])) continue;
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      if (!union_in(h8, t1, pairs[b]) || !union_in(h8, pairs[a], pairs[b])) continue;
      for (std::size_t c = b + 1; c < pairs.size(); ++c) {
        if (union_in(h8, t1, pairs[c]) && union_in(h8, pairs[a], pairs[c]) && union_in(h8, pairs[b], pairs[c]))
          return {pairs[a], pairs[b], pairs[c]};
      }
    }
  }
  throw ConsistencyError("no Hamming quadruple extends " + t1.to_string());
}

std::array<CodeWord, 2> find_triple(CodeWord t1) {
  check_pair(t1, 7);
  const auto& h7 = build_h7();
  const auto pairs = pairs_of(7);
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    if (!union_in(h7, t1, pairs[a])) continue;
    for (std::size_t b = a + 1; b < pairs.size(); ++b)
      if (union_in(h7, t1, pairs[b]) && union_in(h7, pairs[a], pairs[b])) return {pairs[a], pairs[b]};
  }
  throw ConsistencyError("no Hamming triple extends " + t1.to_string());
}

}  // namespace rootcert
