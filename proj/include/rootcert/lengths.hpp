#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootcert/codes.hpp"
#include "rootcert/root_system.hpp"

namespace rootcert {

struct LengthResult {
  int value = 0;
  std::vector<std::size_t> witness;  // root indices, sorted; they sum to the input
};

/// Exact length of beta with respect to the full root set. Throws UsageError
/// if beta is not in Q or cap < 1 (cap 0 is allowed for beta = 0), and
/// CapExceeded if no decomposition into at most `cap` roots exists.
///
/// Length is constant on Weyl orbits, so the search runs over dominant
/// representatives only: layer L+1 consists of the dominant representatives of
/// d + alpha for d in layer L and alpha in the root set. Layers are cached per
/// root system and extended on demand.
LengthResult length_exact(const RootSystem& rs, const Vector& beta, int cap);
LengthResult length_exact_q(const RootSystem& rs, const IntVec& q, int cap);

/// 4 * k * rank.
int default_bfs_cap(const RootSystem& rs, int k);

enum class BoundSource { Generic, ClassicalHalf, ClassicalCoord, EType, EType567 };
std::string to_string(BoundSource s);

struct BoundReport {
  unsigned subset = 0;  // bit i is ambient coordinate i
  Rational m_s;
  Rational bound;
  BoundSource source = BoundSource::Generic;
};

/// M_S = max over roots of sum_{i in S} |coordinate|, bound = sum_{i in S}|x_i| / M_S.
BoundReport bound_generic(const RootSystem& rs, const Vector& beta, unsigned subset);

/// Every closed-form bound that applies to the type: half-sum and single
/// coordinate bounds for A, B, C, D, F, G (no single coordinate bound for C);
/// the Hamming-code M_S bound on the support for E, tagged EType567 when the
/// support is {5,6,7} in E6/E7.
std::vector<BoundReport> specialized_bounds(const RootSystem& rs, const Vector& beta);
/// The largest of specialized_bounds (first on ties).
BoundReport bound_specialized(const RootSystem& rs, const Vector& beta);

/// max{1, |S cap T|/2 : T in H_m(4)} with m = 8 for E8 and 7 otherwise.
Rational e_type_m(unsigned support, int n);

struct EqualityCertificate {
  unsigned subset = 0;
  Rational m_s;
  /// For E types: the Hamming word forced by the equality, if the support has
  /// 3, 4 or 5 elements and the half-sum or two-thirds bound is attained.
  std::optional<CodeWord> hamming_word;
};

/// Present iff res.value == rep.bound. Verifies that each witness root attains
/// M_S on S, that witness coordinates in S never have opposite signs, and for
/// E types the Hamming-word structure of the equality cases. A failed check
/// throws ConsistencyError.
std::optional<EqualityCertificate> equality_certificate(const RootSystem& rs, const Vector& beta,
                                                        const LengthResult& res, const BoundReport& rep);

}  // namespace rootcert
