#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rootcert/root_system.hpp"

namespace rootcert {

class CosetSpace;

struct Coset {
  const CosetSpace* space = nullptr;
  std::size_t id = 0;
  Vector rep;
};

/// The finite group Q/kQ_L. Cosets are indexed by the mixed-radix value of
/// their reduced coordinates in the fundamental domain of the Hermite basis of
/// kQ_L (id 0 is kQ_L itself). Each coset stores a representative of minimal
/// norm, found by descending from the Hermite-domain point along -k*alpha for
/// long roots alpha while that strictly decreases the norm.
class CosetSpace {
 public:
  static constexpr std::size_t kDefaultMaxCosets = 1'000'000;

  CosetSpace(RootSystemPtr rs, int k, std::size_t max_cosets = kDefaultMaxCosets);

  const RootSystem& root_system() const { return *rs_; }
  const RootSystemPtr& root_system_ptr() const { return rs_; }
  int k() const { return k_; }
  std::size_t size() const { return reps_.size(); }

  /// Hermite basis of Q_L in simple-root coordinates (rows, upper triangular).
  const IntMatrix& ql_basis() const { return ql_hnf_; }
  std::vector<Vector> ql_basis_vectors() const;
  /// [Q : Q_L].
  std::int64_t lattice_index() const { return index_; }

  const Vector& rep(std::size_t id) const { return reps_.at(id); }
  const IntVec& rep_q(std::size_t id) const { return reps_q_.at(id); }
  const Rational& rep_norm(std::size_t id) const { return rep_norms_.at(id); }

  std::size_t id_of_q(IntVec q) const;
  /// Throws UsageError if gamma is not in Q.
  std::size_t id_of(const Vector& gamma) const;
  Coset canonicalize(const Vector& gamma) const;
  Coset coset(std::size_t id) const;
  bool in_kql(const Vector& gamma) const { return id_of(gamma) == 0; }

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;
  Coset add(const Coset& a, const Coset& b) const;
  Coset negate(const Coset& a) const;

  /// (-|rep|^2 / 2k) mod 1.
  Rational weight_class(std::size_t id) const;
  Rational weight_class(const Coset& c) const { return weight_class(c.id); }

  /// Indices of roots congruent to the coset (optionally of the given norm).
  std::vector<std::size_t> roots_in_coset(std::size_t id, std::optional<Rational> norm_filter = std::nullopt) const;
  std::size_t root_coset(std::size_t root_index) const { return root_coset_[root_index]; }

  /// (E8, k=2): Q/kQ_L does not list every simple current.
  bool simple_current_list_incomplete() const;

 private:
  void check_space(const Coset& c) const;
  std::size_t id_of_digits(const IntVec& digits) const;
  IntVec digits_of_id(std::size_t id) const;
  IntVec reduce(IntVec q) const;
  IntVec shortest_in_coset(IntVec q) const;
  static IntMatrix long_root_hnf(const RootSystem& rs);
  friend std::int64_t lattice_index(RootSystemType t);

  RootSystemPtr rs_;
  int k_;
  IntMatrix ql_hnf_;
  std::int64_t index_ = 1;
  IntVec moduli_;                  // k * H_ii
  std::vector<std::size_t> strides_;
  std::vector<Vector> reps_;
  IntMatrix reps_q_;
  std::vector<Rational> rep_norms_;
  std::vector<std::size_t> root_coset_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> roots_by_coset_;
};

using CosetSpacePtr = std::shared_ptr<const CosetSpace>;

/// Cached per (type, k). Throws UsageError for k < 1.
CosetSpacePtr build_coset_space(RootSystemType t, int k);
inline CosetSpacePtr build_coset_space(std::string_view t, int k) { return build_coset_space(RootSystemType::parse(t), k); }

/// [Q : Q_L] as the determinant of the Hermite basis of Q_L.
std::int64_t lattice_index(RootSystemType t);

}  // namespace rootcert
