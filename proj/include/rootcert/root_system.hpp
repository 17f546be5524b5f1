#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rootcert/linalg.hpp"
#include "rootcert/vector.hpp"

namespace rootcert {

enum class Family { A, B, C, D, E, F, G };

/// One of A_n (n>=1), B_n, C_n (n>=2), D_n (n>=4), E6, E7, E8, F4, G2.
/// Classical ranks are limited to 8.
struct RootSystemType {
  Family family = Family::A;
  int n = 1;

  static RootSystemType make(Family family, int n);
  /// "A2", "e8", "D4", ... Throws UsageError.
  static RootSystemType parse(std::string_view text);

  std::string name() const;
  int rank() const { return n; }
  int ambient_dim() const;
  int lacing() const;
  bool simply_laced() const { return lacing() == 1; }
  FormScale form() const;
  /// Common denominator of all root coordinates (1, 2 or 3).
  int denominator() const;

  friend bool operator==(const RootSystemType&, const RootSystemType&) = default;
};

/// Bourbaki-numbered Cartan matrix, a_ij = 2<b_i,b_j>/<b_j,b_j>.
IntMatrix standard_cartan(RootSystemType t);

/// Permutation p with m[p[i]][p[j]] == standard[i][j] for all i, j.
std::optional<std::vector<std::size_t>> match_cartan(const IntMatrix& m, const IntMatrix& standard);

/// Label of a (possibly reducible) Cartan matrix, e.g. "A1^3", "D4", "A3".
/// Components are identified against standard matrices; a component of
/// type D_3 is reported as A3.
std::string classify_cartan(const IntMatrix& m);

/// A finite root system in explicit ambient coordinates. Roots are stored in
/// lexicographic order of their coordinates; indices into that order are used
/// throughout (root permutations, witnesses, ...).
class RootSystem {
 public:
  /// Builds from an explicit root set. When `type` is given the computed base
  /// is validated against (and reordered to) the standard Cartan matrix of the
  /// type; a mismatch throws ConsistencyError.
  RootSystem(std::string label, std::optional<RootSystemType> type, std::vector<Vector> roots);

  const std::string& label() const { return label_; }
  const std::optional<RootSystemType>& type() const { return type_; }
  std::size_t rank() const { return simple_.size(); }
  std::size_t dim() const { return dim_; }
  FormScale form() const { return form_; }
  int lacing() const { return lacing_; }
  bool simply_laced() const { return lacing_ == 1; }

  std::size_t size() const { return roots_.size(); }
  const std::vector<Vector>& roots() const { return roots_; }
  const Vector& root(std::size_t i) const { return roots_[i]; }
  std::optional<std::size_t> index_of(const Vector& v) const;
  std::size_t negative(std::size_t i) const { return neg_[i]; }

  const std::vector<std::size_t>& long_roots() const { return long_; }
  const std::vector<std::size_t>& short_roots() const { return short_; }
  bool is_long(std::size_t i) const { return is_long_[i]; }
  const Rational& long_norm() const { return long_norm_; }
  const Rational& short_norm() const { return short_norm_; }

  /// Indices of the simple roots, in standard (Bourbaki) order for typed systems.
  const std::vector<std::size_t>& simple_indices() const { return simple_; }
  std::vector<Vector> simple_roots() const;
  const IntMatrix& cartan() const { return cartan_; }
  std::size_t highest_root() const { return highest_; }

  /// Coefficients over the simple roots; nullopt if v is not in the root lattice.
  std::optional<IntVec> to_q(const Vector& v) const;
  /// As to_q but throws UsageError.
  IntVec q_of(const Vector& v) const;
  Vector from_q(const IntVec& q) const;
  const IntVec& root_q(std::size_t i) const { return root_q_[i]; }
  std::optional<std::size_t> root_index_of_q(const IntVec& q) const;

  /// 6<u,v> for q-coordinate vectors (always an integer for the supported types).
  std::int64_t inner6_q(const IntVec& a, const IntVec& b) const;
  /// 6<alpha_i, alpha_j> for root indices.
  std::int64_t inner6(std::size_t i, std::size_t j) const { return inner6_[i * roots_.size() + j]; }

  /// Simple reflection s_i as a permutation of root indices.
  const std::vector<std::uint8_t>& reflection_perm(std::size_t i) const { return reflections_[i]; }

  /// Weyl-dominant representative d of q (pairing with every simple coroot
  /// >= 0), reached by repeatedly applying the lowest-index simple reflection
  /// whose pairing is negative. `word` records the reflections in the order
  /// applied, so q = s_{word[0]} ... s_{word.back()} d.
  IntVec dominant(IntVec q, std::vector<std::uint8_t>* word = nullptr) const;

 private:
  void compute_base();
  void compute_tables();

  std::string label_;
  std::optional<RootSystemType> type_;
  std::size_t dim_ = 0;
  FormScale form_;
  int lacing_ = 1;
  Rational long_norm_, short_norm_;
  std::vector<Vector> roots_;
  std::map<std::vector<Rational>, std::size_t> index_;
  std::vector<std::size_t> neg_;
  std::vector<std::size_t> long_, short_;
  std::vector<bool> is_long_;
  std::vector<std::size_t> simple_;
  IntMatrix cartan_;
  RatMatrix gram_inv_;
  IntMatrix gram6_;
  IntMatrix root_q_;
  std::map<IntVec, std::size_t> root_by_q_;
  std::vector<std::int64_t> inner6_;
  std::vector<std::vector<std::uint8_t>> reflections_;
  std::size_t highest_ = 0;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// The root set displayed for the type, in the type's ambient coordinates.
/// Results are cached; the same pointer is returned for equal types.
RootSystemPtr build_root_system(RootSystemType t);
inline RootSystemPtr build_root_system(std::string_view type) { return build_root_system(RootSystemType::parse(type)); }

/// Short roots of a non simply laced system as a root system of their own.
/// Throws UsageError for simply laced input.
RootSystemPtr short_root_subsystem(const RootSystem& rs);

struct RootStats {
  std::size_t count = 0;
  std::size_t long_count = 0;
  std::size_t short_count = 0;
  std::map<Rational, std::size_t> norms;
  int lacing = 1;
  Vector highest_root;
};
RootStats root_stats(const RootSystem& rs);

/// s_alpha(x) = x - (2<x,alpha>/<alpha,alpha>) alpha.
Vector reflect(const Vector& x, const Vector& alpha);

}  // namespace rootcert
