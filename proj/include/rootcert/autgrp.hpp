#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rootcert/linalg.hpp"
#include "rootcert/quotient.hpp"

namespace rootcert {

/// Images of the simple roots (as root indices) under an element of Aut(Delta).
/// This determines the element; it is how group elements are stored.
using SimpleImages = std::vector<std::uint8_t>;

/// A permutation of root indices.
using RootPerm = std::vector<std::uint8_t>;

/// An element of Aut(Delta): its matrix on ambient coordinates (identity on the
/// orthogonal complement of the span of Delta) and the permutation of roots.
struct Isometry {
  RatMatrix matrix;
  RootPerm perm;

  friend bool operator==(const Isometry& a, const Isometry& b) { return a.perm == b.perm; }
};

/// M^T M = I, i.e. M preserves the diagonal form.
bool preserves_form(const RatMatrix& m);

/// Checks that `matrix` preserves the form and maps Delta onto Delta; throws
/// UsageError otherwise.
Isometry make_isometry(const RootSystem& rs, RatMatrix matrix);
Isometry isometry_of(const RootSystem& rs, const SimpleImages& images);
SimpleImages simple_images(const RootSystem& rs, const RootPerm& perm);
/// Full root permutation of the linear map sending simple root i to images[i].
/// Throws ConsistencyError if some root is not sent to a root.
RootPerm root_perm(const RootSystem& rs, const SimpleImages& images);

RootPerm compose(const RootPerm& a, const RootPerm& b);  // a after b
RootPerm inverse(const RootPerm& a);

/// Simple reflections, then a generating set of the diagram automorphisms
/// (permutations of the simple roots preserving all inner products).
std::vector<Isometry> aut_generators(const RootSystem& rs);

/// All permutations of the simple roots preserving their inner products.
std::vector<std::vector<std::size_t>> diagram_automorphisms(const RootSystem& rs);

struct IsometryGroup {
  RootSystemPtr rs;
  std::vector<Isometry> generators;
  /// Present when the closure finished within the cap; elements[0] is the identity.
  std::optional<std::vector<SimpleImages>> elements;
  std::optional<std::uint64_t> order;
  bool cap_exceeded = false;
};

constexpr std::size_t kDefaultGroupCap = 2'000'000;

/// Closure of the generators by breadth-first search. Past `cap` elements the
/// result keeps the generators only and sets cap_exceeded.
IsometryGroup generate(RootSystemPtr rs, std::vector<Isometry> generators, std::size_t cap = kDefaultGroupCap);
/// generate(rs, aut_generators(*rs), cap).
IsometryGroup aut_group(RootSystemPtr rs, std::size_t cap = kDefaultGroupCap);

/// Uniform over the elements when enumerated; otherwise a random word of
/// length 64 in the generators.
SimpleImages random_element(const IsometryGroup& g, std::mt19937_64& rng);

struct CosetPermutation {
  std::vector<std::size_t> images;  // by coset id
  friend bool operator==(const CosetPermutation&, const CosetPermutation&) = default;
};

/// beta + kQ_L -> g(beta) + kQ_L.
CosetPermutation act_on_cosets(const CosetSpace& space, const SimpleImages& g);
CosetPermutation act_on_cosets(const CosetSpace& space, const Isometry& g);

/// True iff g fixes the coset of every simple root (the cosets of the simple
/// roots generate Q/kQ_L, and the action is by group automorphisms).
bool acts_trivially(const CosetSpace& space, const SimpleImages& g);

/// Elements of the enumerated group acting trivially on the cosets. The group
/// must be Aut of the space's root system; throws UsageError if it is not
/// enumerated.
std::vector<SimpleImages> kernel(const CosetSpace& space, const IsometryGroup& group);

struct Extension {
  std::optional<Isometry> isometry;
  /// A pair of roots whose inner product is not preserved.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::string reason;
  bool ok() const { return isometry.has_value(); }
};

/// Extends a permutation of Delta preserving all inner products to the linear
/// map fixed by the images of the simple roots, then checks that it restricts
/// to `perm` on Delta and preserves the form.
Extension extend_permutation(const RootSystem& rs, const RootPerm& perm);

struct InnerProductPair {
  Rational before;  // <a1, a2>
  Rational after;   // <g(a1), g(a2)>
  bool both_short = false;
};

enum class Rigidity {
  Equal,            // hypotheses hold and the inner products agree
  HypothesisFails,  // neither k >= 3 nor (k = 2, non simply laced, both short)
  OutOfRange,       // a value is not an inner product of two roots
  NotCongruent,     // before/k and after/k differ mod Z
  CaseI,            // k = 4, +-2 vs -+2
  CaseII,           // k = 3, +-2 vs -+1
  CaseIII,          // k = 3, +-1 vs -+2
  CaseIV,           // k = 2, r = 2, +-1 vs -+1
  Unclassified,     // congruent, unequal and none of the above
};
std::string to_string(Rigidity r);

/// One verdict per pair. Only Equal is accepted.
std::vector<Rigidity> rigidity_check(const RootSystem& rs, int k, std::span<const InnerProductPair> pairs);

struct Reconstruction {
  std::optional<Isometry> isometry;
  std::string failed_stage;  // empty on success
  std::string detail;
  bool ok() const { return isometry.has_value(); }
};

/// Recovers an element of Aut(Delta) from a permutation of cosets. Stages:
/// "bijection", "homomorphism", "weight_class", "hypothesis", "root_cosets",
/// "negation", "inner_mod_k", "rigidity", "extension", "full_root_set".
/// Uses all roots for k >= 3 and the short roots for k = 2 (non simply laced).
Reconstruction reconstruct_from_coset_action(const CosetSpace& space, const CosetPermutation& pi);

struct ShortAutComparison {
  std::optional<std::uint64_t> order;        // |Aut(Delta)|
  std::optional<std::uint64_t> short_order;  // |Aut(Delta_s)|
  std::string short_label;
  bool equal_orders = false;
  std::optional<std::uint64_t> index;  // short_order / order when divisible
  bool contained = false;              // every generator of Aut(Delta) preserves Delta_s
};

/// Non simply laced types only (UsageError otherwise). Orders are absent when
/// the cap is exceeded.
ShortAutComparison compare_short_aut(const RootSystemPtr& rs, std::size_t cap = kDefaultGroupCap);

}  // namespace rootcert
