#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rootcert/quotient.hpp"
#include "rootcert/reduction.hpp"

namespace rootcert {

struct Trivial {};

struct RootFound {
  std::size_t root = 0;  // index into the root system
  Vector gamma;
  Rational norm;
  Rational rho;  // 1 - norm / 2k
};

struct ExcludedModZ {
  int t = 1;
  Rational target;  // 1 - 1/(tk)
  Rational cls;     // weight class of the coset, != target mod 1
};

struct ExcludedBound {
  Vector gamma_reduced;
  CaseTag tag = CaseTag::A;
  int length = 0;
  Rational lower;   // length - |gamma_reduced|^2 / 2k
  Rational target;  // strictly below `lower`
};

struct Failure {
  std::string diagnostics;
};

using WeightCertificate = std::variant<Trivial, RootFound, ExcludedModZ, ExcludedBound, Failure>;

/// "trivial", "root_found", "excluded_modz", "excluded_bound", "failure".
std::string kind(const WeightCertificate& c);

struct CertifyOptions {
  int bfs_cap = 0;         // 0: 4 * k * rank
  bool skip_modz = false;  // go straight to the length bound after the root test
  int threads = 0;         // 0: default_threads()
};

/// 1 - |gamma|^2/2k for a root gamma in the coset; absent if the coset has no
/// root. Roots of two different norms in one coset throw ConsistencyError.
std::optional<Rational> exact_weight_if_root(const CosetSpace& space, std::size_t id);

/// Decides whether the coset's weight can equal 1 - 1/(tk): coset 0 is
/// Trivial; a root of norm 2/t gives RootFound; a weight class different from
/// the target mod 1 gives ExcludedModZ; otherwise the reduced representative's
/// exact length gives ExcludedBound when length - |gamma|^2/2k exceeds the
/// target, and Failure if not. Requires k >= 2 and t in {1, lacing}.
WeightCertificate certify_coset(const CosetSpace& space, const Coset& coset, int t, const CertifyOptions& opts = {});

struct Tallies {
  std::size_t root_found = 0, excluded_modz = 0, excluded_bound = 0, trivial = 0, failure = 0;
  std::size_t excluded() const { return excluded_modz + excluded_bound; }
  std::size_t total() const { return root_found + excluded() + trivial + failure; }
  void add(const WeightCertificate& c);
};

struct SweepReport {
  RootSystemType type;
  int k = 2;
  int t = 1;
  std::vector<WeightCertificate> certificates;  // by coset id
  Tallies tallies;
  /// RootFound cosets are exactly the cosets of the roots of norm 2/t.
  bool iff_holds = false;
  std::vector<std::size_t> iff_mismatches;
  /// (E8, 2): the cosets do not list every simple current.
  bool incomplete = false;

  bool certified() const { return tallies.failure == 0 && iff_holds; }
};

/// t values to check: {1} for simply laced types, {1, r} otherwise.
std::vector<int> t_values(const RootSystem& rs);

SweepReport sweep(const CosetSpace& space, int t, const CertifyOptions& opts = {});
/// One report per t value.
std::vector<SweepReport> verify_thm_key(RootSystemType type, int k, const CertifyOptions& opts = {});

struct MinWeightReport {
  RootSystemType type;
  int k = 2;
  Rational minimum;
  Rational expected;  // 1 - 1/k
  /// Per nonzero coset: exact weight for root cosets, otherwise the least
  /// value of its weight class not below length - |gamma|^2/2k.
  std::vector<Rational> values;  // by coset id, values[0] unused
  std::vector<std::size_t> argmin;
  bool attained_only_at_long_roots = false;
  bool ok() const { return minimum == expected && attained_only_at_long_roots; }
};

/// Minimum over nonzero cosets of the certified weights. (E8, 2) and k < 2
/// throw UsageError; a Failure certificate at t = 1 throws ConsistencyError.
MinWeightReport min_weight_report(RootSystemType type, int k, const CertifyOptions& opts = {});

}  // namespace rootcert
