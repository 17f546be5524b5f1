#pragma once

#include <string>

#include "rootcert/quotient.hpp"

namespace rootcert {

enum class CaseTag {
  A,  // |S| >= 2, 1 <= |x_i| <= k-1
  ADi,
  ADii,
  Bi,
  Bii,
  C,
  E78i,
  E78ii,
  E78iii,
  E6i,
  E6ii,
  E6iii,
  E6iv,
  Fi,
  Fii,
  Fiii,
  Gi,
  Gii,
};

/// "A", "AD-i", "E6-iv", ...
std::string to_string(CaseTag tag);

struct ReducedRep {
  Vector gamma;
  CaseTag tag = CaseTag::A;
  int steps = 0;
};

/// Each procedure starts from coset.rep (any member of a nonzero coset)
/// and applies the moves of the corresponding existence proof, always acting
/// on the lowest-index qualifying coordinate. Coset 0 and the wrong family
/// throw UsageError; leaving the coset, exceeding the step guard, or ending
/// outside every case throws ConsistencyError.
ReducedRep reduce_AD(const CosetSpace& space, const Coset& coset);
ReducedRep reduce_B(const CosetSpace& space, const Coset& coset);
ReducedRep reduce_C(const CosetSpace& space, const Coset& coset);
ReducedRep reduce_E(const CosetSpace& space, const Coset& coset);
ReducedRep reduce_F(const CosetSpace& space, const Coset& coset);
ReducedRep reduce_G(const CosetSpace& space, const Coset& coset);

/// Dispatches on the family of the space's root system.
ReducedRep reduce(const CosetSpace& space, const Coset& coset);

}  // namespace rootcert
