#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rootcert/autgrp.hpp"
#include "rootcert/quotient.hpp"

namespace rootcert {

struct CheckRow {
  std::string subject;
  bool ok = true;
  std::string detail;
};

struct CheckReport {
  std::string name;
  std::vector<CheckRow> rows;
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

/// For k >= 3 every root's coset meets Delta in the root alone; for k = 2 the
/// same for short roots of non simply laced types, and {alpha, -alpha} for
/// every root of simply laced types.
CheckReport verify_minnorm(const CosetSpace& space);

/// Kernel of Aut(Delta) on the cosets: trivial, or {1, -1} for k = 2 simply
/// laced. Throws CapExceeded if the group cannot be enumerated within the cap.
CheckReport verify_faithful(const CosetSpace& space, std::size_t group_cap = kDefaultGroupCap);

/// Restricts `samples` seeded random elements of Aut(Delta) to Delta and
/// extends them back; one extra row checks that a transposition of two roots
/// is rejected with a witness pair.
CheckReport verify_symdelta(const RootSystemPtr& rs, int samples, std::uint64_t seed,
                            std::size_t group_cap = kDefaultGroupCap);

/// H8 size and weights, even intersections, and the quadruple/triple searches.
CheckReport verify_hamming();

/// Every closed-form bound (all coordinate subsets, plus the specialized
/// bounds) against the exact length of each nonzero coset representative;
/// equalities must pass equality_certificate.
CheckReport verify_lengths(const CosetSpace& space, int bfs_cap, int threads = 0);

/// The same checks over every beta in Q with |beta|^2 <= max_norm.
CheckReport verify_lengths_ball(const RootSystem& rs, const Rational& max_norm, int bfs_cap, int threads = 0);

/// Reduces every nonzero coset and checks the result stays in the coset.
CheckReport verify_reduce(const CosetSpace& space, int threads = 0);

}  // namespace rootcert
