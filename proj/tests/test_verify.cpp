#include "doctest.h"
#include "rootcert/verify.hpp"

using namespace rootcert;

TEST_CASE("minnorm") {
  for (const auto& [type, k] : std::vector<std::pair<std::string, int>>{{"A2", 2}, {"A2", 3}, {"B3", 2}, {"G2", 2}, {"D4", 3}}) {
    CAPTURE(type);
    CAPTURE(k);
    const auto rep = verify_minnorm(*build_coset_space(type, k));
    CHECK(rep.ok());
    CHECK(!rep.rows.empty());
  }
  CHECK_THROWS_AS(verify_minnorm(*build_coset_space("A2", 1)), UsageError);
}

TEST_CASE("faithful") {
  const auto a2 = verify_faithful(*build_coset_space("A2", 2));
  CHECK(a2.ok());
  CHECK(a2.rows[1].detail.rfind("2", 0) == 0);
  const auto b2 = verify_faithful(*build_coset_space("B2", 2));
  CHECK(b2.ok());
  CHECK(b2.rows[1].detail.rfind("1", 0) == 0);
  CHECK_THROWS_AS(verify_faithful(*build_coset_space("D4", 2), 100), CapExceeded);
}

TEST_CASE("symdelta") {
  const auto rep = verify_symdelta(build_root_system("B3"), 30, 11);
  CHECK(rep.ok());
  CHECK(rep.rows.size() == 31);
  CHECK(rep.rows.back().subject == "transposition");
}

TEST_CASE("hamming") {
  const auto rep = verify_hamming();
  CHECK(rep.ok());
}

TEST_CASE("lengths and reduce") {
  CHECK(verify_lengths(*build_coset_space("B2", 3), 64).ok());
  CHECK(verify_lengths_ball(*build_root_system("A2"), Rational(8), 64).ok());
  const auto ball = verify_lengths_ball(*build_root_system("A1"), Rational(8), 64);
  // beta = m alpha with 2 m^2 <= 8.
  CHECK(ball.rows.size() == 5);
  CHECK(verify_reduce(*build_coset_space("C3", 2)).ok());
  CHECK(verify_reduce(*build_coset_space("A2", 1)).rows.empty());
}
