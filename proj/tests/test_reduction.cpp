#include "doctest.h"
#include "oracles.hpp"
#include "rootcert/error.hpp"
#include "rootcert/reduction.hpp"

using namespace rootcert;

namespace {

Vector vec(std::initializer_list<Rational> c, FormScale f) { return Vector(std::vector<Rational>(c), f); }

// A coset handle that starts the reduction from the given member.
Coset from(const CosetSpace& space, const Vector& v) { return Coset{&space, space.id_of(v), v}; }

void check_total(const char* name, int k) {
  CAPTURE(name);
  CAPTURE(k);
  const auto space = build_coset_space(name, k);
  const auto& rs = space->root_system();
  for (std::size_t id = 1; id < space->size(); ++id) {
    const auto red = reduce(*space, space->coset(id));
    CAPTURE(space->rep(id).to_string());
    CAPTURE(to_string(red.tag));
    CHECK(oracle::in_kql(rs, red.gamma - space->rep(id), k));
    CHECK(oracle::case_holds(rs, k, red.gamma, to_string(red.tag)));
  }
}

}  // namespace

TEST_CASE("A and D examples") {
  const FormScale one{1};
  const auto a2 = build_coset_space("A2", 3);
  auto r = reduce_AD(*a2, from(*a2, vec({4, -4, 0}, one)));
  CHECK(r.gamma == vec({1, -1, 0}, one));
  CHECK(r.tag == CaseTag::A);
  CHECK(r.steps == 1);

  const auto d4 = build_coset_space("D4", 2);
  r = reduce_AD(*d4, from(*d4, vec({3, 1, 0, 0}, one)));
  CHECK(r.gamma == vec({1, -1, 0, 0}, one));
  CHECK(r.tag == CaseTag::ADi);
  r = reduce_AD(*d4, from(*d4, vec({2, 0, 0, 0}, one)));
  CHECK(r.gamma == vec({2, 0, 0, 0}, one));
  CHECK(r.tag == CaseTag::ADii);
  CHECK_THROWS_AS(reduce_AD(*d4, d4->coset(0)), UsageError);
  CHECK_THROWS_AS(reduce_B(*d4, d4->coset(1)), UsageError);
}

TEST_CASE("B and C examples") {
  const FormScale one{1}, half{Rational(1, 2)};
  const auto b2 = build_coset_space("B2", 2);
  auto r = reduce_B(*b2, from(*b2, vec({1, 0}, one)));
  CHECK(r.gamma == vec({1, 0}, one));
  CHECK(r.tag == CaseTag::Bii);
  r = reduce_B(*b2, from(*b2, vec({3, 1}, one)));
  CHECK(r.gamma == vec({1, -1}, one));
  CHECK(r.tag == CaseTag::Bi);
  const auto b3 = build_coset_space("B3", 3);
  r = reduce_B(*b3, from(*b3, vec({1, 1, 0}, one)));
  CHECK(r.gamma == vec({1, 1, 0}, one));
  CHECK(r.tag == CaseTag::Bi);

  const auto c2 = build_coset_space("C2", 2);
  r = reduce_C(*c2, from(*c2, vec({5, 1}, half)));
  CHECK(r.gamma == vec({1, 1}, half));
  r = reduce_C(*c2, from(*c2, vec({2, 0}, half)));
  CHECK(r.gamma == vec({2, 0}, half));
  const auto c3 = build_coset_space("C3", 3);
  r = reduce_C(*c3, from(*c3, vec({1, 1, 0}, half)));
  CHECK(r.gamma == vec({1, 1, 0}, half));
  CHECK(r.tag == CaseTag::C);
}

TEST_CASE("E examples") {
  const FormScale two{2};
  const auto e8 = build_coset_space("E8", 2);
  auto r = reduce_E(*e8, from(*e8, vec({1, 0, 0, 0, 0, 0, 0, 0}, two)));
  CHECK(r.gamma == vec({1, 0, 0, 0, 0, 0, 0, 0}, two));
  CHECK(r.tag == CaseTag::E78iii);
  // e1+e2+e3+e4 is twice a root, so its coset at k=2 is zero.
  CHECK(e8->in_kql(vec({1, 1, 1, 1, 0, 0, 0, 0}, two)));
  CHECK_THROWS_AS(reduce_E(*e8, from(*e8, vec({1, 1, 1, 1, 0, 0, 0, 0}, two))), UsageError);
  r = reduce_E(*e8, from(*e8, vec({1, 1, 1, 0, 1, 0, 0, 0}, two)));
  CHECK(oracle::case_holds(e8->root_system(), 2, r.gamma, to_string(r.tag)));

  const auto e6 = build_coset_space("E6", 3);
  r = reduce_E(*e6, from(*e6, vec({0, 0, 0, 0, 2, -2, 0}, two)));
  CHECK(r.gamma == vec({0, 0, 0, 0, -1, 1, 0}, two));
  CHECK(r.tag == CaseTag::E6iii);
}

TEST_CASE("F and G examples") {
  const FormScale one{1};
  const Rational h(1, 2);
  const auto f4 = build_coset_space("F4", 2);
  auto r = reduce_F(*f4, from(*f4, vec({h, h, h, h}, one)));
  CHECK(r.gamma == vec({h, h, h, h}, one));
  CHECK(r.tag == CaseTag::Fiii);
  r = reduce_F(*f4, from(*f4, vec({1, 0, 0, 0}, one)));
  CHECK(r.tag == CaseTag::Fii);
  r = reduce_F(*f4, from(*f4, vec({Rational(5, 2), h, h, h}, one)));
  CHECK(r.gamma == vec({h, Rational(-3, 2), h, h}, one));
  CHECK(r.tag == CaseTag::Fiii);

  const auto g2 = build_coset_space("G2", 2);
  const Rational t(1, 3);
  r = reduce_G(*g2, from(*g2, vec({2 * t, -t, -t}, one)));
  CHECK(r.gamma == vec({2 * t, -t, -t}, one));
  CHECK(r.tag == CaseTag::Gii);
  r = reduce_G(*g2, from(*g2, vec({1, -1, 0}, one)));
  CHECK(r.tag == CaseTag::Gi);
  r = reduce_G(*g2, from(*g2, vec({8 * t, -4 * t, -4 * t}, one)));
  CHECK(r.gamma == vec({2 * t, 2 * t, -4 * t}, one));
  CHECK(r.tag == CaseTag::Gii);
}

TEST_CASE("every nonzero coset is reduced into a case") {
  for (const char* name : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2", "D5", "E6"})
    for (int k = 2; k <= 4; ++k) check_total(name, k);
  for (const char* name : {"E7", "E8"})
    for (int k = 2; k <= 3; ++k) check_total(name, k);
}

TEST_CASE("reductions from far-away members") {
  for (const char* name : {"A3", "B3", "C3", "D4", "E6", "E7", "E8", "F4", "G2"})
    for (int k = 2; k <= 4; ++k) {
      CAPTURE(name);
      CAPTURE(k);
      const auto space = build_coset_space(name, k);
      const auto& rs = space->root_system();
      const auto basis = space->ql_basis_vectors();
      for (std::size_t id = 1; id < space->size(); id += 1 + space->size() / 97) {
        Vector start = space->rep(id);
        for (std::size_t j = 0; j < basis.size(); ++j) start += Rational(k * static_cast<int>(2 * j + 3 - 4 * (j % 2))) * basis[j];
        const auto red = reduce(*space, Coset{space.get(), id, start});
        CHECK(oracle::in_kql(rs, red.gamma - space->rep(id), k));
        CHECK(oracle::case_holds(rs, k, red.gamma, to_string(red.tag)));
      }
    }
}
