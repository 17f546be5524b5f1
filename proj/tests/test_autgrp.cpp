#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rootcert/autgrp.hpp"
#include "rootcert/error.hpp"

using namespace rootcert;

namespace {

// |Aut(Delta)| by brute force: tuples of roots with the Gram matrix of the
// simple roots whose linear extension maps every root to a root.
std::uint64_t brute_force_order(const RootSystem& rs) {
  const auto& simple = rs.simple_indices();
  const std::size_t n = simple.size();
  std::vector<std::size_t> pick(n);
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      for (std::size_t r = 0; r < rs.size(); ++r) {
        Vector v = Vector::zero(rs.dim(), rs.form());
        for (std::size_t j = 0; j < n; ++j) v += Rational(rs.root_q(r)[j]) * rs.root(pick[j]);
        if (!rs.index_of(v)) return;
      }
      ++count;
      return;
    }
    for (std::size_t c = 0; c < rs.size(); ++c) {
      bool ok = true;
      for (std::size_t j = 0; j <= i && ok; ++j)
        ok = inner_product(rs.root(c), rs.root(j == i ? c : pick[j])) ==
             inner_product(rs.root(simple[i]), rs.root(simple[j]));
      if (!ok) continue;
      pick[i] = c;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return count;
}

Vector map_vector(const RatMatrix& m, const Vector& v) { return Vector(multiply(m, v.coords()), v.form()); }

// Acts trivially iff g(rep) - rep lies in kQ_L for every coset representative.
bool trivial_on_cosets(const CosetSpace& space, const Isometry& g) {
  const auto& rs = space.root_system();
  for (std::size_t id = 0; id < space.size(); ++id)
    if (!oracle::in_kql(rs, map_vector(g.matrix, space.rep(id)) - space.rep(id), space.k())) return false;
  return true;
}

std::uint64_t order_of(const char* name) { return *aut_group(build_root_system(name)).order; }

}  // namespace

TEST_CASE("generators") {
  const auto a1 = build_root_system("A1");
  const auto g1 = aut_generators(*a1);
  REQUIRE(g1.size() == 1);
  for (std::size_t i = 0; i < a1->size(); ++i) CHECK(g1[0].perm[i] == a1->negative(i));

  CHECK(aut_generators(*build_root_system("A2")).size() == 3);
  CHECK(aut_generators(*build_root_system("F4")).size() == 4);
  CHECK(aut_generators(*build_root_system("G2")).size() == 2);
  CHECK(diagram_automorphisms(*build_root_system("D4")).size() == 6);
  CHECK(diagram_automorphisms(*build_root_system("E6")).size() == 2);
  CHECK(diagram_automorphisms(*build_root_system("E8")).size() == 1);

  for (const char* name : {"A3", "B3", "C3", "D4", "E6", "F4", "G2"})
    for (const auto& g : aut_generators(*build_root_system(name))) {
      const auto& rs = *build_root_system(name);
      CHECK(preserves_form(g.matrix));
      for (std::size_t i = 0; i < rs.size(); ++i) CHECK(map_vector(g.matrix, rs.root(i)) == rs.root(g.perm[i]));
    }
}

TEST_CASE("group orders") {
  CHECK(order_of("A2") == 12);
  CHECK(order_of("B2") == 8);
  CHECK(order_of("G2") == 12);
  CHECK(order_of("A3") == 48);
  CHECK(order_of("D4") == 1152);
  CHECK(order_of("F4") == 1152);
  CHECK(order_of("C4") == 384);
  CHECK(order_of("E6") == 103680);
  CHECK(*aut_group(short_root_subsystem(*build_root_system("C4"))).order == 1152);

  for (const char* name : {"A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"}) {
    CAPTURE(name);
    CHECK(order_of(name) == brute_force_order(*build_root_system(name)));
  }
}

TEST_CASE("enumeration cap") {
  const auto g = aut_group(build_root_system("D4"), 10);
  CHECK(g.cap_exceeded);
  CHECK_FALSE(g.order);
  CHECK_FALSE(g.elements);
  CHECK(g.generators.size() == 6);
  CHECK_THROWS_AS(aut_group(build_root_system("A2"), 0), UsageError);
}

TEST_CASE("every element is an isometry preserving the roots") {
  for (const char* name : {"B3", "G2", "D4"}) {
    const auto rs = build_root_system(name);
    const auto g = aut_group(rs);
    for (const auto& e : *g.elements) {
      const auto iso = isometry_of(*rs, e);
      CHECK(preserves_form(iso.matrix));
      for (std::size_t i = 0; i < rs->size(); i += 3) CHECK(map_vector(iso.matrix, rs->root(i)) == rs->root(iso.perm[i]));
    }
  }
}

TEST_CASE("make_isometry rejects") {
  const auto rs = build_root_system("A2");
  RatMatrix twice = identity_matrix(3);
  for (auto& row : twice)
    for (auto& x : row) x *= 2;
  CHECK_THROWS_AS(make_isometry(*rs, twice), UsageError);
  // A coordinate sign flip preserves the form but not the roots of A2.
  RatMatrix flip = identity_matrix(3);
  flip[0][0] = -1;
  CHECK_THROWS_AS(make_isometry(*rs, flip), UsageError);
  CHECK(make_isometry(*rs, identity_matrix(3)).perm == root_perm(*rs, simple_images(*rs, make_isometry(*rs, identity_matrix(3)).perm)));
}

TEST_CASE("action on cosets is a group action") {
  for (const char* name : {"A2", "B3", "G2"})
    for (int k = 2; k <= 4; ++k) {
      CAPTURE(name);
      CAPTURE(k);
      const auto rs = build_root_system(name);
      const auto space = build_coset_space(name, k);
      const auto g = aut_group(rs);
      const auto& els = *g.elements;
      std::mt19937_64 rng(k);
      std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
      for (int s = 0; s < 40; ++s) {
        const auto a = isometry_of(*rs, els[pick(rng)]);
        const auto b = isometry_of(*rs, els[pick(rng)]);
        const auto pa = act_on_cosets(*space, a);
        const auto pb = act_on_cosets(*space, b);
        const auto pab = act_on_cosets(*space, simple_images(*rs, compose(a.perm, b.perm)));
        for (std::size_t id = 0; id < space->size(); ++id) CHECK(pab.images[id] == pa.images[pb.images[id]]);
        // Compatible with canonicalize, and preserves weight classes and root cosets.
        for (std::size_t id = 0; id < space->size(); ++id) {
          CHECK(space->id_of(map_vector(a.matrix, space->rep(id))) == pa.images[id]);
          CHECK(space->weight_class(pa.images[id]) == space->weight_class(id));
        }
        for (std::size_t r = 0; r < rs->size(); ++r) CHECK(pa.images[space->root_coset(r)] == space->root_coset(a.perm[r]));
      }
    }
}

TEST_CASE("kernels") {
  for (const char* name : {"A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4"})
    for (int k = 2; k <= 4; ++k) {
      CAPTURE(name);
      CAPTURE(k);
      const auto rs = build_root_system(name);
      const auto space = build_coset_space(name, k);
      const auto g = aut_group(rs);
      const auto ker = kernel(*space, g);
      if (k == 2 && rs->simply_laced()) {
        REQUIRE(ker.size() == 2);
        const auto minus = isometry_of(*rs, ker[1]);  // ker[0] is the identity
        for (std::size_t i = 0; i < rs->size(); ++i) CHECK(minus.perm[i] == rs->negative(i));
      } else {
        CHECK(ker.size() == 1);
      }
      if (rs->size() <= 24) {
        std::size_t brute = 0;
        for (const auto& e : *g.elements) brute += trivial_on_cosets(*space, isometry_of(*rs, e));
        CHECK(brute == ker.size());
      }
    }
  CHECK_THROWS_AS(kernel(*build_coset_space("D4", 3), aut_group(build_root_system("D4"), 10)), UsageError);
}

TEST_CASE("extend_permutation") {
  const auto rs = build_root_system("A3");
  RootPerm id(rs->size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<std::uint8_t>(i);
  auto e = extend_permutation(*rs, id);
  REQUIRE(e.ok());
  CHECK(e.isometry->matrix == identity_matrix(rs->dim()));

  RootPerm neg(rs->size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = static_cast<std::uint8_t>(rs->negative(i));
  e = extend_permutation(*rs, neg);
  REQUIRE(e.ok());
  // -1 on the span of A3, identity on (1,1,1,1).
  for (std::size_t i = 0; i < rs->size(); ++i) CHECK(map_vector(e.isometry->matrix, rs->root(i)) == -rs->root(i));

  const auto group = aut_group(rs);
  for (const auto& el : *group.elements) {
    const auto iso = isometry_of(*rs, el);
    const auto back = extend_permutation(*rs, iso.perm);
    REQUIRE(back.ok());
    CHECK(back.isometry->matrix == iso.matrix);
  }

  // Swapping two roots and fixing everything else breaks an inner product.
  RootPerm swap = id;
  std::swap(swap[0], swap[1]);
  e = extend_permutation(*rs, swap);
  CHECK_FALSE(e.ok());
  REQUIRE(e.witness);
  const auto [a, b] = *e.witness;
  CHECK(rs->inner6(swap[a], swap[b]) != rs->inner6(a, b));

  RootPerm dup = id;
  dup[0] = dup[1];
  CHECK_FALSE(extend_permutation(*rs, dup).ok());
}

TEST_CASE("rigidity") {
  const auto a3 = build_root_system("A3");
  const auto b3 = build_root_system("B3");
  const std::vector<InnerProductPair> p3{{2, -1, false}, {1, -2, false}, {1, 1, false}, {1, 0, false}, {3, 0, false}};
  const auto v3 = rigidity_check(*a3, 3, p3);
  CHECK(v3[0] == Rigidity::CaseII);
  CHECK(v3[1] == Rigidity::CaseIII);
  CHECK(v3[2] == Rigidity::Equal);
  CHECK(v3[3] == Rigidity::NotCongruent);
  CHECK(v3[4] == Rigidity::OutOfRange);

  const std::vector<InnerProductPair> p4{{2, -2, false}, {-2, 2, false}, {0, 0, false}};
  const auto v4 = rigidity_check(*a3, 4, p4);
  CHECK(v4[0] == Rigidity::CaseI);
  CHECK(v4[1] == Rigidity::CaseI);
  CHECK(v4[2] == Rigidity::Equal);

  const std::vector<InnerProductPair> p2{{1, -1, true}, {Rational(1, 2), Rational(1, 2), true}, {1, -1, false}};
  const auto v2 = rigidity_check(*b3, 2, p2);
  CHECK(v2[0] == Rigidity::CaseIV);
  CHECK(v2[1] == Rigidity::Equal);
  CHECK(v2[2] == Rigidity::HypothesisFails);
  CHECK(rigidity_check(*a3, 2, p2)[0] == Rigidity::HypothesisFails);
}

TEST_CASE("reconstruction") {
  SUBCASE("identity") {
    const auto space = build_coset_space("A2", 3);
    CosetPermutation id;
    for (std::size_t i = 0; i < space->size(); ++i) id.images.push_back(i);
    const auto r = reconstruct_from_coset_action(*space, id);
    REQUIRE(r.ok());
    CHECK(r.isometry->matrix == identity_matrix(3));
  }
  SUBCASE("A1 at level 4") {
    const auto space = build_coset_space("A1", 4);
    // Automorphisms of Z/4 preserving weight classes: only +-1.
    std::size_t found = 0;
    for (std::size_t u = 1; u < 4; u += 2) {
      CosetPermutation pi;
      const auto gen = space->root_coset(space->root_system().simple_indices()[0]);
      pi.images.assign(4, 0);
      std::size_t x = 0, y = 0;
      for (int i = 0; i < 4; ++i) {
        pi.images[x] = y;
        x = space->add(x, gen);
        for (std::size_t j = 0; j < u; ++j) y = space->add(y, gen);
      }
      const auto r = reconstruct_from_coset_action(*space, pi);
      REQUIRE(r.ok());
      ++found;
      const auto& rs = space->root_system();
      if (u == 3)
        for (std::size_t i = 0; i < rs.size(); ++i) CHECK(r.isometry->perm[i] == rs.negative(i));
    }
    CHECK(found == 2);
  }
  SUBCASE("round trips") {
    const std::vector<std::pair<const char*, int>> grid{{"A2", 3}, {"A3", 4}, {"B2", 2}, {"B3", 2}, {"C3", 2},
                                                        {"G2", 2}, {"G2", 3}, {"C4", 2}, {"F4", 2}, {"D4", 3}};
    for (auto [name, k] : grid) {
      CAPTURE(name);
      CAPTURE(k);
      const auto rs = build_root_system(name);
      const auto space = build_coset_space(name, k);
      const auto group = aut_group(rs);
      for (const auto& e : *group.elements) {
        const auto r = reconstruct_from_coset_action(*space, act_on_cosets(*space, e));
        CAPTURE(r.failed_stage);
        CAPTURE(r.detail);
        REQUIRE(r.ok());
        CHECK(r.isometry->perm == root_perm(*rs, e));
      }
    }
  }
  SUBCASE("rejections") {
    const auto a2 = build_coset_space("A2", 2);
    CosetPermutation id;
    for (std::size_t i = 0; i < a2->size(); ++i) id.images.push_back(i);
    CHECK(reconstruct_from_coset_action(*a2, id).failed_stage == "hypothesis");

    const auto a3 = build_coset_space("A2", 3);
    CosetPermutation swap;
    for (std::size_t i = 0; i < a3->size(); ++i) swap.images.push_back(i);
    std::swap(swap.images[1], swap.images[2]);
    const auto r = reconstruct_from_coset_action(*a3, swap);
    CHECK_FALSE(r.ok());
    CHECK(r.failed_stage != "");

    CosetPermutation bad{{0, 0}};
    CHECK(reconstruct_from_coset_action(*a3, bad).failed_stage == "bijection");
  }
}

TEST_CASE("short root comparison") {
  const auto b3 = compare_short_aut(build_root_system("B3"));
  CHECK(b3.equal_orders);
  CHECK(*b3.order == 48);
  CHECK(b3.contained);

  const auto c4 = compare_short_aut(build_root_system("C4"));
  CHECK(*c4.order == 384);
  CHECK(*c4.short_order == 1152);
  CHECK(*c4.index == 3);
  CHECK(c4.short_label == "D4");

  const auto g2 = compare_short_aut(build_root_system("G2"));
  CHECK(*g2.order == 12);
  CHECK(*g2.short_order == 12);

  for (const char* name : {"B2", "B4", "C2", "C3", "F4"}) {
    CAPTURE(name);
    CHECK(compare_short_aut(build_root_system(name)).equal_orders);
  }
  CHECK_THROWS_AS(compare_short_aut(build_root_system("D4")), UsageError);
}
