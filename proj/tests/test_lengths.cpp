#include <map>
#include <set>

#include "doctest.h"
#include "rootcert/error.hpp"
#include "rootcert/lengths.hpp"
#include "rootcert/quotient.hpp"

using namespace rootcert;

namespace {

// Plain breadth-first search over the lattice itself (no Weyl symmetry).
std::map<Vector, int> brute_lengths(const RootSystem& rs, int depth) {
  std::map<Vector, int> dist{{Vector::zero(rs.dim(), rs.form()), 0}};
  std::vector<Vector> frontier{Vector::zero(rs.dim(), rs.form())};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Vector> next;
    for (const auto& v : frontier)
      for (const auto& r : rs.roots()) {
        Vector w = v + r;
        if (dist.emplace(w, d).second) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return dist;
}

Vector vec(std::initializer_list<Rational> c, FormScale f) { return Vector(std::vector<Rational>(c), f); }

void check_witness(const RootSystem& rs, const Vector& beta, const LengthResult& res) {
  CHECK(res.witness.size() == static_cast<std::size_t>(res.value));
  Vector sum = Vector::zero(rs.dim(), rs.form());
  for (auto i : res.witness) {
    REQUIRE(i < rs.size());
    sum += rs.root(i);
  }
  CHECK(sum == beta);
}

}  // namespace

TEST_CASE("length examples") {
  const auto a2 = build_root_system("A2");
  const FormScale one{1};
  CHECK(length_exact(*a2, Vector::zero(3, one), 1).value == 0);
  CHECK(length_exact(*a2, Vector::zero(3, one), 1).witness.empty());
  for (const auto& r : a2->roots()) CHECK(length_exact(*a2, r, 1).value == 1);
  const Vector b = vec({1, 1, -2}, one);
  const auto res = length_exact(*a2, b, 8);
  CHECK(res.value == 2);
  check_witness(*a2, b, res);
  std::set<Vector> got;
  for (auto i : res.witness) got.insert(a2->root(i));
  CHECK(got == std::set<Vector>{vec({1, 0, -1}, one), vec({0, 1, -1}, one)});
  CHECK_THROWS_AS(length_exact(*a2, b, 1), CapExceeded);
  CHECK_THROWS_AS(length_exact(*a2, vec({1, 0, 0}, one), 4), UsageError);
}

TEST_CASE("orbit search agrees with plain breadth-first search") {
  for (const char* name : {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"}) {
    CAPTURE(name);
    const auto rs = build_root_system(name);
    const int depth = rs->rank() <= 2 ? 6 : 4;
    for (const auto& [v, d] : brute_lengths(*rs, depth)) {
      const auto res = length_exact(*rs, v, depth);
      CHECK(res.value == d);
      check_witness(*rs, v, res);
    }
  }
}

TEST_CASE("monotonicity along roots") {
  for (const char* name : {"D4", "F4", "E6"}) {
    const auto space = build_coset_space(name, 3);
    const auto& rs = space->root_system();
    for (std::size_t id = 0; id < space->size(); id += 7) {
      const Vector& beta = space->rep(id);
      const int l = length_exact(rs, beta, 40).value;
      for (const auto& a : rs.roots()) CHECK(l <= length_exact(rs, beta - a, 40).value + 1);
    }
  }
}

TEST_CASE("generic bound examples") {
  const auto a2 = build_root_system("A2");
  const FormScale one{1};
  const auto rep = bound_generic(*a2, vec({1, 1, -2}, one), 0b111);
  CHECK(rep.m_s == 2);
  CHECK(rep.bound == 2);
  CHECK(bound_generic(*a2, vec({1, -1, 0}, one), 0b100).bound == 0);

  const auto e8 = build_root_system("E8");
  const FormScale two{2};
  const Vector t = vec({1, 1, 1, 1, 0, 0, 0, 0}, two);
  const auto e = bound_generic(*e8, t, 0b1111);
  CHECK(e.m_s == 2);
  CHECK(e.bound == 2);
  CHECK_THROWS_AS(bound_generic(*a2, t, 0), UsageError);
}

TEST_CASE("specialized bound examples") {
  const auto d4 = build_root_system("D4");
  const FormScale one{1}, two{2};
  const auto r = bound_specialized(*d4, vec({3, 0, 0, 0}, one));
  CHECK(r.bound == 3);
  CHECK(r.source == BoundSource::ClassicalCoord);

  const auto e6 = build_root_system("E6");
  const auto e = bound_specialized(*e6, vec({0, 0, 0, 0, 1, 0, -1}, two));
  CHECK(e.bound == 2);
  CHECK(e.source == BoundSource::EType);
  const auto block = bound_specialized(*e6, vec({0, 0, 0, 0, 1, 1, -2}, two));
  CHECK(block.source == BoundSource::EType567);
  CHECK(block.bound == 4);

  const auto e8 = build_root_system("E8");
  const auto three = bound_specialized(*e8, vec({1, 1, 1, 0, 0, 0, 0, 0}, two));
  CHECK(three.bound == 2);
  CHECK(three.m_s == Rational(3, 2));

  for (auto b : specialized_bounds(*build_root_system("C3"), vec({2, 0, 0}, one)))
    CHECK(b.source == BoundSource::ClassicalHalf);

  CHECK(e_type_m(0b1110000, 7) == 1);
  CHECK(e_type_m(0b1111, 8) == 2);
  CHECK(e_type_m(0b111, 8) == Rational(3, 2));
  CHECK(e_type_m(0b1, 8) == 1);
}

TEST_CASE("bounds never exceed lengths on small vectors") {
  for (const char* name : {"A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4"}) {
    CAPTURE(name);
    const auto rs = build_root_system(name);
    for (const auto& [v, d] : brute_lengths(*rs, rs->rank() <= 2 ? 5 : 3)) {
      const auto res = length_exact(*rs, v, 20);
      for (unsigned s = 1; s < (1u << rs->dim()); ++s) {
        const auto rep = bound_generic(*rs, v, s);
        CHECK(rep.bound <= Rational(res.value));
        equality_certificate(*rs, v, res, rep);
      }
      for (const auto& rep : specialized_bounds(*rs, v)) {
        CHECK(rep.bound <= Rational(res.value));
        equality_certificate(*rs, v, res, rep);
      }
    }
  }
}

TEST_CASE("equality certificates") {
  const auto e8 = build_root_system("E8");
  const FormScale two{2};
  const Vector half = vec({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2), 0, 0, 0, 0}, two);
  const auto res = length_exact(*e8, half, 8);
  CHECK(res.value == 1);
  const auto rep = bound_specialized(*e8, half);
  const auto cert = equality_certificate(*e8, half, res, rep);
  REQUIRE(cert.has_value());
  REQUIRE(cert->hamming_word.has_value());
  CHECK(*cert->hamming_word == CodeWord::of({1, 2, 3, 4}));

  const Vector t = vec({1, 1, 1, 1, 0, 0, 0, 0}, two);
  const auto rt = length_exact(*e8, t, 8);
  CHECK(rt.value == 2);
  const auto ct = equality_certificate(*e8, t, rt, bound_specialized(*e8, t));
  REQUIRE(ct.has_value());
  CHECK(ct->hamming_word.has_value());

  const auto a2 = build_root_system("A2");
  const FormScale one{1};
  const Vector b = vec({2, -1, -1}, one);
  const auto rb = length_exact(*a2, b, 8);
  CHECK(rb.value == 2);
  CHECK_FALSE(equality_certificate(*a2, b, rb, bound_generic(*a2, b, 0b10)).has_value());

  // A fabricated witness that attains the bound with mixed signs is rejected.
  LengthResult fake{2, {}};
  const Vector target = vec({2, -2, 0}, one);
  const auto rep2 = bound_generic(*a2, target, 0b111);
  REQUIRE(rep2.bound == 2);
  fake.witness = {*a2->index_of(vec({1, 0, -1}, one)), *a2->index_of(vec({0, -1, 1}, one))};
  CHECK_THROWS_AS(equality_certificate(*a2, target, fake, rep2), ConsistencyError);
}

TEST_CASE("E8 coset representatives stay within the default cap") {
  const auto space = build_coset_space("E8", 3);
  const auto& rs = space->root_system();
  int worst = 0;
  for (std::size_t id = 0; id < space->size(); ++id)
    worst = std::max(worst, length_exact(rs, space->rep(id), default_bfs_cap(rs, 3)).value);
  CHECK(worst <= 8);
}
