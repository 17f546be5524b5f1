#include "rootcert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rootcert/codes.hpp"
#include "rootcert/error.hpp"
#include "rootcert/lengths.hpp"
#include "rootcert/parallel.hpp"
#include "rootcert/reduction.hpp"

namespace rootcert {

namespace {

std::string indices(const RootSystem& rs, const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + rs.root(v[i]).to_string();
  return s + "}";
}

// Bounds and equality certificates for one vector; empty string when all hold.
std::string check_bounds(const RootSystem& rs, const Vector& beta, int cap, int* length) {
  const LengthResult res = length_exact(rs, beta, cap);
  *length = res.value;
  const Rational ell(res.value);
  const unsigned all = (1u << rs.dim()) - 1;
  std::vector<BoundReport> reports;
  for (unsigned s = 1; s <= all; ++s) reports.push_back(bound_generic(rs, beta, s));
  if (rs.type())
    for (const auto& r : specialized_bounds(rs, beta)) reports.push_back(r);
  for (const auto& r : reports) {
    if (r.bound > ell)
      return to_string(r.source) + " bound " + r.bound.to_string() + " exceeds length " + std::to_string(res.value);
    try {
      equality_certificate(rs, beta, res, r);
    } catch (const ConsistencyError& e) {
      return e.what();
    }
  }
  return {};
}

}  // namespace

std::size_t CheckReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += !r.ok;
  return n;
}

CheckReport verify_minnorm(const CosetSpace& space) {
  const auto& rs = space.root_system();
  const int k = space.k();
  if (k < 2) throw UsageError("level k must be at least 2");
  CheckReport rep{"minnorm", {}};
  for (std::size_t i = 0; i < rs.size(); ++i) {
    std::vector<std::size_t> expected{i};
    if (k == 2) {
      if (rs.simply_laced()) expected = {std::min(i, rs.negative(i)), std::max(i, rs.negative(i))};
      else if (rs.is_long(i)) continue;
    }
    auto found = space.roots_in_coset(space.root_coset(i));
    std::sort(found.begin(), found.end());
    rep.rows.push_back({rs.root(i).to_string(), found == expected, "coset meets roots in " + indices(rs, found)});
  }
  return rep;
}

CheckReport verify_faithful(const CosetSpace& space, std::size_t group_cap) {
  const auto& rs = space.root_system();
  if (space.k() < 2) throw UsageError("level k must be at least 2");
  const auto group = aut_group(space.root_system_ptr(), group_cap);
  if (group.cap_exceeded)
    throw CapExceeded("Aut(" + rs.label() + ") has more than " + std::to_string(group_cap) + " elements");
  const auto ker = kernel(space, group);
  const bool pm = space.k() == 2 && rs.simply_laced();
  CheckReport rep{"faithful", {}};
  rep.rows.push_back({"|Aut|", true, std::to_string(*group.order)});
  rep.rows.push_back({"|kernel|", ker.size() == (pm ? 2u : 1u), std::to_string(ker.size()) + (pm ? " (expected 2)" : " (expected 1)")});
  if (pm && ker.size() == 2) {
    const RootPerm minus = root_perm(rs, ker[1]);
    bool neg = true;
    for (std::size_t i = 0; i < rs.size(); ++i) neg = neg && minus[i] == rs.negative(i);
    rep.rows.push_back({"kernel element", neg, neg ? "-1" : "not -1"});
  }
  return rep;
}

CheckReport verify_symdelta(const RootSystemPtr& rs, int samples, std::uint64_t seed, std::size_t group_cap) {
  if (samples < 0) throw UsageError("sample count must be non-negative");
  const auto group = aut_group(rs, group_cap);
  std::mt19937_64 rng(seed);
  CheckReport rep{"symdelta", {}};
  for (int s = 0; s < samples; ++s) {
    const SimpleImages e = random_element(group, rng);
    const Isometry g = isometry_of(*rs, e);
    const Extension ext = extend_permutation(*rs, g.perm);
    const bool ok = ext.ok() && ext.isometry->matrix == g.matrix;
    rep.rows.push_back({"sample " + std::to_string(s), ok, ok ? "round trip" : ext.reason});
  }
  // A transposition of two non-opposite roots fixing the rest.
  RootPerm swap(rs->size());
  for (std::size_t i = 0; i < swap.size(); ++i) swap[i] = static_cast<std::uint8_t>(i);
  std::size_t b = 1;
  while (b < rs->size() && rs->negative(0) == b) ++b;
  if (b < rs->size() && rs->size() > 2) {
    std::swap(swap[0], swap[b]);
    const Extension ext = extend_permutation(*rs, swap);
    const bool ok = !ext.ok() && ext.witness.has_value();
    rep.rows.push_back({"transposition", ok, ok ? "rejected: " + ext.reason : "not rejected"});
  }
  return rep;
}

CheckReport verify_hamming() {
  CheckReport rep{"hamming", {}};
  const auto& h8 = build_h8();
  std::vector<int> dist(9, 0);
  for (auto w : h8.words) ++dist[w.size()];
  std::string d;
  for (int x : dist) d += (d.empty() ? "" : ",") + std::to_string(x);
  rep.rows.push_back({"|H8|", h8.words.size() == 16, std::to_string(h8.words.size())});
  rep.rows.push_back({"weights", dist == std::vector<int>{1, 0, 0, 0, 14, 0, 0, 0, 1}, "(" + d + ")"});
  bool even = true;
  for (auto a : h8.words)
    for (auto b : h8.words) even = even && (a & b).size() % 2 == 0;
  rep.rows.push_back({"intersections", even, even ? "all even" : "odd intersection"});

  const auto in8 = [&](CodeWord w) { return w.size() == 4 && h8.contains(w); };
  int quads = 0;
  for (int i = 1; i <= 8; ++i)
    for (int j = i + 1; j <= 8; ++j) {
      const CodeWord t1 = CodeWord::of({i, j});
      bool ok = false;
      try {
        const auto q = find_quadruple(t1);
        const std::array<CodeWord, 4> t{t1, q[0], q[1], q[2]};
        ok = true;
        for (int a = 0; a < 4; ++a)
          for (int c = a + 1; c < 4; ++c) ok = ok && (t[a] & t[c]).mask == 0 && in8(t[a] | t[c]);
        for (auto w : t) ok = ok && w.size() == 2;
      } catch (const ConsistencyError&) {
      }
      quads += ok;
      if (!ok) rep.rows.push_back({"quadruple " + t1.to_string(), false, "search failed"});
    }
  rep.rows.push_back({"quadruples", quads == 28, std::to_string(quads) + " of 28"});

  const auto& h7 = build_h7();
  const auto in7 = [&](CodeWord w) { return w.size() == 4 && h7.contains(w); };
  int triples = 0;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      const CodeWord t1 = CodeWord::of({i, j});
      bool ok = false;
      try {
        const auto q = find_triple(t1);
        const std::array<CodeWord, 3> t{t1, q[0], q[1]};
        ok = true;
        for (int a = 0; a < 3; ++a)
          for (int c = a + 1; c < 3; ++c) ok = ok && (t[a] & t[c]).mask == 0 && in7(t[a] | t[c]);
        for (auto w : t) ok = ok && w.size() == 2 && !w.contains(8);
      } catch (const ConsistencyError&) {
      }
      triples += ok;
      if (!ok) rep.rows.push_back({"triple " + t1.to_string(), false, "search failed"});
    }
  rep.rows.push_back({"triples", triples == 21, std::to_string(triples) + " of 21"});
  return rep;
}

CheckReport verify_lengths(const CosetSpace& space, int bfs_cap, int threads) {
  const auto& rs = space.root_system();
  CheckReport rep{"lengths", std::vector<CheckRow>(space.size() > 0 ? space.size() - 1 : 0)};
  parallel_for(rep.rows.size(), threads, [&](std::size_t i) {
    const Vector& beta = space.rep(i + 1);
    int len = 0;
    const std::string err = check_bounds(rs, beta, bfs_cap, &len);
    rep.rows[i] = {beta.to_string(), err.empty(), err.empty() ? "length " + std::to_string(len) : err};
  });
  return rep;
}

CheckReport verify_lengths_ball(const RootSystem& rs, const Rational& max_norm, int bfs_cap, int threads) {
  const std::size_t n = rs.rank();
  RatMatrix gram(n, RatVec(n));
  const auto& simple = rs.simple_indices();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram[i][j] = Rational(rs.inner6(simple[i], simple[j]), 6);
  const RatMatrix ginv = inverse(gram);
  // |q_i| <= sqrt(N * (G^-1)_ii) for |sum q_i a_i|^2 <= N.
  IntVec box(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational v = max_norm * ginv[i][i];
    box[i] = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v.num()) / static_cast<double>(v.den()))) + 1;
  }
  const std::int64_t limit6 = (max_norm * Rational(6)).floor();
  std::vector<IntVec> ball;
  IntVec q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = -box[i];
  while (true) {
    if (rs.inner6_q(q, q) <= limit6) ball.push_back(q);
    std::size_t i = 0;
    while (i < n && q[i] == box[i]) q[i] = -box[i], ++i;
    if (i == n) break;
    ++q[i];
  }
  CheckReport rep{"lengths_ball", std::vector<CheckRow>(ball.size())};
  parallel_for(ball.size(), threads, [&](std::size_t i) {
    const Vector beta = rs.from_q(ball[i]);
    int len = 0;
    const std::string err = check_bounds(rs, beta, bfs_cap, &len);
    rep.rows[i] = {beta.to_string(), err.empty(), err.empty() ? "length " + std::to_string(len) : err};
  });
  return rep;
}

CheckReport verify_reduce(const CosetSpace& space, int threads) {
  CheckReport rep{"reduce", std::vector<CheckRow>(space.size() > 0 ? space.size() - 1 : 0)};
  parallel_for(rep.rows.size(), threads, [&](std::size_t i) {
    const std::size_t id = i + 1;
    try {
      const ReducedRep r = reduce(space, space.coset(id));
      const bool stays = space.in_kql(r.gamma - space.rep(id));
      rep.rows[i] = {space.rep(id).to_string(), stays, to_string(r.tag) + " " + r.gamma.to_string()};
    } catch (const ConsistencyError& e) {
      rep.rows[i] = {space.rep(id).to_string(), false, e.what()};
    }
  });
  return rep;
}

}  // namespace rootcert
