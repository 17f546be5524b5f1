#include "rootcert/autgrp.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "rootcert/error.hpp"

namespace rootcert {

namespace {

std::string key_of(const SimpleImages& s) { return std::string(s.begin(), s.end()); }

SimpleImages identity_images(const RootSystem& rs) {
  if (rs.size() > 256) throw UsageError("root systems with more than 256 roots are not supported");
  SimpleImages id;
  for (auto i : rs.simple_indices()) id.push_back(static_cast<std::uint8_t>(i));
  return id;
}

// Ambient matrix with columns b_1..b_rank then a basis of the orthogonal
// complement of the span.
RatMatrix frame(const RootSystem& rs, const std::vector<Vector>& cols) {
  const std::size_t dim = rs.dim();
  RatMatrix bt;
  for (const auto& s : rs.simple_roots()) bt.push_back(s.coords());
  const RatMatrix perp = nullspace(bt);
  RatMatrix m(dim, RatVec(dim));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m[r][c] = cols[c][r];
  for (std::size_t c = 0; c < perp.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m[r][cols.size() + c] = perp[c][r];
  return m;
}

RatMatrix matrix_of(const RootSystem& rs, const SimpleImages& images) {
  std::vector<Vector> to;
  for (auto i : images) to.push_back(rs.root(i));
  return multiply(frame(rs, to), inverse(frame(rs, rs.simple_roots())));
}

Vector map_vector(const RatMatrix& m, const Vector& v) { return Vector(multiply(m, v.coords()), v.form()); }

IntVec image_q(const RootSystem& rs, const SimpleImages& images, const IntVec& q) {
  IntVec out(rs.rank(), 0);
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (q[j] == 0) continue;
    const auto& col = rs.root_q(images[j]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_add(out[i], checked_mul(q[j], col[i]));
  }
  return out;
}

std::set<std::vector<std::size_t>> close_perms(const std::vector<std::vector<std::size_t>>& gens, std::size_t n) {
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<std::size_t>> seen{id};
  std::deque<std::vector<std::size_t>> todo{id};
  while (!todo.empty()) {
    auto e = std::move(todo.front());
    todo.pop_front();
    for (const auto& g : gens) {
      std::vector<std::size_t> h(n);
      for (std::size_t i = 0; i < n; ++i) h[i] = g[e[i]];
      if (seen.insert(h).second) todo.push_back(std::move(h));
    }
  }
  return seen;
}

}  // namespace

bool preserves_form(const RatMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) return false;
  return multiply(transpose(m), m) == identity_matrix(n);
}

Isometry make_isometry(const RootSystem& rs, RatMatrix matrix) {
  if (matrix.size() != rs.dim()) throw UsageError("isometry matrix has the wrong size for " + rs.label());
  if (!preserves_form(matrix)) throw UsageError("matrix does not preserve the form");
  RootPerm perm(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto j = rs.index_of(map_vector(matrix, rs.root(i)));
    if (!j) throw UsageError("matrix sends the root " + rs.root(i).to_string() + " outside " + rs.label());
    perm[i] = static_cast<std::uint8_t>(*j);
  }
  return Isometry{std::move(matrix), std::move(perm)};
}

RootPerm root_perm(const RootSystem& rs, const SimpleImages& images) {
  if (images.size() != rs.rank()) throw UsageError("wrong number of simple root images");
  RootPerm perm(rs.size());
  for (std::size_t r = 0; r < rs.size(); ++r) {
    const auto j = rs.root_index_of_q(image_q(rs, images, rs.root_q(r)));
    if (!j) throw ConsistencyError("simple root images do not define an element of Aut(" + rs.label() + ")");
    perm[r] = static_cast<std::uint8_t>(*j);
  }
  return perm;
}

Isometry isometry_of(const RootSystem& rs, const SimpleImages& images) {
  return Isometry{matrix_of(rs, images), root_perm(rs, images)};
}

SimpleImages simple_images(const RootSystem& rs, const RootPerm& perm) {
  SimpleImages out;
  for (auto i : rs.simple_indices()) out.push_back(perm.at(i));
  return out;
}

RootPerm compose(const RootPerm& a, const RootPerm& b) {
  RootPerm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

RootPerm inverse(const RootPerm& a) {
  RootPerm b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) b[a[i]] = static_cast<std::uint8_t>(i);
  return b;
}

std::vector<std::vector<std::size_t>> diagram_automorphisms(const RootSystem& rs) {
  const auto& simple = rs.simple_indices();
  const std::size_t n = simple.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(n);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(p);
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool fits = true;
      for (std::size_t j = 0; j <= i && fits; ++j) {
        const std::size_t pj = j == i ? c : p[j];
        fits = rs.inner6(simple[c], simple[pj]) == rs.inner6(simple[i], simple[j]);
      }
      if (!fits) continue;
      used[c] = true;
      p[i] = c;
      self(self, i + 1);
      used[c] = false;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Isometry> aut_generators(const RootSystem& rs) {
  const auto& simple = rs.simple_indices();
  const SimpleImages id = identity_images(rs);
  std::vector<Isometry> gens;
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    SimpleImages img;
    for (auto s : simple) img.push_back(rs.reflection_perm(i)[s]);
    gens.push_back(isometry_of(rs, img));
  }
  std::vector<std::vector<std::size_t>> chosen;
  std::set<std::vector<std::size_t>> reached = close_perms(chosen, rs.rank());
  for (const auto& p : diagram_automorphisms(rs)) {
    if (reached.count(p)) continue;
    chosen.push_back(p);
    reached = close_perms(chosen, rs.rank());
    SimpleImages img;
    for (auto pi : p) img.push_back(static_cast<std::uint8_t>(simple[pi]));
    gens.push_back(isometry_of(rs, img));
  }
  return gens;
}

IsometryGroup generate(RootSystemPtr rs, std::vector<Isometry> generators, std::size_t cap) {
  if (cap < 1) throw UsageError("group cap must be at least 1");
  IsometryGroup g{rs, std::move(generators), std::nullopt, std::nullopt, false};
  const SimpleImages id = identity_images(*rs);
  std::vector<SimpleImages> elements{id};
  std::unordered_set<std::string> seen{key_of(id)};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& gen : g.generators) {
      SimpleImages next(id.size());
      for (std::size_t i = 0; i < id.size(); ++i) next[i] = gen.perm[elements[head][i]];
      if (!seen.insert(key_of(next)).second) continue;
      if (elements.size() >= cap) {
        g.cap_exceeded = true;
        return g;
      }
      elements.push_back(std::move(next));
    }
  }
  g.order = elements.size();
  g.elements = std::move(elements);
  return g;
}

IsometryGroup aut_group(RootSystemPtr rs, std::size_t cap) {
  auto gens = aut_generators(*rs);
  return generate(std::move(rs), std::move(gens), cap);
}

SimpleImages random_element(const IsometryGroup& g, std::mt19937_64& rng) {
  if (g.elements) {
    std::uniform_int_distribution<std::size_t> pick(0, g.elements->size() - 1);
    return (*g.elements)[pick(rng)];
  }
  SimpleImages e = identity_images(*g.rs);
  if (g.generators.empty()) return e;
  std::uniform_int_distribution<std::size_t> pick(0, g.generators.size() - 1);
  for (int step = 0; step < 64; ++step) {
    const auto& gen = g.generators[pick(rng)];
    for (auto& x : e) x = gen.perm[x];
  }
  return e;
}

CosetPermutation act_on_cosets(const CosetSpace& space, const SimpleImages& g) {
  const auto& rs = space.root_system();
  if (g.size() != rs.rank()) throw UsageError("wrong number of simple root images");
  CosetPermutation pi;
  pi.images.resize(space.size());
  for (std::size_t id = 0; id < space.size(); ++id) pi.images[id] = space.id_of_q(image_q(rs, g, space.rep_q(id)));
  return pi;
}

CosetPermutation act_on_cosets(const CosetSpace& space, const Isometry& g) {
  const auto& rs = space.root_system();
  if (g.perm.size() != rs.size() || !preserves_form(g.matrix))
    throw UsageError("not an isometry of " + rs.label());
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (map_vector(g.matrix, rs.root(i)) != rs.root(g.perm[i]))
      throw UsageError("isometry matrix and root permutation disagree");
  return act_on_cosets(space, simple_images(rs, g.perm));
}

bool acts_trivially(const CosetSpace& space, const SimpleImages& g) {
  const auto& simple = space.root_system().simple_indices();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (space.root_coset(g[i]) != space.root_coset(simple[i])) return false;
  return true;
}

std::vector<SimpleImages> kernel(const CosetSpace& space, const IsometryGroup& group) {
  if (!group.elements) throw UsageError("kernel needs an enumerated group");
  if (group.rs.get() != &space.root_system() && group.rs->label() != space.root_system().label())
    throw UsageError("group and coset space belong to different root systems");
  std::vector<SimpleImages> out;
  for (const auto& e : *group.elements)
    if (acts_trivially(space, e)) out.push_back(e);
  return out;
}

Extension extend_permutation(const RootSystem& rs, const RootPerm& perm) {
  Extension ext;
  if (perm.size() != rs.size()) {
    ext.reason = "permutation has the wrong size";
    return ext;
  }
  std::vector<bool> hit(rs.size(), false);
  for (auto p : perm) {
    if (p >= rs.size() || hit[p]) {
      ext.reason = "not a permutation of the roots";
      return ext;
    }
    hit[p] = true;
  }
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i; j < rs.size(); ++j)
      if (rs.inner6(perm[i], perm[j]) != rs.inner6(i, j)) {
        ext.witness = std::make_pair(i, j);
        ext.reason = "inner product of " + rs.root(i).to_string() + " and " + rs.root(j).to_string() + " is not preserved";
        return ext;
      }
  const SimpleImages img = simple_images(rs, perm);
  RatMatrix m = matrix_of(rs, img);
  if (!preserves_form(m)) {
    ext.reason = "extension does not preserve the form";
    return ext;
  }
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (map_vector(m, rs.root(i)) != rs.root(perm[i])) {
      ext.reason = "extension differs from the permutation at " + rs.root(i).to_string();
      return ext;
    }
  ext.isometry = Isometry{std::move(m), perm};
  return ext;
}

std::string to_string(Rigidity r) {
  switch (r) {
    case Rigidity::Equal: return "equal";
    case Rigidity::HypothesisFails: return "hypothesis_fails";
    case Rigidity::OutOfRange: return "out_of_range";
    case Rigidity::NotCongruent: return "not_congruent";
    case Rigidity::CaseI: return "case_i";
    case Rigidity::CaseII: return "case_ii";
    case Rigidity::CaseIII: return "case_iii";
    case Rigidity::CaseIV: return "case_iv";
    case Rigidity::Unclassified: return "unclassified";
  }
  return "?";
}

std::vector<Rigidity> rigidity_check(const RootSystem& rs, int k, std::span<const InnerProductPair> pairs) {
  const int r = rs.lacing();
  std::vector<Rigidity> out;
  for (const auto& p : pairs) {
    const bool short_pair = p.both_short && r > 1;
    if (!(k >= 3 || (k == 2 && short_pair))) {
      out.push_back(Rigidity::HypothesisFails);
      continue;
    }
    // Inner products of two roots: {0, +-1, +-2}, or {0, +-1/r, +-2/r} for two short roots.
    const Rational unit = short_pair ? Rational(1, r) : Rational(1);
    const auto in_range = [&](const Rational& v) {
      const Rational m = v / unit;
      return m.is_integer() && m.abs() <= 2;
    };
    if (!in_range(p.before) || !in_range(p.after)) {
      out.push_back(Rigidity::OutOfRange);
      continue;
    }
    if (!((p.before - p.after) / Rational(k)).is_integer()) {
      out.push_back(Rigidity::NotCongruent);
      continue;
    }
    const Rational& b = p.before;
    const Rational& a = p.after;
    if (a == b) out.push_back(Rigidity::Equal);
    else if (k == 4 && b.abs() == 2 && a == -b) out.push_back(Rigidity::CaseI);
    else if (k == 3 && b.abs() == 2 && a == -b / Rational(2)) out.push_back(Rigidity::CaseII);
    else if (k == 3 && b.abs() == 1 && a == -b * Rational(2)) out.push_back(Rigidity::CaseIII);
    else if (k == 2 && r == 2 && b.abs() == 1 && a == -b) out.push_back(Rigidity::CaseIV);
    else out.push_back(Rigidity::Unclassified);
  }
  return out;
}

Reconstruction reconstruct_from_coset_action(const CosetSpace& space, const CosetPermutation& pi) {
  Reconstruction out;
  const auto fail = [&](std::string stage, std::string detail) {
    out.failed_stage = std::move(stage);
    out.detail = std::move(detail);
    return out;
  };
  const auto& rs = space.root_system();
  const int k = space.k();
  const std::size_t n = space.size();

  if (pi.images.size() != n) return fail("bijection", "wrong number of images");
  {
    std::vector<bool> hit(n, false);
    for (auto x : pi.images) {
      if (x >= n || hit[x]) return fail("bijection", "not a permutation of the cosets");
      hit[x] = true;
    }
  }
  const auto& simple = rs.simple_indices();
  if (pi.images[0] != 0) return fail("homomorphism", "the zero coset moves");
  for (std::size_t id = 0; id < n; ++id)
    for (auto s : simple) {
      const std::size_t g = space.root_coset(s);
      if (pi.images[space.add(id, g)] != space.add(pi.images[id], pi.images[g]))
        return fail("homomorphism", "fails at coset " + std::to_string(id));
    }
  for (std::size_t id = 0; id < n; ++id)
    if (space.weight_class(pi.images[id]) != space.weight_class(id))
      return fail("weight_class", "coset " + std::to_string(id) + " changes weight class");

  bool short_only = false;
  if (k == 2 && !rs.simply_laced()) short_only = true;
  else if (k < 3) return fail("hypothesis", "needs k >= 3, or k = 2 for a non simply laced type");

  // Delta' and the permutation it receives.
  RootSystemPtr sub = short_only ? short_root_subsystem(rs) : space.root_system_ptr();
  std::vector<std::size_t> to_full(sub->size());
  for (std::size_t j = 0; j < sub->size(); ++j) to_full[j] = *rs.index_of(sub->root(j));
  RootPerm sigma(sub->size());
  for (std::size_t j = 0; j < sub->size(); ++j) {
    const std::size_t target = pi.images[space.root_coset(to_full[j])];
    std::vector<std::size_t> hits;
    for (auto i : space.roots_in_coset(target))
      if (!short_only || !rs.is_long(i)) hits.push_back(i);
    if (hits.size() != 1)
      return fail("root_cosets", "image of the coset of " + sub->root(j).to_string() + " holds " +
                                     std::to_string(hits.size()) + " admissible roots");
    sigma[j] = static_cast<std::uint8_t>(*sub->index_of(rs.root(hits[0])));
  }
  for (std::size_t j = 0; j < sub->size(); ++j)
    if (sigma[sub->negative(j)] != sub->negative(sigma[j]))
      return fail("negation", "at " + sub->root(j).to_string());
  for (std::size_t i = 0; i < sub->size(); ++i)
    for (std::size_t j = i; j < sub->size(); ++j)
      if ((sub->inner6(i, j) - sub->inner6(sigma[i], sigma[j])) % (6 * k) != 0)
        return fail("inner_mod_k", "at " + sub->root(i).to_string() + ", " + sub->root(j).to_string());
  std::vector<InnerProductPair> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (std::size_t i = 0; i < sub->size(); ++i)
    for (std::size_t j = i; j < sub->size(); ++j) {
      pairs.push_back({Rational(sub->inner6(i, j), 6), Rational(sub->inner6(sigma[i], sigma[j]), 6),
                       !rs.is_long(to_full[i]) && !rs.is_long(to_full[j])});
      where.emplace_back(i, j);
    }
  const auto verdicts = rigidity_check(rs, k, pairs);
  for (std::size_t p = 0; p < verdicts.size(); ++p)
    if (verdicts[p] != Rigidity::Equal)
      return fail("rigidity", to_string(verdicts[p]) + " at " + sub->root(where[p].first).to_string() + ", " +
                                  sub->root(where[p].second).to_string());
  Extension ext = extend_permutation(*sub, sigma);
  if (!ext.ok()) return fail("extension", ext.reason);
  try {
    out.isometry = make_isometry(rs, std::move(ext.isometry->matrix));
  } catch (const UsageError& e) {
    return fail("full_root_set", e.what());
  }
  return out;
}

ShortAutComparison compare_short_aut(const RootSystemPtr& rs, std::size_t cap) {
  if (rs->simply_laced()) throw UsageError(rs->label() + " is simply laced");
  ShortAutComparison c;
  const auto full = aut_group(rs, cap);
  const auto sub = short_root_subsystem(*rs);
  const auto shorts = aut_group(sub, cap);
  c.short_label = sub->label();
  c.order = full.order;
  c.short_order = shorts.order;
  c.contained = true;
  for (const auto& g : full.generators)
    for (std::size_t i = 0; i < rs->size(); ++i)
      if (rs->is_long(i) != rs->is_long(g.perm[i])) c.contained = false;
  if (c.order && c.short_order) {
    c.equal_orders = *c.order == *c.short_order;
    if (*c.short_order % *c.order == 0) c.index = *c.short_order / *c.order;
  }
  return c;
}

}  // namespace rootcert
