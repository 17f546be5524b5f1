#include "rootcert/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <mutex>

#include "rootcert/codes.hpp"
#include "rootcert/error.hpp"

namespace rootcert {

namespace {

constexpr int kMaxClassicalRank = 8;

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

}  // namespace

RootSystemType RootSystemType::make(Family family, int n) {
  auto bad = [&] {
    throw UsageError(std::string("invalid root system type ") + family_letter(family) + std::to_string(n));
  };
  switch (family) {
    case Family::A:
      if (n < 1 || n > kMaxClassicalRank) bad();
      break;
    case Family::B:
    case Family::C:
      if (n < 2 || n > kMaxClassicalRank) bad();
      break;
    case Family::D:
      if (n < 4 || n > kMaxClassicalRank) bad();
      break;
    case Family::E:
      if (n < 6 || n > 8) bad();
      break;
    case Family::F:
      if (n != 4) bad();
      break;
    case Family::G:
      if (n != 2) bad();
      break;
  }
  return RootSystemType{family, n};
}

RootSystemType RootSystemType::parse(std::string_view text) {
  if (text.size() < 2) throw UsageError("cannot parse root system type '" + std::string(text) + "'");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text.front())));
  const auto pos = std::string_view("ABCDEFG").find(letter);
  if (pos == std::string_view::npos) throw UsageError("unknown root system family in '" + std::string(text) + "'");
  int n = 0;
  const auto digits = text.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw UsageError("cannot parse rank in '" + std::string(text) + "'");
  return make(static_cast<Family>(pos), n);
}

std::string RootSystemType::name() const { return family_letter(family) + std::to_string(n); }

int RootSystemType::ambient_dim() const {
  switch (family) {
    case Family::A:
      return n + 1;
    case Family::E:
      return n == 8 ? 8 : 7;
    case Family::G:
      return 3;
    default:
      return n;
  }
}

int RootSystemType::lacing() const {
  switch (family) {
    case Family::B:
    case Family::C:
    case Family::F:
      return 2;
    case Family::G:
      return 3;
    default:
      return 1;
  }
}

FormScale RootSystemType::form() const {
  if (family == Family::C) return {Rational(1, 2)};
  if (family == Family::E) return {Rational(2)};
  return {Rational(1)};
}

int RootSystemType::denominator() const {
  if (family == Family::E || family == Family::F) return 2;
  if (family == Family::G) return 3;
  return 1;
}

IntMatrix standard_cartan(RootSystemType t) {
  const int n = t.n;
  IntMatrix a(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto edge = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (t.family) {
    case Family::A:
    case Family::B:
    case Family::C:
    case Family::F:
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
      if (t.family == Family::B) a[n - 2][n - 1] = -2;
      if (t.family == Family::C) a[n - 1][n - 2] = -2;
      if (t.family == Family::F) a[1][2] = -2;
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1);
      edge(n - 3, n - 1);
      break;
    case Family::E:
      edge(0, 2);
      edge(1, 3);
      for (int i = 2; i + 1 < n; ++i) edge(i, i + 1);
      break;
    case Family::G:
      a[0][1] = -1;
      a[1][0] = -3;
      break;
  }
  return a;
}

std::optional<std::vector<std::size_t>> match_cartan(const IntMatrix& m, const IntMatrix& standard) {
  const std::size_t n = standard.size();
  if (m.size() != n) return std::nullopt;
  std::vector<std::size_t> p(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || m[c][c] != standard[i][i]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = m[c][p[j]] == standard[i][j] && m[p[j]][c] == standard[j][i];
      if (!ok) continue;
      used[c] = true;
      p[i] = c;
      if (place(i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return p;
}

std::string classify_cartan(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    components.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(components.size() - 1);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      components.back().push_back(v);
      for (std::size_t w = 0; w < n; ++w)
        if (comp[w] < 0 && (m[v][w] != 0 || m[w][v] != 0)) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
  }
  std::vector<std::string> names;
  for (auto& c : components) {
    std::sort(c.begin(), c.end());
    IntMatrix sub(c.size(), IntVec(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) sub[i][j] = m[c[i]][c[j]];
    const int s = static_cast<int>(c.size());
    std::string found;
    const std::pair<Family, int> candidates[] = {{Family::A, s}, {Family::B, s}, {Family::C, s}, {Family::D, s},
                                                 {Family::E, s}, {Family::F, s}, {Family::G, s}};
    for (auto [fam, rank] : candidates) {
      RootSystemType t;
      try {
        t = RootSystemType::make(fam, rank);
      } catch (const UsageError&) {
        continue;
      }
      if (match_cartan(sub, standard_cartan(t))) {
        found = t.name();
        break;
      }
    }
    if (found.empty()) throw ConsistencyError("unrecognised Cartan component of size " + std::to_string(s));
    names.push_back(found);
  }
  std::map<std::string, int> counts;
  std::vector<std::string> order;
  for (const auto& nm : names)
    if (counts[nm]++ == 0) order.push_back(nm);
  std::string label;
  for (const auto& nm : order) {
    if (!label.empty()) label += "+";
    label += nm;
    if (counts[nm] > 1) label += "^" + std::to_string(counts[nm]);
  }
  return label;
}

Vector reflect(const Vector& x, const Vector& alpha) {
  const Rational c = Rational(2) * inner_product(x, alpha) / inner_product(alpha, alpha);
  return x - c * alpha;
}

RootSystem::RootSystem(std::string label, std::optional<RootSystemType> type, std::vector<Vector> roots)
    : label_(std::move(label)), type_(type), roots_(std::move(roots)) {
  if (roots_.empty()) throw UsageError("root system needs at least one root");
  dim_ = roots_.front().dim();
  form_ = roots_.front().form();
  std::sort(roots_.begin(), roots_.end());
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (roots_[i].dim() != dim_ || !(roots_[i].form() == form_))
      throw UsageError("roots of mixed dimension or form in " + label_);
    if (roots_[i].is_zero()) throw ConsistencyError("zero vector among the roots of " + label_);
    if (!index_.emplace(roots_[i].coords(), i).second)
      throw ConsistencyError("root listed twice in " + label_ + ": " + roots_[i].to_string());
  }
  neg_.resize(roots_.size());
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    const auto j = index_of(-roots_[i]);
    if (!j) throw ConsistencyError(label_ + " is not closed under negation");
    neg_[i] = *j;
  }
  std::vector<Rational> norms;
  for (const auto& r : roots_) norms.push_back(norm(r));
  long_norm_ = *std::max_element(norms.begin(), norms.end());
  short_norm_ = *std::min_element(norms.begin(), norms.end());
  const Rational ratio = long_norm_ / short_norm_;
  if (!ratio.is_integer() || ratio.num() > 3) throw ConsistencyError("invalid norm ratio in " + label_);
  lacing_ = static_cast<int>(ratio.num());
  is_long_.resize(roots_.size());
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (norms[i] != long_norm_ && norms[i] != short_norm_)
      throw ConsistencyError("more than two root lengths in " + label_);
    is_long_[i] = norms[i] == long_norm_;
    (is_long_[i] ? long_ : short_).push_back(i);
  }
  if (lacing_ == 1) short_ = long_;
  if (type_) {
    if (lacing_ != type_->lacing() || long_norm_ != Rational(2))
      throw ConsistencyError("root norms of " + label_ + " do not match its type");
  }
  compute_base();
  compute_tables();
}

std::optional<std::size_t> RootSystem::index_of(const Vector& v) const {
  if (v.dim() != dim_ || !(v.form() == form_)) return std::nullopt;
  auto it = index_.find(v.coords());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Vector> RootSystem::simple_roots() const {
  std::vector<Vector> out;
  for (auto i : simple_) out.push_back(roots_[i]);
  return out;
}

void RootSystem::compute_base() {
  auto positive = [](const Vector& v) {
    for (const auto& c : v.coords())
      if (!c.is_zero()) return c.sign() > 0;
    return false;
  };
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (positive(roots_[i])) pos.push_back(i);
  std::vector<bool> decomposable(roots_.size(), false);
  for (std::size_t a = 0; a < pos.size(); ++a)
    for (std::size_t b = a; b < pos.size(); ++b)
      if (auto s = index_of(roots_[pos[a]] + roots_[pos[b]])) decomposable[*s] = true;
  std::vector<std::size_t> simple;
  // Descending lexicographic order, so A_n starts e1-e2, e2-e3, ...
  for (auto it = pos.rbegin(); it != pos.rend(); ++it)
    if (!decomposable[*it]) simple.push_back(*it);

  RatMatrix span;
  for (const auto& r : roots_) span.push_back(r.coords());
  if (simple.size() != matrix_rank(span))
    throw ConsistencyError("base of " + label_ + " has " + std::to_string(simple.size()) + " roots but the span has rank " +
                           std::to_string(matrix_rank(span)));

  auto cartan_of = [&](const std::vector<std::size_t>& base) {
    IntMatrix a(base.size(), IntVec(base.size()));
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = 0; j < base.size(); ++j) {
        const Rational v = Rational(2) * inner_product(roots_[base[i]], roots_[base[j]]) / norm(roots_[base[j]]);
        if (!v.is_integer()) throw ConsistencyError("non-integral Cartan entry in " + label_);
        a[i][j] = v.num();
      }
    return a;
  };
  IntMatrix a = cartan_of(simple);
  if (type_) {
    const auto perm = match_cartan(a, standard_cartan(*type_));
    if (!perm) throw ConsistencyError("Cartan matrix of the computed base of " + label_ + " is not of type " + type_->name());
    std::vector<std::size_t> reordered;
    for (auto p : *perm) reordered.push_back(simple[p]);
    simple = std::move(reordered);
    a = cartan_of(simple);
    if (a != standard_cartan(*type_)) throw ConsistencyError("Cartan reordering failed for " + label_);
  }
  simple_ = std::move(simple);
  cartan_ = std::move(a);
}

void RootSystem::compute_tables() {
  const std::size_t r = simple_.size();
  RatMatrix gram(r, RatVec(r));
  gram6_.assign(r, IntVec(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      gram[i][j] = inner_product(roots_[simple_[i]], roots_[simple_[j]]);
      const Rational g6 = gram[i][j] * Rational(6);
      if (!g6.is_integer()) throw ConsistencyError("form denominator exceeds 6 in " + label_);
      gram6_[i][j] = g6.num();
    }
  gram_inv_ = inverse(gram);

  root_q_.clear();
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    auto q = to_q(roots_[i]);
    if (!q) throw ConsistencyError("root outside the lattice of its own base in " + label_);
    root_by_q_.emplace(*q, i);
    root_q_.push_back(std::move(*q));
  }

  const std::size_t n = roots_.size();
  inner6_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) inner6_[i * n + j] = inner6_[j * n + i] = inner6_q(root_q_[i], root_q_[j]);

  if (n > 256) throw ConsistencyError("root permutations are stored in bytes; too many roots");
  reflections_.assign(r, std::vector<std::uint8_t>(n));
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t i = 0; i < n; ++i) {
      IntVec q = root_q_[i];
      std::int64_t p = 0;
      for (std::size_t j = 0; j < r; ++j) p += q[j] * cartan_[j][s];
      q[s] -= p;
      const auto img = root_index_of_q(q);
      if (!img) throw ConsistencyError("reflection leaves the root set of " + label_);
      reflections_[s][i] = static_cast<std::uint8_t>(*img);
    }

  std::int64_t best_height = -1;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t h = 0;
    bool nonneg = true;
    for (auto c : root_q_[i]) {
      h += c;
      nonneg = nonneg && c >= 0;
    }
    if (nonneg && h > best_height) {
      best_height = h;
      highest_ = i;
    }
  }
}

std::optional<IntVec> RootSystem::to_q(const Vector& v) const {
  if (v.dim() != dim_ || !(v.form() == form_)) return std::nullopt;
  const std::size_t r = simple_.size();
  RatVec b(r);
  for (std::size_t i = 0; i < r; ++i) b[i] = inner_product(v, roots_[simple_[i]]);
  const RatVec c = multiply(gram_inv_, b);
  IntVec q(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (!c[i].is_integer()) return std::nullopt;
    q[i] = c[i].num();
  }
  if (from_q(q) != v) return std::nullopt;
  return q;
}

IntVec RootSystem::q_of(const Vector& v) const {
  auto q = to_q(v);
  if (!q) throw UsageError(v.to_string() + " is not in the root lattice of " + label_);
  return *q;
}

Vector RootSystem::from_q(const IntVec& q) const {
  Vector v = Vector::zero(dim_, form_);
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] != 0) v += Rational(q[i]) * roots_[simple_[i]];
  return v;
}

std::optional<std::size_t> RootSystem::root_index_of_q(const IntVec& q) const {
  auto it = root_by_q_.find(q);
  if (it == root_by_q_.end()) return std::nullopt;
  return it->second;
}

std::int64_t RootSystem::inner6_q(const IntVec& a, const IntVec& b) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) s = checked_add(s, checked_mul(a[i], checked_mul(gram6_[i][j], b[j])));
  }
  return s;
}

IntVec RootSystem::dominant(IntVec q, std::vector<std::uint8_t>* word) const {
  const std::size_t r = simple_.size();
  while (true) {
    bool moved = false;
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t p = 0;
      for (std::size_t j = 0; j < r; ++j) p += q[j] * cartan_[j][i];
      if (p < 0) {
        q[i] -= p;
        if (word) word->push_back(static_cast<std::uint8_t>(i));
        moved = true;
        break;
      }
    }
    if (!moved) return q;
  }
}

namespace {

std::vector<Vector> enumerate_roots(RootSystemType t) {
  const std::size_t m = static_cast<std::size_t>(t.ambient_dim());
  const FormScale f = t.form();
  std::vector<Vector> out;
  auto make = [&](std::initializer_list<std::pair<std::size_t, Rational>> entries) {
    Vector v = Vector::zero(m, f);
    for (const auto& [i, c] : entries) v[i] = c;
    out.push_back(std::move(v));
  };
  auto pm_pairs = [&] {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (int si : {1, -1})
          for (int sj : {1, -1}) make({{i, si}, {j, sj}});
  };
  auto half_vectors = [&](CodeWord w, bool e6_block) {
    const auto members = w.members();
    for (unsigned signs = 0; signs < (1u << members.size()); ++signs) {
      Vector v = Vector::zero(m, f);
      Rational block;
      for (std::size_t b = 0; b < members.size(); ++b) {
        const Rational c(signs >> b & 1u ? -1 : 1, 2);
        v[static_cast<std::size_t>(members[b] - 1)] = c;
        if (members[b] >= 5) block += c;
      }
      if (e6_block && !block.is_zero()) continue;
      out.push_back(std::move(v));
    }
  };
  switch (t.family) {
    case Family::A:
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (i != j) make({{i, 1}, {j, -1}});
      break;
    case Family::B:
      for (std::size_t i = 0; i < m; ++i)
        for (int s : {1, -1}) make({{i, s}});
      pm_pairs();
      break;
    case Family::C:
      for (std::size_t i = 0; i < m; ++i)
        for (int s : {2, -2}) make({{i, s}});
      pm_pairs();
      break;
    case Family::D:
      pm_pairs();
      break;
    case Family::F:
      for (std::size_t i = 0; i < m; ++i)
        for (int s : {1, -1}) make({{i, s}});
      pm_pairs();
      half_vectors(CodeWord::of({1, 2, 3, 4}), false);
      break;
    case Family::G:
      for (std::size_t a = 0; a < 3; ++a) {
        const std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
        for (int s : {1, -1}) make({{a, Rational(2 * s, 3)}, {b, Rational(-s, 3)}, {c, Rational(-s, 3)}});
      }
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (i != j) make({{i, 1}, {j, -1}});
      break;
    case Family::E: {
      const std::size_t units = t.n == 8 ? 8 : (t.n == 7 ? 7 : 4);
      for (std::size_t i = 0; i < units; ++i)
        for (int s : {1, -1}) make({{i, s}});
      const auto& code = t.n == 8 ? build_h8() : build_h7();
      for (auto w : code.weight4()) half_vectors(w, t.n == 6);
      break;
    }
  }
  return out;
}

}  // namespace

RootSystemPtr build_root_system(RootSystemType t) {
  static std::mutex mu;
  static std::map<std::string, RootSystemPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[t.name()];
  if (!slot) slot = std::make_shared<const RootSystem>(t.name(), t, enumerate_roots(t));
  return slot;
}

RootSystemPtr short_root_subsystem(const RootSystem& rs) {
  if (rs.simply_laced()) throw UsageError(rs.label() + " is simply laced; its short roots are all of its roots");
  std::vector<Vector> shorts;
  for (auto i : rs.short_roots()) shorts.push_back(rs.root(i));
  RootSystem probe("short(" + rs.label() + ")", std::nullopt, shorts);
  return std::make_shared<const RootSystem>(classify_cartan(probe.cartan()), std::nullopt, std::move(shorts));
}

RootStats root_stats(const RootSystem& rs) {
  RootStats s;
  s.count = rs.size();
  s.long_count = rs.long_roots().size();
  s.short_count = rs.short_roots().size();
  for (const auto& r : rs.roots()) ++s.norms[norm(r)];
  s.lacing = rs.lacing();
  s.highest_root = rs.root(rs.highest_root());
  return s;
}

}  // namespace rootcert
