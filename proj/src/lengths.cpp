#include "rootcert/lengths.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "rootcert/error.hpp"

namespace rootcert {

namespace {

struct IntVecHash {
  std::size_t operator()(const IntVec& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

class Tables {
 public:
  explicit Tables(const RootSystem& rs) : rs_(rs) {
    layers_.push_back({IntVec(rs.rank(), 0)});
    nodes_.emplace(layers_[0][0], Node{0, {}, 0});
    const unsigned masks = 1u << rs.dim();
    m_s_.resize(masks);
    for (unsigned s = 1; s < masks; ++s)
      for (const auto& r : rs.roots()) m_s_[s] = std::max(m_s_[s], abs_sum(r, s));
  }

  const Rational& m_s(unsigned s) const { return m_s_.at(s); }

  LengthResult length(const IntVec& q, int cap) {
    std::vector<std::uint8_t> word;
    const IntVec d = rs_.dominant(q, &word);
    LengthResult res;
    {
      std::shared_lock lock(mu_);
      if (auto it = nodes_.find(d); it != nodes_.end()) {
        if (it->second.layer > cap) throw_cap(cap);
        res = witness_of(d);
      } else {
        lock.unlock();
        std::unique_lock wlock(mu_);
        while (!nodes_.count(d)) {
          if (static_cast<int>(layers_.size()) - 1 >= cap) throw_cap(cap);
          extend();
        }
        if (nodes_.at(d).layer > cap) throw_cap(cap);
        res = witness_of(d);
      }
    }
    for (auto& idx : res.witness)
      for (auto it = word.rbegin(); it != word.rend(); ++it) idx = rs_.reflection_perm(*it)[idx];
    std::sort(res.witness.begin(), res.witness.end());
    return res;
  }

 private:
  struct Node {
    int layer;
    IntVec parent;
    std::size_t root;
  };

  [[noreturn]] void throw_cap(int cap) const {
    throw CapExceeded("length exceeds the search cap " + std::to_string(cap) + " in " + rs_.label());
  }

  void extend() {
    const int next = static_cast<int>(layers_.size());
    std::vector<IntVec> layer;
    for (const auto& d : layers_.back())
      for (std::size_t a = 0; a < rs_.size(); ++a) {
        IntVec v = d;
        const auto& qa = rs_.root_q(a);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += qa[i];
        IntVec dv = rs_.dominant(std::move(v));
        if (nodes_.count(dv)) continue;
        nodes_.emplace(dv, Node{next, d, a});
        layer.push_back(std::move(dv));
      }
    layers_.push_back(std::move(layer));
  }

  // Roots summing to the dominant vector d.
  LengthResult witness_of(const IntVec& d) const {
    std::vector<const Node*> chain;
    std::vector<IntVec> keys{d};
    for (const Node* n = &nodes_.at(d); n->layer > 0; n = &nodes_.at(n->parent)) {
      chain.push_back(n);
      keys.push_back(n->parent);
    }
    // Walk from layer 0 outwards: roots sum to parent, add the step root, then
    // move everything into the chamber of the child.
    std::vector<std::size_t> roots;
    for (std::size_t s = chain.size(); s-- > 0;) {
      const Node* n = chain[s];
      roots.push_back(n->root);
      IntVec v = keys[s + 1];
      const auto& qa = rs_.root_q(n->root);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += qa[i];
      std::vector<std::uint8_t> word;
      rs_.dominant(std::move(v), &word);
      for (auto& idx : roots)
        for (auto w : word) idx = rs_.reflection_perm(w)[idx];
    }
    return LengthResult{static_cast<int>(chain.size()), std::move(roots)};
  }

  const RootSystem& rs_;
  std::shared_mutex mu_;
  std::unordered_map<IntVec, Node, IntVecHash> nodes_;
  std::vector<std::vector<IntVec>> layers_;
  std::vector<Rational> m_s_;
};

std::string cache_key(const RootSystem& rs) {
  if (rs.type()) return rs.type()->name();
  std::string key = rs.label();
  for (const auto& r : rs.roots()) key += r.to_string();
  return key;
}

Tables& tables_for(const RootSystem& rs) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Tables>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[cache_key(rs)];
  if (!slot) slot = std::make_unique<Tables>(rs);
  return *slot;
}

unsigned all_coords(const RootSystem& rs) { return (1u << rs.dim()) - 1; }

bool is_e(const RootSystem& rs) { return rs.type() && rs.type()->family == Family::E; }

const HammingCode& code_for(int n) { return n == 8 ? build_h8() : build_h7(); }

}  // namespace

LengthResult length_exact_q(const RootSystem& rs, const IntVec& q, int cap) {
  if (q.size() != rs.rank()) throw UsageError("coordinate vector has the wrong rank");
  if (cap < 0) throw UsageError("search cap must be non-negative");
  return tables_for(rs).length(q, cap);
}

LengthResult length_exact(const RootSystem& rs, const Vector& beta, int cap) {
  const auto q = rs.to_q(beta);
  if (!q) throw UsageError(beta.to_string() + " is not in the root lattice of " + rs.label());
  LengthResult res = length_exact_q(rs, *q, cap);
  Vector sum = Vector::zero(rs.dim(), rs.form());
  for (auto i : res.witness) sum += rs.root(i);
  if (sum != beta) throw ConsistencyError("length witness does not sum to " + beta.to_string());
  return res;
}

int default_bfs_cap(const RootSystem& rs, int k) { return 4 * k * static_cast<int>(rs.rank()); }

std::string to_string(BoundSource s) {
  switch (s) {
    case BoundSource::Generic: return "generic";
    case BoundSource::ClassicalHalf: return "classical_half";
    case BoundSource::ClassicalCoord: return "classical_coord";
    case BoundSource::EType: return "e_type";
    case BoundSource::EType567: return "e_type_567";
  }
  return "?";
}

BoundReport bound_generic(const RootSystem& rs, const Vector& beta, unsigned subset) {
  if (subset == 0 || subset > all_coords(rs)) throw UsageError("subset must be a nonempty set of ambient coordinates");
  BoundReport rep;
  rep.subset = subset;
  rep.m_s = tables_for(rs).m_s(subset);
  rep.bound = rep.m_s.is_zero() ? Rational(0) : abs_sum(beta, subset) / rep.m_s;
  return rep;
}

Rational e_type_m(unsigned support, int n) {
  Rational m(1);
  for (auto w : code_for(n).weight4()) m = std::max(m, Rational(__builtin_popcount(w.mask & support), 2));
  return m;
}

std::vector<BoundReport> specialized_bounds(const RootSystem& rs, const Vector& beta) {
  if (!rs.type()) throw UsageError("specialized bounds need a typed root system");
  const auto t = *rs.type();
  std::vector<BoundReport> out;
  if (t.family == Family::E) {
    const unsigned s = beta.support_mask();
    const Rational sum = abs_sum(beta, s);
    out.push_back({s, 2, sum / 2, BoundSource::EType});
    const Rational m = e_type_m(s, t.n);
    const bool block = t.n != 8 && s == 0b1110000u;
    out.push_back({s, m, sum / m, block ? BoundSource::EType567 : BoundSource::EType});
    return out;
  }
  const unsigned all = all_coords(rs);
  out.push_back({all, 2, abs_sum(beta, all) / 2, BoundSource::ClassicalHalf});
  if (t.family != Family::C)
    for (std::size_t a = 0; a < rs.dim(); ++a) out.push_back({1u << a, 1, beta[a].abs(), BoundSource::ClassicalCoord});
  return out;
}

BoundReport bound_specialized(const RootSystem& rs, const Vector& beta) {
  const auto all = specialized_bounds(rs, beta);
  BoundReport best = all.front();
  for (const auto& r : all)
    if (r.bound > best.bound) best = r;
  return best;
}

std::optional<EqualityCertificate> equality_certificate(const RootSystem& rs, const Vector& beta,
                                                        const LengthResult& res, const BoundReport& rep) {
  if (Rational(res.value) != rep.bound) return std::nullopt;
  const std::string where = " (" + rs.label() + ", beta = " + beta.to_string() + ")";
  EqualityCertificate cert{rep.subset, rep.m_s, std::nullopt};
  for (auto j : res.witness)
    if (abs_sum(rs.root(j), rep.subset) != rep.m_s)
      throw ConsistencyError("bound attained but witness root " + rs.root(j).to_string() + " misses M_S" + where);
  for (std::size_t i = 0; i < rs.dim(); ++i) {
    if (!(rep.subset >> i & 1u)) continue;
    int sign = 0;
    for (auto j : res.witness) {
      const int s = rs.root(j)[i].sign();
      if (s != 0 && sign != 0 && s != sign)
        throw ConsistencyError("bound attained but witness signs disagree on coordinate " + std::to_string(i + 1) +
                               where);
      if (s != 0) sign = s;
    }
  }
  if (is_e(rs)) {
    const int n = rs.type()->n;
    const unsigned s = beta.support_mask();
    const int size = __builtin_popcount(s);
    const Rational sum = abs_sum(beta, s);
    const auto equal_abs = [&] {
      std::optional<Rational> v;
      for (std::size_t i = 0; i < rs.dim(); ++i) {
        if (!(s >> i & 1u)) continue;
        if (v && *v != beta[i].abs()) return false;
        v = beta[i].abs();
      }
      return true;
    };
    const auto& code = code_for(n);
    if ((size == 4 || size == 5) && Rational(res.value) == sum / 2) {
      const CodeWord w{static_cast<std::uint8_t>(s)};
      if (!code.contains(w) || !equal_abs())
        throw ConsistencyError("half-sum length attained off a Hamming word or with unequal coordinates" + where);
      cert.hamming_word = w;
    } else if (size == 3 && Rational(res.value) == Rational(2, 3) * sum) {
      for (auto w : code.weight4())
        if ((w.mask & s) == s) cert.hamming_word = w;
      if (!cert.hamming_word || !equal_abs())
        throw ConsistencyError("two-thirds length attained without a containing Hamming word" + where);
    }
  }
  return cert;
}

}  // namespace rootcert
