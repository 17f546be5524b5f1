#include "rootcert/quotient.hpp"

#include <map>
#include <mutex>

#include "rootcert/error.hpp"

namespace rootcert {

IntMatrix CosetSpace::long_root_hnf(const RootSystem& rs) {
  IntMatrix rows;
  for (auto i : rs.long_roots()) rows.push_back(rs.root_q(i));
  IntMatrix h = hermite_normal_form(std::move(rows));
  const std::size_t r = rs.rank();
  if (h.size() != r) throw ConsistencyError("long roots of " + rs.label() + " do not span a full-rank sublattice");
  for (std::size_t i = 0; i < r; ++i)
    if (h[i][i] <= 0) throw ConsistencyError("Hermite basis of Q_L is not square upper triangular");
  return h;
}

CosetSpace::CosetSpace(RootSystemPtr rs, int k, std::size_t max_cosets) : rs_(std::move(rs)), k_(k) {
  if (k_ < 1) throw UsageError("k must be at least 1, got " + std::to_string(k_));
  const std::size_t r = rs_->rank();
  ql_hnf_ = long_root_hnf(*rs_);

  moduli_.resize(r);
  strides_.assign(r, 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    index_ = checked_mul(index_, ql_hnf_[i][i]);
    moduli_[i] = checked_mul(k_, ql_hnf_[i][i]);
    total *= static_cast<std::size_t>(moduli_[i]);
    if (total > max_cosets)
      throw CapExceeded("Q/kQ_L for " + rs_->label() + ", k=" + std::to_string(k_) + " exceeds " +
                        std::to_string(max_cosets) + " cosets");
  }
  for (std::size_t i = r; i-- > 1;) strides_[i - 1] = strides_[i] * static_cast<std::size_t>(moduli_[i]);

  reps_.reserve(total);
  reps_q_.reserve(total);
  rep_norms_.reserve(total);
  for (std::size_t id = 0; id < total; ++id) {
    IntVec q = shortest_in_coset(digits_of_id(id));
    Vector v = rs_->from_q(q);
    rep_norms_.push_back(norm(v));
    reps_.push_back(std::move(v));
    reps_q_.push_back(std::move(q));
  }

  root_coset_.resize(rs_->size());
  for (std::size_t i = 0; i < rs_->size(); ++i) {
    root_coset_[i] = id_of_q(rs_->root_q(i));
    roots_by_coset_[root_coset_[i]].push_back(i);
  }
}

IntVec CosetSpace::digits_of_id(std::size_t id) const {
  IntVec d(moduli_.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = static_cast<std::int64_t>(id / strides_[i]);
    id %= strides_[i];
  }
  return d;
}

std::size_t CosetSpace::id_of_digits(const IntVec& digits) const {
  std::size_t id = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) id += static_cast<std::size_t>(digits[i]) * strides_[i];
  return id;
}

IntVec CosetSpace::reduce(IntVec q) const {
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::int64_t f = floor_div(q[i], moduli_[i]);
    if (f == 0) continue;
    const std::int64_t m = checked_mul(f, k_);
    for (std::size_t j = i; j < q.size(); ++j) q[j] = checked_add(q[j], -checked_mul(m, ql_hnf_[i][j]));
  }
  return q;
}

IntVec CosetSpace::shortest_in_coset(IntVec q) const {
  // |x - k a|^2 < |x|^2 iff <x, a> > k for a long root a (norm 2).
  const auto& longs = rs_->long_roots();
  std::vector<std::int64_t> pair(longs.size());
  for (std::size_t j = 0; j < longs.size(); ++j) pair[j] = rs_->inner6_q(q, rs_->root_q(longs[j]));
  const std::int64_t threshold = 6 * static_cast<std::int64_t>(k_);
  while (true) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < longs.size(); ++j)
      if (pair[j] > pair[best]) best = j;
    if (pair[best] <= threshold) return q;
    const auto& a = rs_->root_q(longs[best]);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= k_ * a[i];
    for (std::size_t j = 0; j < longs.size(); ++j) pair[j] -= k_ * rs_->inner6(longs[best], longs[j]);
  }
}

std::vector<Vector> CosetSpace::ql_basis_vectors() const {
  std::vector<Vector> out;
  for (const auto& row : ql_hnf_) out.push_back(rs_->from_q(row));
  return out;
}

std::size_t CosetSpace::id_of_q(IntVec q) const {
  if (q.size() != moduli_.size()) throw UsageError("coordinate vector has the wrong rank");
  return id_of_digits(reduce(std::move(q)));
}

std::size_t CosetSpace::id_of(const Vector& gamma) const {
  const auto q = rs_->to_q(gamma);
  if (!q) throw UsageError(gamma.to_string() + " is not in the root lattice of " + rs_->label());
  return id_of_q(*q);
}

Coset CosetSpace::coset(std::size_t id) const {
  if (id >= size()) throw UsageError("coset id " + std::to_string(id) + " out of range");
  return Coset{this, id, reps_[id]};
}

Coset CosetSpace::canonicalize(const Vector& gamma) const { return coset(id_of(gamma)); }

void CosetSpace::check_space(const Coset& c) const {
  if (c.space != this) throw UsageError("coset belongs to a different coset space");
}

std::size_t CosetSpace::add(std::size_t a, std::size_t b) const {
  IntVec q = reps_q_.at(a);
  const auto& qb = reps_q_.at(b);
  for (std::size_t i = 0; i < q.size(); ++i) q[i] += qb[i];
  return id_of_q(std::move(q));
}

std::size_t CosetSpace::negate(std::size_t a) const {
  IntVec q = reps_q_.at(a);
  for (auto& x : q) x = -x;
  return id_of_q(std::move(q));
}

Coset CosetSpace::add(const Coset& a, const Coset& b) const {
  check_space(a);
  check_space(b);
  return coset(add(a.id, b.id));
}

Coset CosetSpace::negate(const Coset& a) const {
  check_space(a);
  return coset(negate(a.id));
}

Rational CosetSpace::weight_class(std::size_t id) const {
  return (-rep_norms_.at(id) / Rational(2 * k_)).mod1();
}

std::vector<std::size_t> CosetSpace::roots_in_coset(std::size_t id, std::optional<Rational> norm_filter) const {
  std::vector<std::size_t> out;
  auto it = roots_by_coset_.find(id);
  if (it == roots_by_coset_.end()) return out;
  for (auto i : it->second)
    if (!norm_filter || norm(rs_->root(i)) == *norm_filter) out.push_back(i);
  return out;
}

bool CosetSpace::simple_current_list_incomplete() const {
  const auto& t = rs_->type();
  return t && t->family == Family::E && t->n == 8 && k_ == 2;
}

CosetSpacePtr build_coset_space(RootSystemType t, int k) {
  if (k < 1) throw UsageError("k must be at least 1, got " + std::to_string(k));
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, CosetSpacePtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{t.name(), k}];
  if (!slot) slot = std::make_shared<const CosetSpace>(build_root_system(t), k);
  return slot;
}

std::int64_t lattice_index(RootSystemType t) {
  const IntMatrix h = CosetSpace::long_root_hnf(*build_root_system(t));
  std::int64_t d = 1;
  for (std::size_t i = 0; i < h.size(); ++i) d = checked_mul(d, h[i][i]);
  return d;
}

}  // namespace rootcert
