#include "rootcert/certifier.hpp"

#include <algorithm>
#include <set>

#include "rootcert/error.hpp"
#include "rootcert/lengths.hpp"
#include "rootcert/parallel.hpp"

namespace rootcert {

namespace {

void check_args(const CosetSpace& space, int t) {
  if (space.k() < 2) throw UsageError("level k must be at least 2");
  const int r = space.root_system().lacing();
  if (t != 1 && t != r) throw UsageError("t must be 1 or " + std::to_string(r) + " for " + space.root_system().label());
}

int cap_for(const CosetSpace& space, const CertifyOptions& opts) {
  return opts.bfs_cap > 0 ? opts.bfs_cap : default_bfs_cap(space.root_system(), space.k());
}

Rational target_of(const CosetSpace& space, int t) { return Rational(1) - Rational(1, static_cast<std::int64_t>(t) * space.k()); }

struct Lower {
  ReducedRep red;
  int length = 0;
  Rational value;
};

Lower lower_bound(const CosetSpace& space, const Coset& coset, const CertifyOptions& opts) {
  Lower out;
  out.red = reduce(space, coset);
  out.length = length_exact(space.root_system(), out.red.gamma, cap_for(space, opts)).value;
  out.value = Rational(out.length) - norm(out.red.gamma) / Rational(2 * space.k());
  return out;
}

}  // namespace

std::string kind(const WeightCertificate& c) {
  static const char* names[] = {"trivial", "root_found", "excluded_modz", "excluded_bound", "failure"};
  return names[c.index()];
}

void Tallies::add(const WeightCertificate& c) {
  switch (c.index()) {
    case 0: ++trivial; break;
    case 1: ++root_found; break;
    case 2: ++excluded_modz; break;
    case 3: ++excluded_bound; break;
    default: ++failure; break;
  }
}

std::optional<Rational> exact_weight_if_root(const CosetSpace& space, std::size_t id) {
  const auto roots = space.roots_in_coset(id);
  if (roots.empty()) return std::nullopt;
  const auto& rs = space.root_system();
  const Rational n = norm(rs.root(roots.front()));
  for (auto i : roots)
    if (norm(rs.root(i)) != n)
      throw ConsistencyError("coset " + std::to_string(id) + " of " + rs.label() + " holds roots of two norms");
  return Rational(1) - n / Rational(2 * space.k());
}

WeightCertificate certify_coset(const CosetSpace& space, const Coset& coset, int t, const CertifyOptions& opts) {
  check_args(space, t);
  if (coset.space != &space) throw UsageError("coset belongs to another coset space");
  if (coset.id == 0) return Trivial{};
  const auto& rs = space.root_system();
  const Rational target = target_of(space, t);
  const Rational want_norm = Rational(2, t) * rs.long_norm() / Rational(2);
  if (const auto roots = space.roots_in_coset(coset.id, want_norm); !roots.empty()) {
    const Vector& g = rs.root(roots.front());
    return RootFound{roots.front(), g, norm(g), Rational(1) - norm(g) / Rational(2 * space.k())};
  }
  const Rational cls = space.weight_class(coset.id);
  if (!opts.skip_modz && cls != target.mod1()) return ExcludedModZ{t, target, cls};
  const Lower lo = lower_bound(space, coset, opts);
  if (lo.value > target) return ExcludedBound{lo.red.gamma, lo.red.tag, lo.length, lo.value, target};
  return Failure{"coset " + std::to_string(coset.id) + " of " + rs.label() + " at k=" + std::to_string(space.k()) +
                 ", t=" + std::to_string(t) + ": reduced " + lo.red.gamma.to_string() + " (" + to_string(lo.red.tag) +
                 ") has length " + std::to_string(lo.length) + ", lower bound " + lo.value.to_string() +
                 " does not exceed " + target.to_string()};
}

std::vector<int> t_values(const RootSystem& rs) {
  if (rs.simply_laced()) return {1};
  return {1, rs.lacing()};
}

SweepReport sweep(const CosetSpace& space, int t, const CertifyOptions& opts) {
  check_args(space, t);
  const auto& rs = space.root_system();
  SweepReport rep;
  if (rs.type()) rep.type = *rs.type();
  rep.k = space.k();
  rep.t = t;
  rep.incomplete = space.simple_current_list_incomplete();
  rep.certificates.resize(space.size());
  parallel_for(space.size(), opts.threads,
               [&](std::size_t id) { rep.certificates[id] = certify_coset(space, space.coset(id), t, opts); });
  for (const auto& c : rep.certificates) rep.tallies.add(c);

  // Cosets of the roots of norm 2/t (relative to long norm 2), from the roots.
  const Rational want_norm = Rational(2, t) * rs.long_norm() / Rational(2);
  std::set<std::size_t> expected;
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (norm(rs.root(i)) == want_norm) {
      const std::size_t id = space.id_of(rs.root(i));
      if (id != 0) expected.insert(id);
    }
  for (std::size_t id = 0; id < space.size(); ++id) {
    const bool found = std::holds_alternative<RootFound>(rep.certificates[id]);
    if (found != (expected.count(id) > 0)) rep.iff_mismatches.push_back(id);
  }
  rep.iff_holds = rep.iff_mismatches.empty();
  return rep;
}

std::vector<SweepReport> verify_thm_key(RootSystemType type, int k, const CertifyOptions& opts) {
  if (k < 2) throw UsageError("level k must be at least 2");
  const auto space = build_coset_space(type, k);
  std::vector<SweepReport> out;
  for (int t : t_values(space->root_system())) out.push_back(sweep(*space, t, opts));
  return out;
}

MinWeightReport min_weight_report(RootSystemType type, int k, const CertifyOptions& opts) {
  if (k < 2) throw UsageError("level k must be at least 2");
  const auto space = build_coset_space(type, k);
  if (space->simple_current_list_incomplete())
    throw UsageError("minimum weight is not reported for " + type.name() + " at k=" + std::to_string(k));
  const auto& rs = space->root_system();
  MinWeightReport rep;
  rep.type = type;
  rep.k = k;
  rep.expected = Rational(1) - Rational(1, k);
  rep.values.resize(space->size());
  parallel_for(space->size(), opts.threads, [&](std::size_t id) {
    if (id == 0) return;
    if (auto w = exact_weight_if_root(*space, id)) {
      rep.values[id] = *w;
      return;
    }
    if (const auto c = certify_coset(*space, space->coset(id), 1, opts); std::holds_alternative<Failure>(c))
      throw ConsistencyError(std::get<Failure>(c).diagnostics);
    const Rational lower = lower_bound(*space, space->coset(id), opts).value;
    const Rational cls = space->weight_class(id);
    rep.values[id] = cls + Rational((lower - cls).ceil());
  });
  if (space->size() < 2) throw UsageError("coset space of " + type.name() + " at k=" + std::to_string(k) + " is trivial");
  rep.minimum = rep.values[1];
  for (std::size_t id = 1; id < space->size(); ++id) rep.minimum = std::min(rep.minimum, rep.values[id]);
  rep.attained_only_at_long_roots = true;
  for (std::size_t id = 1; id < space->size(); ++id) {
    if (rep.values[id] != rep.minimum) continue;
    rep.argmin.push_back(id);
    const auto longs = space->roots_in_coset(id, rs.long_norm());
    if (longs.empty()) rep.attained_only_at_long_roots = false;
  }
  return rep;
}

}  // namespace rootcert
