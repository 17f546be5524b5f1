#include "rootcert/reduction.hpp"

#include <algorithm>
#include <numeric>

#include "rootcert/codes.hpp"
#include "rootcert/error.hpp"

namespace rootcert {

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::A: return "A";
    case CaseTag::ADi: return "AD-i";
    case CaseTag::ADii: return "AD-ii";
    case CaseTag::Bi: return "B-i";
    case CaseTag::Bii: return "B-ii";
    case CaseTag::C: return "C";
    case CaseTag::E78i: return "E78-i";
    case CaseTag::E78ii: return "E78-ii";
    case CaseTag::E78iii: return "E78-iii";
    case CaseTag::E6i: return "E6-i";
    case CaseTag::E6ii: return "E6-ii";
    case CaseTag::E6iii: return "E6-iii";
    case CaseTag::E6iv: return "E6-iv";
    case CaseTag::Fi: return "F-i";
    case CaseTag::Fii: return "F-ii";
    case CaseTag::Fiii: return "F-iii";
    case CaseTag::Gi: return "G-i";
    case CaseTag::Gii: return "G-ii";
  }
  return "?";
}

namespace {

// Coordinates under reduction plus the bookkeeping every procedure shares.
class Work {
 public:
  Work(const CosetSpace& space, const Coset& coset, std::initializer_list<Family> allowed)
      : space_(space), coset_(coset), k_(space.k()), half_(space.k(), 2) {
    const auto& t = space.root_system().type();
    if (!t || std::find(allowed.begin(), allowed.end(), t->family) == allowed.end())
      throw UsageError("reduction procedure does not apply to " + space.root_system().label());
    if (coset.space != &space) throw UsageError("coset belongs to a different coset space");
    if (coset.id == 0) throw UsageError("the zero coset has no reduced representative");
    x_ = coset.rep.coords();
    const Rational total = abs_sum(coset.rep);
    guard_ = static_cast<int>(total.ceil()) * static_cast<int>(space.root_system().rank()) +
             static_cast<int>(space.root_system().rank());
  }

  std::vector<Rational>& x() { return x_; }
  const Rational& operator[](std::size_t i) const { return x_[i]; }
  std::size_t dim() const { return x_.size(); }
  int k() const { return k_; }
  const Rational& half() const { return half_; }

  int eps(std::size_t i) const { return x_[i].sign() < 0 ? -1 : 1; }
  unsigned support() const {
    unsigned s = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
      if (!x_[i].is_zero()) s |= 1u << i;
    return s;
  }
  unsigned at_half() const {
    unsigned u = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
      if (x_[i].abs() == half_) u |= 1u << i;
    return u;
  }

  void step() {
    if (++steps_ > guard_)
      throw ConsistencyError("reduction in " + space_.root_system().label() + " exceeded its step guard");
  }

  // x_i <- x_i - c for the (i, c) pairs given.
  void move(std::initializer_list<std::pair<std::size_t, Rational>> delta) {
    for (const auto& [i, c] : delta) x_[i] -= c;
    step();
  }

  // Replace x_i by its representative modulo m in (upper - m, upper].
  void reduce_mod(std::size_t i, const Rational& m, const Rational& upper) {
    Rational r = x_[i] - m * Rational((x_[i] / m).floor());
    if (r > upper) r -= m;
    if (r != x_[i]) {
      x_[i] = r;
      step();
    }
  }

  ReducedRep finish(CaseTag tag) const {
    Vector g(x_, space_.root_system().form());
    if (!space_.in_kql(g - coset_.rep))
      throw ConsistencyError("reduction left the coset of " + coset_.rep.to_string() + " in " +
                             space_.root_system().label());
    return ReducedRep{std::move(g), tag, steps_};
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConsistencyError("reduction of " + coset_.rep.to_string() + " in " + space_.root_system().label() +
                           ", k=" + std::to_string(k_) + ": " + what);
  }

 private:
  const CosetSpace& space_;
  const Coset& coset_;
  int k_;
  Rational half_;
  std::vector<Rational> x_;
  int steps_ = 0;
  int guard_ = 0;
};

int popcount(unsigned m) { return __builtin_popcount(m); }

std::vector<std::size_t> members(unsigned m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m >> i; ++i)
    if (m >> i & 1u) out.push_back(i);
  return out;
}

// Subtract eps_a k (e_a - e_b) while some |x_a| >= k, over the coordinates in `scope`.
void a_moves(Work& w, unsigned scope) {
  const Rational k(w.k());
  while (true) {
    std::size_t a = w.dim();
    for (auto i : members(scope))
      if (w[i].abs() >= k) {
        a = i;
        break;
      }
    if (a == w.dim()) return;
    const int ea = w.eps(a);
    std::size_t b = w.dim();
    for (auto i : members(scope))
      if (ea * w[i].sign() < 0) {
        b = i;
        break;
      }
    if (b == w.dim()) w.fail("no coordinate of opposite sign for an A-type move");
    w.move({{a, Rational(ea) * k}, {b, Rational(-ea) * k}});
  }
}

// D-type moves inside Z^n: k(eps_a e_a + eps_b e_b), and 2k eps_a e_a on a singleton.
void d_moves(Work& w) {
  const Rational k(w.k());
  while (true) {
    const unsigned s = w.support();
    const auto sup = members(s);
    if (sup.size() >= 2) {
      std::size_t a = w.dim();
      for (auto i : sup)
        if (w[i].abs() >= k) {
          a = i;
          break;
        }
      if (a == w.dim()) return;
      const std::size_t b = sup[0] == a ? sup[1] : sup[0];
      w.move({{a, Rational(w.eps(a)) * k}, {b, Rational(w.eps(b)) * k}});
    } else if (sup.size() == 1 && w[sup[0]].abs() > k) {
      w.move({{sup[0], Rational(2 * w.eps(sup[0])) * k}});
    } else {
      return;
    }
  }
}

bool all_integral(const Work& w) {
  for (std::size_t i = 0; i < w.dim(); ++i)
    if (!w[i].is_integer()) return false;
  return true;
}

CaseTag d_tag(const Work& w, CaseTag i_tag, CaseTag ii_tag) {
  return popcount(w.support()) >= 2 ? i_tag : ii_tag;
}

const HammingCode& code_for(int n) { return n == 8 ? build_h8() : build_h7(); }

CodeWord word_of(unsigned mask) { return CodeWord{static_cast<std::uint8_t>(mask)}; }

// x <- x - (k/2) sum_{i in T} eps_i e_i with eps_i = +1 off the support.
void subtract_half_on(Work& w, unsigned t) {
  for (auto i : members(t)) w.x()[i] -= Rational(w.eps(i)) * w.half();
  w.step();
}

constexpr unsigned kBlock = 0b1110000u;  // coordinates 5, 6, 7
constexpr unsigned kFirstFour = 0b0001111u;

ReducedRep reduce_e78(Work& w, int n) {
  const Rational k(w.k());
  for (std::size_t i = 0; i < w.dim(); ++i) w.reduce_mod(i, k, w.half());
  const auto& code = code_for(n);
  while (true) {
    const unsigned s = w.support(), u = w.at_half();
    if (popcount(s) < 4 || popcount(u) < 2) break;
    const auto um = members(u);
    const CodeWord t1 = CodeWord::of({static_cast<int>(um[0]) + 1, static_cast<int>(um[1]) + 1});
    std::vector<CodeWord> rest;
    if (n == 8) {
      const auto q = find_quadruple(t1);
      rest.assign(q.begin(), q.end());
    } else {
      const auto q = find_triple(t1);
      rest.assign(q.begin(), q.end());
    }
    unsigned t = 0;
    for (auto tj : rest)
      if (tj.mask & s) {
        t = (t1 | tj).mask;
        break;
      }
    if (t == 0 || !code.contains(word_of(t))) w.fail("no Hamming word meets the support twice");
    subtract_half_on(w, t);
  }
  {
    const unsigned s = w.support(), u = w.at_half();
    if (popcount(s) == 4 && popcount(u) == 1 && code.contains(word_of(s))) subtract_half_on(w, s);
  }
  const unsigned s = w.support(), u = w.at_half();
  if (popcount(s) <= 3) return w.finish(CaseTag::E78iii);
  if (popcount(s & ~u) >= 4 && popcount(u) <= 1) return w.finish(CaseTag::E78i);
  if (popcount(s) == 4 && popcount(u) == 1 && !code.contains(word_of(s))) return w.finish(CaseTag::E78ii);
  w.fail("no case of the E7/E8 lemma applies");
}

// Normalize the {5,6,7} block so every |x_i| < k/2 there and |x_i| <= k/2 on 1..4.
void e6_normalize(Work& w) {
  const Rational k(w.k());
  a_moves(w, kBlock);
  std::array<std::size_t, 3> abc{4, 5, 6};
  std::stable_sort(abc.begin(), abc.end(), [&](std::size_t i, std::size_t j) { return w[i].abs() > w[j].abs(); });
  const std::size_t a = abc[0], b = abc[1];
  if (w[a].abs() >= w.half()) {
    if (w[a].sign() * w[b].sign() >= 0) w.fail("block coordinates do not alternate in sign");
    const CodeWord ab = CodeWord::of({static_cast<int>(a) + 1, static_cast<int>(b) + 1});
    const CodeWord pq = find_triple(ab)[0];
    const auto pm = pq.members();
    if (pm.size() != 2 || pm[1] > 4) w.fail("Hamming partner of the block pair leaves 1..4");
    const Rational c = Rational(w.eps(a)) * w.half();
    w.move({{static_cast<std::size_t>(pm[0] - 1), c}, {static_cast<std::size_t>(pm[1] - 1), c}, {a, c}, {b, -c}});
  }
  for (std::size_t i = 0; i < 4; ++i) w.reduce_mod(i, k, w.half());
}

ReducedRep reduce_e6(Work& w) {
  e6_normalize(w);
  const auto& h7 = build_h7();
  while (true) {
    const unsigned s = w.support(), u = w.at_half();
    if (popcount(s) <= 3) return w.finish(CaseTag::E6iii);
    if (u & kBlock) w.fail("block coordinate reached k/2 after normalization");
    if (u == 0) return w.finish(CaseTag::E6i);
    const unsigned s4 = s & kFirstFour;
    if (popcount(u) >= 3 || (popcount(u) == 2 && u != s4)) {
      subtract_half_on(w, kFirstFour);
      continue;
    }
    if (popcount(u) == 2) {
      unsigned t = 0;
      for (auto word : h7.weight4())
        if ((word.mask & u) == u && popcount(word.mask & kBlock) == 2) t = word.mask;
      if (t == 0) w.fail("no Hamming word through the two k/2 coordinates");
      const auto tb = members(t & kBlock);
      if (popcount(s) == 4) {
        const unsigned hit = s & t & kBlock;
        if (popcount(hit) == 2) {
          subtract_half_on(w, t);
        } else {
          const std::size_t a = members(hit).at(0);
          const std::size_t b = tb[0] == a ? tb[1] : tb[0];
          for (auto i : members(u)) w.x()[i] -= Rational(w.eps(i)) * w.half();
          const Rational c = Rational(w.eps(a)) * w.half();
          w.x()[a] -= c;
          w.x()[b] += c;
          w.step();
        }
        break;
      }
      if (popcount(s) == 5) {
        const std::size_t a = tb[0], b = tb[1];
        if (w[a].sign() * w[b].sign() < 0) {
          subtract_half_on(w, t);
        } else {
          for (auto i : members(u)) w.x()[i] -= Rational(w.eps(i)) * w.half();
          const Rational c = Rational(w.eps(a)) * w.half();
          w.x()[a] -= c;
          w.x()[b] += c;
          w.step();
        }
        break;
      }
      w.fail("support of unexpected size with two k/2 coordinates");
    }
    // |U| = 1
    if (popcount(s) >= 5) return w.finish(CaseTag::E6i);
    if (h7.contains(word_of(s))) {
      subtract_half_on(w, s);
      break;
    }
    return w.finish(CaseTag::E6ii);
  }
  // Classify the result of the final move.
  const unsigned s = w.support();
  bool in_range = true;
  for (auto i : members(s)) in_range = in_range && w[i].abs() <= w.half();
  if (popcount(s) <= 3 && in_range) return w.finish(CaseTag::E6iii);
  if (s == kBlock) {
    int big = 0, small = 0;
    for (auto i : members(s)) {
      if (w[i].abs() >= w.half() && w[i].abs() < Rational(w.k())) ++big;
      if (w[i].abs() < w.half()) ++small;
    }
    if (big == 1 && small == 2) return w.finish(CaseTag::E6iv);
  }
  w.fail("no case of the E6 lemma applies after the final move");
}

}  // namespace

ReducedRep reduce_AD(const CosetSpace& space, const Coset& coset) {
  Work w(space, coset, {Family::A, Family::D});
  if (space.root_system().type()->family == Family::A) {
    a_moves(w, (1u << w.dim()) - 1);
    return w.finish(CaseTag::A);
  }
  d_moves(w);
  return w.finish(d_tag(w, CaseTag::ADi, CaseTag::ADii));
}

ReducedRep reduce_B(const CosetSpace& space, const Coset& coset) {
  Work w(space, coset, {Family::B});
  d_moves(w);
  return w.finish(d_tag(w, CaseTag::Bi, CaseTag::Bii));
}

ReducedRep reduce_C(const CosetSpace& space, const Coset& coset) {
  Work w(space, coset, {Family::C});
  const Rational k(w.k());
  for (std::size_t i = 0; i < w.dim(); ++i) w.reduce_mod(i, Rational(2) * k, k);
  return w.finish(CaseTag::C);
}

ReducedRep reduce_E(const CosetSpace& space, const Coset& coset) {
  Work w(space, coset, {Family::E});
  const int n = space.root_system().type()->n;
  return n == 6 ? reduce_e6(w) : reduce_e78(w, n);
}

ReducedRep reduce_F(const CosetSpace& space, const Coset& coset) {
  Work w(space, coset, {Family::F});
  if (all_integral(w)) {
    d_moves(w);
    return w.finish(d_tag(w, CaseTag::Fi, CaseTag::Fii));
  }
  const Rational k(w.k());
  while (true) {
    std::size_t a = w.dim();
    for (std::size_t i = 0; i < w.dim(); ++i)
      if (w[i].abs() >= k) {
        a = i;
        break;
      }
    if (a == w.dim()) break;
    const std::size_t b = a == 0 ? 1 : 0;
    w.move({{a, Rational(w.eps(a)) * k}, {b, Rational(w.eps(b)) * k}});
  }
  return w.finish(CaseTag::Fiii);
}

ReducedRep reduce_G(const CosetSpace& space, const Coset& coset) {
  Work w(space, coset, {Family::G});
  if (all_integral(w)) {
    a_moves(w, 0b111);
    return w.finish(CaseTag::Gi);
  }
  const Rational k(w.k());
  while (true) {
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return w[i].abs() > w[j].abs(); });
    const std::size_t a = order[0], b = order[1];
    if (w[a].abs() < k) break;
    const Rational c = Rational(w.eps(a)) * k;
    w.move({{a, c}, {b, -c}});
  }
  return w.finish(CaseTag::Gii);
}

ReducedRep reduce(const CosetSpace& space, const Coset& coset) {
  const auto& t = space.root_system().type();
  if (!t) throw UsageError("reduction needs a typed root system");
  switch (t->family) {
    case Family::A:
    case Family::D: return reduce_AD(space, coset);
    case Family::B: return reduce_B(space, coset);
    case Family::C: return reduce_C(space, coset);
    case Family::E: return reduce_E(space, coset);
    case Family::F: return reduce_F(space, coset);
    case Family::G: return reduce_G(space, coset);
  }
  throw UsageError("unknown family");
}

}  // namespace rootcert
