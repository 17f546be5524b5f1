#include "rootcert/rational.hpp"

#include <charconv>
#include <limits>

namespace rootcert {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_int64(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d == 0) throw ArithmeticOverflow("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const __int128 g = gcd_wide(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (!fits_int64(n) || !fits_int64(d)) throw ArithmeticOverflow("rational arithmetic exceeded 64 bits");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t value = 0;
    if (!part.empty() && part.front() == '+') part.remove_prefix(1);
    const auto* first = part.data();
    const auto* last = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || part.empty())
      throw UsageError("cannot parse rational '" + std::string(text) + "'");
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t d = parse_int(text.substr(slash + 1));
  if (d == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), d);
}

}  // namespace rootcert
