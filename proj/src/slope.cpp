#include "dehn/slope.hpp"

#include <cctype>

namespace dehn {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer mod_floor(const Integer& a, const Integer& b) {
  return a - b * floor_div(a, b);
}

Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer quot = old_r / r;
    Integer tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quot * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::optional<Integer> parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  if (i == text.size()) return std::nullopt;
  Integer value = 0;
  for (; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (!std::isdigit(c)) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

std::optional<std::int64_t> to_int64(const Integer& x) {
  static const Integer lo = std::numeric_limits<std::int64_t>::min();
  static const Integer hi = std::numeric_limits<std::int64_t>::max();
  if (x < lo || x > hi) return std::nullopt;
  return x.convert_to<std::int64_t>();
}

Slope Slope::normalized(const Integer& p, const Integer& q) {
  if (p == 0 && q == 0) throw SlopeError("0/0 is not a slope");
  if (q == 0) return infinity();
  const Integer g = gcd(abs(p), abs(q));
  Integer np = p / g;
  Integer nq = q / g;
  if (nq < 0) {
    np = -np;
    nq = -nq;
  }
  return Slope(std::move(np), std::move(nq));
}

Slope Slope::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "inf" || text == "infinity") return infinity();
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_integer(text);
    if (!n) throw SlopeError("malformed slope '" + std::string(text) + "'");
    return integer(*n);
  }
  auto p = parse_integer(trim(text.substr(0, slash)));
  auto q = parse_integer(trim(text.substr(slash + 1)));
  if (!p || !q) throw SlopeError("malformed slope '" + std::string(text) + "'");
  return normalized(*p, *q);
}

std::string Slope::to_string() const {
  if (is_infinite()) return "inf";
  return p_.str() + "/" + q_.str();
}

std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
  if (a.q_ != b.q_) return a.q_ < b.q_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.p_ != b.p_) return a.p_ < b.p_ ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Integer pairing(const Slope& a, const Slope& b) { return a.p() * b.q() - a.q() * b.p(); }

Integer distance(const Slope& a, const Slope& b) { return abs(pairing(a, b)); }

Slope dehn_twist(const Slope& target, const Slope& axis, const Integer& k) {
  const Integer w = k * pairing(target, axis);
  return Slope::normalized(target.p() + w * axis.p(), target.q() + w * axis.q());
}

IntegerGapReport integer_gap(const Slope& s) {
  if (s.is_infinite()) throw SlopeError("integer gap is undefined for the meridian 1/0");
  const Integer& p = s.p();
  const Integer& q = s.q();
  // Nearest admissible integers below and above p/q; the excluded set is the
  // contiguous block {-1, 0, 1}, so the fallback neighbours are -2 and 2.
  Integer below = floor_div(p, q);
  Integer above = (p % q == 0) ? below : Integer(below + 1);
  if (below >= -1 && below <= 1) below = -2;
  if (above >= -1 && above <= 1) above = 2;
  // Both gaps are (non-negative integer) / q.
  const Integer num = std::min(Integer(p - below * q), Integer(above * q - p));
  IntegerGapReport report;
  report.gap = Rational(num, q);
  report.m_value = Rational(num);
  return report;
}

}  // namespace dehn
