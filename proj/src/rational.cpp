#include "epilip/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "epilip/error.hpp"

namespace epilip {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(Errc::malformed_syntax, "not a rational number: '" + std::string(text) + "'");
}

Integer integer_from(std::string_view digits) { return Integer(std::string(digits)); }

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (s.starts_with("\xE2\x88\x92")) {  // U+2212 MINUS SIGN
    negative = true;
    s.remove_prefix(3);
  } else if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    Integer d = integer_from(den);
    if (d == 0) bad_number(text);
    value = Rational(integer_from(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      bad_number(text);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer w = whole.empty() ? Integer(0) : integer_from(whole);
    Integer f = frac.empty() ? Integer(0) : integer_from(frac);
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(s)) bad_number(text);
    value = Rational(integer_from(s));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Vector parse_vector(std::string_view text) {
  Vector out;
  std::string_view s = trim(text);
  if (s.empty()) throw Error(Errc::malformed_syntax, "empty vector");
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    auto piece = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    out.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(VectorView values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += to_string(values[i]);
  }
  return out;
}

std::string to_string(VectorView values) { return "(" + join(values) + ")"; }

double to_double(const Rational& value) { return value.convert_to<double>(); }

Vector zeros(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit(std::size_t n, std::size_t index) {
  Vector v = zeros(n);
  v.at(index) = 1;
  return v;
}

Rational dot(VectorView a, VectorView b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  }
  return acc;
}

Vector add(VectorView a, VectorView b) {
  Vector out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Vector subtract(VectorView a, VectorView b) {
  Vector out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Vector scale(const Rational& factor, VectorView v) {
  Vector out(v.begin(), v.end());
  for (auto& x : out) x *= factor;
  return out;
}

Vector axpy(VectorView a, const Rational& factor, VectorView b) {
  Vector out(a.begin(), a.end());
  if (factor == 0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (b[i] != 0) out[i] += factor * b[i];
  }
  return out;
}

Vector negate(VectorView v) {
  Vector out(v.begin(), v.end());
  for (auto& x : out) x = -x;
  return out;
}

bool is_zero(VectorView v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Rational sum(VectorView v) {
  Rational acc = 0;
  for (const auto& x : v) acc += x;
  return acc;
}

Vector primitive(VectorView v, Rational* factor) {
  Integer g = 0;
  Integer l = 1;
  for (const auto& x : v) {
    if (x == 0) continue;
    g = gcd(g, Integer(abs(boost::multiprecision::numerator(x))));
    l = lcm(l, Integer(boost::multiprecision::denominator(x)));
  }
  if (g == 0) {
    if (factor) *factor = 1;
    return Vector(v.begin(), v.end());
  }
  Rational f(l, g);
  if (factor) *factor = f;
  return scale(f, v);
}

bool lex_less(VectorView a, VectorView b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (value < 0) return std::nullopt;
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  Integer rn = sqrt(num);
  Integer rd = sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

Magnitude Magnitude::from_rational(const Rational& value) {
  Magnitude m;
  Rational v = abs(value);
  m.square_ = v * v;
  m.root_ = v;
  return m;
}

Magnitude Magnitude::from_square(const Rational& square) {
  Magnitude m;
  m.square_ = square;
  m.root_ = exact_sqrt(square);
  return m;
}

Magnitude Magnitude::infinity() {
  Magnitude m;
  m.infinite_ = true;
  m.root_.reset();
  return m;
}

double Magnitude::approx() const {
  if (infinite_) return HUGE_VAL;
  if (root_) return to_double(*root_);
  return std::sqrt(to_double(square_));
}

std::string Magnitude::to_string() const {
  if (infinite_) return "inf";
  if (root_) return epilip::to_string(*root_);
  return "sqrt(" + epilip::to_string(square_) + ")";
}

Magnitude operator*(const Magnitude& a, const Magnitude& b) {
  if (a.infinite_ || b.infinite_) return Magnitude::infinity();
  return Magnitude::from_square(a.square_ * b.square_);
}

Magnitude operator/(const Magnitude& a, const Magnitude& b) {
  if (b.infinite_ || b.square_ == 0 || a.infinite_) return Magnitude::infinity();
  return Magnitude::from_square(a.square_ / b.square_);
}

bool operator==(const Magnitude& a, const Magnitude& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.square_ == b.square_;
}

std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (a.square_ < b.square_) return std::strong_ordering::less;
  if (a.square_ > b.square_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace epilip
