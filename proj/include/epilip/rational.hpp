#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace epilip {

// Exact rational scalar. GMP keeps every value reduced with a positive
// denominator, so equality is structural.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using Vector = std::vector<Rational>;
using VectorView = std::span<const Rational>;

/// Parses "p", "-p/q" or a finite decimal such as "0.25". A leading unicode
/// minus sign is accepted. Throws Error{malformed_syntax}.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// Comma separated rationals, surrounding whitespace ignored.
Vector parse_vector(std::string_view text);

/// "a,b,c" (no brackets); the inverse of parse_vector.
std::string join(VectorView values);

/// "(a,b,c)".
std::string to_string(VectorView values);

double to_double(const Rational& value);

Vector zeros(std::size_t n);
Vector unit(std::size_t n, std::size_t index);

Rational dot(VectorView a, VectorView b);
Vector add(VectorView a, VectorView b);
Vector subtract(VectorView a, VectorView b);
Vector scale(const Rational& factor, VectorView v);
/// a + factor * b
Vector axpy(VectorView a, const Rational& factor, VectorView b);
Vector negate(VectorView v);
bool is_zero(VectorView v);
Rational sum(VectorView v);

/// Smallest positive multiple of v with coprime integer entries. Returns the
/// factor applied through `factor` when non-null. The zero vector maps to
/// itself with factor 1.
Vector primitive(VectorView v, Rational* factor = nullptr);

/// Lexicographic comparison, used to sort point sets canonically.
bool lex_less(VectorView a, VectorView b);

/// Nonnegative real known exactly through its square. Rational values keep
/// their root; euclidean norms of rational vectors generally do not have one.
class Magnitude {
 public:
  Magnitude() = default;

  static Magnitude from_rational(const Rational& value);
  static Magnitude from_square(const Rational& square);
  static Magnitude infinity();

  bool is_infinite() const { return infinite_; }
  const Rational& square() const { return square_; }
  /// The exact value when it is rational.
  const std::optional<Rational>& exact() const { return root_; }
  double approx() const;

  /// "2", "sqrt(4/5)" or "inf".
  std::string to_string() const;

  friend Magnitude operator*(const Magnitude& a, const Magnitude& b);
  friend Magnitude operator/(const Magnitude& a, const Magnitude& b);
  friend bool operator==(const Magnitude& a, const Magnitude& b);
  friend std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b);

 private:
  Rational square_{0};
  std::optional<Rational> root_{Rational{0}};
  bool infinite_ = false;
};

/// The rational square root of `value` if it exists.
std::optional<Rational> exact_sqrt(const Rational& value);

}  // namespace epilip
