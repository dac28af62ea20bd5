#include "okb/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

#include "okb/errors.hpp"

namespace okb {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    return make_rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw InvalidInput("not a rational number: '" + text + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in product");
  return r;
}

Int floor_div(Int a, Int b) {
  if (b == 0) throw std::domain_error("division by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// ceil(a/b) = floor((a + b - 1)/b) for b > 0; general sign handled by negation.
Int ceil_div(Int a, Int b) {
  if (b < 0) return ceil_div(-a, -b);
  return floor_div(checked_add(a, b - 1), b);
}

Int gcd_int(Int a, Int b) { return std::gcd(a, b); }

Int lcm_int(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = std::gcd(a, b);
  return checked_mul(a / g < 0 ? -(a / g) : a / g, b < 0 ? -b : b);
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

Int to_int(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<Int>(z.get_si());
}

Int to_int(const Rational& q) {
  if (q.get_den() != 1) throw std::domain_error("rational is not an integer: " + q.get_str());
  return to_int(q.get_num());
}

RatVector RatVector::from_ints(std::span<const Int> xs) {
  RatVector v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = Rational(static_cast<long>(xs[i]));
  return v;
}

RatVector RatVector::from_integers(std::span<const Integer> xs) {
  RatVector v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = Rational(xs[i]);
  return v;
}

bool RatVector::is_zero() const {
  for (const auto& x : v_)
    if (x != 0) return false;
  return true;
}

bool RatVector::is_integral() const {
  for (const auto& x : v_)
    if (x.get_den() != 1) return false;
  return true;
}

IntVector RatVector::to_ints() const {
  IntVector out(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = to_int(v_[i]);
  return out;
}

RatVector& RatVector::operator+=(const RatVector& o) {
  if (o.size() != size()) throw DimensionMismatch("vector addition: length mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

RatVector& RatVector::operator-=(const RatVector& o) {
  if (o.size() != size()) throw DimensionMismatch("vector subtraction: length mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

RatVector& RatVector::operator*=(const Rational& s) {
  for (auto& x : v_) x *= s;
  return *this;
}

std::strong_ordering operator<=>(const RatVector& a, const RatVector& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

void make_primitive(IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

IntegerVector primitive_integer(const std::vector<Rational>& xs) {
  Integer l = 1;
  for (const auto& x : xs) l = lcm(l, x.get_den());
  IntegerVector out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = xs[i].get_num() * (l / xs[i].get_den());
  make_primitive(out);
  return out;
}

}  // namespace okb
