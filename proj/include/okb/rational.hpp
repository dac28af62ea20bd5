#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace okb {

using Int = std::int64_t;
using IntVector = std::vector<Int>;
using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;

Rational make_rational(const Integer& num, const Integer& den);
// Accepts "p", "p/q" and "-p/q".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Exact integer helpers on machine integers. These throw std::overflow_error
// instead of wrapping.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int floor_div(Int a, Int b);
Int ceil_div(Int a, Int b);
Int gcd_int(Int a, Int b);
Int lcm_int(Int a, Int b);
Int dot(std::span<const Int> a, std::span<const Int> b);
Int to_int(const Integer& z);
Int to_int(const Rational& q);

// Fixed-length vector of exact rationals.
class RatVector {
 public:
  RatVector() = default;
  explicit RatVector(std::size_t n) : v_(n) {}
  RatVector(std::initializer_list<Rational> xs) : v_(xs) {}
  explicit RatVector(std::vector<Rational> xs) : v_(std::move(xs)) {}
  static RatVector from_ints(std::span<const Int> xs);
  static RatVector from_integers(std::span<const Integer> xs);

  std::size_t size() const { return v_.size(); }
  Rational& operator[](std::size_t i) { return v_[i]; }
  const Rational& operator[](std::size_t i) const { return v_[i]; }
  auto begin() { return v_.begin(); }
  auto end() { return v_.end(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<Rational>& entries() const { return v_; }

  bool is_zero() const;
  bool is_integral() const;
  IntVector to_ints() const;

  RatVector& operator+=(const RatVector& o);
  RatVector& operator-=(const RatVector& o);
  RatVector& operator*=(const Rational& s);

  friend RatVector operator+(RatVector a, const RatVector& b) { return a += b; }
  friend RatVector operator-(RatVector a, const RatVector& b) { return a -= b; }
  friend RatVector operator*(RatVector a, const Rational& s) { return a *= s; }
  friend RatVector operator*(const Rational& s, RatVector a) { return a *= s; }
  friend bool operator==(const RatVector& a, const RatVector& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const RatVector& a, const RatVector& b);

 private:
  std::vector<Rational> v_;
};

Rational dot(const RatVector& a, const RatVector& b);
std::string to_string(const RatVector& v);

// Multiplies by the lcm of denominators and divides by the content, so the
// result is a primitive integer vector pointing in the same direction.
IntegerVector primitive_integer(const std::vector<Rational>& xs);
void make_primitive(IntegerVector& v);

}  // namespace okb
