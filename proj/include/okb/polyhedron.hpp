#pragma once

#include <optional>
#include <vector>

#include "okb/rational.hpp"

namespace okb::geom {

// normal·x + constant >= 0 (or = 0 when used as an equation).
struct LinearInequality {
  RatVector normal;
  Rational constant = 0;

  LinearInequality() = default;
  LinearInequality(RatVector n, Rational c) : normal(std::move(n)), constant(std::move(c)) {}
  static LinearInequality from_ints(std::span<const Int> normal, Int constant);

  std::size_t dim() const { return normal.size(); }
  Rational value(const RatVector& x) const;
  bool is_trivial() const { return normal.is_zero(); }
  bool trivially_false() const { return is_trivial() && constant < 0; }

  // Integer coefficients with content 1, same orientation.
  LinearInequality canonical() const;

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

std::strong_ordering compare(const LinearInequality& a, const LinearInequality& b);

class HPolyhedron {
 public:
  explicit HPolyhedron(std::size_t ambient_dim, std::vector<LinearInequality> inequalities = {},
                       std::vector<LinearInequality> equations = {});

  std::size_t ambient_dim() const { return dim_; }
  const std::vector<LinearInequality>& inequalities() const { return ineqs_; }
  const std::vector<LinearInequality>& equations() const { return eqs_; }

  // Constant terms all zero.
  bool is_homogeneous() const;
  // Canonical constraint forms, trivially true constraints and parallel
  // duplicates dropped (the tighter one is kept), sorted. A detectably
  // infeasible system collapses to the single certificate -1 >= 0.
  HPolyhedron canonicalized() const;
  bool has_infeasibility_certificate() const;

 private:
  std::size_t dim_;
  std::vector<LinearInequality> ineqs_;
  std::vector<LinearInequality> eqs_;
};

struct VPolytope {
  std::size_t ambient_dim = 0;
  std::vector<RatVector> vertices;  // lexicographically sorted
  int dim = -1;                      // affine dimension, -1 when empty
};

// Lineality basis and extreme rays of {x : A x >= 0, E x = 0}, as primitive
// integer vectors in a deterministic order.
struct ConeGenerators {
  std::vector<IntegerVector> lineality;
  std::vector<IntegerVector> rays;
};

struct CoordinateRange {
  std::optional<Rational> lower;  // nullopt means unbounded below
  std::optional<Rational> upper;
};

struct BoundingBox {
  bool feasible = true;
  std::vector<CoordinateRange> ranges;  // empty when infeasible
  bool bounded() const;
};

HPolyhedron fm_eliminate(const HPolyhedron& p, std::size_t coord);
ConeGenerators cone_generators(std::size_t dim, const std::vector<IntegerVector>& inequalities,
                               const std::vector<IntegerVector>& equations = {});
VPolytope dd_vertices(const HPolyhedron& p);
Rational volume(const VPolytope& v);
std::vector<RatVector> lattice_points(const HPolyhedron& p);
BoundingBox bounding_box(const HPolyhedron& p);
bool contains(const HPolyhedron& p, const RatVector& x);
bool is_feasible(const HPolyhedron& p);
bool poly_equal(const HPolyhedron& p, const HPolyhedron& q);

// Facet inequalities of a full-dimensional polytope given by its vertices.
std::vector<LinearInequality> facets(const VPolytope& v);
int affine_dimension(const std::vector<RatVector>& points);
int rank(std::vector<std::vector<Rational>> rows);
Rational determinant(std::vector<std::vector<Rational>> m);

// Scales every point of p by k (k > 0).
HPolyhedron scaled(const HPolyhedron& p, const Rational& k);
HPolyhedron intersect(const HPolyhedron& p, const HPolyhedron& q);

}  // namespace okb::geom
