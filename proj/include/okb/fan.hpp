#pragma once

#include <optional>
#include <string>
#include <vector>

#include "okb/polyhedron.hpp"
#include "okb/rational.hpp"

namespace okb {

struct Fan {
  std::size_t dim = 0;
  std::vector<IntVector> rays;
  std::vector<std::vector<std::size_t>> max_cones;

  std::size_t num_rays() const { return rays.size(); }
};

struct ValidationIssue {
  std::string check;                // "structure", "smoothness", "completeness", "projectivity", "compatibility"
  std::optional<std::size_t> cone;  // offending maximal cone, when there is one
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::optional<bool> projective;  // only set when the check was requested

  bool ok() const { return issues.empty(); }
  bool failed(const std::string& check) const;
  std::vector<std::size_t> offending_cones(const std::string& check) const;
  void merge(const ValidationReport& other);
};

struct FanValidationOptions {
  bool check_projectivity = false;
};

ValidationReport validate_fan(const Fan& f, FanValidationOptions options = {});

// The maximal cone spanned by the first n flag divisors, the ray order that
// puts its rays first, and the dual basis v_1*, ..., v_n* of those rays.
struct FlagBasis {
  std::size_t tau = 0;
  std::vector<std::size_t> ray_order;  // flag position -> input ray index
  std::vector<IntVector> dual;         // row i is v_i* in standard coordinates

  std::size_t position_of(std::size_t input_ray) const;
};

FlagBasis select_flag(const Fan& f, std::optional<std::size_t> tau = std::nullopt);

// O(twist) ⊗ π*O(Σ coeffs[k] D_{n+1+k}), coefficients in flag order.
struct DivisorClass {
  IntVector coeffs;
  Int twist = 0;

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;
};

DivisorClass operator+(const DivisorClass& x, const DivisorClass& y);
DivisorClass operator*(Int k, const DivisorClass& x);
std::string to_string(const DivisorClass& cls);

// Reduces an invariant divisor Σ m_j D_j (input ray order) to the basis
// class by subtracting div(χ^u) with ⟨u, v_i⟩ = m_i on the rays of τ.
DivisorClass normalize_class(const Fan& f, const FlagBasis& b, std::span<const Int> full_coeffs, Int twist);

// {u : ⟨u, v_j⟩ <= m_j for all j}, m in input ray order, u in standard coordinates.
geom::HPolyhedron base_polytope(const Fan& f, std::span<const Int> m);

Int determinant(const std::vector<IntVector>& rows);
// Inverse of a unimodular integer matrix; throws InvalidCone otherwise.
std::vector<IntVector> unimodular_inverse(const std::vector<IntVector>& rows);

}  // namespace okb
