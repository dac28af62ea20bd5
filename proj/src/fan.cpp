#include "okb/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "okb/errors.hpp"

namespace okb {

namespace {

std::string join(const std::vector<std::size_t>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

std::vector<IntVector> cone_matrix(const Fan& f, const std::vector<std::size_t>& cone) {
  std::vector<IntVector> m;
  for (std::size_t j : cone) m.push_back(f.rays[j]);
  return m;
}

void check_structure(const Fan& f, ValidationReport& r) {
  auto issue = [&](std::string detail, std::optional<std::size_t> cone = std::nullopt) {
    r.issues.push_back({"structure", cone, std::move(detail)});
  };
  if (f.dim == 0) issue("lattice rank must be positive");
  std::set<IntVector> seen;
  for (std::size_t j = 0; j < f.rays.size(); ++j) {
    const auto& v = f.rays[j];
    if (v.size() != f.dim) {
      issue("ray " + std::to_string(j) + " has length " + std::to_string(v.size()));
      continue;
    }
    Int g = 0;
    for (Int x : v) g = std::gcd(g, x);
    if (g == 0)
      issue("ray " + std::to_string(j) + " is zero");
    else if (g != 1)
      issue("ray " + std::to_string(j) + " is not primitive");
    if (!seen.insert(v).second) issue("ray " + std::to_string(j) + " repeats an earlier ray");
  }
  if (f.max_cones.empty()) issue("no maximal cones");
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto& cone = f.max_cones[c];
    std::set<std::size_t> distinct(cone.begin(), cone.end());
    if (cone.size() != f.dim || distinct.size() != cone.size())
      issue("cone must list " + std::to_string(f.dim) + " distinct rays", c);
    for (std::size_t j : cone)
      if (j >= f.rays.size()) issue("ray index " + std::to_string(j) + " out of range", c);
  }
}

// Interiors of two simplicial cones meet iff Σ λ_i v_i = Σ μ_k w_k has a
// solution with every λ_i, μ_k >= 1 (strict positivity, rescaled).
bool interiors_overlap(const Fan& f, const std::vector<std::size_t>& s, const std::vector<std::size_t>& t) {
  const std::size_t n = f.dim;
  const std::size_t vars = 2 * n;
  std::vector<geom::LinearInequality> ineqs, eqs;
  for (std::size_t i = 0; i < vars; ++i) {
    RatVector e(vars);
    e[i] = 1;
    ineqs.emplace_back(std::move(e), Rational(-1));
  }
  for (std::size_t row = 0; row < n; ++row) {
    RatVector e(vars);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = f.rays[s[i]][row];
      e[n + i] = -f.rays[t[i]][row];
    }
    eqs.emplace_back(std::move(e), Rational(0));
  }
  return geom::is_feasible(geom::HPolyhedron(vars, std::move(ineqs), std::move(eqs)));
}

// Feasibility of a strictly convex support function: values m_j on the rays
// such that every wall-crossing ray lies strictly above the linear function
// of the neighbouring cone.
bool has_strictly_convex_support_function(const Fan& f) {
  const std::size_t d = f.rays.size();
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> walls;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    auto cone = f.max_cones[c];
    std::sort(cone.begin(), cone.end());
    for (std::size_t skip = 0; skip < cone.size(); ++skip) {
      std::vector<std::size_t> facet;
      for (std::size_t i = 0; i < cone.size(); ++i)
        if (i != skip) facet.push_back(cone[i]);
      walls[facet].push_back(c);
    }
  }
  std::vector<geom::LinearInequality> ineqs, eqs;
  for (const auto& [facet, cones] : walls) {
    if (cones.size() != 2) continue;
    for (int side = 0; side < 2; ++side) {
      const auto& sigma = f.max_cones[cones[side]];
      const auto& other = f.max_cones[cones[1 - side]];
      std::size_t k = *std::find_if(other.begin(), other.end(), [&](std::size_t j) {
        return std::find(sigma.begin(), sigma.end(), j) == sigma.end();
      });
      auto dual = unimodular_inverse(cone_matrix(f, sigma));
      // dual is the inverse of the row matrix, so column i pairs with ray sigma[i].
      RatVector row(d);
      row[k] = 1;
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        Int pairing = 0;
        for (std::size_t x = 0; x < f.dim; ++x) pairing += dual[x][i] * f.rays[k][x];
        row[sigma[i]] -= pairing;
      }
      ineqs.emplace_back(std::move(row), Rational(-1));
    }
  }
  for (std::size_t j : f.max_cones[0]) {
    RatVector e(d);
    e[j] = 1;
    eqs.emplace_back(std::move(e), Rational(0));
  }
  return geom::is_feasible(geom::HPolyhedron(d, std::move(ineqs), std::move(eqs)));
}

}  // namespace

bool ValidationReport::failed(const std::string& check) const {
  return std::any_of(issues.begin(), issues.end(), [&](const auto& i) { return i.check == check; });
}

std::vector<std::size_t> ValidationReport::offending_cones(const std::string& check) const {
  std::set<std::size_t> out;
  for (const auto& i : issues)
    if (i.check == check && i.cone) out.insert(*i.cone);
  return {out.begin(), out.end()};
}

void ValidationReport::merge(const ValidationReport& other) {
  issues.insert(issues.end(), other.issues.begin(), other.issues.end());
  if (other.projective) projective = other.projective;
}

Int determinant(const std::vector<IntVector>& rows) {
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) {
    std::vector<Rational> q;
    for (Int x : r) q.emplace_back(static_cast<long>(x));
    m.push_back(std::move(q));
  }
  return to_int(geom::determinant(std::move(m)));
}

std::vector<IntVector> unimodular_inverse(const std::vector<IntVector>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw DimensionMismatch("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(rows[i][j]);
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw InvalidCone("cone generators are linearly dependent");
    std::swap(m[piv], m[c]);
    Rational inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<IntVector> out(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][n + j].get_den() != 1) throw InvalidCone("cone is not unimodular");
      out[i][j] = to_int(m[i][n + j]);
    }
  return out;
}

ValidationReport validate_fan(const Fan& f, FanValidationOptions options) {
  ValidationReport r;
  check_structure(f, r);
  if (!r.ok()) return r;

  std::vector<bool> nondegenerate(f.max_cones.size());
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    Int det = determinant(cone_matrix(f, f.max_cones[c]));
    nondegenerate[c] = det != 0;
    if (det != 1 && det != -1)
      r.issues.push_back({"smoothness", c, "determinant " + std::to_string(det) + " on rays " + join(f.max_cones[c])});
  }

  // Every facet of a maximal cone must be shared by exactly two maximal cones.
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> facets;
  std::map<std::vector<std::size_t>, std::size_t> cone_sets;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    auto cone = f.max_cones[c];
    std::sort(cone.begin(), cone.end());
    if (auto [it, fresh] = cone_sets.emplace(cone, c); !fresh)
      r.issues.push_back({"completeness", c, "repeats maximal cone " + std::to_string(it->second)});
    for (std::size_t skip = 0; skip < cone.size(); ++skip) {
      std::vector<std::size_t> facet;
      for (std::size_t i = 0; i < cone.size(); ++i)
        if (i != skip) facet.push_back(cone[i]);
      facets[facet].push_back(c);
    }
  }
  for (const auto& [facet, cones] : facets) {
    if (cones.size() == 2) continue;
    for (std::size_t c : cones)
      r.issues.push_back({"completeness", c,
                          "facet " + join(facet) + " lies in " + std::to_string(cones.size()) + " maximal cone(s)"});
  }
  for (std::size_t s = 0; s < f.max_cones.size(); ++s)
    for (std::size_t t = s + 1; t < f.max_cones.size(); ++t) {
      if (!nondegenerate[s] || !nondegenerate[t]) continue;
      if (interiors_overlap(f, f.max_cones[s], f.max_cones[t]))
        r.issues.push_back({"completeness", s, "interior overlaps maximal cone " + std::to_string(t)});
    }

  if (options.check_projectivity && r.ok()) {
    r.projective = has_strictly_convex_support_function(f);
    if (!*r.projective) r.issues.push_back({"projectivity", std::nullopt, "no strictly convex support function"});
  }
  return r;
}

std::size_t FlagBasis::position_of(std::size_t input_ray) const {
  auto it = std::find(ray_order.begin(), ray_order.end(), input_ray);
  if (it == ray_order.end()) throw std::out_of_range("ray index out of range");
  return static_cast<std::size_t>(it - ray_order.begin());
}

FlagBasis select_flag(const Fan& f, std::optional<std::size_t> tau) {
  if (f.max_cones.empty()) throw InvalidCone("fan has no maximal cones");
  std::size_t t = 0;
  if (tau) {
    if (*tau >= f.max_cones.size()) throw InvalidCone("tau " + std::to_string(*tau) + " is not a maximal cone");
    t = *tau;
  } else {
    auto sorted = [&](std::size_t c) {
      auto v = f.max_cones[c];
      std::sort(v.begin(), v.end());
      return v;
    };
    for (std::size_t c = 1; c < f.max_cones.size(); ++c)
      if (sorted(c) < sorted(t)) t = c;
  }
  FlagBasis b;
  b.tau = t;
  auto cone = f.max_cones[t];
  std::sort(cone.begin(), cone.end());
  b.ray_order = cone;
  for (std::size_t j = 0; j < f.rays.size(); ++j)
    if (!std::binary_search(cone.begin(), cone.end(), j)) b.ray_order.push_back(j);

  // With R the matrix whose rows are τ's rays, the rows of (R^{-1})^T are the dual basis.
  auto inv = unimodular_inverse(cone_matrix(f, cone));
  b.dual.assign(f.dim, IntVector(f.dim));
  for (std::size_t i = 0; i < f.dim; ++i)
    for (std::size_t j = 0; j < f.dim; ++j) b.dual[i][j] = inv[j][i];
  return b;
}

DivisorClass operator+(const DivisorClass& x, const DivisorClass& y) {
  if (x.coeffs.size() != y.coeffs.size()) throw DimensionMismatch("divisor classes of different length");
  DivisorClass r = x;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = checked_add(r.coeffs[i], y.coeffs[i]);
  r.twist = checked_add(r.twist, y.twist);
  return r;
}

DivisorClass operator*(Int k, const DivisorClass& x) {
  DivisorClass r = x;
  for (auto& c : r.coeffs) c = checked_mul(k, c);
  r.twist = checked_mul(k, r.twist);
  return r;
}

std::string to_string(const DivisorClass& cls) {
  std::string s;
  for (std::size_t i = 0; i < cls.coeffs.size(); ++i) s += (i ? "," : "") + std::to_string(cls.coeffs[i]);
  return s + ";" + std::to_string(cls.twist);
}

DivisorClass normalize_class(const Fan& f, const FlagBasis& b, std::span<const Int> full_coeffs, Int twist) {
  if (full_coeffs.size() != f.rays.size()) throw DimensionMismatch("normalize_class: need one coefficient per ray");
  IntVector u(f.dim, 0);
  for (std::size_t i = 0; i < f.dim; ++i)
    for (std::size_t x = 0; x < f.dim; ++x)
      u[x] = checked_add(u[x], checked_mul(full_coeffs[b.ray_order[i]], b.dual[i][x]));
  DivisorClass cls;
  cls.twist = twist;
  for (std::size_t k = f.dim; k < b.ray_order.size(); ++k) {
    std::size_t j = b.ray_order[k];
    cls.coeffs.push_back(checked_add(full_coeffs[j], -dot(u, f.rays[j])));
  }
  return cls;
}

geom::HPolyhedron base_polytope(const Fan& f, std::span<const Int> m) {
  if (m.size() != f.rays.size()) throw DimensionMismatch("base_polytope: need one coefficient per ray");
  std::vector<geom::LinearInequality> ineqs;
  for (std::size_t j = 0; j < f.rays.size(); ++j) {
    RatVector n = RatVector::from_ints(f.rays[j]);
    n *= -1;
    ineqs.emplace_back(std::move(n), Rational(static_cast<long>(m[j])));
  }
  return geom::HPolyhedron(f.dim, std::move(ineqs));
}

}  // namespace okb
