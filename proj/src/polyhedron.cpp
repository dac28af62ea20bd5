#include "okb/polyhedron.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "okb/errors.hpp"

namespace okb::geom {

namespace {

IntegerVector to_integer_row(const LinearInequality& c) {
  std::vector<Rational> all(c.normal.entries());
  all.push_back(c.constant);
  return primitive_integer(all);
}

LinearInequality from_integer_row(const IntegerVector& row) {
  RatVector n(row.size() - 1);
  for (std::size_t i = 0; i + 1 < row.size(); ++i) n[i] = Rational(row[i]);
  return {std::move(n), Rational(row.back())};
}

HPolyhedron infeasible(std::size_t dim) {
  return HPolyhedron(dim, {LinearInequality(RatVector(dim), Rational(-1))});
}

RatVector drop_coordinate(const RatVector& v, std::size_t coord) {
  RatVector out(v.size() - 1);
  for (std::size_t i = 0, k = 0; i < v.size(); ++i)
    if (i != coord) out[k++] = v[i];
  return out;
}

// Direction of the normal as a primitive integer vector plus the constant
// rescaled by the same positive factor.
std::pair<IntegerVector, Rational> direction_key(const LinearInequality& c) {
  IntegerVector g = primitive_integer(c.normal.entries());
  std::size_t k = 0;
  while (g[k] == 0) ++k;
  Rational scale = c.normal[k] / Rational(g[k]);
  return {std::move(g), c.constant / scale};
}

Integer dot(const IntegerVector& a, const IntegerVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct Ray {
  IntegerVector v;
  Bits zeros;  // constraints processed so far that vanish on v
};

std::vector<IntegerVector> homogenized_rows(const std::vector<LinearInequality>& cs) {
  std::vector<IntegerVector> rows;
  rows.reserve(cs.size());
  for (const auto& c : cs) rows.push_back(to_integer_row(c));
  return rows;
}

}  // namespace

LinearInequality LinearInequality::from_ints(std::span<const Int> normal, Int constant) {
  return {RatVector::from_ints(normal), Rational(static_cast<long>(constant))};
}

Rational LinearInequality::value(const RatVector& x) const {
  if (x.size() != normal.size()) throw DimensionMismatch("constraint evaluated at a point of the wrong length");
  return dot(normal, x) + constant;
}

LinearInequality LinearInequality::canonical() const { return from_integer_row(to_integer_row(*this)); }

std::strong_ordering compare(const LinearInequality& a, const LinearInequality& b) {
  if (auto c = a.normal <=> b.normal; c != 0) return c;
  int c = cmp(a.constant, b.constant);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

HPolyhedron::HPolyhedron(std::size_t ambient_dim, std::vector<LinearInequality> inequalities,
                         std::vector<LinearInequality> equations)
    : dim_(ambient_dim), ineqs_(std::move(inequalities)), eqs_(std::move(equations)) {
  for (const auto& c : ineqs_)
    if (c.dim() != dim_) throw DimensionMismatch("inequality length differs from ambient dimension");
  for (const auto& c : eqs_)
    if (c.dim() != dim_) throw DimensionMismatch("equation length differs from ambient dimension");
}

bool HPolyhedron::is_homogeneous() const {
  for (const auto& c : ineqs_)
    if (c.constant != 0) return false;
  for (const auto& c : eqs_)
    if (c.constant != 0) return false;
  return true;
}

bool HPolyhedron::has_infeasibility_certificate() const {
  for (const auto& c : ineqs_)
    if (c.trivially_false()) return true;
  for (const auto& c : eqs_)
    if (c.is_trivial() && c.constant != 0) return true;
  return false;
}

HPolyhedron HPolyhedron::canonicalized() const {
  if (has_infeasibility_certificate()) return infeasible(dim_);

  std::map<IntegerVector, Rational> tightest;
  for (const auto& c : ineqs_) {
    if (c.is_trivial()) continue;
    auto [g, k] = direction_key(c);
    auto it = tightest.find(g);
    if (it == tightest.end())
      tightest.emplace(std::move(g), k);
    else if (k < it->second)
      it->second = k;
  }

  std::map<IntegerVector, Rational> eq_keys;
  for (const auto& c : eqs_) {
    if (c.is_trivial()) continue;
    auto [g, k] = direction_key(c);
    std::size_t first = 0;
    while (g[first] == 0) ++first;
    if (g[first] < 0) {
      for (auto& x : g) x = -x;
      k = -k;
    }
    auto [it, inserted] = eq_keys.emplace(std::move(g), k);
    if (!inserted && it->second != k) return infeasible(dim_);
  }

  auto emit = [](const IntegerVector& g, const Rational& k) {
    std::vector<Rational> all;
    all.reserve(g.size() + 1);
    for (const auto& x : g) all.emplace_back(x);
    all.push_back(k);
    return from_integer_row(primitive_integer(all));
  };
  std::vector<LinearInequality> ineqs, eqs;
  for (const auto& [g, k] : tightest) ineqs.push_back(emit(g, k));
  for (const auto& [g, k] : eq_keys) eqs.push_back(emit(g, k));
  auto less = [](const LinearInequality& a, const LinearInequality& b) { return compare(a, b) < 0; };
  std::sort(ineqs.begin(), ineqs.end(), less);
  std::sort(eqs.begin(), eqs.end(), less);
  return HPolyhedron(dim_, std::move(ineqs), std::move(eqs));
}

bool BoundingBox::bounded() const {
  if (!feasible) return true;
  for (const auto& r : ranges)
    if (!r.lower || !r.upper) return false;
  return true;
}

HPolyhedron fm_eliminate(const HPolyhedron& p, std::size_t coord) {
  const std::size_t dim = p.ambient_dim();
  if (coord >= dim) throw DimensionMismatch("fm_eliminate: coordinate out of range");
  HPolyhedron q = p.canonicalized();
  if (q.has_infeasibility_certificate()) return infeasible(dim - 1);

  std::vector<LinearInequality> ineqs = q.inequalities();
  std::vector<LinearInequality> eqs = q.equations();
  std::vector<LinearInequality> out_ineqs, out_eqs;

  auto pivot_it = std::find_if(eqs.begin(), eqs.end(), [&](const auto& e) { return e.normal[coord] != 0; });
  if (pivot_it != eqs.end()) {
    // Solve the equation for the coordinate and substitute.
    LinearInequality pivot = *pivot_it;
    eqs.erase(pivot_it);
    auto substitute = [&](LinearInequality c) {
      if (c.normal[coord] != 0) {
        Rational f = c.normal[coord] / pivot.normal[coord];
        c.normal -= pivot.normal * f;
        c.constant -= pivot.constant * f;
      }
      return c;
    };
    for (const auto& c : ineqs) out_ineqs.push_back(substitute(c));
    for (const auto& c : eqs) out_eqs.push_back(substitute(c));
  } else {
    std::vector<const LinearInequality*> pos, neg;
    for (const auto& c : ineqs) {
      int s = sgn(c.normal[coord]);
      if (s > 0)
        pos.push_back(&c);
      else if (s < 0)
        neg.push_back(&c);
      else
        out_ineqs.push_back(c);
    }
    for (const auto* a : pos)
      for (const auto* b : neg) {
        Rational fa = -b->normal[coord];
        Rational fb = a->normal[coord];
        out_ineqs.emplace_back(a->normal * fa + b->normal * fb, a->constant * fa + b->constant * fb);
      }
    out_eqs = eqs;
  }

  for (auto& c : out_ineqs) c.normal = drop_coordinate(c.normal, coord);
  for (auto& c : out_eqs) c.normal = drop_coordinate(c.normal, coord);
  return HPolyhedron(dim - 1, std::move(out_ineqs), std::move(out_eqs)).canonicalized();
}

ConeGenerators cone_generators(std::size_t dim, const std::vector<IntegerVector>& inequalities,
                               const std::vector<IntegerVector>& equations) {
  auto normalize_rows = [&](const std::vector<IntegerVector>& in) {
    std::vector<IntegerVector> out;
    for (auto r : in) {
      if (r.size() != dim) throw DimensionMismatch("cone constraint length differs from dimension");
      bool zero = std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
      if (zero) continue;
      make_primitive(r);
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  // Equations enter first as pairs of opposite inequalities, then the
  // inequalities in lexicographic order.
  std::vector<IntegerVector> rows;
  for (const auto& e : normalize_rows(equations)) {
    rows.push_back(e);
    IntegerVector neg = e;
    for (auto& x : neg) x = -x;
    rows.push_back(std::move(neg));
  }
  for (auto& r : normalize_rows(inequalities)) rows.push_back(std::move(r));

  const std::size_t total = rows.size();
  std::vector<IntegerVector> lineality;
  for (std::size_t i = 0; i < dim; ++i) {
    IntegerVector e(dim, 0);
    e[i] = 1;
    lineality.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < total; ++k) {
    const IntegerVector& a = rows[k];

    auto lin_it = std::find_if(lineality.begin(), lineality.end(), [&](const auto& l) { return dot(a, l) != 0; });
    if (lin_it != lineality.end()) {
      IntegerVector l0 = *lin_it;
      lineality.erase(lin_it);
      Integer s0 = dot(a, l0);
      if (s0 < 0) {
        for (auto& x : l0) x = -x;
        s0 = -s0;
      }
      auto reduce = [&](IntegerVector& v) {
        Integer s = dot(a, v);
        if (s == 0) return;
        for (std::size_t i = 0; i < dim; ++i) v[i] = s0 * v[i] - s * l0[i];
        make_primitive(v);
      };
      for (auto& l : lineality) reduce(l);
      for (auto& r : rays) {
        reduce(r.v);
        r.zeros.set(k);
      }
      Ray fresh{l0, Bits(total)};
      for (std::size_t j = 0; j < k; ++j) fresh.zeros.set(j);
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<Integer> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = dot(a, rays[i].v);
      if (s[i] > 0)
        pos.push_back(i);
      else if (s[i] < 0)
        neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (s[i] == 0) rays[i].zeros.set(k);
      continue;
    }

    const std::size_t needed = dim - lineality.size() >= 2 ? dim - lineality.size() - 2 : 0;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (s[i] > 0) next.push_back(rays[i]);
      if (s[i] == 0) {
        next.push_back(rays[i]);
        next.back().zeros.set(k);
      }
    }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        Bits common = rays[p].zeros & rays[q].zeros;
        if (common.count() < needed) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.subset_of(rays[r].zeros)) adjacent = false;
        if (!adjacent) continue;
        IntegerVector v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = s[p] * rays[q].v[i] - s[q] * rays[p].v[i];
        make_primitive(v);
        common.set(k);
        next.push_back(Ray{std::move(v), std::move(common)});
      }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lineality);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  std::sort(out.rays.begin(), out.rays.end());
  return out;
}

int rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int r = 0;
  for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(r);
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(r)]);
    const auto& pr = rows[static_cast<std::size_t>(r)];
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / pr[c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * pr[j];
    }
    ++r;
  }
  return r;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

int affine_dimension(const std::vector<RatVector>& points) {
  if (points.empty()) return -1;
  std::vector<std::vector<Rational>> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back((points[i] - points[0]).entries());
  return rank(std::move(diffs));
}

VPolytope dd_vertices(const HPolyhedron& p) {
  const std::size_t dim = p.ambient_dim();
  VPolytope out;
  out.ambient_dim = dim;
  HPolyhedron q = p.canonicalized();
  if (q.has_infeasibility_certificate()) return out;

  auto rows = homogenized_rows(q.inequalities());
  IntegerVector t_row(dim + 1, 0);
  t_row[dim] = 1;
  rows.push_back(std::move(t_row));
  auto gens = cone_generators(dim + 1, rows, homogenized_rows(q.equations()));

  bool recession = !gens.lineality.empty();
  for (const auto& r : gens.rays) {
    if (r[dim] == 0) {
      recession = true;
      continue;
    }
    RatVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = make_rational(r[i], r[dim]);
    out.vertices.push_back(std::move(v));
  }
  if (out.vertices.empty()) return out;
  if (recession) throw UnboundedInput("polyhedron has a recession direction");
  std::sort(out.vertices.begin(), out.vertices.end());
  out.dim = affine_dimension(out.vertices);
  return out;
}

std::vector<LinearInequality> facets(const VPolytope& v) {
  const std::size_t dim = v.ambient_dim;
  std::vector<IntegerVector> rows;
  for (const auto& x : v.vertices) {
    std::vector<Rational> r(x.entries());
    r.emplace_back(1);
    rows.push_back(primitive_integer(r));
  }
  auto gens = cone_generators(dim + 1, rows);
  std::vector<LinearInequality> out;
  for (const auto& r : gens.rays) out.push_back(from_integer_row(r));
  return out;
}

// Pulling triangulation: cone from the lexicographically smallest vertex over
// the recursively triangulated facets that avoid it.
Rational volume(const VPolytope& v) {
  const std::size_t dim = v.ambient_dim;
  if (v.vertices.empty() || v.dim < static_cast<int>(dim)) return 0;
  if (dim == 0) return 1;

  const auto fs = facets(v);
  const std::size_t nv = v.vertices.size();
  std::vector<std::vector<bool>> on_facet(fs.size(), std::vector<bool>(nv));
  for (std::size_t f = 0; f < fs.size(); ++f)
    for (std::size_t i = 0; i < nv; ++i) on_facet[f][i] = fs[f].value(v.vertices[i]) == 0;

  Rational total = 0;
  std::vector<std::size_t> apexes;
  std::function<void(const std::vector<std::size_t>&, int)> recurse = [&](const std::vector<std::size_t>& face,
                                                                          int k) {
    if (k == 0) {
      std::vector<std::size_t> simplex = apexes;
      simplex.push_back(face[0]);
      std::vector<std::vector<Rational>> m;
      for (std::size_t i = 1; i < simplex.size(); ++i)
        m.push_back((v.vertices[simplex[i]] - v.vertices[simplex[0]]).entries());
      total += abs(determinant(std::move(m)));
      return;
    }
    const std::size_t apex = face[0];
    apexes.push_back(apex);
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t f = 0; f < fs.size(); ++f) {
      if (on_facet[f][apex]) continue;
      std::vector<std::size_t> sub;
      for (std::size_t i : face)
        if (on_facet[f][i]) sub.push_back(i);
      if (static_cast<int>(sub.size()) < k || seen.count(sub)) continue;
      std::vector<RatVector> pts;
      for (std::size_t i : sub) pts.push_back(v.vertices[i]);
      if (affine_dimension(pts) != k - 1) continue;
      seen.insert(sub);
      recurse(sub, k - 1);
    }
    apexes.pop_back();
  };
  std::vector<std::size_t> all(nv);
  for (std::size_t i = 0; i < nv; ++i) all[i] = i;
  recurse(all, static_cast<int>(dim));

  Integer fact = 1;
  for (std::size_t i = 2; i <= dim; ++i) fact *= static_cast<unsigned long>(i);
  return total / Rational(fact);
}

BoundingBox bounding_box(const HPolyhedron& p) {
  const std::size_t dim = p.ambient_dim();
  BoundingBox box;
  HPolyhedron q = p.canonicalized();
  if (q.has_infeasibility_certificate()) {
    box.feasible = false;
    return box;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    HPolyhedron r = q;
    for (std::size_t j = dim; j-- > 0;)
      if (j != i) r = fm_eliminate(r, j);
    if (r.has_infeasibility_certificate()) {
      box = BoundingBox{false, {}};
      return box;
    }
    CoordinateRange range;
    auto raise_lower = [&](const Rational& x) {
      if (!range.lower || x > *range.lower) range.lower = x;
    };
    auto lower_upper = [&](const Rational& x) {
      if (!range.upper || x < *range.upper) range.upper = x;
    };
    for (const auto& c : r.inequalities()) {
      Rational bound = -c.constant / c.normal[0];
      if (c.normal[0] > 0)
        raise_lower(bound);
      else
        lower_upper(bound);
    }
    for (const auto& c : r.equations()) {
      Rational x = -c.constant / c.normal[0];
      raise_lower(x);
      lower_upper(x);
    }
    if (range.lower && range.upper && *range.lower > *range.upper) {
      box = BoundingBox{false, {}};
      return box;
    }
    box.ranges.push_back(std::move(range));
  }
  return box;
}

bool contains(const HPolyhedron& p, const RatVector& x) {
  if (x.size() != p.ambient_dim()) throw DimensionMismatch("contains: point length differs from ambient dimension");
  for (const auto& c : p.inequalities())
    if (c.value(x) < 0) return false;
  for (const auto& c : p.equations())
    if (c.value(x) != 0) return false;
  return true;
}

// Successive Fourier-Motzkin shadows give exact ranges for each coordinate
// given the previous ones, so the scan only visits the box slices that can
// still contain points; every candidate is re-checked against p itself.
std::vector<RatVector> lattice_points(const HPolyhedron& p) {
  const std::size_t dim = p.ambient_dim();
  HPolyhedron q = p.canonicalized();
  BoundingBox box = bounding_box(q);
  if (!box.feasible) return {};
  if (!box.bounded()) throw UnboundedInput("lattice_points: polyhedron is unbounded");
  if (dim == 0) return {RatVector()};

  std::vector<HPolyhedron> shadow(dim + 1, HPolyhedron(0));
  shadow[dim] = q;
  for (std::size_t k = dim; k-- > 1;) shadow[k] = fm_eliminate(shadow[k + 1], k);

  std::vector<RatVector> out;
  RatVector x(dim);
  std::function<void(std::size_t)> scan = [&](std::size_t k) {
    if (k == dim) {
      if (contains(q, x)) out.push_back(x);
      return;
    }
    const HPolyhedron& s = shadow[k + 1];
    std::optional<Integer> lo, hi;
    auto rest_of = [&](const LinearInequality& c) {
      Rational rest = c.constant;
      for (std::size_t i = 0; i < k; ++i) rest += c.normal[i] * x[i];
      return rest;
    };
    for (const auto& c : s.inequalities()) {
      const Rational& a = c.normal[k];
      Rational rest = rest_of(c);
      if (a == 0) {
        if (rest < 0) return;
        continue;
      }
      Rational bound = -rest / a;
      if (a > 0) {
        Integer b;
        mpz_cdiv_q(b.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
        if (!lo || b > *lo) lo = b;
      } else {
        Integer b;
        mpz_fdiv_q(b.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
        if (!hi || b < *hi) hi = b;
      }
    }
    for (const auto& c : s.equations()) {
      const Rational& a = c.normal[k];
      Rational rest = rest_of(c);
      if (a == 0) {
        if (rest != 0) return;
        continue;
      }
      Rational val = -rest / a;
      if (val.get_den() != 1) return;
      if (!lo || val.get_num() > *lo) lo = val.get_num();
      if (!hi || val.get_num() < *hi) hi = val.get_num();
    }
    if (!lo || !hi) throw UnboundedInput("lattice_points: unbounded slice");
    for (Integer t = *lo; t <= *hi; ++t) {
      x[k] = Rational(t);
      scan(k + 1);
    }
  };
  scan(0);
  return out;
}

bool is_feasible(const HPolyhedron& p) {
  const std::size_t dim = p.ambient_dim();
  HPolyhedron q = p.canonicalized();
  if (q.has_infeasibility_certificate()) return false;
  auto rows = homogenized_rows(q.inequalities());
  IntegerVector t_row(dim + 1, 0);
  t_row[dim] = 1;
  rows.push_back(std::move(t_row));
  auto gens = cone_generators(dim + 1, rows, homogenized_rows(q.equations()));
  return std::any_of(gens.rays.begin(), gens.rays.end(), [&](const auto& r) { return r[dim] > 0; });
}

namespace {

bool generators_satisfy(const ConeGenerators& g, const HPolyhedron& q) {
  auto eval = [](const LinearInequality& c, const IntegerVector& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += c.normal[i] * Rational(v[i]);
    return s;
  };
  for (const auto& r : g.rays) {
    for (const auto& c : q.inequalities())
      if (eval(c, r) < 0) return false;
    for (const auto& c : q.equations())
      if (eval(c, r) != 0) return false;
  }
  for (const auto& l : g.lineality) {
    for (const auto& c : q.inequalities())
      if (eval(c, l) != 0) return false;
    for (const auto& c : q.equations())
      if (eval(c, l) != 0) return false;
  }
  return true;
}

ConeGenerators generators_of_cone(const HPolyhedron& p) {
  std::vector<IntegerVector> ineqs, eqs;
  for (const auto& c : p.inequalities()) ineqs.push_back(primitive_integer(c.normal.entries()));
  for (const auto& c : p.equations()) eqs.push_back(primitive_integer(c.normal.entries()));
  return cone_generators(p.ambient_dim(), ineqs, eqs);
}

}  // namespace

bool poly_equal(const HPolyhedron& p, const HPolyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatch("poly_equal: ambient dimensions differ");
  BoundingBox bp = bounding_box(p), bq = bounding_box(q);
  if (bp.bounded() && bq.bounded()) {
    VPolytope vp = dd_vertices(p), vq = dd_vertices(q);
    if (vp.vertices.empty() || vq.vertices.empty()) return vp.vertices.empty() && vq.vertices.empty();
    for (const auto& x : vp.vertices)
      if (!contains(q, x)) return false;
    for (const auto& x : vq.vertices)
      if (!contains(p, x)) return false;
    return true;
  }
  if (!p.is_homogeneous() || !q.is_homogeneous())
    throw UnboundedInput("poly_equal: unbounded inputs must both be cones");
  return generators_satisfy(generators_of_cone(p), q) && generators_satisfy(generators_of_cone(q), p);
}

HPolyhedron scaled(const HPolyhedron& p, const Rational& k) {
  if (k <= 0) throw std::domain_error("scaled: factor must be positive");
  auto scale = [&](std::vector<LinearInequality> cs) {
    for (auto& c : cs) c.constant *= k;
    return cs;
  };
  return HPolyhedron(p.ambient_dim(), scale(p.inequalities()), scale(p.equations()));
}

HPolyhedron intersect(const HPolyhedron& p, const HPolyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatch("intersect: ambient dimensions differ");
  auto ineqs = p.inequalities();
  ineqs.insert(ineqs.end(), q.inequalities().begin(), q.inequalities().end());
  auto eqs = p.equations();
  eqs.insert(eqs.end(), q.equations().begin(), q.equations().end());
  return HPolyhedron(p.ambient_dim(), std::move(ineqs), std::move(eqs));
}

}  // namespace okb::geom
