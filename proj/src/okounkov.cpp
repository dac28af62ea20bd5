#include "okb/okounkov.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "okb/errors.hpp"
#include "okb/sections.hpp"

namespace okb {

std::string to_string(AdmissibleKind k) {
  switch (k) {
    case AdmissibleKind::ASingleton:
      return "A";
    case AdmissibleKind::BSingleton:
      return "B";
    case AdmissibleKind::CMulti:
      return "C";
  }
  return "?";
}

std::uint64_t c_family_count(const FlagContext& ctx) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t product = 1;
  for (const auto& family : ctx.C) {
    std::uint64_t f = family.size() + 1;
    if (product > kMax / f) return kMax;
    product *= f;
  }
  return product - 1;
}

std::vector<AdmissibleSet> admissible_sets(const FlagContext& ctx, std::uint64_t cap) {
  const std::uint64_t multis = c_family_count(ctx);
  if (multis > cap) throw CapExceeded(multis, cap);

  std::vector<AdmissibleSet> out;
  for (std::size_t j : ctx.A) out.push_back({AdmissibleKind::ASingleton, {j}});
  for (std::size_t j : ctx.B) out.push_back({AdmissibleKind::BSingleton, {j}});

  // Odometer over (skip, first ray, second ray, ...) per family, C_1 fastest.
  const std::size_t p = ctx.C.size();
  std::vector<std::size_t> choice(p, 0);
  while (true) {
    std::size_t h = 0;
    while (h < p && ++choice[h] > ctx.C[h].size()) choice[h++] = 0;
    if (h == p) break;
    AdmissibleSet s{AdmissibleKind::CMulti, {}};
    for (std::size_t g = 0; g < p; ++g)
      if (choice[g] > 0) s.rays.push_back(ctx.C[g][choice[g] - 1]);
    std::sort(s.rays.begin(), s.rays.end());
    out.push_back(std::move(s));
  }
  return out;
}

GammaRow gamma_coeffs(const FlagContext& ctx, std::size_t j) {
  const std::size_t n = ctx.n;
  GammaRow g;
  g.numer.assign(ctx.d + 2, 0);
  for (std::size_t i = 0; i < n; ++i) g.numer[i] = -ctx.rays[j][i];
  g.numer[n] = ctx.pairing(ctx.u1, j) - ctx.pairing(ctx.u2, j);
  if (j >= n) g.numer[n + 1 + (j - n)] = -1;
  g.numer[ctx.d + 1] = ctx.pairing(ctx.u2, j) - ctx.a[j];
  g.denom = ctx.b[j] - ctx.a[j];
  return g;
}

std::string describe(const Provenance& p) {
  switch (p.kind) {
    case ProvenanceKind::WAtLeastLast:
      return "w>=x_last";
    case ProvenanceKind::LastNonnegative:
      return "x_last>=0";
    case ProvenanceKind::Admissible: {
      std::string s = to_string(p.set->kind) + "{";
      for (std::size_t i = 0; i < p.set->rays.size(); ++i) s += (i ? "," : "") + std::to_string(p.set->rays[i]);
      return s + "}";
    }
  }
  return "?";
}

geom::HPolyhedron GlobalCone::cone() const {
  std::vector<geom::LinearInequality> ineqs;
  for (const auto& r : rows) ineqs.emplace_back(RatVector::from_ints(r), Rational(0));
  return geom::HPolyhedron(d + 2, std::move(ineqs));
}

std::vector<std::string> GlobalCone::coordinate_names() const {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n + 1; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t j = n + 1; j <= d; ++j) names.push_back("w" + std::to_string(j));
  names.push_back("w");
  return names;
}

namespace {

IntVector primitive(IntVector v) {
  Int g = 0;
  for (Int x : v) g = gcd_int(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

}  // namespace

GlobalCone global_cone(const FlagContext& ctx, std::uint64_t cap) {
  const std::size_t n = ctx.n;
  const std::size_t width = ctx.d + 2;
  GlobalCone gc;
  gc.n = n;
  gc.d = ctx.d;

  IntVector w_row(width, 0);
  w_row[ctx.d + 1] = 1;
  w_row[n] = -1;
  gc.rows.push_back(w_row);
  gc.provenance.push_back({ProvenanceKind::WAtLeastLast, std::nullopt});
  IntVector x_row(width, 0);
  x_row[n] = 1;
  gc.rows.push_back(x_row);
  gc.provenance.push_back({ProvenanceKind::LastNonnegative, std::nullopt});

  for (const auto& set : admissible_sets(ctx, cap)) {
    IntVector row(width, 0);
    if (set.kind == AdmissibleKind::CMulti) {
      // Σ_{j∈J} -γ_j∘ψ + w − x_{n+1} >= 0, scaled by the lcm of the denominators.
      Int l = 1;
      for (std::size_t j : set.rays) l = lcm_int(l, ctx.b[j] - ctx.a[j]);
      for (std::size_t j : set.rays) {
        GammaRow g = gamma_coeffs(ctx, j);
        Int f = l / g.denom;
        for (std::size_t k = 0; k < width; ++k) row[k] = checked_add(row[k], -checked_mul(f, g.numer[k]));
      }
      row[ctx.d + 1] = checked_add(row[ctx.d + 1], l);
      row[n] = checked_add(row[n], -l);
    } else {
      GammaRow g = gamma_coeffs(ctx, set.rays[0]);
      for (std::size_t k = 0; k < width; ++k) row[k] = -g.numer[k];
      if (set.kind == AdmissibleKind::BSingleton) row[n] = checked_add(row[n], g.denom);
    }
    gc.rows.push_back(primitive(std::move(row)));
    gc.provenance.push_back({ProvenanceKind::Admissible, set});
  }
  return gc;
}

GlobalCone prune_redundant(const GlobalCone& gc) {
  std::vector<bool> keep(gc.rows.size(), true);
  for (std::size_t i = 0; i < gc.rows.size(); ++i) {
    std::vector<IntegerVector> others;
    for (std::size_t k = 0; k < gc.rows.size(); ++k) {
      if (k == i || !keep[k]) continue;
      IntegerVector r;
      for (Int x : gc.rows[k]) r.emplace_back(static_cast<long>(x));
      others.push_back(std::move(r));
    }
    auto gens = geom::cone_generators(gc.d + 2, others);
    auto value = [&](const IntegerVector& v) {
      Integer s = 0;
      for (std::size_t k = 0; k < v.size(); ++k) s += v[k] * static_cast<long>(gc.rows[i][k]);
      return Integer(s);
    };
    bool implied = std::all_of(gens.rays.begin(), gens.rays.end(), [&](const auto& r) { return value(r) >= 0; }) &&
                   std::all_of(gens.lineality.begin(), gens.lineality.end(),
                               [&](const auto& l) { return value(l) == 0; });
    if (implied) keep[i] = false;
  }
  GlobalCone out;
  out.n = gc.n;
  out.d = gc.d;
  for (std::size_t i = 0; i < gc.rows.size(); ++i)
    if (keep[i]) {
      out.rows.push_back(gc.rows[i]);
      out.provenance.push_back(gc.provenance[i]);
    }
  return out;
}

OkounkovBody fiber_body(const GlobalCone& gc, const DivisorClass& cls, BodyOptions options) {
  if (cls.coeffs.size() != gc.d - gc.n)
    throw DimensionMismatch("class has " + std::to_string(cls.coeffs.size()) + " coefficients, expected " +
                            std::to_string(gc.d - gc.n));
  const std::size_t n1 = gc.n + 1;
  std::vector<geom::LinearInequality> ineqs;
  for (const auto& row : gc.rows) {
    RatVector normal(n1);
    for (std::size_t i = 0; i < n1; ++i) normal[i] = static_cast<long>(row[i]);
    Int constant = checked_mul(row[gc.d + 1], cls.twist);
    for (std::size_t k = 0; k < cls.coeffs.size(); ++k)
      constant = checked_add(constant, checked_mul(row[n1 + k], cls.coeffs[k]));
    ineqs.emplace_back(std::move(normal), Rational(static_cast<long>(constant)));
  }
  OkounkovBody out;
  out.cls = cls;
  out.body = geom::HPolyhedron(n1, std::move(ineqs)).canonicalized();
  if (options.vertices || options.volume) out.verts = geom::dd_vertices(out.body);
  if (options.volume) out.vol = geom::volume(*out.verts);
  return out;
}

Rational vol_of_class(const GlobalCone& gc, const DivisorClass& cls) {
  auto body = fiber_body(gc, cls, {.vertices = true, .volume = true});
  Integer fact = 1;
  for (std::size_t i = 2; i <= gc.n + 1; ++i) fact *= static_cast<unsigned long>(i);
  return *body.vol * Rational(fact);
}

bool is_big(const GlobalCone& gc, const DivisorClass& cls) {
  auto body = fiber_body(gc, cls, {.vertices = true});
  return body.verts->dim == static_cast<int>(gc.n + 1);
}

OracleOutputs run_oracle(const FlagContext& ctx, const DivisorClass& cls) {
  return {valuation_set(ctx, cls), h0(ctx, cls)};
}

CheckReport check_against_oracle(const GlobalCone& gc, const FlagContext& ctx, const DivisorClass& cls,
                                 const OracleOutputs& oracle) {
  constexpr std::size_t kWitnesses = 10;
  CheckReport r;
  r.h0 = oracle.h0;
  r.valuation_count = oracle.valuations.size();
  auto body = fiber_body(gc, cls).body;

  for (const auto& v : oracle.valuations)
    if (!geom::contains(body, RatVector::from_ints(v))) {
      r.containment = false;
      if (r.outside_body.size() < kWitnesses) r.outside_body.push_back(v);
    }
  r.cardinality = static_cast<Int>(oracle.valuations.size()) == oracle.h0;

  r.level_c_applicable = cls.twist % ctx.c == 0;
  for (Int m : cls.coeffs) r.level_c_applicable = r.level_c_applicable && m % ctx.c == 0;

  std::set<IntVector> lattice;
  for (const auto& p : geom::lattice_points(body)) lattice.insert(p.to_ints());
  r.lattice_count = lattice.size();
  if (!r.level_c_applicable) return r;

  auto on_sublattice = [&](const IntVector& x) {
    return std::all_of(x.begin(), x.end(), [&](Int v) { return v % ctx.c == 0; });
  };
  std::set<IntVector> vals;
  for (const auto& v : oracle.valuations)
    if (on_sublattice(v)) vals.insert(v);
  for (const auto& p : lattice)
    if (on_sublattice(p) && !vals.count(p)) {
      r.level_c_equality = false;
      if (r.unmatched_lattice.size() < kWitnesses) r.unmatched_lattice.push_back(p);
    }
  for (const auto& v : vals)
    if (!lattice.count(v)) {
      r.level_c_equality = false;
      if (r.unmatched_valuation.size() < kWitnesses) r.unmatched_valuation.push_back(v);
    }
  return r;
}

Bundle2 split_bundle(const Fan& f, std::span<const Int> h1, std::span<const Int> h2) {
  if (h1.size() != f.rays.size() || h2.size() != f.rays.size())
    throw DimensionMismatch("split data needs one value per ray");
  Bundle2 e;
  for (std::size_t j = 0; j < f.rays.size(); ++j) {
    const Int p = -h1[j], q = -h2[j];
    RayFiltration fl;
    fl.a = std::min(p, q);
    if (p > q) fl.jump = Jump{p, ProjLine(1, 0)};
    if (q > p) fl.jump = Jump{q, ProjLine(0, 1)};
    e.filtrations.push_back(fl);
  }
  return e;
}

geom::HPolyhedron split_model_body(const Fan& f, const FlagBasis& basis, std::span<const Int> h1_in,
                                   std::span<const Int> h2_in, const DivisorClass& cls) {
  const std::size_t n = f.dim, d = f.rays.size();
  if (h1_in.size() != d || h2_in.size() != d) throw DimensionMismatch("split data needs one value per ray");
  if (cls.coeffs.size() != d - n) throw DimensionMismatch("class length does not match the fan");

  IntVector h1(h1_in.begin(), h1_in.end()), h2(h2_in.begin(), h2_in.end());
  // Characters of the two summands on τ, in dual-basis coordinates.
  auto character = [&](const IntVector& h) {
    IntVector u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = -h[basis.ray_order[i]];
    return u;
  };
  IntVector u1 = character(h1), u2 = character(h2);
  if (u1 < u2) {
    std::swap(h1, h2);
    std::swap(u1, u2);
  }

  const Int m = cls.twist;
  std::vector<geom::LinearInequality> ineqs;
  RatVector last(n + 1);
  last[n] = 1;
  ineqs.emplace_back(last, Rational(0));
  ineqs.emplace_back(last * -1, Rational(static_cast<long>(m)));
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t j = basis.ray_order[k];
    IntVector coords(n);
    for (std::size_t i = 0; i < n; ++i) coords[i] = dot(basis.dual[i], f.rays[j]);
    const Int mj = k < n ? 0 : cls.coeffs[k - n];
    RatVector normal(n + 1);
    for (std::size_t i = 0; i < n; ++i) normal[i] = static_cast<long>(coords[i]);
    normal[n] = static_cast<long>(h2[j] - h1[j] + dot(u2, coords) - dot(u1, coords));
    Int constant = -checked_mul(m, h2[j]) - checked_mul(m, dot(u2, coords)) + mj;
    ineqs.emplace_back(std::move(normal), Rational(static_cast<long>(constant)));
  }
  return geom::HPolyhedron(n + 1, std::move(ineqs));
}

namespace {

// Exact k-th root of a nonnegative rational, if it exists.
std::optional<Rational> rational_root(const Rational& q, unsigned k) {
  Integer num, den;
  if (!mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), k)) return std::nullopt;
  return make_rational(num, den);
}

Rational power(const Rational& q, unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= q;
  return r;
}

Integer power(const Integer& z, unsigned k) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), z.get_mpz_t(), k);
  return r;
}

// floor((q · 2^{k·p})^{1/k}); the true root of q·2^{kp} lies in [r, r+1).
Integer scaled_root_floor(const Rational& q, unsigned k, unsigned long p) {
  Integer scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), k * p);
  Integer floor_q;
  mpz_fdiv_q(floor_q.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  Integer r;
  mpz_root(r.get_mpz_t(), floor_q.get_mpz_t(), k);
  return r;
}

}  // namespace

LogConcavity compare_log_concave(const Rational& vol1, const Rational& vol2, const Rational& vol_sum, unsigned k) {
  if (vol1 < 0 || vol2 < 0 || vol_sum < 0 || k == 0) throw std::domain_error("volumes must be nonnegative");
  if (vol1 == 0) return vol_sum >= vol2 ? LogConcavity::Holds : LogConcavity::Violated;
  if (vol2 == 0) return vol_sum >= vol1 ? LogConcavity::Holds : LogConcavity::Violated;

  // vol2 = t^k vol1 with t rational: compare vol_sum with (1 + t)^k vol1.
  if (auto t = rational_root(vol2 / vol1, k))
    return vol_sum >= power(Rational(1 + *t), k) * vol1 ? LogConcavity::Holds : LogConcavity::Violated;

  for (unsigned long p = 32; p <= 2048; p *= 2) {
    Integer a = scaled_root_floor(vol1, k, p), b = scaled_root_floor(vol2, k, p);
    Integer s_num = vol_sum.get_num();
    mpz_mul_2exp(s_num.get_mpz_t(), s_num.get_mpz_t(), k * p);
    Rational s_scaled = make_rational(s_num, vol_sum.get_den());
    if (s_scaled >= Rational(power(Integer(a + b + 2), k))) return LogConcavity::Holds;
    if (s_scaled < Rational(power(Integer(a + b), k))) return LogConcavity::Violated;
  }
  return LogConcavity::Undecided;
}

}  // namespace okb
