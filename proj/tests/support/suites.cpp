#include "suites.hpp"

#include <algorithm>
#include <set>

#include "okb/errors.hpp"
#include "okb/sections.hpp"

namespace okb::testing {

namespace {

const std::vector<ProjLine>& line_pool() {
  static const std::vector<ProjLine> pool{ProjLine(1, 0), ProjLine(0, 1), ProjLine(1, 1), ProjLine(1, -1),
                                          ProjLine(1, 2), ProjLine(2, 1)};
  return pool;
}

Int uniform(std::mt19937_64& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

std::string describe(const Instance& in, const DivisorClass& cls) { return in.label + " class " + to_string(cls); }

std::vector<RatVector> vertices_of(const geom::HPolyhedron& p) { return geom::dd_vertices(p).vertices; }

Fan two_dim_fan(std::vector<IntVector> rays) {
  Fan f;
  f.dim = 2;
  f.rays = std::move(rays);
  for (std::size_t i = 0; i < f.rays.size(); ++i) f.max_cones.push_back({i, (i + 1) % f.rays.size()});
  return f;
}

}  // namespace

Instance make_instance(std::string label, const Fan& f, const Bundle2& e, ContextOptions options) {
  Instance in;
  in.label = std::move(label);
  in.fan = f;
  in.bundle = e;
  in.basis = select_flag(f);
  in.ctx = derive_context(f, in.basis, e, options);
  in.gc = global_cone(in.ctx);
  return in;
}

Instance make_instance(const cli::ProblemFile& p) { return make_instance(p.name, p.fan, p.bundle); }

std::vector<Fan> surface_fans() {
  return {two_dim_fan({{1, 0}, {0, 1}, {-1, -1}}), two_dim_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}),
          two_dim_fan({{1, 0}, {0, 1}, {-1, 1}, {0, -1}}), two_dim_fan({{1, 0}, {0, 1}, {-1, 2}, {0, -1}})};
}

Fan product_p1_cubed() {
  Fan f;
  f.dim = 3;
  f.rays = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  for (std::size_t x : {0, 3})
    for (std::size_t y : {1, 4})
      for (std::size_t z : {2, 5}) f.max_cones.push_back({x, y, z});
  return f;
}

Bundle2 random_bundle(const Fan& f, std::mt19937_64& rng, bool tau_jumps) {
  const auto basis = select_flag(f);
  std::set<std::size_t> tau(basis.ray_order.begin(), basis.ray_order.begin() + static_cast<long>(f.dim));
  Bundle2 e;
  for (std::size_t j = 0; j < f.rays.size(); ++j) {
    RayFiltration fl;
    fl.a = uniform(rng, -1, 1);
    const bool jump = (tau_jumps || !tau.count(j)) && uniform(rng, 0, 3) > 0;
    if (jump) {
      const auto& pool = line_pool();
      fl.jump = Jump{fl.a + uniform(rng, 1, 2), pool[static_cast<std::size_t>(uniform(rng, 0, pool.size() - 1))]};
    }
    e.filtrations.push_back(fl);
  }
  return e;
}

Instance random_instance(std::mt19937_64& rng) {
  static const auto fans = surface_fans();
  const auto& f = fans[static_cast<std::size_t>(uniform(rng, 0, fans.size() - 1))];
  auto e = random_bundle(f, rng);
  return make_instance("random bundle on a surface with " + std::to_string(f.rays.size()) + " rays", f, e);
}

DivisorClass random_class(const FlagContext& ctx, std::mt19937_64& rng, Int twist_lo, Int twist_hi, Int coeff_lo,
                          Int coeff_hi) {
  DivisorClass cls;
  cls.twist = uniform(rng, twist_lo, twist_hi);
  for (std::size_t k = ctx.n; k < ctx.d; ++k) cls.coeffs.push_back(uniform(rng, coeff_lo, coeff_hi));
  return cls;
}

SuiteResult valuation_superadditivity(std::uint64_t seed, int count) {
  SuiteResult r{"valuation superadditivity"};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < count; ++t) {
    auto in = random_instance(rng);
    auto c1 = random_class(in.ctx, rng, 0, 2, -1, 1);
    auto c2 = random_class(in.ctx, rng, 0, 2, -1, 1);
    auto v1 = valuation_set(in.ctx, c1), v2 = valuation_set(in.ctx, c2);
    auto v12 = valuation_set(in.ctx, c1 + c2);
    ++r.instances;
    bool ok = true;
    for (const auto& x : v1) {
      for (const auto& y : v2) {
        IntVector s(x.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = x[i] + y[i];
        if (!std::binary_search(v12.begin(), v12.end(), s)) ok = false;
      }
    }
    if (!ok) r.fail(describe(in, c1) + " + " + to_string(c2));
  }
  return r;
}

SuiteResult fiber_homogeneity(std::uint64_t seed, int count) {
  SuiteResult r{"fiber homogeneity k = 1..4"};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < count; ++t) {
    auto in = random_instance(rng);
    auto cls = random_class(in.ctx, rng, 0, 3, -2, 2);
    auto base = fiber_body(in.gc, cls).body;
    ++r.instances;
    for (Int k = 1; k <= 4; ++k) {
      if (!geom::poly_equal(fiber_body(in.gc, k * cls).body, geom::scaled(base, k))) {
        r.fail(describe(in, cls) + " at k = " + std::to_string(k));
        break;
      }
    }
  }
  return r;
}

SuiteResult minkowski_additivity(std::uint64_t seed, int count) {
  SuiteResult r{"Minkowski additivity"};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < count; ++t) {
    auto in = random_instance(rng);
    auto c1 = random_class(in.ctx, rng, 0, 3, -1, 2);
    auto c2 = random_class(in.ctx, rng, 0, 3, -1, 2);
    auto p = vertices_of(fiber_body(in.gc, c1).body);
    auto q = vertices_of(fiber_body(in.gc, c2).body);
    auto sum = fiber_body(in.gc, c1 + c2).body;
    ++r.instances;
    bool ok = true;
    for (const auto& x : p)
      for (const auto& y : q)
        if (!geom::contains(sum, x + y)) ok = false;
    if (!ok) r.fail(describe(in, c1) + " + " + to_string(c2));
  }
  return r;
}

SuiteResult line_change_of_basis(std::uint64_t seed, int count) {
  SuiteResult r{"line change of basis"};
  const std::vector<std::array<Int, 4>> moves{{1, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 1}, {2, 1, 1, 1}, {1, 0, 0, -1}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < count; ++t) {
    auto in = random_instance(rng);
    const auto& g = moves[static_cast<std::size_t>(uniform(rng, 0, moves.size() - 1))];
    Bundle2 moved = in.bundle;
    for (auto& fl : moved.filtrations)
      if (fl.jump) {
        const Int l = fl.jump->line.lambda(), m = fl.jump->line.mu();
        fl.jump->line = ProjLine(g[0] * l + g[1] * m, g[2] * l + g[3] * m);
      }
    auto out = make_instance(in.label, in.fan, moved);
    auto cls = random_class(in.ctx, rng, 0, 3, -1, 2);
    ++r.instances;

    const bool determined = in.ctx.u1 != in.ctx.u2;
    bool ok = in.ctx.A == out.ctx.A && in.ctx.c == out.ctx.c;
    ok = ok && h0(in.ctx, cls) == h0(out.ctx, cls);
    ok = ok && valuation_set(in.ctx, cls).size() == valuation_set(out.ctx, cls).size();
    if (determined) {
      ok = ok && in.ctx.B == out.ctx.B && in.ctx.C == out.ctx.C;
      ok = ok && valuation_set(in.ctx, cls) == valuation_set(out.ctx, cls);
      ok = ok && geom::poly_equal(fiber_body(in.gc, cls).body, fiber_body(out.gc, cls).body);
    } else {
      ok = ok && vol_of_class(in.gc, cls) == vol_of_class(out.gc, cls);
    }
    if (!ok) r.fail(describe(in, cls) + (determined ? "" : " (u1 = u2)"));
  }
  return r;
}

SuiteResult e1_convention_swap(std::uint64_t seed, int count) {
  SuiteResult r{"E1 convention swap with u1 = u2"};
  static const auto fans = surface_fans();
  std::mt19937_64 rng(seed);
  ContextOptions alt;
  alt.degenerate_e1 = ProjLine(0, 1);
  for (int t = 0; t < count; ++t) {
    const auto& f = fans[static_cast<std::size_t>(uniform(rng, 0, fans.size() - 1))];
    auto e = random_bundle(f, rng, false);
    auto a = make_instance("degenerate bundle", f, e);
    auto b = make_instance("degenerate bundle", f, e, alt);
    auto cls = random_class(a.ctx, rng, 0, 3, -1, 2);
    ++r.instances;
    bool ok = a.ctx.u1 == a.ctx.u2 && vol_of_class(a.gc, cls) == vol_of_class(b.gc, cls);
    ok = ok && h0(a.ctx, cls) == h0(b.ctx, cls);
    ok = ok && valuation_set(a.ctx, cls).size() == valuation_set(b.ctx, cls).size();
    if (!ok) r.fail(describe(a, cls));
  }
  return r;
}

SuiteResult three_line_rejection(std::uint64_t seed, int count) {
  SuiteResult r{"three-line compatibility rejection"};
  const std::vector<Fan> fans{cli::projective_space_fan(3), product_p1_cubed()};
  std::mt19937_64 rng(seed);
  const auto& pool = line_pool();
  for (int t = 0; t < count; ++t) {
    const auto& f = fans[static_cast<std::size_t>(t % 2)];
    const std::size_t cone = static_cast<std::size_t>(uniform(rng, 0, f.max_cones.size() - 1));
    std::vector<ProjLine> lines = pool;
    std::shuffle(lines.begin(), lines.end(), rng);
    Bundle2 e;
    for (std::size_t j = 0; j < f.rays.size(); ++j) {
      RayFiltration fl;
      fl.a = uniform(rng, -1, 1);
      if (uniform(rng, 0, 1)) fl.jump = Jump{fl.a + 1, pool[static_cast<std::size_t>(uniform(rng, 0, pool.size() - 1))]};
      e.filtrations.push_back(fl);
    }
    for (std::size_t k = 0; k < 3; ++k) {
      auto& fl = e.filtrations[f.max_cones[cone][k]];
      fl.jump = Jump{fl.a + uniform(rng, 1, 2), lines[k]};
    }
    ++r.instances;
    auto report = check_compatibility(f, e);
    auto bad = report.offending_cones("compatibility");
    bool ok = std::find(bad.begin(), bad.end(), cone) != bad.end();
    try {
      derive_context(f, select_flag(f), e);
      ok = false;
    } catch (const IncompatibleData&) {
    }
    if (!ok) r.fail("cone " + std::to_string(cone) + " of a " + std::to_string(f.rays.size()) + "-ray fan");
  }
  return r;
}

SuiteResult oracle_agreement(std::uint64_t seed, int count) {
  SuiteResult r{"oracle agreement on random bundles"};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < count; ++t) {
    auto in = random_instance(rng);
    auto cls = random_class(in.ctx, rng, 0, 3, -1, 2);
    auto report = check_against_oracle(in.gc, in.ctx, cls, run_oracle(in.ctx, cls));
    ++r.instances;
    if (!report.passed()) r.fail(describe(in, cls));
  }
  return r;
}

}  // namespace okb::testing
