#include <doctest.h>

#include <algorithm>

#include "okb/errors.hpp"
#include "okb/problem.hpp"
#include "okb/sections.hpp"

using namespace okb;

namespace {

FlagContext context_of(const cli::ProblemFile& p) {
  return derive_context(p.fan, select_flag(p.fan, p.tau), p.bundle);
}

const IsotypicalSummand* find(const std::vector<IsotypicalSummand>& v, const IntVector& u) {
  auto it = std::find_if(v.begin(), v.end(), [&](const auto& s) { return s.u == u; });
  return it == v.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("isotypical table of the tangent bundle twisted by O(1)") {
  auto ctx = context_of(cli::tangent_p2());
  const DivisorClass o1{{0}, 1};

  auto support = isotypical_support(ctx, o1);
  CHECK(support.size() == 10);
  auto summands = isotypical_decomposition(ctx, o1);
  CHECK(summands.size() == 7);

  auto s = isotypical_dim(ctx, o1, {0, 0});
  CHECK(s.alpha0 == 0);
  CHECK(s.alphas == IntVector{0, 0});
  CHECK(s.dim == 2);

  s = isotypical_dim(ctx, o1, {1, 0});
  CHECK(s.alpha0 == 1);
  CHECK(s.dim == 1);

  CHECK(isotypical_dim(ctx, o1, {-1, -1}).dim == 0);
  CHECK(find(summands, {-1, -1}) == nullptr);
  CHECK(h0(ctx, o1) == 8);
}

TEST_CASE("valuation vectors of the tangent bundle twisted by O(1)") {
  auto ctx = context_of(cli::tangent_p2());
  const DivisorClass o1{{0}, 1};
  auto all = valuation_set(ctx, o1);
  CHECK(all.size() == 8);
  for (const auto& x : all)
    for (Int xi : x) CHECK(xi >= 0);
  CHECK(std::is_sorted(all.begin(), all.end()));
  auto has = [&](const IntVector& x) { return std::binary_search(all.begin(), all.end(), x); };
  // u = (0,0) contributes these two, u = (0,1) the origin.
  CHECK(has({0, 1, 0}));
  CHECK(has({1, 0, 1}));
  CHECK(has({0, 0, 0}));
}

TEST_CASE("sections of trivial and twist-zero classes") {
  auto ctx = context_of(cli::tangent_p2());
  CHECK(isotypical_support(ctx, {{0}, 0}) == std::vector<IntVector>{{0, 0}});
  CHECK(h0(ctx, {{0}, 0}) == 1);
  CHECK(h0(ctx, {{0}, -1}) == 0);
  CHECK(valuation_set(ctx, {{3}, -2}).empty());
  CHECK_THROWS_AS(h0(ctx, {{0, 1}, 1}), DimensionMismatch);

  auto split = context_of(cli::split_p1(0, 0));
  for (Int m = 0; m <= 6; ++m) CHECK(h0(split, {{0}, m}) == m + 1);
}

TEST_CASE("twist-zero valuations are the negated base polytope") {
  for (auto p : {cli::tangent_p2(), cli::hirzebruch(2), cli::pn_sum(2), cli::split_p1(1, -1)}) {
    auto ctx = context_of(p);
    for (Int k = -1; k <= 3; ++k) {
      DivisorClass cls{IntVector(ctx.d - ctx.n, k), 0};
      IntVector m(ctx.d, 0);
      for (std::size_t pos = ctx.n; pos < ctx.d; ++pos) m[ctx.basis.ray_order[pos]] = k;

      std::vector<IntVector> expected;
      for (const auto& u : geom::lattice_points(base_polytope(p.fan, m))) {
        IntVector x(ctx.n + 1, 0);
        for (std::size_t i = 0; i < ctx.n; ++i) x[i] = -to_int(dot(u, RatVector::from_ints(p.fan.rays[ctx.basis.ray_order[i]])));
        expected.push_back(x);
      }
      std::sort(expected.begin(), expected.end());
      CHECK(valuation_set(ctx, cls) == expected);
    }
  }
}

TEST_CASE("support matches the base polytope for twist zero") {
  auto p = cli::tangent_p2();
  auto ctx = context_of(p);
  auto support = isotypical_support(ctx, {{2}, 0});
  auto lattice = geom::lattice_points(base_polytope(p.fan, IntVector{0, 0, 2}));
  CHECK(support.size() == lattice.size());
}
