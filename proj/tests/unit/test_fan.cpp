#include <doctest.h>

#include <random>

#include "okb/errors.hpp"
#include "okb/fan.hpp"
#include "okb/problem.hpp"

using namespace okb;

namespace {

Fan p2() {
  Fan f;
  f.dim = 2;
  f.rays = {{1, 0}, {0, 1}, {-1, -1}};
  f.max_cones = {{1, 2}, {2, 0}, {0, 1}};
  return f;
}

Fan p1xp1() {
  Fan f;
  f.dim = 2;
  f.rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return f;
}

std::size_t count_lattice(const geom::HPolyhedron& p) { return geom::lattice_points(p).size(); }

}  // namespace

TEST_CASE("validate_fan: P2 is smooth and complete") {
  auto r = validate_fan(p2());
  CHECK(r.ok());
  CHECK_FALSE(r.projective.has_value());
}

TEST_CASE("validate_fan: a determinant-2 cone fails smoothness and is named") {
  Fan f = p2();
  f.rays[2] = {-2, -1};
  auto r = validate_fan(f);
  CHECK(r.failed("smoothness"));
  auto bad = r.offending_cones("smoothness");
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == 0);
}

TEST_CASE("validate_fan: a missing maximal cone fails completeness") {
  Fan f = p2();
  f.max_cones.pop_back();
  auto r = validate_fan(f);
  CHECK(r.failed("completeness"));
  CHECK_FALSE(r.failed("smoothness"));
}

TEST_CASE("validate_fan: structural problems") {
  Fan f = p2();
  f.rays[1] = {0, 2};
  CHECK(validate_fan(f).failed("structure"));
  f = p2();
  f.rays.push_back({1, 0});
  CHECK(validate_fan(f).failed("structure"));
  f = p2();
  f.max_cones[0] = {1, 7};
  CHECK(validate_fan(f).failed("structure"));
  f = p2();
  f.max_cones[0] = {1};
  CHECK(validate_fan(f).failed("structure"));
}

TEST_CASE("validate_fan: overlapping cones are not a fan") {
  Fan f = p1xp1();
  f.rays.push_back({1, 1});
  f.max_cones.push_back({0, 4});
  f.max_cones.push_back({4, 1});
  CHECK(validate_fan(f).failed("completeness"));
}

TEST_CASE("validate_fan: projectivity when requested") {
  auto r = validate_fan(p2(), {.check_projectivity = true});
  CHECK(r.ok());
  REQUIRE(r.projective.has_value());
  CHECK(*r.projective);
  CHECK(validate_fan(p1xp1(), {.check_projectivity = true}).ok());
  CHECK(validate_fan(cli::projective_space_fan(3), {.check_projectivity = true}).ok());
}

TEST_CASE("select_flag on P2") {
  auto b = select_flag(p2(), 2);
  CHECK(b.ray_order == std::vector<std::size_t>{0, 1, 2});
  CHECK(b.dual == std::vector<IntVector>{{1, 0}, {0, 1}});

  auto d = select_flag(p2());
  CHECK(d.tau == 2);
  CHECK(d.ray_order == std::vector<std::size_t>{0, 1, 2});

  auto other = select_flag(p2(), 0);
  CHECK(other.ray_order == std::vector<std::size_t>{1, 2, 0});
  CHECK(other.position_of(0) == 2);
  CHECK_THROWS_AS(select_flag(p2(), 3), InvalidCone);
}

TEST_CASE("select_flag: dual times ray matrix is the identity") {
  for (const Fan& f : {p2(), p1xp1(), cli::projective_space_fan(3), cli::projective_space_fan(4)}) {
    for (std::size_t tau = 0; tau < f.max_cones.size(); ++tau) {
      auto b = select_flag(f, tau);
      for (std::size_t i = 0; i < f.dim; ++i)
        for (std::size_t j = 0; j < f.dim; ++j)
          CHECK(dot(b.dual[i], f.rays[b.ray_order[j]]) == (i == j ? 1 : 0));
    }
  }
  auto b = select_flag(p1xp1(), 0);
  CHECK(b.dual == std::vector<IntVector>{{1, 0}, {0, 1}});
}

TEST_CASE("normalize_class") {
  const Fan f = p2();
  const auto b = select_flag(f, 2);
  CHECK(normalize_class(f, b, IntVector{0, 0, 5}, 2) == DivisorClass{{5}, 2});
  CHECK(normalize_class(f, b, IntVector{1, 0, 0}, 0) == DivisorClass{{1}, 0});
  CHECK(normalize_class(f, b, IntVector{2, 0, 0}, 0) == DivisorClass{{2}, 0});

  // Adding div(χ^u) never changes the class.
  const Fan g = p1xp1();
  const auto bg = select_flag(g, 1);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Int> coef(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    IntVector m(4), u(2);
    for (auto& x : m) x = coef(rng);
    for (auto& x : u) x = coef(rng);
    IntVector shifted = m;
    for (std::size_t j = 0; j < 4; ++j) shifted[j] += dot(u, g.rays[j]);
    CHECK(normalize_class(g, bg, m, 1) == normalize_class(g, bg, shifted, 1));
  }
}

TEST_CASE("base_polytope lattice counts on P2") {
  const Fan f = p2();
  CHECK(count_lattice(base_polytope(f, IntVector{0, 0, 1})) == 3);
  CHECK(count_lattice(base_polytope(f, IntVector{0, 0, 0})) == 1);
  CHECK(count_lattice(base_polytope(f, IntVector{1, 1, 1})) == 10);
}

TEST_CASE("base_polytope: Minkowski sums of lattice points stay inside") {
  const Fan f = p1xp1();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> coef(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    IntVector m1(4), m2(4), sum(4);
    for (std::size_t j = 0; j < 4; ++j) {
      m1[j] = coef(rng);
      m2[j] = coef(rng);
      sum[j] = m1[j] + m2[j];
    }
    auto big = base_polytope(f, sum);
    auto p = geom::lattice_points(base_polytope(f, m1));
    auto q = geom::lattice_points(base_polytope(f, m2));
    for (const auto& x : p)
      for (const auto& y : q) CHECK(geom::contains(big, x + y));
  }
}

TEST_CASE("DivisorClass arithmetic and printing") {
  DivisorClass a{{1, -2}, 3}, b{{0, 1}, 1};
  CHECK(a + b == DivisorClass{{1, -1}, 4});
  CHECK(2 * a == DivisorClass{{2, -4}, 6});
  CHECK(to_string(a) == "1,-2;3");
  CHECK(to_string(DivisorClass{{}, 2}) == ";2");
}

TEST_CASE("determinant and unimodular inverse") {
  CHECK(determinant({{0, 1}, {-2, -1}}) == 2);
  CHECK(unimodular_inverse({{1, 0}, {-1, -1}}) == std::vector<IntVector>{{1, 0}, {-1, -1}});
  CHECK_THROWS_AS(unimodular_inverse({{2, 0}, {0, 1}}), InvalidCone);
}
