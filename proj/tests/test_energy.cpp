#include <doctest.h>

#include <cmath>

#include "prh/energy.hpp"
#include "prh/potential.hpp"
#include "test_rng.hpp"

using namespace prh;
using namespace prh::testing;

namespace {
double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}
}  // namespace

TEST_CASE("make_potential: derived classification") {
  SUBCASE("single quadratic well at the origin") {
    const auto spec = make_potential({{0, 0, 0}}, {2.0});
    CHECK(spec.max_exponent == 2.0);
    CHECK(spec.flatness[0] == 1.0);  // empty product
    CHECK(spec.kappa == 1.0);
    CHECK(spec.flattest == std::vector<int>{0});
    CHECK(potential_value(spec, {1, 0, 0}) == doctest::Approx(1.0));
  }
  SUBCASE("two linear wells") {
    const auto spec = make_potential({{0, 0, 0}, {2, 0, 0}}, {1.0, 1.0});
    CHECK(potential_value(spec, {1, 0, 0}) == doctest::Approx(1.0));
    CHECK(spec.flatness[0] == doctest::Approx(2.0));
    CHECK(spec.flatness[1] == doctest::Approx(2.0));
    CHECK(spec.kappa == doctest::Approx(2.0));
    CHECK(spec.flattest.size() == 2);
  }
  SUBCASE("shallower well gets infinite flatness coefficient") {
    const auto spec = make_potential({{0, 0, 0}, {2, 0, 0}}, {2.0, 1.0});
    CHECK(spec.max_exponent == 2.0);
    CHECK(std::isinf(spec.flatness[1]));
    CHECK(spec.flatness[0] == doctest::Approx(2.0));  // |x0-x1|^{p1} = 2
    CHECK(spec.flattest == std::vector<int>{0});
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(make_potential({{0, 0, 0}, {0, 0, 0}}, {1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_potential({{0, 0, 0}}, {0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_potential({}, {}), std::invalid_argument);
  }
}

TEST_CASE("potential_eval: sampling and margins") {
  const Grid g = make_grid(16, 4.0);
  const auto spec = make_potential({{0, 0, 0}}, {2.0});
  const Field V = potential_eval(spec, g);
  CHECK(V(g.n / 2, g.n / 2, g.n / 2) == 0.0);  // on-grid trap point
  // at (1, 0, 0): |x|^2 = 1
  const int i1 = g.n / 2 + static_cast<int>(1.0 / g.spacing());
  CHECK(V(i1, g.n / 2, g.n / 2) == doctest::Approx(1.0));
  CHECK(min_value(V) >= 0);

  const auto outside = make_potential({{3.5, 0, 0}}, {2.0});
  CHECK_THROWS_AS(potential_eval(outside, g), std::invalid_argument);
}

TEST_CASE("hartree_term: homogeneity and zero state") {
  const Grid g = make_grid(16, 5.0);
  Field zero(g);
  CHECK(hartree_term(zero) == 0.0);

  Field u = random_smooth_field(g, 101);
  const double base = hartree_term(u);
  CHECK(base > 0);
  for (double& v : u.values) v *= 2.0;
  CHECK(rel_err(hartree_term(u), 16.0 * base) <= 1e-12);
}

TEST_CASE("total_energy: linear case, constant state, mass guard") {
  const Grid g = make_grid(16, 4.0);
  const auto spec = make_potential({{0, 0, 0}}, {2.0});

  Field u = random_smooth_field(g, 103, /*sign_mixed=*/false);
  normalize(u);
  const auto b0 = total_energy(u, 0.0, 1.0, spec);
  CHECK(b0.total == b0.kinetic + b0.potential);
  CHECK(b0.kinetic >= 0);
  CHECK(b0.potential >= 0);
  CHECK(b0.hartree >= 0);

  // constant normalized state in the box: kinetic = |m|, potential = mean V
  Field c(g);
  for (double& v : c.values) v = 1.0;
  normalize(c);
  const auto bc = total_energy(c, 0.0, 1.0, spec);
  double mean_v = 0;
  const Field V = potential_eval(spec, g);
  for (double v : V.values) mean_v += v;
  mean_v /= static_cast<double>(V.values.size());
  CHECK(rel_err(bc.total, 1.0 + mean_v) <= 1e-10);

  // total recomputes from parts
  const auto ba = total_energy(u, 1.3, 0.5, spec);
  CHECK(rel_err(ba.total,
                ba.kinetic + ba.potential - 0.65 * ba.hartree) <= 1e-12);

  Field bad = u;
  for (double& v : bad.values) v *= 1.1;
  CHECK_THROWS_AS(total_energy(bad, 0.0, 1.0, spec), std::invalid_argument);
  CHECK_NOTHROW(total_energy(bad, 0.0, 1.0, spec, /*constrained=*/false));
}

TEST_CASE("weinstein: scale invariance and zero rejection") {
  const Grid g = make_grid(16, 5.0);
  Field u = random_smooth_field(g, 107);
  const double base = weinstein(u);
  CHECK(base > 0);
  for (double& v : u.values) v *= 3.0;
  CHECK(rel_err(weinstein(u), base) <= 1e-10);

  Field zero(g);
  CHECK_THROWS_AS(weinstein(zero), std::invalid_argument);
}

TEST_CASE("energy parts invariant under whole-grid translation") {
  const Grid g = make_grid(16, 5.0);
  const Field u = random_smooth_field(g, 109);
  Field shifted(g);
  const int s = 3;  // shift in grid units, periodic
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      for (int k = 0; k < g.n; ++k) {
        shifted((i + s) % g.n, j, k) = u(i, j, k);
      }
    }
  }
  CHECK(rel_err(kinetic_form(shifted, 0.7), kinetic_form(u, 0.7)) <= 1e-12);
  CHECK(rel_err(hartree_term(shifted), hartree_term(u)) <= 1e-10);
}
