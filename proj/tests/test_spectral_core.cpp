#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "dense_oracle.hpp"
#include "prh/coulomb.hpp"
#include "prh/field.hpp"
#include "prh/field_io.hpp"
#include "prh/fft.hpp"
#include "prh/spectral_ops.hpp"
#include "prh/trial.hpp"
#include "test_rng.hpp"

using namespace prh;
using namespace prh::testing;

namespace {
constexpr double kPi = std::numbers::pi;

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

double max_rel_diff(const Field& a, const Field& b) {
  double scale = std::max(max_abs(a), max_abs(b));
  double worst = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  }
  return worst / std::max(scale, 1e-300);
}
}  // namespace

TEST_CASE("make_grid: spacing, Nyquist, validation") {
  const Grid g = make_grid(64, 16.0);
  CHECK(g.spacing() == 0.5);
  CHECK(g.spacing() * g.n == 2.0 * g.L);  // exact for representable L

  const Grid g2 = make_grid(32, 8.0);
  double max_axis_freq = 0;
  for (int m = 0; m < g2.n; ++m) {
    max_axis_freq = std::max(max_axis_freq, std::abs(g2.freq(m)));
  }
  CHECK(max_axis_freq == doctest::Approx(2 * kPi).epsilon(1e-14));

  CHECK_THROWS_AS(make_grid(15, 8.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(6, 8.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(16, -1.0), std::invalid_argument);
}

TEST_CASE("frequency lattice symmetric with a single zero and Nyquist") {
  const Grid g = make_grid(16, 4.0);
  const auto xi = frequency_axis(g);
  std::multiset<double> vals(xi.begin(), xi.end());
  CHECK(vals.count(0.0) == 1);
  int unpaired = 0;
  for (double v : xi) {
    if (v == 0) continue;
    if (vals.count(-v) == 0) ++unpaired;
  }
  CHECK(unpaired == 1);  // the Nyquist index
}

TEST_CASE("transform round trip, Hermitian symmetry, Plancherel") {
  const Grid g = make_grid(16, 6.0);
  const Field u = random_smooth_field(g, 11);
  const SpectralField s = forward_transform(u);

  // Hermitian symmetry c(-m) = conj(c(m))
  double worst = 0;
  const int n = g.n;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        const auto v = s.coeffs[g.index(a, b, c)];
        const auto w =
            s.coeffs[g.index((n - a) % n, (n - b) % n, (n - c) % n)];
        worst = std::max(worst, std::abs(v - std::conj(w)));
      }
    }
  }
  CHECK(worst <= 1e-12 * max_abs(u) * std::pow(g.spacing(), 3) * g.size());

  const Field back = inverse_transform(s);
  CHECK(max_rel_diff(u, back) <= 1e-12);

  CHECK(rel_err(spectral_mass(s), mass(u)) <= 1e-12);
}

TEST_CASE("kinetic_form: constant state, single mode, dense oracle") {
  const Grid g = make_grid(16, 5.0);

  Field c(g);
  for (double& v : c.values) v = 1.0;
  normalize(c);
  CHECK(rel_err(kinetic_form(c, 3.0), 3.0) <= 1e-12);
  CHECK(kinetic_form(c, -3.0) == kinetic_form(c, 3.0));  // enters as m^2

  // normalized single-mode cosine at a lattice frequency
  const double xi0 = g.freq(2);
  Field mode = sample(g, [&](double x, double, double) {
    return std::cos(xi0 * x);
  });
  normalize(mode);
  CHECK(rel_err(kinetic_form(mode, 0.0), std::abs(xi0)) <= 1e-12);

  const Grid g8 = make_grid(8, 3.0);
  const Field u = random_smooth_field(g8, 23);
  const double want =
      dense_symbol_form(u, [](double xi2) { return std::sqrt(xi2 + 4.0); });
  CHECK(rel_err(kinetic_form(u, 2.0), want) <= 1e-10);
}

TEST_CASE("riesz_form: single mode, constant, dense oracle, bad exponent") {
  const Grid g = make_grid(16, 5.0);
  const double xi0 = g.freq(3);
  Field mode = sample(g, [&](double, double y, double) {
    return std::cos(xi0 * y);
  });
  normalize(mode);
  CHECK(rel_err(riesz_form(mode, 0.5), std::abs(xi0)) <= 1e-12);

  Field c(g);
  for (double& v : c.values) v = 0.7;
  CHECK(riesz_form(c, 0.5) <= 1e-13);

  const Grid g8 = make_grid(8, 3.0);
  const Field u = random_smooth_field(g8, 29);
  const double want = dense_symbol_form(u, [](double xi2) {
    return xi2 == 0 ? 0.0 : 1.0 / std::sqrt(xi2);
  });
  CHECK(rel_err(riesz_form(u, -0.5), want) <= 1e-10);

  CHECK_THROWS_AS(riesz_form(u, 0.25), std::invalid_argument);
}

TEST_CASE("coulomb cell constant matches the closed-form corner integral") {
  const double want = 8.0 * corner_box_coulomb_integral(0.5, 0.5, 0.5);
  CHECK(rel_err(coulomb_cell_constant(), want) <= 1e-9);
  // frozen reference value of the unit-cell average of 1/|y|
  CHECK(coulomb_cell_constant() == doctest::Approx(2.3800773639795).epsilon(1e-10));
}

TEST_CASE("coulomb_convolve: Newton far field of a narrow bump") {
  const Grid g = make_grid(64, 16.0);
  const double w = 0.5;
  Field f = sample(g, [&](double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    return std::exp(-r2 / (2 * w * w));
  });
  // unit total integral
  double total = 0;
  for (double v : f.values) total += v;
  total *= std::pow(g.spacing(), 3);
  for (double& v : f.values) v /= total;

  const Field gpot = coulomb_convolve(f);
  const int n = g.n;
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double x = g.coord(i), y = g.coord(j), z = g.coord(k);
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r < 5 * w || r > 0.75 * g.L) continue;
        worst = std::max(worst, rel_err(gpot(i, j, k), 1.0 / r));
      }
    }
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("coulomb_convolve: Newton bound for radial decreasing input") {
  const Grid g = make_grid(32, 8.0);
  const Field f = sample(g, [&](double x, double y, double z) {
    return std::exp(-(x * x + y * y + z * z) / 2.0);
  });
  const double M = [&] {
    double s = 0;
    for (double v : f.values) s += v;
    return s * std::pow(g.spacing(), 3);
  }();
  const Field gpot = coulomb_convolve(f);
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double x = g.coord(i), y = g.coord(j), z = g.coord(k);
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r == 0) continue;
        REQUIRE(gpot(i, j, k) <= M / r * (1 + 1e-12));
      }
    }
  }
  CHECK(min_value(gpot) >= 0);
}

TEST_CASE("coulomb_convolve matches the brute-force double sum on 8^3") {
  const Grid g = make_grid(8, 3.0);
  Field f = random_smooth_field(g, 37, /*sign_mixed=*/false);
  const Field got = coulomb_convolve(f);
  const Field want = dense_coulomb(f);
  CHECK(max_rel_diff(got, want) <= 1e-10);
}

TEST_CASE("coulomb_convolve is linear and symmetric") {
  const Grid g = make_grid(16, 5.0);
  const Field f = random_smooth_field(g, 41);
  const Field h = random_smooth_field(g, 43);
  const double lhs = inner(coulomb_convolve(f), h);
  const double rhs = inner(f, coulomb_convolve(h));
  CHECK(rel_err(lhs, rhs) <= 1e-10);

  // linearity
  Field fh(g);
  for (std::size_t i = 0; i < fh.values.size(); ++i) {
    fh.values[i] = 2.0 * f.values[i] - 3.0 * h.values[i];
  }
  const Field conv_lin = coulomb_convolve(fh);
  const Field cf = coulomb_convolve(f);
  const Field ch = coulomb_convolve(h);
  double worst = 0;
  for (std::size_t i = 0; i < fh.values.size(); ++i) {
    worst = std::max(worst, std::abs(conv_lin.values[i] - 2.0 * cf.values[i] +
                                     3.0 * ch.values[i]));
  }
  CHECK(worst <= 1e-10 * max_abs(conv_lin));
}

TEST_CASE("commutator_apply: constants commute, dense oracle, grid check") {
  const Grid g = make_grid(16, 5.0);
  const Field u = random_smooth_field(g, 47);
  Field one(g);
  for (double& v : one.values) v = 1.0;
  const Field z = commutator_apply(u, one);
  CHECK(max_abs(z) <= 1e-12 * max_abs(u));

  const Grid g8 = make_grid(8, 3.0);
  const Field u8 = random_smooth_field(g8, 53);
  const Field phi8 = random_smooth_field(g8, 59);
  const Field got = commutator_apply(u8, phi8);
  // dense composition of the two applications
  Field pu(g8);
  for (std::size_t i = 0; i < pu.values.size(); ++i) {
    pu.values[i] = phi8.values[i] * u8.values[i];
  }
  const auto sqrt_sym = [](double xi2) { return std::sqrt(xi2); };
  const Field a = dense_apply_symbol(pu, sqrt_sym);
  const Field b = dense_apply_symbol(u8, sqrt_sym);
  Field want(g8);
  for (std::size_t i = 0; i < want.values.size(); ++i) {
    want.values[i] = a.values[i] - phi8.values[i] * b.values[i];
  }
  CHECK(max_rel_diff(got, want) <= 1e-10);

  CHECK_THROWS_AS(commutator_apply(u, u8), std::invalid_argument);
}

TEST_CASE("commutator norm scales like the cutoff gradient (1/R)") {
  const Grid g = make_grid(64, 24.0);
  const double delta = 2.0;
  // oscillatory field with |x|^{-3/2} envelope: annulus L2 content is
  // R-independent, so the commutator norm tracks ||grad cutoff|| ~ 1/R
  const Field u = sample(g, [&](double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    return std::cos(2.0 * x) * std::pow(1.0 + r2, -0.75);
  });
  auto norm_at = [&](double R) {
    const Field phi = sample(g, [&](double x, double y, double z) {
      const double r = std::sqrt(x * x + y * y + z * z);
      return smooth_cutoff(r / R, delta);
    });
    return l2_norm(commutator_apply(u, phi));
  };
  const double nR = norm_at(2.0);
  const double n2R = norm_at(4.0);
  const double ratio = nR / n2R;
  CHECK(ratio >= 1.6);
  CHECK(ratio <= 2.4);
}

TEST_CASE("operator monotonicity in the mass parameter") {
  const Grid g = make_grid(16, 5.0);
  for (std::uint64_t seed : {61, 67, 71}) {
    const Field u = random_smooth_field(g, seed);
    const double k0 = kinetic_form(u, 0.0);
    for (double m : {0.25, 1.0, 4.0}) {
      const double km = kinetic_form(u, m);
      CHECK(km > k0);  // strict for nonzero u and m
      CHECK(km >= k0);
    }
    CHECK(kinetic_form(u, 0.0) == k0);
  }
  Field zero(g);
  CHECK(kinetic_form(zero, 2.0) == 0.0);
}

TEST_CASE("resolvent-comparison inequality on zero-mean fields") {
  // sqrt(t^2 + c^2) <= t + c^2/(2t) at the symbol level, for every
  // positive lattice frequency magnitude
  const Grid g = make_grid(16, 5.0);
  const auto xi = frequency_axis(g);
  for (double c : {0.3, 1.0, 2.5}) {
    for (double xa : xi) {
      for (double xb : xi) {
        const double t = std::sqrt(xa * xa + xb * xb);
        if (t == 0) continue;
        CHECK(std::sqrt(t * t + c * c) <= t + c * c / (2 * t) + 1e-14);
      }
    }
  }

  for (std::uint64_t seed : {73, 79, 83}) {
    Field u = random_smooth_field(g, seed);
    double mean = 0;
    for (double v : u.values) mean += v;
    mean /= static_cast<double>(u.values.size());
    for (double& v : u.values) v -= mean;

    for (double c : {0.5, 1.5}) {
      const double lhs = kinetic_form(u, c);
      const double rhs =
          kinetic_form(u, 0.0) + 0.5 * c * c * riesz_form(u, -0.5);
      CHECK(lhs <= rhs + 1e-10 * std::max(1.0, rhs));
    }
  }
}

TEST_CASE("field dump: exact header bytes and round trip") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "prh_test_dump.field";

  const Grid g = make_grid(8, 2.0);
  Field f = random_smooth_field(g, 89);
  f(0, 0, 0) = -1.25;  // exact binary value to pin byte layout
  write_field(path, f);

  std::ifstream in(path, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() == 32 + 8 * g.size());
  CHECK(bytes[0] == 'P');
  CHECK(bytes[1] == 'R');
  CHECK(bytes[2] == 'H');
  CHECK(bytes[3] == 'F');
  CHECK(bytes[4] == 1);  // version LE
  CHECK(bytes[8] == 8);  // n LE
  // L = 2.0 little-endian f64: 0x4000000000000000
  CHECK(bytes[18] == 0x00);
  CHECK(bytes[19] == 0x40);
  // first value -1.25 = 0xBFF4000000000000
  CHECK(bytes[32 + 6] == 0xf4);
  CHECK(bytes[32 + 7] == 0xbf);

  const Field back = read_field(path);
  CHECK(back.grid == f.grid);
  CHECK(back.values == f.values);
  fs::remove(path);
}
