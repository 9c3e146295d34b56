#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "petlab/spectral_core.hpp"

using namespace petlab;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Random real trigonometric polynomial with modes up to `max_mode`.
Field random_field(const SpectralGrid& grid, int max_mode, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(max_mode + 1), b(max_mode + 1);
  for (int n = 0; n <= max_mode; ++n) {
    a[n] = u(rng);
    b[n] = u(rng);
  }
  return Field::from_function(grid, [&](double x) {
    double s = a[0];
    for (int n = 1; n <= max_mode; ++n) s += a[n] * std::cos(n * x) + b[n] * std::sin(n * x);
    return s;
  });
}

Field cosine(const SpectralGrid& g, int n) {
  return Field::from_function(g, [n](double x) { return std::cos(n * x); });
}

}  // namespace

TEST_CASE("grid construction") {
  const SpectralGrid g8(8);
  REQUIRE(g8.size() == 8);
  REQUIRE(g8.node(0) == Approx(-kPi));
  REQUIRE(g8.node(1) == Approx(-3.0 * kPi / 4.0));
  REQUIRE(g8.node(7) == Approx(3.0 * kPi / 4.0));
  const auto modes = g8.modes();
  REQUIRE(modes.front() == -3);
  REQUIRE(modes.back() == 4);

  const SpectralGrid g256 = make_grid(256);
  REQUIRE(g256.nodes().size() == 256u);
  REQUIRE(g256.step() == Approx(2.0 * kPi / 256.0));
  const auto nodes = g256.nodes();
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    REQUIRE(nodes[j] - nodes[j - 1] == Approx(g256.step()).epsilon(1e-12));
  }

  REQUIRE_THROWS_AS(make_grid(7), OddOrTooSmallGrid);
  REQUIRE_THROWS_AS(make_grid(6), OddOrTooSmallGrid);
}

TEST_CASE("Fourier coefficients follow the e^{inx} convention") {
  const SpectralGrid g(32);
  const Field f = Field::from_function(g, [](double x) { return std::cos(3 * x) + 0.5 * std::sin(2 * x); });
  const auto c = f.coefficients();
  REQUIRE(std::abs(c[3] - Complex(0.5, 0.0)) < 1e-15);
  REQUIRE(std::abs(c[2] - Complex(0.0, -0.25)) < 1e-15);
  REQUIRE(std::abs(c[0]) < 1e-15);

  const Field back = Field::from_coefficients(g, c);
  REQUIRE(distance_inf(back, f) < 1e-14);

  Coefficients odd(17, Complex(0.0, 0.0));
  odd[0] = Complex(1.0, 0.7);
  odd[16] = Complex(0.25, 0.3);
  const auto forced = Field::from_coefficients(g, odd).coefficients();
  REQUIRE(forced[0].imag() == Approx(0.0).margin(1e-15));
  REQUIRE(forced[16].imag() == Approx(0.0).margin(1e-15));
}

TEST_CASE("fractional derivative symbol") {
  const SpectralGrid g(64);
  REQUIRE(distance_inf(apply_d_alpha(cosine(g, 1), 2.0), -1.0 * cosine(g, 1)) < 1e-12);
  REQUIRE(distance_inf(apply_d_alpha(cosine(g, 2), 1.0), -2.0 * cosine(g, 2)) < 1e-13);
  REQUIRE(apply_d_alpha(Field::constant(g, 1.0), 1.3).sup_norm() < 1e-14);

  const Field f = random_field(g, 12, 7);
  const Field d2 = derivative(derivative(f));
  REQUIRE(distance_inf(apply_d_alpha(f, 2.0), d2) < 1e-12 * std::max(1.0, d2.sup_norm()));
}

TEST_CASE("derivative of a band-limited field") {
  const SpectralGrid g(64);
  const Field f = Field::from_function(g, [](double x) { return std::sin(3 * x); });
  REQUIRE(distance_inf(derivative(f), 3.0 * cosine(g, 3)) < 1e-13);
}

TEST_CASE("operator inversion") {
  const SpectralGrid g(64);
  const SymbolSpec classical{2.0, 2.0, SignConvention::Classical};
  const SymbolSpec shifted{2.0, 2.0, SignConvention::Shifted};
  REQUIRE(distance_inf(invert_operator(cosine(g, 1), classical), -1.0 * cosine(g, 1)) < 1e-14);
  REQUIRE(distance_inf(invert_operator(cosine(g, 1), shifted), (1.0 / 3.0) * cosine(g, 1)) < 1e-14);

  const SymbolSpec resonant{2.0, 4.0, SignConvention::Classical};
  try {
    invert_operator(cosine(g, 1), resonant);
    FAIL("expected a resonance");
  } catch (const ResonantSpeed& e) {
    REQUIRE(e.mode() == 2);
  }
}

TEST_CASE("inversion round trip on random fields") {
  const SpectralGrid g(128);
  const std::vector<SymbolSpec> specs = {{2.0, 2.3, SignConvention::Classical},
                                         {1.0, 1.6, SignConvention::Classical},
                                         {1.5, 0.7, SignConvention::Shifted},
                                         {0.8, 3.0, SignConvention::Shifted}};
  unsigned seed = 11;
  for (const auto& spec : specs) {
    const Field f = random_field(g, 40, seed++);
    const Field back = apply_operator(invert_operator(f, spec), spec);
    REQUIRE(distance_inf(back, f) <= 1e-12 * f.sup_norm());
  }
}

TEST_CASE("inner product") {
  const SpectralGrid g(64);
  const Field one = Field::constant(g, 1.0);
  const Field s = Field::from_function(g, [](double x) { return std::sin(x); });
  REQUIRE(inner_product(cosine(g, 1), cosine(g, 1)) == Approx(kPi).epsilon(1e-14));
  REQUIRE(inner_product(cosine(g, 1), s) == Approx(0.0).margin(1e-14));
  REQUIRE(inner_product(one, one) == Approx(2.0 * kPi).epsilon(1e-14));

  const Field f = random_field(g, 10, 1);
  const Field h = random_field(g, 10, 2);
  const Field k = random_field(g, 10, 3);
  REQUIRE(inner_product(f, h) == Approx(inner_product(h, f)).epsilon(1e-14));
  REQUIRE(inner_product(2.5 * f + k, h) ==
          Approx(2.5 * inner_product(f, h) + inner_product(k, h)).epsilon(1e-12));

  REQUIRE_THROWS_AS(inner_product(f, Field::constant(SpectralGrid(32), 1.0)), GridMismatch);
}

TEST_CASE("pointwise products") {
  const SpectralGrid g(64);
  const Field expected = Field::from_function(g, [](double x) { return 0.5 * (1.0 + std::cos(2 * x)); });
  REQUIRE(distance_inf(multiply(cosine(g, 1), cosine(g, 1)), expected) < 1e-15);
  const Field f = random_field(g, 8, 5);
  REQUIRE(distance_inf(multiply(Field::constant(g, 1.0), f), f) == 0.0);

  // On 24 points cos(8x)^2 = 1/2 + cos(16x)/2 aliases onto mode 8; the 2/3 rule removes it.
  const SpectralGrid small(24);
  const Field c8 = cosine(small, 8);
  const Field aliased = multiply(c8, c8);
  REQUIRE(std::abs(aliased.coefficients()[8]) == Approx(0.25).epsilon(1e-12));
  const Field clean = multiply(c8, c8, true);
  REQUIRE(distance_inf(clean, Field::constant(small, 0.5)) < 1e-14);
}

TEST_CASE("Green function matches the closed form for the second derivative") {
  // For alpha = 2, G(x) = cosh(sqrt(c)(pi - |x|)) / (2 sqrt(c) sinh(sqrt(c) pi)).
  const SpectralGrid g(64);
  for (double c : {1.0, 2.5}) {
    const Field series = green_function(c, 2.0, g, 200000);
    const double r = std::sqrt(c);
    const Field exact = Field::from_function(g, [r](double x) {
      return std::cosh(r * (kPi - std::abs(x))) / (2.0 * r * std::sinh(r * kPi));
    });
    REQUIRE(distance_inf(series, exact) < 1e-5);
    // The rectangle rule folds modes 64k onto the mean.
    double mean = 1.0 / c;
    for (int k = 1; 64 * k <= 200000; ++k) mean += 2.0 / (c + std::pow(64.0 * k, 2));
    REQUIRE(inner_product(series, Field::constant(g, 1.0)) == Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("Green function positivity and norm bound") {
  const SpectralGrid g(256);
  for (double c : {1.1, 2.0, 3.0}) {
    for (double alpha : {1.0, 1.5, 2.0}) {
      CAPTURE(c, alpha);
      REQUIRE(green_function(c, alpha, g, 4096).min() > 0.0);
      const auto k = green_constants(c, alpha, 4096);
      REQUIRE(k.m > 0.0);
      REQUIRE(std::sqrt(2.0 * kPi) * k.m <= k.M);
    }
  }
  REQUIRE_THROWS_AS(green_constants(1.0, 0.4, 100), AlphaTooSmall);
  REQUIRE_THROWS_AS(green_function(1.0, 0.4, g, 100), AlphaTooSmall);
}

TEST_CASE("Green function L2 norm") {
  // Series value against quadrature of the sampled partial sum; 32768 points
  // integrate the squared partial sum (modes up to 2e4) exactly.
  const int n_terms = 10000;
  const SpectralGrid fine(32768);
  const Field G = green_function(1.0, 2.0, fine, n_terms);
  const auto k = green_constants(1.0, 2.0, n_terms);
  REQUIRE(inner_product(G, G) == Approx(k.M * k.M).epsilon(1e-8));

  // sum_{n in Z} 1/(n^2 + 1)^2 = (pi/2) coth(pi) + (pi^2/2) csch^2(pi).
  const double full = 0.5 * kPi / std::tanh(kPi) + 0.5 * kPi * kPi / std::pow(std::sinh(kPi), 2);
  REQUIRE(k.M * k.M == Approx(full / (2.0 * kPi)).epsilon(1e-10));
}
