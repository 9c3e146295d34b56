#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "petlab/exact_waves.hpp"
#include "petlab/stokes_asymptotics.hpp"

using namespace petlab;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double evenness_defect(const Field& f) {
  const int n = f.size();
  double worst = 0.0;
  for (int j = 1; j < n; ++j) worst = std::max(worst, std::abs(f[j] - f[n - j]));
  return worst;
}

}  // namespace

TEST_CASE("cnoidal waves solve their equation") {
  const SpectralGrid g(256);
  for (double k : {0.3, 0.5, 0.8}) {
    CAPTURE(k);
    const WaveSolution w = kdv_cnoidal(EllipticModulus(k), g);
    REQUIRE(w.residual_inf <= 1e-9);
    REQUIRE(w.convention == WaveConvention::Phi);
    REQUIRE(w.provenance == Provenance::ExactKdV);
    REQUIRE(evenness_defect(w.profile) < 1e-10);
  }
  REQUIRE_THROWS_AS(kdv_cnoidal(EllipticModulus(0.0), g), ModulusOutOfRange);
}

TEST_CASE("cnoidal speed near the zero-amplitude limit and monotonicity") {
  const SpectralGrid g(64);
  const WaveSolution tiny = kdv_cnoidal(EllipticModulus(1e-4), g);
  REQUIRE(tiny.c == Approx(1.0).epsilon(1e-7));
  REQUIRE(tiny.profile.sup_norm() < 1e-6);

  double previous = 1.0;
  for (int i = 1; i <= 19; ++i) {
    const double c = kdv_speed(EllipticModulus(0.05 * i));
    REQUIRE(c > previous);
    previous = c;
  }
  REQUIRE(kdv_speed(EllipticModulus(0.9)) > kdv_speed(EllipticModulus(0.5)));
}

TEST_CASE("modulus from speed") {
  const EllipticModulus k = kdv_k_from_c(3.0);
  REQUIRE(kdv_speed(k) == Approx(3.0).epsilon(1e-10));
  // c - 1 = (15/32) k^4 + O(k^6) near the bifurcation point.
  REQUIRE(kdv_k_from_c(1.0 + 1e-9).k() == Approx(std::pow(32.0e-9 / 15.0, 0.25)).epsilon(1e-3));
  REQUIRE_THROWS_AS(kdv_k_from_c(0.5), SpeedOutOfRange);
  REQUIRE_THROWS_AS(kdv_k_from_c(1.0), SpeedOutOfRange);
}

TEST_CASE("Benjamin-Ono waves") {
  const SpectralGrid g(256);
  for (double c : {1.1, 1.6, 2.0}) {
    CAPTURE(c);
    const WaveSolution w = bo_wave(c, g);
    REQUIRE(w.residual_inf <= 1e-9);
    const WaveSolution psi = shift_convention(w);
    REQUIRE(psi.residual_inf <= 1e-9);
    REQUIRE(distance_inf(psi.profile, bo_psi_closed_form(c, g)) < 1e-13);
    const double gamma = 0.5 * std::log((c + 1.0) / (c - 1.0));
    // Minimum at x = pi: sinh g / (cosh g + 1) = tanh(g / 2).
    REQUIRE(psi.profile.min() == Approx(std::tanh(0.5 * gamma)).epsilon(1e-13));
  }
  // Crest value 1 / sinh g = sqrt(c^2 - 1): the wave steepens as c grows.
  double previous = 0.0;
  for (double c : {2.0, 4.0, 8.0}) {
    const double amp = bo_wave(c, g).profile.sup_norm();
    REQUIRE(amp == Approx(std::sqrt(c * c - 1.0)).epsilon(1e-12));
    REQUIRE(amp > previous);
    previous = amp;
  }
  REQUIRE_THROWS_AS(bo_wave(0.9, g), SpeedOutOfRange);
}

TEST_CASE("convention shift") {
  const SpectralGrid g(128);
  const WaveSolution constant = make_wave(Field::constant(g, 2.0), 2.0, 1.5, WaveConvention::Psi,
                                          Provenance::Iterated);
  REQUIRE(constant.residual_inf < 1e-14);
  const WaveSolution zero = shift_convention(constant);
  REQUIRE(zero.convention == WaveConvention::Phi);
  REQUIRE(zero.profile.sup_norm() == 0.0);

  const WaveSolution w = kdv_cnoidal(EllipticModulus(0.5), g);
  const WaveSolution twice = shift_convention(shift_convention(w));
  REQUIRE(twice.convention == WaveConvention::Phi);
  REQUIRE(distance_inf(twice.profile, w.profile) < 1e-14);

  // The Psi cnoidal profile has the opposite sign on the square root.
  const double k = 0.5, k2 = k * k;
  const double K = ellip_K(k);
  const Field psi = Field::from_function(g, [&](double x) {
    const double cn = jacobi_cn(K * x / kPi, k);
    return 2.0 * K * K / (kPi * kPi) * (1.0 - 2.0 * k2 + std::sqrt(1.0 - k2 + k2 * k2) + 3.0 * k2 * cn * cn);
  });
  REQUIRE(distance_inf(to_convention(w, WaveConvention::Psi).profile, psi) < 1e-12);
}

TEST_CASE("exact waves dispatch on alpha") {
  const SpectralGrid g(128);
  REQUIRE(has_exact_wave(1.0));
  REQUIRE(has_exact_wave(2.0));
  REQUIRE_FALSE(has_exact_wave(1.5));
  REQUIRE(exact_wave(2.5, 2.0, g).provenance == Provenance::ExactKdV);
  REQUIRE(exact_wave(2.5, 1.0, g).provenance == Provenance::ExactBO);
  REQUIRE_THROWS_AS(exact_wave(2.0, 1.5, g), InvalidParameter);
}

TEST_CASE("Psi profiles are positive") {
  const SpectralGrid g(256);
  for (double c : {1.05, 2.0, 3.5}) {
    REQUIRE(to_convention(exact_wave(c, 2.0, g), WaveConvention::Psi).profile.min() > 0.0);
    REQUIRE(to_convention(exact_wave(c, 1.0, g), WaveConvention::Psi).profile.min() > 0.0);
  }
}

TEST_CASE("Benjamin-Ono integrals match closed forms") {
  const SpectralGrid g(256);
  for (double c : {1.1, 1.5, 2.0, 3.0}) {
    CAPTURE(c);
    const WaveSolution w = bo_wave(c, g);
    REQUIRE(cubic_integral(w) == Approx(-kPi * (c - 1.0) * (c - 1.0) * (2.0 * c + 1.0)).epsilon(1e-8));
    REQUIRE(gradient_integral(w) == Approx(kPi * std::pow(c * c - 1.0, 2) / 4.0).epsilon(1e-8));
  }
  const WaveSolution w2 = bo_wave(2.0, g);
  REQUIRE(cubic_integral(w2) == Approx(-5.0 * kPi).epsilon(1e-8));
  REQUIRE(gradient_integral(shift_convention(w2)) == Approx(9.0 * kPi / 4.0).epsilon(1e-8));
}

TEST_CASE("cnoidal integrals are negative") {
  const SpectralGrid g(256);
  for (double k : {0.2, 0.5, 0.8}) {
    const WaveSolution w = kdv_cnoidal(EllipticModulus(k), g);
    REQUIRE(cubic_integral(w) < 0.0);
    REQUIRE(gradient_integral(w) < 0.0);
  }
}

TEST_CASE("small-amplitude sign pattern at c = 1.01") {
  const SpectralGrid g(256);
  for (double alpha : {0.8, 1.0, 2.0}) {
    CAPTURE(alpha);
    const double a = stokes_amplitude_for_speed(1.01, alpha);
    REQUIRE(cubic_integral(stokes_wave(a, alpha, g)) < 0.0);
  }
  const double a1 = stokes_amplitude_for_speed(1.01, 1.0);
  const double a2 = stokes_amplitude_for_speed(1.01, 2.0);
  REQUIRE(gradient_integral(stokes_wave(a1, 1.0, g)) > 0.0);
  REQUIRE(gradient_integral(stokes_wave(a2, 2.0, g)) < 0.0);
}
