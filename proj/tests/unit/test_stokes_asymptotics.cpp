#include <catch_amalgamated.hpp>

#include <cmath>

#include "petlab/stokes_asymptotics.hpp"

using namespace petlab;
using Catch::Approx;

namespace {

// (1 + D_alpha), the linearization about the zero wave at c = 1.
Field one_plus_d(const Field& f, double alpha) {
  return apply_symbol(f, [alpha](int n) { return 1.0 - std::pow(static_cast<double>(n), alpha); });
}

// Projection onto cos x.
double cos1(const Field& f) { return 2.0 * f.coefficients()[1].real(); }

double slope(double a_hi, double r_hi, double a_lo, double r_lo) {
  return std::log(r_hi / r_lo) / std::log(a_hi / a_lo);
}

}  // namespace

TEST_CASE("coefficients at alpha = 2") {
  const auto s = stokes_coefficients(2.0);
  REQUIRE(s.c2 == Approx(5.0 / 6.0).epsilon(1e-15));
  REQUIRE(s.phi2.at(0) == Approx(-0.5));
  REQUIRE(s.phi2.at(2) == Approx(1.0 / 6.0));
  REQUIRE(s.phi3.size() == 1u);
  REQUIRE(s.phi3.at(3) == Approx(1.0 / 48.0));
}

TEST_CASE("critical exponents") {
  const auto k = alpha_criticals();
  REQUIRE(k.alpha0 == Approx(0.5849625007).epsilon(1e-10));
  REQUIRE(k.alpha1 == Approx(1.3219280949).epsilon(1e-10));
  REQUIRE(0.5 < k.alpha0);
  REQUIRE(k.alpha0 < 1.0);
  REQUIRE(1.0 < k.alpha1);
  REQUIRE(k.alpha1 < 2.0);
}

TEST_CASE("expansion hierarchy is satisfied order by order") {
  const SpectralGrid g(64);
  const Field phi1 = Field::from_function(g, [](double x) { return std::cos(x); });
  for (double alpha : {0.8, 1.0, 1.5, 2.0, 2.5}) {
    CAPTURE(alpha);
    const auto s = stokes_coefficients(alpha);
    const Field p2 = evaluate(s.phi2, g);
    const Field p3 = evaluate(s.phi3, g);
    const Field p4 = evaluate(s.phi4, g);

    const Field r2 = one_plus_d(p2, alpha) + multiply(phi1, phi1);
    REQUIRE(r2.sup_norm() < 1e-12);

    const Field r3 = one_plus_d(p3, alpha) + s.c2 * phi1 + 2.0 * multiply(phi1, p2);
    REQUIRE(r3.sup_norm() < 1e-12);

    const Field r4 = one_plus_d(p4, alpha) + s.c2 * p2 + 2.0 * multiply(phi1, p3) + multiply(p2, p2);
    REQUIRE(r4.sup_norm() < 1e-12);

    // Solvability at fifth order fixes c4.
    const Field f5 = s.c2 * p3 + s.c4 * phi1 + 2.0 * multiply(phi1, p4) + 2.0 * multiply(p2, p3);
    REQUIRE(cos1(f5) == Approx(0.0).margin(1e-12));

    // Corrections carry no cos x component.
    REQUIRE(s.phi2.count(1) + s.phi3.count(1) + s.phi4.count(1) == 0u);
  }
}

TEST_CASE("zero amplitude gives the trivial wave") {
  const SpectralGrid g(64);
  const WaveSolution w = stokes_wave(0.0, 1.5, g);
  REQUIRE(w.profile.sup_norm() == 0.0);
  REQUIRE(w.c == 1.0);
}

TEST_CASE("truncated expansion residual scales with the order") {
  const SpectralGrid g(128);
  for (double alpha : {1.0, 1.5, 2.0}) {
    for (int order = 2; order <= 4; ++order) {
      CAPTURE(alpha, order);
      // At alpha = 2 the fifth-order residual coefficient is small and the
      // sixth-order term dominates the fourth-order fit until a is near 0.02.
      const double a = (alpha == 2.0 && order == 4) ? 0.025 : 0.1;
      const double r1 = stokes_wave(a, alpha, g, order).residual_inf;
      const double r2 = stokes_wave(a / 2, alpha, g, order).residual_inf;
      const double r3 = stokes_wave(a / 4, alpha, g, order).residual_inf;
      REQUIRE(slope(a, r1, a / 2, r2) == Approx(order + 1.0).margin(0.3));
      REQUIRE(slope(a / 2, r2, a / 4, r3) == Approx(order + 1.0).margin(0.3));
    }
  }
  const double r_a = stokes_wave(0.1, 2.0, g).residual_inf;
  const double r_b = stokes_wave(0.025, 2.0, g).residual_inf;
  const double r_c = stokes_wave(0.0125, 2.0, g).residual_inf;
  REQUIRE(r_a < 1e-4);
  REQUIRE(r_b / r_c == Approx(32.0).epsilon(0.25));
  REQUIRE_THROWS_AS(stokes_wave(0.1, 2.0, g, 5), InvalidParameter);
}

TEST_CASE("second-order speed correction changes sign at alpha0") {
  const double a0 = alpha_criticals().alpha0;
  REQUIRE(stokes_coefficients(a0 - 0.01).c2 < 0.0);
  REQUIRE(stokes_coefficients(a0 + 0.01).c2 > 0.0);
  REQUIRE(stokes_coefficients(a0).c2 == Approx(0.0).margin(1e-14));
}

TEST_CASE("amplitude for a given speed inverts the speed law") {
  for (double alpha : {0.8, 1.0, 2.0}) {
    for (double c : {1.001, 1.01, 1.05}) {
      const double a = stokes_amplitude_for_speed(c, alpha);
      REQUIRE(stokes_speed(a, alpha) == Approx(c).epsilon(1e-14));
    }
  }
  REQUIRE_THROWS_AS(stokes_amplitude_for_speed(1.01, 0.5), InvalidParameter);
}

TEST_CASE("eigenvalue predictions") {
  REQUIRE(lambda2_coefficient(2.0) == Approx(-1.4).epsilon(1e-14));
  REQUIRE(lambda2_coefficient(1.0) == Approx(-5.0).epsilon(1e-14));
  for (double alpha : {0.7, 1.0, 1.5, 2.0}) REQUIRE(lambda2_coefficient(alpha) < 0.0);
  REQUIRE_THROWS_AS(lambda2_coefficient(alpha_criticals().alpha0), PoleAtAlpha0);

  REQUIRE(lambda1_limit(2.0) == Approx(0.6).epsilon(1e-15));
  REQUIRE(lambda1_limit(1.0) == Approx(-1.0).epsilon(1e-15));

  const auto at_zero = predicted_gep_eigenvalues(0.0, 2.0);
  REQUIRE(at_zero.size() == 4u);
  REQUIRE(at_zero[0].value == -1.0);
  REQUIRE(at_zero[1].value == 0.0);
  REQUIRE(at_zero[2].value == Approx(0.6));
  REQUIRE(at_zero[3].value == 2.0);
  REQUIRE(predicted_gep_eigenvalues(0.1, 2.0)[3].value == Approx(2.0 - 0.014).epsilon(1e-14));
}
