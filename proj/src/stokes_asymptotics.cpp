#include "petlab/stokes_asymptotics.hpp"

#include <cmath>
#include <iostream>

namespace petlab {

namespace {

constexpr double kPoleTolerance = 1e-12;

void require_off_pole(double alpha) {
  if (std::abs(std::exp2(alpha + 1.0) - 3.0) < kPoleTolerance) throw PoleAtAlpha0(alpha);
}

}  // namespace

Field evaluate(const CosineSeries& series, const SpectralGrid& grid) {
  return Field::from_function(grid, [&series](double x) {
    double s = 0.0;
    for (const auto& [mode, amplitude] : series) s += amplitude * std::cos(mode * x);
    return s;
  });
}

StokesCoefficients stokes_coefficients(double alpha) {
  if (!(alpha > 0.0)) throw InvalidParameter("fractional exponent alpha must be positive");
  const double p = std::exp2(alpha) - 1.0;       // 2^alpha - 1
  const double q = std::pow(3.0, alpha) - 1.0;   // 3^alpha - 1
  const double r = std::pow(4.0, alpha) - 1.0;   // 4^alpha - 1

  StokesCoefficients s;
  s.alpha = alpha;
  s.c2 = 1.0 - 1.0 / (2.0 * p);
  s.c4 = -0.5 + 1.0 / (2.0 * p) + 1.0 / (4.0 * p * p) + 1.0 / (4.0 * p * p * p) -
         3.0 / (4.0 * p * p * q);
  s.phi2 = {{0, -0.5}, {2, 1.0 / (2.0 * p)}};
  s.phi3 = {{3, 1.0 / (2.0 * p * q)}};
  s.phi4 = {{0, 0.25 - 1.0 / (4.0 * p) - 1.0 / (8.0 * p * p)},
            {2, (2.0 / q - 1.0 / p) / (4.0 * p * p)},
            {4, (4.0 / q + 1.0 / p) / (8.0 * p * r)}};
  return s;
}

CriticalExponents alpha_criticals() {
  return {std::log(3.0) / std::log(2.0) - 1.0, std::log(5.0) / std::log(2.0) - 1.0};
}

double stokes_speed(double a, double alpha) {
  const auto s = stokes_coefficients(alpha);
  const double a2 = a * a;
  return 1.0 + s.c2 * a2 + s.c4 * a2 * a2;
}

WaveSolution stokes_wave(double a, double alpha, const SpectralGrid& grid, int order) {
  if (order < 1 || order > 4) throw InvalidParameter("Stokes order must be between 1 and 4");
  if (std::abs(a) > kStokesAdvisoryAmplitude) {
    std::cerr << "petlab: warning: Stokes amplitude " << a
              << " is outside the small-amplitude range\n";
  }
  const auto s = stokes_coefficients(alpha);
  CosineSeries total{{1, a}};
  const CosineSeries* corrections[] = {&s.phi2, &s.phi3, &s.phi4};
  double power = a;
  for (int k = 2; k <= order; ++k) {
    power *= a;
    for (const auto& [mode, amplitude] : *corrections[k - 2]) total[mode] += power * amplitude;
  }
  return make_wave(evaluate(total, grid), stokes_speed(a, alpha), alpha, WaveConvention::Phi,
                   Provenance::Stokes);
}

double stokes_amplitude_for_speed(double c, double alpha) {
  const auto s = stokes_coefficients(alpha);
  if (!(s.c2 > 0.0)) {
    throw InvalidParameter("small-amplitude waves with c > 1 require alpha > alpha0");
  }
  if (!(c >= 1.0)) throw SpeedOutOfRange("Stokes branch bifurcates to c > 1 for alpha > alpha0");
  // c4 s^2 + c2 s - (c - 1) = 0 with s = a^2, smallest positive root.
  const double rhs = c - 1.0;
  const double disc = s.c2 * s.c2 + 4.0 * s.c4 * rhs;
  if (disc < 0.0) throw SpeedOutOfRange("speed lies beyond the fold of the truncated expansion");
  return std::sqrt(2.0 * rhs / (s.c2 + std::sqrt(disc)));
}

double lambda2_coefficient(double alpha) {
  require_off_pole(alpha);
  const double two_alpha = std::exp2(alpha);
  return -1.0 + 3.0 / (two_alpha - 1.0) - 7.0 / (2.0 * two_alpha - 3.0);
}

double lambda1_limit(double alpha) {
  require_off_pole(alpha);
  const double t = std::exp2(alpha + 1.0);
  return (t - 5.0) / (t - 3.0);
}

std::vector<PredictedEigenvalue> predicted_gep_eigenvalues(double a, double alpha) {
  return {{"phi", -1.0},
          {"phi_prime", 0.0},
          {"lambda1", lambda1_limit(alpha)},
          {"lambda2", 2.0 + lambda2_coefficient(alpha) * a * a}};
}

}  // namespace petlab
