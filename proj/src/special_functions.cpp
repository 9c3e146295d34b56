#include "petlab/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace petlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAgmTolerance = 1e-16;
constexpr int kMaxAgmSteps = 32;

struct AgmSequence {
  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  int steps = 0;  // index of the last computed term
};

// Arithmetic-geometric mean of (1, k') with the c_n = (a_{n-1} - b_{n-1}) / 2 record.
AgmSequence agm(const EllipticModulus& k) {
  AgmSequence s;
  double a = 1.0;
  double b = k.complementary();
  s.a[0] = a;
  s.c[0] = k.k();
  int n = 0;
  while (std::abs(s.c[n]) > kAgmTolerance * a && n < kMaxAgmSteps) {
    const double next_a = 0.5 * (a + b);
    const double next_b = std::sqrt(a * b);
    ++n;
    s.c[n] = 0.5 * (a - b);
    a = next_a;
    b = next_b;
    s.a[n] = a;
  }
  s.steps = n;
  return s;
}

}  // namespace

EllipticModulus::EllipticModulus(double k) : k_(k), kp_(0.0) {
  if (!(k >= 0.0) || !(k <= kMaxModulus)) throw ModulusOutOfRange(k);
  kp_ = std::sqrt((1.0 - k) * (1.0 + k));
}

double ellip_K(EllipticModulus k) {
  const auto s = agm(k);
  return kPi / (2.0 * s.a[s.steps]);
}

double ellip_K(double k) { return ellip_K(EllipticModulus(k)); }

double ellip_E(EllipticModulus k) {
  const auto s = agm(k);
  // E = K (1 - sum_n 2^{n-1} c_n^2)
  double sum = 0.0;
  double weight = 0.5;
  for (int n = 0; n <= s.steps; ++n) {
    sum += weight * s.c[n] * s.c[n];
    weight *= 2.0;
  }
  return kPi / (2.0 * s.a[s.steps]) * (1.0 - sum);
}

double ellip_E(double k) { return ellip_E(EllipticModulus(k)); }

JacobiTriple jacobi_sncndn(double u, EllipticModulus k) {
  const auto s = agm(k);
  const double quarter = kPi / (2.0 * s.a[s.steps]);
  // Reduce to one period [-2K, 2K) so the Landen phases stay well conditioned.
  const double period = 4.0 * quarter;
  u = std::remainder(u, period);

  const int n_steps = s.steps;
  std::array<double, kMaxAgmSteps + 1> phi{};
  phi[n_steps] = std::ldexp(s.a[n_steps] * u, n_steps);
  for (int n = n_steps; n > 0; --n) {
    phi[n - 1] = 0.5 * (phi[n] + std::asin(s.c[n] * std::sin(phi[n]) / s.a[n]));
  }
  const double sn = std::sin(phi[0]);
  const double cn = std::cos(phi[0]);
  // The Landen ratio is 0/0 at odd multiples of K; fall back to the
  // factored identity there.
  const double landen = n_steps > 0 ? std::cos(phi[1] - phi[0]) : 0.0;
  const double dn = std::abs(landen) > 0.5
                        ? cn / landen
                        : std::sqrt((1.0 - k.k() * sn) * (1.0 + k.k() * sn));
  return {sn, cn, dn};
}

double jacobi_cn(double u, EllipticModulus k) { return jacobi_sncndn(u, k).cn; }

double jacobi_cn(double u, double k) { return jacobi_cn(u, EllipticModulus(k)); }

}  // namespace petlab
