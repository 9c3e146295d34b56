#include "petlab/exact_waves.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace petlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kBisectionCap = 200;

void require_speed_above_one(double c) {
  if (!(c > 1.0)) {
    std::ostringstream os;
    os << "speed must exceed 1, got " << c;
    throw SpeedOutOfRange(os.str());
  }
}

}  // namespace

std::string_view to_string(WaveConvention convention) {
  return convention == WaveConvention::Phi ? "phi" : "psi";
}

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::ExactKdV: return "exact-kdv";
    case Provenance::ExactBO: return "exact-bo";
    case Provenance::Stokes: return "stokes";
    case Provenance::Iterated: return "iterated";
  }
  return "unknown";
}

double ode_residual(const Field& profile, double c, double alpha, WaveConvention convention) {
  // Phi: (c + D_alpha) u + u^2, symbol c - |n|^alpha.
  // Psi: (c - D_alpha) u - u^2, symbol c + |n|^alpha.
  const double sign = convention == WaveConvention::Phi ? -1.0 : 1.0;
  Field r = apply_symbol(profile, [c, alpha, sign](int n) {
    return c + sign * std::pow(static_cast<double>(n), alpha);
  });
  const Field square = multiply(profile, profile);
  if (convention == WaveConvention::Phi) {
    r += square;
  } else {
    r -= square;
  }
  return r.sup_norm();
}

WaveSolution make_wave(Field profile, double c, double alpha, WaveConvention convention,
                       Provenance provenance) {
  const double residual = ode_residual(profile, c, alpha, convention);
  return WaveSolution{std::move(profile), c, alpha, convention, provenance, residual};
}

double kdv_speed(EllipticModulus k) {
  const double kk = ellip_K(k);
  const double k2 = k.k() * k.k();
  return 4.0 * kk * kk / (kPi * kPi) * std::sqrt(1.0 - k2 + k2 * k2);
}

WaveSolution kdv_cnoidal(EllipticModulus k, const SpectralGrid& grid) {
  if (!(k.k() > 0.0)) throw ModulusOutOfRange(k.k());
  const double kk = ellip_K(k);
  const double k2 = k.k() * k.k();
  const double amplitude = 2.0 * kk * kk / (kPi * kPi);
  const double offset = 1.0 - 2.0 * k2 - std::sqrt(1.0 - k2 + k2 * k2);
  Field phi = Field::from_function(grid, [&](double x) {
    const double cn = jacobi_cn(kk * x / kPi, k);
    return amplitude * (offset + 3.0 * k2 * cn * cn);
  });
  return make_wave(std::move(phi), kdv_speed(k), 2.0, WaveConvention::Phi, Provenance::ExactKdV);
}

EllipticModulus kdv_k_from_c(double c) {
  require_speed_above_one(c);
  double lo = 0.0;
  double hi = EllipticModulus::kMaxModulus;
  if (c > kdv_speed(EllipticModulus(hi))) {
    std::ostringstream os;
    os << "speed " << c << " exceeds the largest representable cnoidal speed";
    throw SpeedOutOfRange(os.str());
  }
  // c(k) is strictly increasing; bisection is robust where dc/dk degenerates at k -> 0.
  for (int it = 0; it < kBisectionCap && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kdv_speed(EllipticModulus(mid)) < c) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return EllipticModulus(0.5 * (lo + hi));
}

WaveSolution bo_wave(double c, const SpectralGrid& grid) {
  require_speed_above_one(c);
  const double gamma = 0.5 * std::log((c + 1.0) / (c - 1.0));
  const double ch = std::cosh(gamma);
  const double sh = std::sinh(gamma);
  Field phi = Field::from_function(grid, [ch, sh](double x) {
    return (ch * std::cos(x) - 1.0) / (sh * (ch - std::cos(x)));
  });
  return make_wave(std::move(phi), c, 1.0, WaveConvention::Phi, Provenance::ExactBO);
}

Field bo_psi_closed_form(double c, const SpectralGrid& grid) {
  require_speed_above_one(c);
  const double gamma = 0.5 * std::log((c + 1.0) / (c - 1.0));
  const double ch = std::cosh(gamma);
  const double sh = std::sinh(gamma);
  return Field::from_function(grid, [ch, sh](double x) { return sh / (ch - std::cos(x)); });
}

bool has_exact_wave(double alpha) { return alpha == 1.0 || alpha == 2.0; }

WaveSolution exact_wave(double c, double alpha, const SpectralGrid& grid) {
  if (alpha == 2.0) return kdv_cnoidal(kdv_k_from_c(c), grid);
  if (alpha == 1.0) return bo_wave(c, grid);
  throw InvalidParameter("closed-form waves exist only for alpha = 1 and alpha = 2");
}

WaveSolution shift_convention(const WaveSolution& w) {
  const bool to_psi = w.convention == WaveConvention::Phi;
  Field shifted = w.profile + (to_psi ? w.c : -w.c);
  return make_wave(std::move(shifted), w.c, w.alpha,
                   to_psi ? WaveConvention::Psi : WaveConvention::Phi, w.provenance);
}

WaveSolution to_convention(const WaveSolution& w, WaveConvention convention) {
  return w.convention == convention ? w : shift_convention(w);
}

double cubic_integral(const WaveSolution& w) {
  const Field phi = to_convention(w, WaveConvention::Phi).profile;
  return inner_product(multiply(phi, phi), phi);
}

double gradient_integral(const WaveSolution& w) {
  const Field phi = to_convention(w, WaveConvention::Phi).profile;
  const Field dphi = derivative(phi);
  return inner_product(phi, multiply(dphi, dphi));
}

}  // namespace petlab
