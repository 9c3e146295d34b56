#pragma once

#include <string_view>

#include "petlab/special_functions.hpp"
#include "petlab/spectral_core.hpp"

namespace petlab {

/// Phi profiles solve (c + D_alpha) phi + phi^2 = 0 (left-propagating waves);
/// Psi profiles solve (c - D_alpha) psi = psi^2. They are related by phi = -c + psi.
enum class WaveConvention { Phi, Psi };

enum class Provenance { ExactKdV, ExactBO, Stokes, Iterated };

std::string_view to_string(WaveConvention convention);
std::string_view to_string(Provenance provenance);

/// Sign convention of the operator whose fixed-point problem the profile solves.
constexpr SignConvention operator_convention(WaveConvention convention) {
  return convention == WaveConvention::Phi ? SignConvention::Classical : SignConvention::Shifted;
}

struct WaveSolution {
  Field profile;
  double c = 1.0;
  double alpha = 2.0;
  WaveConvention convention = WaveConvention::Phi;
  Provenance provenance = Provenance::Iterated;
  double residual_inf = 0.0;  // sup-norm ODE residual in `convention`
};

/// Sup-norm residual of the boundary-value problem in the given convention.
double ode_residual(const Field& profile, double c, double alpha, WaveConvention convention);

WaveSolution make_wave(Field profile, double c, double alpha, WaveConvention convention,
                       Provenance provenance);

/// Wave speed of the cnoidal KdV wave: c = (4K^2/pi^2) sqrt(1 - k^2 + k^4).
double kdv_speed(EllipticModulus k);

/// Exact cnoidal solution of the alpha = 2 problem (Phi convention).
WaveSolution kdv_cnoidal(EllipticModulus k, const SpectralGrid& grid);

/// Inverts kdv_speed by bisection; c must exceed 1.
EllipticModulus kdv_k_from_c(double c);

/// Exact periodic Benjamin-Ono wave (alpha = 1, Phi convention) with c = coth(gamma).
WaveSolution bo_wave(double c, const SpectralGrid& grid);

/// The Psi profile psi = sinh(gamma) / (cosh(gamma) - cos x), closed form.
Field bo_psi_closed_form(double c, const SpectralGrid& grid);

/// Exact wave for alpha in {1, 2}, used as an oracle by the solver front ends.
WaveSolution exact_wave(double c, double alpha, const SpectralGrid& grid);
bool has_exact_wave(double alpha);

/// Toggles Phi <-> Psi by adding or subtracting c; the residual is recomputed.
WaveSolution shift_convention(const WaveSolution& w);
WaveSolution to_convention(const WaveSolution& w, WaveConvention convention);

/// Integral of phi^3 over the period (always evaluated on the Phi profile).
double cubic_integral(const WaveSolution& w);
/// Integral of phi (phi')^2 over the period, with phi' computed spectrally.
double gradient_integral(const WaveSolution& w);

}  // namespace petlab
