#pragma once

#include <map>
#include <string>
#include <vector>

#include "petlab/exact_waves.hpp"

namespace petlab {

/// Cosine series stored as mode -> amplitude, evaluable on any grid.
using CosineSeries = std::map<int, double>;

Field evaluate(const CosineSeries& series, const SpectralGrid& grid);

/// Small-amplitude corrections of the Phi wave,
/// phi = a cos x + a^2 phi2 + a^3 phi3 + a^4 phi4 + O(a^5),  c = 1 + c2 a^2 + c4 a^4 + O(a^6).
struct StokesCoefficients {
  double alpha = 2.0;
  double c2 = 0.0;
  double c4 = 0.0;
  CosineSeries phi2;
  CosineSeries phi3;
  CosineSeries phi4;
};

StokesCoefficients stokes_coefficients(double alpha);

struct CriticalExponents {
  double alpha0;  // log 3 / log 2 - 1
  double alpha1;  // log 5 / log 2 - 1
};

CriticalExponents alpha_criticals();

/// Amplitude above which the expansion is only advisory.
inline constexpr double kStokesAdvisoryAmplitude = 0.5;

/// Truncated Stokes wave of the given order (1..4) in the Phi convention.
/// Emits a warning on stderr when |a| exceeds kStokesAdvisoryAmplitude.
WaveSolution stokes_wave(double a, double alpha, const SpectralGrid& grid, int order = 4);

/// Speed predicted by the expansion, 1 + c2 a^2 + c4 a^4.
double stokes_speed(double a, double alpha);

/// Positive amplitude whose Stokes speed equals c (requires c2 > 0 and c near 1).
double stokes_amplitude_for_speed(double c, double alpha);

/// Lambda_2 in lambda = 2 + Lambda_2 a^2 + O(a^4).
double lambda2_coefficient(double alpha);

/// Leading-order limit of the odd eigenvalue, (2^{alpha+1} - 5) / (2^{alpha+1} - 3).
double lambda1_limit(double alpha);

struct PredictedEigenvalue {
  std::string label;
  double value;
};

/// The four isolated eigenvalues of L^{-1} H near c = 1: -1, 0, lambda1, lambda2.
std::vector<PredictedEigenvalue> predicted_gep_eigenvalues(double a, double alpha);

}  // namespace petlab
