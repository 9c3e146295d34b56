#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "petlab/exact_waves.hpp"

namespace petlab {

/// Operator truncated to Fourier modes -K..K (dim = 2K + 1), complex exponential basis.
struct OperatorMatrix {
  int dim = 0;
  Eigen::MatrixXcd entries;
  double c = 1.0;
  double alpha = 2.0;
  SignConvention convention = SignConvention::Classical;
};

struct OperatorPair {
  OperatorMatrix L;
  OperatorMatrix H;
};

inline constexpr int kDefaultModes = 129;
/// Wave coefficients at and beyond the cutoff must fall below this (relative) level.
inline constexpr double kResolutionTolerance = 1e-12;
inline constexpr double kTagCorrelation = 0.999;
/// Imaginary parts below this are treated as zero when classifying eigenvalues.
inline constexpr double kImagTolerance = 1e-7;

OperatorPair build_matrices(const WaveSolution& w, int n_modes = kDefaultModes);

struct TaggedEigenvalue {
  std::string label;  // "profile" (lambda = -1) or "derivative" (lambda = 0)
  Complex value;
  double correlation = 0.0;
  int sign_L = 0;  // sign of <L v, v>
  int sign_H = 0;  // sign of <H v, v>
};

struct LabeledEigenvalue {
  std::string label;
  Complex value;
};

enum class SpectralVerdict { PredictConverge, PredictDiverge };

std::string_view to_string(SpectralVerdict verdict);

struct SpectrumReport {
  double c = 1.0;
  double alpha = 2.0;
  SignConvention convention = SignConvention::Classical;
  std::vector<Complex> gep_eigenvalues;
  std::vector<int> parity;  // +1 even, -1 odd, 0 unsplit; parallel to gep_eigenvalues
  std::vector<TaggedEigenvalue> tagged;
  std::vector<Complex> constrained;
  std::vector<Complex> iteration_eigenvalues;  // 1 - lambda over `constrained`
  std::vector<LabeledEigenvalue> predicted_matches;
  SpectralVerdict verdict = SpectralVerdict::PredictConverge;
  int unstable_count = 0;
  double spectral_radius = 0.0;  // max |1 - lambda| over `constrained`
};

/// Spectrum of L^{-1} H for the wave's own convention.
SpectrumReport gep_spectrum(const WaveSolution& w, int n_modes = kDefaultModes);

/// Same analysis for a Psi wave with the shifted operators.
SpectrumReport shifted_gep_spectrum(const WaveSolution& w, int n_modes = kDefaultModes);

struct NegativeCounts {
  int n_neg_L = 0;
  int n_neg_H = 0;
  int n_zero_H = 0;
  int n_neg_gep = 0;
};

inline constexpr double kZeroEigenvalueTolerance = 1e-8;

/// Smallest odd truncation that passes the resolution check for `w`.
int resolving_modes(const WaveSolution& w);

NegativeCounts negative_count_check(const WaveSolution& w, int n_modes = kDefaultModes);

struct SweepPoint {
  double c = 1.0;
  SpectrumReport report;
};

struct TrackSample {
  double c;
  Complex value;
};

struct SweepEvents {
  std::optional<double> c_star;   // a complex pair appears
  std::optional<double> c_2star;  // one real eigenvalue above 2
  std::optional<double> c_3star;  // two real eigenvalues above 2
};

struct SweepResult {
  double alpha = 2.0;
  SignConvention variant = SignConvention::Classical;
  std::vector<SweepPoint> points;                 // sorted by c, including refinement points
  std::vector<std::vector<TrackSample>> tracks;   // continuity-ordered constrained eigenvalues
  SweepEvents events;
};

struct SweepOptions {
  int n_points = 256;
  double match_distance = 0.1;
  int max_refinements = 4;
  double bisection_tolerance = 1e-4;
  unsigned threads = 0;  // 0: PETLAB_THREADS or hardware concurrency
};

/// Wave of speed c from a cold-started Shifted iteration, returned in `convention`.
WaveSolution iterated_wave(double c, double alpha, WaveConvention convention, int n_points = 256);

SweepResult sweep(const std::vector<double>& c_range, double alpha, int n_modes,
                  SignConvention variant, const SweepOptions& options = {});

struct MarginSample {
  double c;
  double margin;
};

/// max |1 - lambda| over non-real constrained eigenvalues, at each c where they exist.
std::vector<MarginSample> complex_pair_margin(const SweepResult& result);

/// Worker count for sweeps: PETLAB_THREADS if set, otherwise hardware concurrency.
unsigned sweep_threads();

}  // namespace petlab
