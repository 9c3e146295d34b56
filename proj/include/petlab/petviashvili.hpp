#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "petlab/exact_waves.hpp"

namespace petlab {

/// Classical runs iterate with L = -c - D_alpha on Phi profiles; Shifted runs
/// iterate with c - D_alpha on Psi profiles. The quotient enters squared.
struct IterationConfig {
  SignConvention variant = SignConvention::Classical;
  double c = 2.0;
  double alpha = 2.0;
  int max_iter = 500;
  double tol_residual = 1e-10;
  double tol_step = 1e-13;
};

struct StepDiag {
  int n = 0;
  double m_n = 0.0;          // quotient of w_n
  double one_minus_m = 0.0;  // |1 - m_n|
  double step_inf = 0.0;     // |w_{n+1} - w_n|_inf
  double residual_inf = 0.0; // equation residual of w_{n+1}
  double phase_center = 0.0; // crest position of w_{n+1} from the first Fourier mode, unwrapped
  int argmax = 0;            // grid index of max w_{n+1}
};

enum class Verdict { Converged, MaxIterExceeded, TwoCycle, QuotientBlowup };

std::string_view to_string(Verdict verdict);

struct IterationReport {
  std::vector<StepDiag> steps;
  Verdict verdict = Verdict::MaxIterExceeded;
  Field final_field;
  std::optional<std::pair<Field, Field>> cycle_pair;
  std::optional<double> m_limit;
};

/// Guard for the quotient denominator, relative to the integral of |w|^3.
inline constexpr double kDenominatorTolerance = 1e-10;
inline constexpr double kQuotientBlowup = 1e6;
/// Two-cycle checks start at this iteration.
inline constexpr int kTwoCycleStart = 20;

SymbolSpec iteration_symbol(const IterationConfig& cfg);

/// <L w, w> / <w^2, w> with the variant's operator.
double quotient(const Field& w, const IterationConfig& cfg);

/// w -> M(w)^2 L^{-1}(w^2).
Field step(const Field& w, const IterationConfig& cfg);

/// Sup-norm residual of the fixed-point equation the variant solves.
double iteration_residual(const Field& w, const IterationConfig& cfg);

IterationReport run(const Field& w0, const IterationConfig& cfg);

/// a cos x + a^2 (second-order correction) + eps sin x; the alpha = 1 and
/// alpha = 2 corrections are the classical printed guesses.
Field initial_guess_classical(double a, double eps, double alpha, const SpectralGrid& grid);

/// c + a cos x.
Field initial_guess_shifted(double a, double c, const SpectralGrid& grid);

/// Wraps a converged run as a WaveSolution in the matching convention.
WaveSolution as_wave(const IterationReport& report, const IterationConfig& cfg);

}  // namespace petlab
