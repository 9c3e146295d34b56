#include "petlab/petviashvili.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "petlab/stokes_asymptotics.hpp"

namespace petlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

WaveConvention wave_convention(const IterationConfig& cfg) {
  return cfg.variant == SignConvention::Classical ? WaveConvention::Phi : WaveConvention::Psi;
}

void validate(const IterationConfig& cfg) {
  if (cfg.max_iter < 1) throw InvalidParameter("max_iter must be at least 1");
  if (!(cfg.tol_residual > 0.0) || !(cfg.tol_step > 0.0)) {
    throw InvalidParameter("iteration tolerances must be positive");
  }
  if (!(cfg.alpha > 0.0)) throw InvalidParameter("alpha must be positive");
}

double crest_phase(const Field& w) {
  // u_1 = |u_1| e^{-i x0} for a crest at x0.
  return -std::arg(w.coefficients()[1]);
}

int argmax_index(const Field& w) {
  const auto s = w.samples();
  return static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin());
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Converged: return "Converged";
    case Verdict::MaxIterExceeded: return "MaxIterExceeded";
    case Verdict::TwoCycle: return "TwoCycle";
    case Verdict::QuotientBlowup: return "QuotientBlowup";
  }
  return "Unknown";
}

SymbolSpec iteration_symbol(const IterationConfig& cfg) {
  return SymbolSpec{cfg.alpha, cfg.c, cfg.variant};
}

double quotient(const Field& w, const IterationConfig& cfg) {
  const Field square = multiply(w, w);
  const double cubic = inner_product(square, w);
  double scale = 0.0;
  for (double v : w.samples()) scale += std::abs(v * v * v);
  scale *= kTwoPi / w.size();
  if (!(std::abs(cubic) > kDenominatorTolerance * scale)) {
    throw VanishingDenominator(cubic, scale);
  }
  return inner_product(apply_operator(w, iteration_symbol(cfg)), w) / cubic;
}

Field step(const Field& w, const IterationConfig& cfg) {
  const double m = quotient(w, cfg);
  return (m * m) * invert_operator(multiply(w, w), iteration_symbol(cfg));
}

double iteration_residual(const Field& w, const IterationConfig& cfg) {
  return ode_residual(w, cfg.c, cfg.alpha, wave_convention(cfg));
}

IterationReport run(const Field& w0, const IterationConfig& cfg) {
  validate(cfg);
  const SymbolSpec spec = iteration_symbol(cfg);
  IterationReport report{{}, Verdict::MaxIterExceeded, w0, std::nullopt, std::nullopt};

  Field previous = w0;  // w_{n-1}
  Field current = w0;   // w_n
  double previous_m = 0.0;
  double phase = crest_phase(w0);

  for (int n = 0; n < cfg.max_iter; ++n) {
    const double m = quotient(current, cfg);
    if (!std::isfinite(m) || std::abs(m) > kQuotientBlowup) {
      report.steps.push_back({n, m, std::abs(1.0 - m), 0.0, 0.0, phase, argmax_index(current)});
      report.verdict = Verdict::QuotientBlowup;
      break;
    }
    Field next = (m * m) * invert_operator(multiply(current, current), spec);

    StepDiag diag;
    diag.n = n;
    diag.m_n = m;
    diag.one_minus_m = std::abs(1.0 - m);
    diag.step_inf = distance_inf(next, current);
    diag.residual_inf = iteration_residual(next, cfg);
    phase += std::remainder(crest_phase(next) - phase, kTwoPi);
    diag.phase_center = phase;
    diag.argmax = argmax_index(next);
    report.steps.push_back(diag);

    if (!std::isfinite(diag.residual_inf)) {
      report.final_field = std::move(next);
      report.verdict = Verdict::QuotientBlowup;
      break;
    }
    if (diag.residual_inf <= cfg.tol_residual) {
      report.final_field = std::move(next);
      report.verdict = Verdict::Converged;
      break;
    }
    if (n >= kTwoCycleStart && distance_inf(next, previous) <= cfg.tol_step &&
        diag.step_inf > 100.0 * cfg.tol_step) {
      // m is M(w_n); previous_m is M(w_{n-1}). Report the even-indexed one.
      report.m_limit = n % 2 == 0 ? m : previous_m;
      report.cycle_pair = std::make_pair(current, next);
      report.final_field = std::move(next);
      report.verdict = Verdict::TwoCycle;
      break;
    }
    previous = std::move(current);
    current = std::move(next);
    previous_m = m;
    report.final_field = current;
  }
  return report;
}

Field initial_guess_classical(double a, double eps, double alpha, const SpectralGrid& grid) {
  if (alpha == 2.0 || alpha == 1.0) {
    const double offset = alpha == 2.0 ? 3.0 : 1.0;
    return Field::from_function(grid, [=](double x) {
      return a * std::cos(x) + 0.5 * a * a * (std::cos(2.0 * x) - offset) + eps * std::sin(x);
    });
  }
  const auto coeffs = stokes_coefficients(alpha);
  Field correction = evaluate(coeffs.phi2, grid);
  correction *= a * a;
  return correction + Field::from_function(grid, [=](double x) {
           return a * std::cos(x) + eps * std::sin(x);
         });
}

Field initial_guess_shifted(double a, double c, const SpectralGrid& grid) {
  return Field::from_function(grid, [=](double x) { return c + a * std::cos(x); });
}

WaveSolution as_wave(const IterationReport& report, const IterationConfig& cfg) {
  return make_wave(report.final_field, cfg.c, cfg.alpha, wave_convention(cfg),
                   Provenance::Iterated);
}

}  // namespace petlab
