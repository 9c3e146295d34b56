#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "petlab/petviashvili.hpp"
#include "petlab/spectrum_lab.hpp"
#include "petlab/stokes_asymptotics.hpp"

namespace petlab::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kPoints = 256;

IterationReport classical_run(double c, double alpha, double eps, int max_iter = 500, double tol_step = 1e-13) {
  IterationConfig cfg;
  cfg.c = c;
  cfg.alpha = alpha;
  cfg.max_iter = max_iter;
  cfg.tol_step = tol_step;
  return run(initial_guess_classical(0.4, eps, alpha, SpectralGrid(kPoints)), cfg);
}

IterationReport shifted_run(double c, double alpha) {
  IterationConfig cfg;
  cfg.variant = SignConvention::Shifted;
  cfg.c = c;
  cfg.alpha = alpha;
  return run(initial_guess_shifted(0.4, c, SpectralGrid(kPoints)), cfg);
}

double exact_residual_max() {
  const SpectralGrid g(kPoints);
  double worst = 0.0;
  for (double k : {0.3, 0.5, 0.8}) worst = std::max(worst, kdv_cnoidal(EllipticModulus(k), g).residual_inf);
  for (double c : {1.1, 1.6, 2.0}) worst = std::max(worst, bo_wave(c, g).residual_inf);
  return worst;
}

double kdv_c2_error() {
  const IterationReport r = classical_run(2.0, 2.0, 0.0);
  if (r.verdict != Verdict::Converged) return std::numeric_limits<double>::infinity();
  return distance_inf(r.final_field, exact_wave(2.0, 2.0, SpectralGrid(kPoints)).profile);
}

double two_cycle_quotient(double c, double alpha, double tol_step = 1e-13) {
  const IterationReport r = classical_run(c, alpha, 0.0, 500, tol_step);
  return r.verdict == Verdict::TwoCycle && r.m_limit ? *r.m_limit : kNaN;
}

double shifted_error(double c, double alpha) {
  const IterationReport r = shifted_run(c, alpha);
  if (r.verdict != Verdict::Converged) return std::numeric_limits<double>::infinity();
  const WaveSolution psi = to_convention(exact_wave(c, alpha, SpectralGrid(kPoints)), WaveConvention::Psi);
  return distance_inf(r.final_field, psi.profile);
}

// Iterations 100..300 whose crest moves against sign(eps), plus one if the run converged.
double drift_violations() {
  double bad = 0;
  for (double eps : {0.01, -0.01}) {
    const IterationReport r = classical_run(1.1, 1.0, eps);
    if (r.verdict == Verdict::Converged || r.steps.size() <= 300u) {
      bad += 1;
      continue;
    }
    for (int n = 101; n <= 300; ++n) bad += (r.steps[n].phase_center - r.steps[n - 1].phase_center) * eps <= 0.0;
  }
  return bad;
}

double stokes_tag_deviation() {
  const SpectrumReport r = gep_spectrum(stokes_wave(0.05, 2.0, SpectralGrid(kPoints)));
  if (r.tagged.size() != 2u || r.predicted_matches.size() != 2u) return std::numeric_limits<double>::infinity();
  const double targets[] = {-1.0, 0.0, 0.6, 2.0};
  const Complex found[] = {r.tagged[0].value, r.tagged[1].value, r.predicted_matches[0].value,
                           r.predicted_matches[1].value};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(found[i] - targets[i]));
  return worst;
}

// max over a of |lambda_2 - (2 + coefficient a^2)| / a^3.
double stokes_lambda2_scaled() {
  double worst = 0.0;
  for (double a : {0.05, 0.1}) {
    const SpectrumReport r = gep_spectrum(stokes_wave(a, 2.0, SpectralGrid(kPoints)));
    Complex l2 = kNaN;
    for (const auto& p : r.predicted_matches)
      if (p.label == "lambda2") l2 = p.value;
    worst = std::max(worst, std::abs(l2 - (2.0 + lambda2_coefficient(2.0) * a * a)) / (a * a * a));
  }
  return worst;
}

double classical_verdict_mismatches() {
  struct Cell {
    double c, alpha, eps;
  };
  const Cell cells[] = {{2.0, 2.0, 0.0}, {2.3, 2.0, 0.0}, {3.0, 2.0, 0.0}, {1.1, 1.0, 0.01}, {1.6, 1.0, 0.0}};
  double mismatches = 0;
  for (const Cell& cell : cells) {
    const SpectrumReport s = gep_spectrum(exact_wave(cell.c, cell.alpha, SpectralGrid(kPoints)));
    const bool converged = classical_run(cell.c, cell.alpha, cell.eps, 2000).verdict == Verdict::Converged;
    mismatches += (s.verdict == SpectralVerdict::PredictConverge) != converged;
  }
  return mismatches;
}

double shifted_matrix_failures() {
  double failures = 0;
  for (double c : {1.3, 1.6, 2.0, 3.0, 5.0}) {
    for (double alpha : {0.8, 1.0, 1.5, 2.0}) {
      const IterationReport r = shifted_run(c, alpha);
      const bool ok = r.verdict == Verdict::Converged && r.steps.back().residual_inf <= 1e-10;
      const WaveSolution w = iterated_wave(c, alpha, WaveConvention::Psi, 1024);
      const SpectrumReport s = shifted_gep_spectrum(w, std::max(kDefaultModes, resolving_modes(w)));
      failures += !ok || s.verdict != SpectralVerdict::PredictConverge;
    }
  }
  return failures;
}

double marginal_iteration_ratio() {
  const IterationReport base = classical_run(2.0, 2.0, 0.01, 4000);
  const IterationReport slow = classical_run(2.3, 2.0, 0.01, 4000);
  if (base.verdict != Verdict::Converged || slow.verdict != Verdict::Converged) return kNaN;
  return static_cast<double>(slow.steps.size()) / static_cast<double>(base.steps.size());
}

std::vector<double> speeds(double lo, double hi) {
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double c = lo + 0.01 * i;
    if (c > hi + 1e-9) break;
    out.push_back(c);
  }
  return out;
}

const SweepResult& kdv_sweep() {
  static const SweepResult s = sweep(speeds(1.05, 3.9), 2.0, kDefaultModes, SignConvention::Classical);
  return s;
}

double complex_margin_max() {
  double worst = 0.0;
  for (const auto& m : complex_pair_margin(kdv_sweep())) worst = std::max(worst, m.margin);
  return worst;
}

double bo_min_multiplicity() {
  const SweepResult s = sweep(speeds(1.05, 2.0), 1.0, kDefaultModes, SignConvention::Classical);
  int lowest = std::numeric_limits<int>::max();
  for (const auto& p : s.points) {
    int count = 0;
    for (const Complex& z : p.report.gep_eigenvalues) count += std::abs(z + 1.0) < 1e-4;
    lowest = std::min(lowest, count);
  }
  return lowest;
}

using Measure = std::function<double()>;

const std::map<std::string, Measure>& registry() {
  static const std::map<std::string, Measure> checks = {
      {"exact_residual_max", exact_residual_max},
      {"kdv_c2_error", kdv_c2_error},
      {"kdv_c3_m_limit", [] { return two_cycle_quotient(3.0, 2.0); }},
      {"bo_c153_m_limit", [] { return two_cycle_quotient(1.53, 1.0, 1e-8); }},
      {"bo_c16_m_limit", [] { return two_cycle_quotient(1.6, 1.0); }},
      {"shift_kdv_c3_error", [] { return shifted_error(3.0, 2.0); }},
      {"shift_bo_c16_error", [] { return shifted_error(1.6, 1.0); }},
      {"bo_drift_violations", drift_violations},
      {"stokes_tag_deviation", stokes_tag_deviation},
      {"stokes_lambda2_scaled", stokes_lambda2_scaled},
      {"classical_verdict_mismatches", classical_verdict_mismatches},
      {"shifted_matrix_failures", shifted_matrix_failures},
      {"kdv_c23_iteration_ratio", marginal_iteration_ratio},
      {"c_star", [] { return kdv_sweep().events.c_star.value_or(kNaN); }},
      {"c_2star", [] { return kdv_sweep().events.c_2star.value_or(kNaN); }},
      {"c_3star", [] { return kdv_sweep().events.c_3star.value_or(kNaN); }},
      {"complex_margin_max", complex_margin_max},
      {"bo_min_multiplicity", bo_min_multiplicity},
  };
  return checks;
}

struct Expectation {
  std::string name;
  std::string suite;
  std::string kind;  // value, max, below, min
  double target = 0.0;
  double tol = 0.0;

  bool accepts(double v) const {
    if (!std::isfinite(v)) return false;
    if (kind == "value") return std::abs(v - target) <= tol;
    if (kind == "max") return v <= target;
    if (kind == "below") return v < target;
    return v >= target;
  }

  std::string describe() const {
    std::ostringstream os;
    os << std::setprecision(6);
    if (kind == "value") os << target << " +/- " << tol;
    if (kind == "max") os << "<= " << target;
    if (kind == "below") os << "< " << target;
    if (kind == "min") os << ">= " << target;
    return os.str();
  }
};

std::vector<Expectation> load_expectations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read expected values from " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("corrupted expected file " + path + ": " + e.what());
  }
  if (!doc.is_object() || doc.value("schema_version", 0) != kSchemaVersion || !doc.contains("checks") ||
      !doc["checks"].is_object()) {
    throw UsageError("expected file " + path + " lacks schema_version " + std::to_string(kSchemaVersion) +
                     " or a checks object");
  }
  std::vector<Expectation> out;
  for (const auto& [name, spec] : doc["checks"].items()) {
    if (!registry().count(name)) throw UsageError("unknown check '" + name + "' in " + path);
    try {
      Expectation e;
      e.name = name;
      e.suite = spec.at("suite").get<std::string>();
      if (spec.contains("value")) {
        e.kind = "value";
        e.target = spec.at("value").get<double>();
        e.tol = spec.at("tol").get<double>();
      } else {
        for (const char* k : {"max", "below", "min"}) {
          if (spec.contains(k)) {
            e.kind = k;
            e.target = spec.at(k).get<double>();
          }
        }
      }
      if (e.kind.empty() || (e.suite != "fast" && e.suite != "full")) throw UsageError("");
      out.push_back(e);
    } catch (const std::exception&) {
      throw UsageError("malformed entry '" + name + "' in " + path);
    }
  }
  return out;
}

}  // namespace

int cmd_verify(const VerifyArgs& args) {
  if (args.suite != "fast" && args.suite != "full") throw UsageError("suite must be fast or full");
  const auto expectations = load_expectations(args.expected);
  int failures = 0, ran = 0;
  std::cout << std::left << std::setw(30) << "check" << std::setw(22) << "measured" << std::setw(22) << "expected"
            << "result\n";
  for (const auto& e : expectations) {
    if (args.suite == "fast" && e.suite != "fast") continue;
    const auto t0 = std::chrono::steady_clock::now();
    double v;
    std::string note;
    try {
      v = registry().at(e.name)();
    } catch (const std::exception& ex) {
      v = kNaN;
      note = std::string(" (") + ex.what() + ")";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = e.accepts(v);
    failures += !ok;
    ++ran;
    std::ostringstream measured;
    measured << std::setprecision(8) << v;
    std::cout << std::setw(30) << e.name << std::setw(22) << measured.str() << std::setw(22) << e.describe()
              << (ok ? "PASS" : "FAIL") << " [" << std::fixed << std::setprecision(1) << secs << " s]"
              << std::defaultfloat << note << '\n';
  }
  std::cout << ran - failures << " of " << ran << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace petlab::cli
