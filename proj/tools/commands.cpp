#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include "petlab/errors.hpp"
#include "petlab/petviashvili.hpp"
#include "petlab/spectrum_lab.hpp"
#include "petlab/stokes_asymptotics.hpp"

namespace petlab::cli {

namespace {

SignConvention parse_variant(const std::string& v) {
  if (v == "classical") return SignConvention::Classical;
  if (v == "shifted") return SignConvention::Shifted;
  throw UsageError("unknown variant '" + v + "' (expected classical or shifted)");
}

WaveConvention wave_convention(SignConvention v) {
  return v == SignConvention::Classical ? WaveConvention::Phi : WaveConvention::Psi;
}

Json complex_json(Complex z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

std::vector<double> speed_range(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw InvalidParameter("empty speed range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] with step " + std::to_string(step));
  }
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double c = lo + step * static_cast<double>(i);
    if (c > hi + 1e-9 * step) break;
    out.push_back(c);
  }
  return out;
}

void write_profile(const std::filesystem::path& path, const Field& f) {
  CsvWriter csv(path, {"x", "u"});
  const auto& g = f.grid();
  for (int j = 0; j < f.size(); ++j) csv.cell(g.node(j)).cell(f[j]).end_row();
}

Series profile_series(const std::string& label, const Field& f) {
  Series s{label, f.grid().nodes(), {}, false};
  s.y.assign(f.samples().begin(), f.samples().end());
  return s;
}

/// Wave used by `spectrum`: closed form where available, otherwise a computed one.
WaveSolution spectrum_wave(double c, double alpha, WaveConvention conv, int n) {
  if (has_exact_wave(alpha)) return to_convention(exact_wave(c, alpha, SpectralGrid(n)), conv);
  return iterated_wave(c, alpha, conv, n);
}

}  // namespace

int cmd_solve(const SolveArgs& args) {
  IterationConfig cfg;
  cfg.variant = parse_variant(args.variant);
  cfg.c = args.c;
  cfg.alpha = args.alpha;
  cfg.max_iter = args.max_iter;
  cfg.tol_residual = args.tol;
  cfg.tol_step = args.tol_step;
  const SpectralGrid grid(args.n);

  Field w0 = cfg.variant == SignConvention::Classical
                 ? initial_guess_classical(args.a, args.eps, args.alpha, grid)
                 : initial_guess_shifted(args.a, args.c, grid) +
                       args.eps * Field::from_function(grid, [](double x) { return std::sin(x); });
  const IterationReport r = run(w0, cfg);

  const auto dir = prepare_output(args.out);
  {
    CsvWriter csv(dir / "iterations.csv",
                  {"n", "M_n", "one_minus_M", "step_inf", "residual_inf", "phase_center", "argmax"});
    for (const auto& s : r.steps) {
      csv.cell(s.n).cell(s.m_n).cell(s.one_minus_m).cell(s.step_inf).cell(s.residual_inf).cell(s.phase_center)
          .cell(s.argmax).end_row();
    }
  }
  write_profile(dir / "final_profile.csv", r.final_field);

  Json error = nullptr;
  if (has_exact_wave(args.alpha) && args.c > 1.0) {
    const WaveSolution exact = to_convention(exact_wave(args.c, args.alpha, grid), wave_convention(cfg.variant));
    error = number(distance_inf(r.final_field, exact.profile));
  }
  const double final_residual = r.steps.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                : r.steps.back().residual_inf;
  Json report{{"schema_version", kSchemaVersion},
              {"command", "solve"},
              {"parameters", Json(args)},
              {"verdict", std::string(to_string(r.verdict))},
              {"iterations", r.steps.size()},
              {"final_residual", number(final_residual)},
              {"final_quotient", r.steps.empty() ? Json(nullptr) : number(r.steps.back().m_n)},
              {"m_limit", r.m_limit ? number(*r.m_limit) : Json(nullptr)},
              {"error_vs_exact", error}};
  write_json(dir / "report.json", report);

  if (args.svg) {
    write_svg(dir / "profile.svg", "final iterate", {profile_series("u", r.final_field)});
    Series res{"residual", {}, {}, false}, mdev{"|1 - M|", {}, {}, false};
    for (const auto& s : r.steps) {
      res.x.push_back(s.n);
      res.y.push_back(s.residual_inf);
      mdev.x.push_back(s.n);
      mdev.y.push_back(s.one_minus_m);
    }
    write_svg(dir / "convergence.svg", "iteration history", {res, mdev}, true);
  }
  std::cout << "verdict " << to_string(r.verdict) << " after " << r.steps.size() << " iterations";
  if (r.m_limit) std::cout << ", limiting quotient " << *r.m_limit;
  std::cout << '\n';
  return 0;
}

int cmd_spectrum(const SpectrumArgs& args) {
  const SignConvention variant = parse_variant(args.variant);
  const WaveSolution w = spectrum_wave(args.c, args.alpha, wave_convention(variant), args.n);
  const SpectrumReport r =
      variant == SignConvention::Classical ? gep_spectrum(w, args.modes) : shifted_gep_spectrum(w, args.modes);

  auto tag_of = [&](Complex z) -> std::string {
    for (const auto& t : r.tagged)
      if (t.value == z) return t.label;
    for (const auto& p : r.predicted_matches)
      if (p.value == z) return p.label;
    return "";
  };

  const auto dir = prepare_output(args.out);
  {
    CsvWriter csv(dir / "eigenvalues.csv", {"re", "im", "tag", "parity"});
    for (std::size_t i = 0; i < r.gep_eigenvalues.size(); ++i) {
      const Complex z = r.gep_eigenvalues[i];
      csv.cell(z.real()).cell(z.imag()).cell(tag_of(z)).cell(r.parity[i]).end_row();
    }
  }
  Json tagged = Json::array(), predicted = Json::array();
  for (const auto& t : r.tagged) {
    tagged.push_back({{"label", t.label}, {"value", complex_json(t.value)}, {"correlation", number(t.correlation)},
                      {"sign_L", t.sign_L}, {"sign_H", t.sign_H}});
  }
  for (const auto& p : r.predicted_matches) predicted.push_back({{"label", p.label}, {"value", complex_json(p.value)}});
  Json report{{"schema_version", kSchemaVersion},
              {"command", "spectrum"},
              {"parameters", Json(args)},
              {"wave", {{"provenance", std::string(to_string(w.provenance))}, {"residual", number(w.residual_inf)}}},
              {"verdict", std::string(to_string(r.verdict))},
              {"spectral_radius", number(r.spectral_radius)},
              {"unstable_count", r.unstable_count},
              {"tagged", tagged},
              {"predicted", predicted},
              {"constrained_count", r.constrained.size()}};
  write_json(dir / "report.json", report);

  if (args.svg) {
    Series pts{"eigenvalues", {}, {}, true};
    for (const Complex& z : r.gep_eigenvalues) {
      pts.x.push_back(z.real());
      pts.y.push_back(z.imag());
    }
    write_svg(dir / "eigenvalues.svg", "generalized eigenvalues (re, im)", {pts});
  }
  std::cout << "verdict " << to_string(r.verdict) << ", spectral radius " << r.spectral_radius << '\n';
  return 0;
}

int cmd_sweep(const SweepArgs& args) {
  const SignConvention variant = parse_variant(args.variant);
  const SweepResult s = sweep(speed_range(args.c_min, args.c_max, args.c_step), args.alpha, args.modes, variant);

  const auto dir = prepare_output(args.out);
  {
    CsvWriter csv(dir / "tracks.csv", {"c", "track_id", "re", "im"});
    for (std::size_t id = 0; id < s.tracks.size(); ++id) {
      for (const auto& sample : s.tracks[id]) {
        csv.cell(sample.c).cell(static_cast<long long>(id)).cell(sample.value.real()).cell(sample.value.imag())
            .end_row();
      }
    }
  }

  int min_minus_one = std::numeric_limits<int>::max();
  for (const auto& p : s.points) {
    int count = 0;
    for (const Complex& z : p.report.gep_eigenvalues) count += std::abs(z + 1.0) < 1e-4;
    min_minus_one = std::min(min_minus_one, count);
  }

  Json margin_json = nullptr;
  std::vector<MarginSample> margin;
  try {
    margin = complex_pair_margin(s);
  } catch (const NoComplexTrack&) {
  }
  {
    CsvWriter csv(dir / "margin.csv", {"c", "margin"});
    double worst = 0.0;
    for (const auto& m : margin) {
      csv.cell(m.c).cell(m.margin).end_row();
      worst = std::max(worst, m.margin);
    }
    if (!margin.empty()) margin_json = number(worst);
  }

  auto opt = [](const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); };
  Json events{{"schema_version", kSchemaVersion},
              {"command", "sweep"},
              {"parameters", Json(args)},
              {"points", s.points.size()},
              {"c_star", opt(s.events.c_star)},
              {"c_2star", opt(s.events.c_2star)},
              {"c_3star", opt(s.events.c_3star)},
              {"max_complex_margin", margin_json},
              {"min_multiplicity_at_minus_one", min_minus_one}};
  write_json(dir / "events.json", events);

  if (args.svg) {
    std::vector<Series> tracks;
    for (std::size_t id = 0; id < s.tracks.size(); ++id) {
      Series t{"", {}, {}, true};
      for (const auto& sample : s.tracks[id]) {
        if (std::abs(sample.value) > 5.0) continue;
        t.x.push_back(sample.c);
        t.y.push_back(sample.value.real());
      }
      if (!t.x.empty()) tracks.push_back(std::move(t));
    }
    write_svg(dir / "tracks.svg", "real parts of constrained eigenvalues", tracks);
    if (!margin.empty()) {
      Series m{"max |1 - lambda|", {}, {}, false};
      for (const auto& x : margin) {
        m.x.push_back(x.c);
        m.y.push_back(x.margin);
      }
      write_svg(dir / "margin.svg", "complex-pair margin", {m});
    }
  }
  std::cout << "swept " << s.points.size() << " speeds; events written to " << (dir / "events.json").string()
            << '\n';
  return 0;
}

int cmd_exact(const ExactArgs& args) {
  WaveConvention conv;
  if (args.convention == "phi") {
    conv = WaveConvention::Phi;
  } else if (args.convention == "psi") {
    conv = WaveConvention::Psi;
  } else {
    throw UsageError("unknown convention '" + args.convention + "' (expected phi or psi)");
  }
  const WaveSolution base = exact_wave(args.c, args.alpha, SpectralGrid(args.n));
  const WaveSolution w = to_convention(base, conv);
  const auto dir = prepare_output(args.out);
  write_profile(dir / "profile.csv", w.profile);
  Json report{{"schema_version", kSchemaVersion},
              {"command", "exact"},
              {"parameters", Json(args)},
              {"provenance", std::string(to_string(w.provenance))},
              {"residual", number(w.residual_inf)},
              {"cubic_integral", number(cubic_integral(base))},
              {"gradient_integral", number(gradient_integral(base))}};
  if (args.alpha == 2.0) report["modulus"] = kdv_k_from_c(args.c).k();
  write_json(dir / "report.json", report);
  if (args.svg) write_svg(dir / "profile.svg", "exact profile", {profile_series("u", w.profile)});
  std::cout << "residual " << w.residual_inf << '\n';
  return 0;
}

int cmd_stokes_check(const StokesCheckArgs& args) {
  const SpectralGrid grid(args.n);
  const double amplitudes[] = {0.2, 0.1, 0.05, 0.025};
  const auto dir = prepare_output(args.out);
  Json slopes = Json::object();
  {
    CsvWriter csv(dir / "residuals.csv", {"a", "order", "residual"});
    for (int order = 1; order <= 4; ++order) {
      std::vector<double> res;
      for (double a : amplitudes) {
        res.push_back(stokes_wave(a, args.alpha, grid, order).residual_inf);
        csv.cell(a).cell(order).cell(res.back()).end_row();
      }
      // Least-squares slope of log residual against log amplitude.
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const double m = static_cast<double>(res.size());
      for (std::size_t i = 0; i < res.size(); ++i) {
        const double x = std::log(amplitudes[i]), y = std::log(res[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      slopes[std::to_string(order)] = number((m * sxy - sx * sy) / (m * sxx - sx * sx));
    }
  }
  const auto s = stokes_coefficients(args.alpha);
  const auto crit = alpha_criticals();
  Json report{{"schema_version", kSchemaVersion},
              {"command", "stokes-check"},
              {"parameters", Json(args)},
              {"c2", number(s.c2)},
              {"c4", number(s.c4)},
              {"alpha0", crit.alpha0},
              {"alpha1", crit.alpha1},
              {"residual_slopes", slopes}};
  try {
    report["lambda1_limit"] = number(lambda1_limit(args.alpha));
    report["lambda2_coefficient"] = number(lambda2_coefficient(args.alpha));
  } catch (const PoleAtAlpha0&) {
    report["lambda1_limit"] = nullptr;
    report["lambda2_coefficient"] = nullptr;
  }
  write_json(dir / "report.json", report);
  std::cout << "order-4 residual slope " << slopes["4"].dump() << '\n';
  return 0;
}

}  // namespace petlab::cli
