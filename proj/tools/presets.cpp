#include <iomanip>
#include <iostream>

#include "commands.hpp"

namespace petlab::cli {

namespace {

struct Preset {
  std::string name;
  std::string figure;
  std::string command;
  Json parameters;
};

Json solve(std::string variant, double c, double alpha, double eps = 0.0, int max_iter = 500,
           double tol_step = 1e-13) {
  SolveArgs a;
  a.variant = std::move(variant);
  a.c = c;
  a.alpha = alpha;
  a.eps = eps;
  a.max_iter = max_iter;
  a.tol_step = tol_step;
  a.svg = true;
  return a;
}

Json sweep_range(double alpha, double lo, double hi) {
  SweepArgs a;
  a.alpha = alpha;
  a.c_min = lo;
  a.c_max = hi;
  a.svg = true;
  return a;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"fig-kdv-c2", "Classical iteration for KdV at c = 2: quotient, residual and profile history", "solve",
       solve("classical", 2.0, 2.0)},
      {"fig-kdv-c23", "Classical iteration for KdV at c = 2.3: slow convergence near the marginal speed",
       "solve", solve("classical", 2.3, 2.0, 0.01, 2000)},
      {"fig-kdv-c3", "Classical iteration for KdV at c = 3: period-two oscillation of the quotient", "solve",
       solve("classical", 3.0, 2.0)},
      {"fig-bo-c11", "Classical iteration for Benjamin-Ono at c = 1.1 with an odd seed: lateral drift",
       "solve", solve("classical", 1.1, 1.0, 0.01)},
      {"fig-bo-c13", "Classical iteration for Benjamin-Ono at c = 1.3: non-convergent quotient history",
       "solve", solve("classical", 1.3, 1.0)},
      {"fig-bo-c153", "Classical iteration for Benjamin-Ono at c = 1.53: period-two oscillation", "solve",
       solve("classical", 1.53, 1.0, 0.0, 500, 1e-8)},
      {"fig-spectrum-small-amplitude", "Generalized eigenvalues near the bifurcation point, KdV at c = 1.05",
       "spectrum", [] {
         SpectrumArgs a;
         a.c = 1.05;
         a.svg = true;
         return Json(a);
       }()},
      {"fig-eigensweep-alpha2", "Constrained eigenvalues against c for KdV: collision and level-two crossings",
       "sweep", sweep_range(2.0, 1.05, 3.9)},
      {"fig-eigensweep-alpha1", "Constrained eigenvalues against c for Benjamin-Ono: persistent double -1",
       "sweep", sweep_range(1.0, 1.05, 2.0)},
      {"fig-complex-margin", "Largest |1 - lambda| over the complex pair for KdV", "sweep",
       sweep_range(2.0, 1.2, 3.9)},
      {"fig-shift-kdv-c3", "Mean-shifted iteration for KdV at c = 3: monotone convergence", "solve",
       solve("shifted", 3.0, 2.0)},
      {"fig-shift-bo-c16", "Mean-shifted iteration for Benjamin-Ono at c = 1.6: monotone convergence", "solve",
       solve("shifted", 1.6, 1.0)},
  };
  return all;
}

const Preset& find(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw UsageError("unknown preset '" + name + "'");
}

}  // namespace

int cmd_presets_list() {
  for (const auto& p : presets()) std::cout << std::left << std::setw(30) << p.name << p.figure << '\n';
  return 0;
}

int cmd_presets_manifest(const std::string& path) {
  Json doc{{"schema_version", kSchemaVersion}, {"presets", Json::array()}};
  for (const auto& p : presets()) {
    doc["presets"].push_back(
        {{"name", p.name}, {"figure", p.figure}, {"command", p.command}, {"parameters", p.parameters}});
  }
  write_json(path, doc);
  return 0;
}

int cmd_presets_run(const std::string& name, const std::string& out) {
  const Preset& p = find(name);
  Json params = p.parameters;
  params["out"] = out.empty() ? "out/" + p.name : out;
  prepare_output(params["out"].get<std::string>());
  write_json(std::filesystem::path(params["out"].get<std::string>()) / "preset.json",
             {{"schema_version", kSchemaVersion}, {"name", p.name}, {"command", p.command}, {"parameters", params}});
  if (p.command == "solve") return cmd_solve(params.get<SolveArgs>());
  if (p.command == "spectrum") return cmd_spectrum(params.get<SpectrumArgs>());
  return cmd_sweep(params.get<SweepArgs>());
}

}  // namespace petlab::cli
