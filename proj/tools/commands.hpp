#pragma once

#include <stdexcept>
#include <string>

#include "output.hpp"

namespace petlab::cli {

struct SolveArgs {
  std::string variant = "classical";
  double c = 2.0;
  double alpha = 2.0;
  double a = 0.4;
  double eps = 0.0;
  int n = 256;
  int max_iter = 500;
  double tol = 1e-10;
  double tol_step = 1e-13;
  std::string out = "out/solve";
  bool svg = false;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SolveArgs, variant, c, alpha, a, eps, n, max_iter, tol, tol_step, out, svg)

struct SpectrumArgs {
  std::string variant = "classical";
  double c = 2.0;
  double alpha = 2.0;
  int modes = 129;
  int n = 256;
  std::string out = "out/spectrum";
  bool svg = false;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SpectrumArgs, variant, c, alpha, modes, n, out, svg)

struct SweepArgs {
  std::string variant = "classical";
  double alpha = 2.0;
  double c_min = 1.05;
  double c_max = 3.9;
  double c_step = 0.01;
  int modes = 129;
  std::string out = "out/sweep";
  bool svg = false;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SweepArgs, variant, alpha, c_min, c_max, c_step, modes, out, svg)

struct ExactArgs {
  double c = 2.0;
  double alpha = 2.0;
  std::string convention = "phi";
  int n = 256;
  std::string out = "out/exact";
  bool svg = false;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ExactArgs, c, alpha, convention, n, out, svg)

struct StokesCheckArgs {
  double alpha = 2.0;
  int n = 128;
  std::string out = "out/stokes";
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(StokesCheckArgs, alpha, n, out)

struct VerifyArgs {
  std::string suite = "fast";
  std::string expected;
};

/// Bad command input that the library would not itself reject; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int cmd_solve(const SolveArgs& args);
int cmd_spectrum(const SpectrumArgs& args);
int cmd_sweep(const SweepArgs& args);
int cmd_exact(const ExactArgs& args);
int cmd_stokes_check(const StokesCheckArgs& args);
int cmd_verify(const VerifyArgs& args);

int cmd_presets_list();
int cmd_presets_manifest(const std::string& path);
/// `out` overrides the preset's output directory when non-empty.
int cmd_presets_run(const std::string& name, const std::string& out);

}  // namespace petlab::cli
