#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "petlab/errors.hpp"

#ifndef PETLAB_DEFAULT_EXPECTED
#define PETLAB_DEFAULT_EXPECTED "data/expected.json"
#endif

using namespace petlab::cli;

namespace {

const std::vector<std::string> kVariants = {"classical", "shifted"};

void add_output(CLI::App* cmd, std::string& out, bool* svg) {
  cmd->add_option("--out", out, "Output directory")->capture_default_str();
  if (svg) cmd->add_flag("--svg", *svg, "Also write SVG plots");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic traveling waves of fractional KdV by Petviashvili iteration"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run the classical or mean-shifted iteration");
  s->add_option("--variant", solve.variant)->check(CLI::IsMember(kVariants))->capture_default_str();
  s->add_option("--c", solve.c, "Wave speed")->capture_default_str();
  s->add_option("--alpha", solve.alpha, "Dispersion exponent")->capture_default_str();
  s->add_option("--a", solve.a, "Initial amplitude")->capture_default_str();
  s->add_option("--eps", solve.eps, "Odd seed amplitude")->capture_default_str();
  s->add_option("--n", solve.n, "Grid points")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--max-iter", solve.max_iter)->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--tol", solve.tol, "Residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--tol-step", solve.tol_step, "Two-cycle tolerance on |w_{n+2} - w_n|")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output(s, solve.out, &solve.svg);

  SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "Generalized eigenvalues of the linearized iteration");
  sp->add_option("--variant", spectrum.variant)->check(CLI::IsMember(kVariants))->capture_default_str();
  sp->add_option("--c", spectrum.c)->capture_default_str();
  sp->add_option("--alpha", spectrum.alpha)->capture_default_str();
  sp->add_option("--modes", spectrum.modes, "Fourier modes (odd)")->capture_default_str();
  sp->add_option("--n", spectrum.n, "Grid points for the wave")->capture_default_str();
  add_output(sp, spectrum.out, &spectrum.svg);

  SweepArgs sw;
  auto* swc = app.add_subcommand("sweep", "Track constrained eigenvalues over a speed range");
  swc->add_option("--variant", sw.variant)->check(CLI::IsMember(kVariants))->capture_default_str();
  swc->add_option("--alpha", sw.alpha)->capture_default_str();
  swc->add_option("--c-min", sw.c_min)->capture_default_str();
  swc->add_option("--c-max", sw.c_max)->capture_default_str();
  swc->add_option("--c-step", sw.c_step)->capture_default_str();
  swc->add_option("--modes", sw.modes)->capture_default_str();
  add_output(swc, sw.out, &sw.svg);

  ExactArgs exact;
  auto* ex = app.add_subcommand("exact", "Closed-form wave for alpha = 1 or 2");
  ex->add_option("--c", exact.c)->capture_default_str();
  ex->add_option("--alpha", exact.alpha)->capture_default_str();
  ex->add_option("--convention", exact.convention)->check(CLI::IsMember({"phi", "psi"}))->capture_default_str();
  ex->add_option("--n", exact.n)->capture_default_str();
  add_output(ex, exact.out, &exact.svg);

  StokesCheckArgs stokes;
  auto* st = app.add_subcommand("stokes-check", "Residual scaling of the small-amplitude expansion");
  st->add_option("--alpha", stokes.alpha)->capture_default_str();
  st->add_option("--n", stokes.n)->capture_default_str();
  add_output(st, stokes.out, nullptr);

  std::string preset_name, preset_out, manifest_path = "manifest.json";
  auto* pr = app.add_subcommand("presets", "Named experiments");
  pr->require_subcommand(1);
  auto* pl = pr->add_subcommand("list", "List presets");
  auto* pm = pr->add_subcommand("manifest", "Write the preset manifest");
  pm->add_option("path", manifest_path)->capture_default_str();
  auto* prun = pr->add_subcommand("run", "Run one preset");
  prun->add_option("name", preset_name)->required();
  prun->add_option("--out", preset_out, "Output directory (default out/<name>)");

  VerifyArgs verify;
  verify.expected = PETLAB_DEFAULT_EXPECTED;
  auto* ve = app.add_subcommand("verify", "Compare measurements with stored reference values");
  ve->add_option("--suite", verify.suite)->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
  ve->add_option("--expected", verify.expected)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*sp) return cmd_spectrum(spectrum);
    if (*swc) return cmd_sweep(sw);
    if (*ex) return cmd_exact(exact);
    if (*st) return cmd_stokes_check(stokes);
    if (*ve) return cmd_verify(verify);
    if (*pl) return cmd_presets_list();
    if (*pm) return cmd_presets_manifest(manifest_path);
    if (*prun) return cmd_presets_run(preset_name, preset_out);
  } catch (const petlab::ResonantSpeed& e) {
    std::cerr << "error: ResonantSpeed: " << e.what() << '\n';
    return 3;
  } catch (const petlab::VanishingDenominator& e) {
    std::cerr << "error: VanishingDenominator: " << e.what() << '\n';
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const petlab::InvalidParameter& e) {
    std::cerr << "error: InvalidParameter: " << e.what() << '\n';
    return 2;
  } catch (const petlab::OddOrTooSmallGrid& e) {
    std::cerr << "error: OddOrTooSmallGrid: " << e.what() << '\n';
    return 2;
  } catch (const petlab::AlphaTooSmall& e) {
    std::cerr << "error: AlphaTooSmall: " << e.what() << '\n';
    return 2;
  } catch (const petlab::ModulusOutOfRange& e) {
    std::cerr << "error: ModulusOutOfRange: " << e.what() << '\n';
    return 2;
  } catch (const petlab::SpeedOutOfRange& e) {
    std::cerr << "error: SpeedOutOfRange: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
