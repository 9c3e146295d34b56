#include "petlab/spectrum_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numeric>
#include <thread>

#include "petlab/petviashvili.hpp"
#include "petlab/stokes_asymptotics.hpp"

namespace petlab {

namespace {

constexpr double kEvenTolerance = 1e-10;
constexpr double kTagWindow = 1e-2;
// Tracks are only checked for continuity inside this disk; eigenvalues near a
// resonance move too fast to be worth refining.
constexpr double kTrackWindow = 5.0;
constexpr int kWaveMaxIter = 3000;
constexpr double kWaveAcceptResidual = 1e-9;

// Coefficient of e^{ikx} for any integer k, the Nyquist term split evenly.
Complex mode_coefficient(const Coefficients& p, int k) {
  const int nyq = static_cast<int>(p.size()) - 1;
  const int a = std::abs(k);
  if (a > nyq) return {0.0, 0.0};
  if (a == nyq) return 0.5 * p[a];
  return k >= 0 ? p[a] : std::conj(p[a]);
}

void check_modes(int n_modes) {
  if (n_modes < 3 || n_modes % 2 == 0) {
    throw InvalidParameter("n_modes must be odd and at least 3");
  }
}

void check_resolution(const Coefficients& p, int cutoff) {
  double peak = 1.0;
  for (const auto& v : p) peak = std::max(peak, std::abs(v));
  const int nyq = static_cast<int>(p.size()) - 1;
  for (int n = cutoff; n <= nyq; ++n) {
    const double magnitude = std::abs(mode_coefficient(p, n));
    if (magnitude > kResolutionTolerance * peak) throw UnderResolvedWave(n, magnitude);
  }
}

bool is_even(const Coefficients& p) {
  double peak = 1.0;
  for (const auto& v : p) peak = std::max(peak, std::abs(v));
  return std::all_of(p.begin(), p.end(),
                     [peak](const Complex& v) { return std::abs(v.imag()) <= kEvenTolerance * peak; });
}

// Real trig basis [1, cos x..cos Kx, sin x..sin Kx] in terms of e^{inx}, n = -K..K.
Eigen::MatrixXcd trig_basis(int K) {
  const int dim = 2 * K + 1;
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(dim, dim);
  Q(K, 0) = 1.0;
  for (int n = 1; n <= K; ++n) {
    Q(K + n, n) = r;
    Q(K - n, n) = r;
    Q(K + n, K + n) = Complex(0.0, -r);
    Q(K - n, K + n) = Complex(0.0, r);
  }
  return Q;
}

struct RealProblem {
  int K = 0;
  Eigen::MatrixXd H;
  Eigen::VectorXd L;
  Eigen::VectorXd profile;     // wave in the trig basis
  Eigen::VectorXd derivative;  // its x-derivative
  bool even = false;
};

RealProblem real_problem(const WaveSolution& w, int n_modes) {
  const OperatorPair ops = build_matrices(w, n_modes);
  const int K = n_modes / 2;
  const Eigen::MatrixXcd Q = trig_basis(K);
  const Coefficients p = w.profile.coefficients();

  Eigen::VectorXcd pc(n_modes);
  Eigen::VectorXcd dc(n_modes);
  for (int n = -K; n <= K; ++n) {
    pc(n + K) = mode_coefficient(p, n);
    dc(n + K) = Complex(0.0, n) * pc(n + K);
  }

  RealProblem rp;
  rp.K = K;
  rp.H = (Q.adjoint() * ops.H.entries * Q).real();
  rp.L = (Q.adjoint() * ops.L.entries * Q).real().diagonal();
  rp.profile = (Q.adjoint() * pc).real();
  rp.derivative = (Q.adjoint() * dc).real();
  rp.even = is_even(p);
  return rp;
}

struct EigenPair {
  Complex value;
  Eigen::VectorXcd vector;  // full trig-basis coordinates
  int parity = 0;
};

// Finite eigenpairs of H v = lambda L v restricted to `index`, with L diagonal.
// Modes where L vanishes are eliminated by a Schur complement.
std::vector<EigenPair> solve_block(const RealProblem& rp, const std::vector<int>& index,
                                   int parity, bool allow_singular) {
  std::vector<int> regular;
  std::vector<int> singular;
  for (int i : index) {
    if (std::abs(rp.L(i)) <= kSingularTolerance) {
      singular.push_back(i);
    } else {
      regular.push_back(i);
    }
  }
  if (!singular.empty() && !allow_singular) {
    const int i = singular.front();
    throw ResonantSpeed(i > rp.K ? i - rp.K : i, rp.L(i));
  }
  const int nr = static_cast<int>(regular.size());
  const int ns = static_cast<int>(singular.size());
  Eigen::MatrixXd Hrr(nr, nr), Hrs(nr, ns), Hsr(ns, nr), Hss(ns, ns);
  for (int a = 0; a < nr; ++a) {
    for (int b = 0; b < nr; ++b) Hrr(a, b) = rp.H(regular[a], regular[b]);
    for (int b = 0; b < ns; ++b) Hrs(a, b) = rp.H(regular[a], singular[b]);
  }
  for (int a = 0; a < ns; ++a) {
    for (int b = 0; b < nr; ++b) Hsr(a, b) = rp.H(singular[a], regular[b]);
    for (int b = 0; b < ns; ++b) Hss(a, b) = rp.H(singular[a], singular[b]);
  }
  Eigen::MatrixXd elimination;  // y = -Hss^{-1} Hsr x
  Eigen::MatrixXd reduced = Hrr;
  if (ns > 0) {
    const auto lu = Hss.fullPivLu();
    elimination = -lu.solve(Hsr);
    reduced += Hrs * elimination;
  }
  Eigen::MatrixXd A(nr, nr);
  for (int a = 0; a < nr; ++a) A.row(a) = reduced.row(a) / rp.L(regular[a]);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, true);
  const Eigen::VectorXcd values = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();

  const int dim = static_cast<int>(rp.L.size());
  std::vector<EigenPair> out;
  out.reserve(nr);
  for (int j = 0; j < nr; ++j) {
    EigenPair e;
    e.value = values(j);
    e.parity = parity;
    e.vector = Eigen::VectorXcd::Zero(dim);
    for (int a = 0; a < nr; ++a) e.vector(regular[a]) = vectors(a, j);
    if (ns > 0) {
      const Eigen::VectorXcd y = elimination.cast<Complex>() * vectors.col(j);
      for (int a = 0; a < ns; ++a) e.vector(singular[a]) = y(a);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EigenPair> solve_all(const RealProblem& rp, bool allow_singular) {
  const int dim = static_cast<int>(rp.L.size());
  if (!rp.even) {
    std::vector<int> all(dim);
    std::iota(all.begin(), all.end(), 0);
    return solve_block(rp, all, 0, allow_singular);
  }
  std::vector<int> cos_block(rp.K + 1);
  std::iota(cos_block.begin(), cos_block.end(), 0);
  std::vector<int> sin_block(rp.K);
  std::iota(sin_block.begin(), sin_block.end(), rp.K + 1);
  auto out = solve_block(rp, cos_block, 1, allow_singular);
  auto odd = solve_block(rp, sin_block, -1, allow_singular);
  out.insert(out.end(), std::make_move_iterator(odd.begin()), std::make_move_iterator(odd.end()));
  return out;
}

double correlation(const Eigen::VectorXcd& v, const Eigen::VectorXd& target) {
  const double denom = v.norm() * target.norm();
  if (denom == 0.0) return 0.0;
  return std::abs(v.dot(target.cast<Complex>())) / denom;
}

// Sign of a quadratic form, with |q| <= tol |v|^2 counted as zero.
int sign_of(double q, double scale) {
  if (std::abs(q) <= kZeroEigenvalueTolerance * scale) return 0;
  return q > 0.0 ? 1 : -1;
}

TaggedEigenvalue tag_pair(const RealProblem& rp, const std::vector<EigenPair>& pairs,
                          double expected, const Eigen::VectorXd& target, const std::string& label,
                          std::vector<bool>& used) {
  int best = -1;
  double best_corr = 0.0;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    if (used[j] || std::abs(pairs[j].value - expected) > kTagWindow) continue;
    const double corr = correlation(pairs[j].vector, target);
    if (corr > best_corr) {
      best_corr = corr;
      best = static_cast<int>(j);
    }
  }
  if (best < 0 || best_corr < kTagCorrelation) throw TagMismatch(label, best_corr);
  used[best] = true;
  const Eigen::VectorXcd& v = pairs[best].vector;
  const double lq = (v.adjoint() * rp.L.cast<Complex>().asDiagonal() * v)(0).real();
  const double hq = (v.adjoint() * rp.H.cast<Complex>() * v)(0).real();
  const double scale = v.squaredNorm();
  return {label, pairs[best].value, best_corr, sign_of(lq, scale), sign_of(hq, scale)};
}

void add_predictions(SpectrumReport& report) {
  if (report.convention != SignConvention::Classical) return;
  const double lambda1 = [&] {
    try {
      return lambda1_limit(report.alpha);
    } catch (const PoleAtAlpha0&) {
      return std::nan("");
    }
  }();
  auto nearest = [&](double target, int excluded_parity) -> std::optional<Complex> {
    std::optional<Complex> best;
    for (std::size_t j = 0; j < report.gep_eigenvalues.size(); ++j) {
      const Complex v = report.gep_eigenvalues[j];
      if (report.parity[j] == excluded_parity && excluded_parity != 0) continue;
      if (std::abs(v + 1.0) < 1e-9 || std::abs(v) < 1e-9) continue;
      if (!best || std::abs(v - target) < std::abs(*best - target)) best = v;
    }
    return best;
  };
  if (std::isfinite(lambda1)) {
    if (auto v = nearest(lambda1, 1)) report.predicted_matches.push_back({"lambda1", *v});
  }
  if (auto v = nearest(2.0, -1)) report.predicted_matches.push_back({"lambda2", *v});
}

SpectrumReport analyze(const WaveSolution& w, int n_modes, bool allow_singular) {
  const RealProblem rp = real_problem(w, n_modes);
  const std::vector<EigenPair> pairs = solve_all(rp, allow_singular);

  SpectrumReport report;
  report.c = w.c;
  report.alpha = w.alpha;
  report.convention = operator_convention(w.convention);
  for (const auto& e : pairs) {
    report.gep_eigenvalues.push_back(e.value);
    report.parity.push_back(e.parity);
  }

  std::vector<bool> used(pairs.size(), false);
  report.tagged.push_back(tag_pair(rp, pairs, -1.0, rp.profile, "profile", used));
  report.tagged.push_back(tag_pair(rp, pairs, 0.0, rp.derivative, "derivative", used));

  for (std::size_t j = 0; j < pairs.size(); ++j) {
    if (used[j]) continue;
    const Complex v = pairs[j].value;
    report.constrained.push_back(v);
    report.iteration_eigenvalues.push_back(1.0 - v);
    const double radius = std::abs(1.0 - v);
    report.spectral_radius = std::max(report.spectral_radius, radius);
    if (radius >= 1.0) ++report.unstable_count;
  }
  report.verdict = report.spectral_radius < 1.0 ? SpectralVerdict::PredictConverge
                                                : SpectralVerdict::PredictDiverge;
  add_predictions(report);
  return report;
}

bool has_complex(const SpectrumReport& r) {
  return std::any_of(r.constrained.begin(), r.constrained.end(),
                     [](const Complex& v) { return std::abs(v.imag()) > kImagTolerance; });
}

int count_above_two(const SpectrumReport& r) {
  return static_cast<int>(std::count_if(r.constrained.begin(), r.constrained.end(), [](const Complex& v) {
    return std::abs(v.imag()) <= kImagTolerance && v.real() > 2.0;
  }));
}

// Greedy nearest-neighbour assignment of `next` onto `previous`; returns the
// permutation (next index for each previous index) and the worst in-window distance.
std::pair<std::vector<int>, double> match(const std::vector<Complex>& previous,
                                          const std::vector<Complex>& next) {
  struct Candidate {
    double distance;
    int from;
    int to;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(previous.size() * next.size());
  for (std::size_t i = 0; i < previous.size(); ++i) {
    for (std::size_t j = 0; j < next.size(); ++j) {
      candidates.push_back({std::abs(previous[i] - next[j]), static_cast<int>(i), static_cast<int>(j)});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.distance < b.distance; });
  std::vector<int> assignment(previous.size(), -1);
  std::vector<bool> taken(next.size(), false);
  double worst = 0.0;
  for (const auto& cand : candidates) {
    if (assignment[cand.from] >= 0 || taken[cand.to]) continue;
    assignment[cand.from] = cand.to;
    taken[cand.to] = true;
    if (std::abs(previous[cand.from]) <= kTrackWindow && std::abs(next[cand.to]) <= kTrackWindow) {
      worst = std::max(worst, cand.distance);
    }
  }
  return {assignment, worst};
}

}  // namespace

std::string_view to_string(SpectralVerdict verdict) {
  return verdict == SpectralVerdict::PredictConverge ? "PredictConverge" : "PredictDiverge";
}

OperatorPair build_matrices(const WaveSolution& w, int n_modes) {
  check_modes(n_modes);
  const int K = n_modes / 2;
  const Coefficients p = w.profile.coefficients();
  check_resolution(p, K);

  const SymbolSpec spec{w.alpha, w.c, operator_convention(w.convention)};
  OperatorPair ops;
  for (OperatorMatrix* m : {&ops.L, &ops.H}) {
    m->dim = n_modes;
    m->c = w.c;
    m->alpha = w.alpha;
    m->convention = spec.convention;
  }
  ops.L.entries = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  ops.H.entries = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  for (int m = -K; m <= K; ++m) {
    const double symbol = symbol_value(spec, m);
    ops.L.entries(m + K, m + K) = symbol;
    for (int n = -K; n <= K; ++n) {
      ops.H.entries(m + K, n + K) = -2.0 * mode_coefficient(p, m - n);
    }
    ops.H.entries(m + K, m + K) += symbol;
  }
  return ops;
}

SpectrumReport gep_spectrum(const WaveSolution& w, int n_modes) {
  return analyze(w, n_modes, false);
}

SpectrumReport shifted_gep_spectrum(const WaveSolution& w, int n_modes) {
  return analyze(to_convention(w, WaveConvention::Psi), n_modes, false);
}

int resolving_modes(const WaveSolution& w) {
  const Coefficients p = w.profile.coefficients();
  double peak = 1.0;
  for (const auto& v : p) peak = std::max(peak, std::abs(v));
  const int nyq = static_cast<int>(p.size()) - 1;
  int last = 0;
  for (int n = 1; n <= nyq; ++n) {
    if (std::abs(mode_coefficient(p, n)) > kResolutionTolerance * peak) last = n;
  }
  if (last == nyq) throw UnderResolvedWave(nyq, std::abs(mode_coefficient(p, nyq)));
  return 2 * std::max(last + 1, 1) + 1;
}

NegativeCounts negative_count_check(const WaveSolution& w, int n_modes) {
  const RealProblem rp = real_problem(w, n_modes);
  NegativeCounts counts;
  for (int i = 0; i < rp.L.size(); ++i) {
    if (rp.L(i) < 0.0) ++counts.n_neg_L;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rp.H, Eigen::EigenvaluesOnly);
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const double v = solver.eigenvalues()(i);
    if (v < -kZeroEigenvalueTolerance) {
      ++counts.n_neg_H;
    } else if (v <= kZeroEigenvalueTolerance) {
      ++counts.n_zero_H;
    }
  }
  const SpectrumReport report = analyze(w, n_modes, true);
  for (const auto& v : report.constrained) {
    if (std::abs(v.imag()) <= kImagTolerance && v.real() < -kZeroEigenvalueTolerance) {
      ++counts.n_neg_gep;
    }
  }
  return counts;
}

WaveSolution iterated_wave(double c, double alpha, WaveConvention convention, int n_points) {
  const SpectralGrid grid(n_points);
  IterationConfig cfg;
  cfg.variant = SignConvention::Shifted;
  cfg.c = c;
  cfg.alpha = alpha;
  cfg.max_iter = kWaveMaxIter;
  const IterationReport report = run(initial_guess_shifted(0.4, c, grid), cfg);
  WaveSolution psi = as_wave(report, cfg);
  if (!(psi.residual_inf <= kWaveAcceptResidual)) {
    throw WaveNotConverged(c, alpha, psi.residual_inf);
  }
  return to_convention(psi, convention);
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("PETLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult sweep(const std::vector<double>& c_range, double alpha, int n_modes,
                  SignConvention variant, const SweepOptions& options) {
  if (c_range.empty()) throw InvalidParameter("sweep range is empty");
  check_modes(n_modes);
  const WaveConvention convention =
      variant == SignConvention::Classical ? WaveConvention::Phi : WaveConvention::Psi;
  auto at = [&](double c) {
    return analyze(iterated_wave(c, alpha, convention, options.n_points), n_modes, true);
  };

  std::vector<double> cs = c_range;
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());

  std::vector<std::optional<SpectrumReport>> reports(cs.size());
  std::vector<std::exception_ptr> errors(cs.size());
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::min<unsigned>(options.threads > 0 ? options.threads : sweep_threads(),
                                              static_cast<unsigned>(cs.size()));
  auto work = [&] {
    for (std::size_t i = next++; i < cs.size(); i = next++) {
      try {
        reports[i] = at(cs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepResult result;
  result.alpha = alpha;
  result.variant = variant;

  // Adaptive refinement between neighbours whose tracks jump too far.
  std::function<void(const SweepPoint&, const SweepPoint&, int)> refine =
      [&](const SweepPoint& left, const SweepPoint& right, int depth) {
        if (depth < options.max_refinements &&
            match(left.report.constrained, right.report.constrained).second >
                options.match_distance) {
          const double mid = 0.5 * (left.c + right.c);
          SweepPoint middle{mid, at(mid)};
          refine(left, middle, depth + 1);
          result.points.push_back(middle);
          refine(middle, right, depth + 1);
        }
      };
  result.points.push_back({cs[0], std::move(*reports[0])});
  for (std::size_t i = 1; i < cs.size(); ++i) {
    SweepPoint right{cs[i], std::move(*reports[i])};
    const SweepPoint left = result.points.back();
    refine(left, right, 0);
    result.points.push_back(std::move(right));
  }

  // Continuity-ordered tracks.
  const auto& first = result.points.front().report.constrained;
  for (const auto& v : first) result.tracks.push_back({{result.points.front().c, v}});
  std::vector<Complex> last(first.begin(), first.end());
  std::vector<int> track_of(first.size());
  std::iota(track_of.begin(), track_of.end(), 0);
  for (std::size_t i = 1; i < result.points.size(); ++i) {
    const auto& now = result.points[i].report.constrained;
    const auto assignment = match(last, now).first;
    std::vector<Complex> next_last(now.size());
    std::vector<int> next_track(now.size(), -1);
    for (std::size_t t = 0; t < assignment.size(); ++t) {
      if (assignment[t] < 0) continue;
      next_last[assignment[t]] = now[assignment[t]];
      next_track[assignment[t]] = track_of[t];
    }
    for (std::size_t j = 0; j < now.size(); ++j) {
      if (next_track[j] < 0) {
        next_track[j] = static_cast<int>(result.tracks.size());
        result.tracks.emplace_back();
        next_last[j] = now[j];
      }
      result.tracks[next_track[j]].push_back({result.points[i].c, now[j]});
    }
    last = std::move(next_last);
    track_of = std::move(next_track);
  }

  // Event speeds by bisection on the indicator between bracketing sweep points.
  auto locate = [&](const std::function<bool(const SpectrumReport&)>& indicator)
      -> std::optional<double> {
    for (std::size_t i = 1; i < result.points.size(); ++i) {
      if (indicator(result.points[i - 1].report) || !indicator(result.points[i].report)) continue;
      double lo = result.points[i - 1].c;
      double hi = result.points[i].c;
      while (hi - lo > options.bisection_tolerance) {
        const double mid = 0.5 * (lo + hi);
        (indicator(at(mid)) ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    return std::nullopt;
  };
  result.events.c_star = locate(has_complex);
  result.events.c_2star = locate([](const SpectrumReport& r) { return count_above_two(r) >= 1; });
  result.events.c_3star = locate([](const SpectrumReport& r) { return count_above_two(r) >= 2; });
  return result;
}

std::vector<MarginSample> complex_pair_margin(const SweepResult& result) {
  std::vector<MarginSample> out;
  for (const auto& point : result.points) {
    double margin = -1.0;
    for (const auto& v : point.report.constrained) {
      if (std::abs(v.imag()) > kImagTolerance) margin = std::max(margin, std::abs(1.0 - v));
    }
    if (margin >= 0.0) out.push_back({point.c, margin});
  }
  if (out.empty()) throw NoComplexTrack();
  return out;
}

}  // namespace petlab
