#include "petlab/spectral_core.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace petlab {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW plans are created once per size under a lock; executing a plan on
// caller-owned arrays through the new-array interface is thread safe.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans plans;
    return plans;
  }

  struct Pair {
    fftw_plan forward;
    fftw_plan backward;
  };

  const Pair& get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<double> real(n);
    auto* spec = fftw_alloc_complex(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Pair pair{fftw_plan_dft_r2c_1d(n, real.data(), spec, flags),
              fftw_plan_dft_c2r_1d(n, spec, real.data(), flags)};
    fftw_free(spec);
    return plans_.emplace(n, pair).first->second;
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

 private:
  FftPlans() = default;
  ~FftPlans() {
    for (auto& [n, pair] : plans_) {
      fftw_destroy_plan(pair.forward);
      fftw_destroy_plan(pair.backward);
    }
  }

  std::mutex mutex_;
  std::map<int, Pair> plans_;
};

// The grid starts at x = -pi, so e^{-inx_j} = (-1)^n e^{-2 pi i n j / N}.
double mode_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

void require_same_grid(const Field& f, const Field& g) {
  if (!(f.grid() == g.grid())) throw GridMismatch(f.size(), g.size());
}

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0)) throw InvalidParameter("fractional exponent alpha must be positive");
}

}  // namespace

SpectralGrid::SpectralGrid(int n_points) : n_(n_points) {
  if (n_points < 8 || n_points % 2 != 0) throw OddOrTooSmallGrid(n_points);
}

double SpectralGrid::step() const noexcept { return 2.0 * kPi / n_; }

double SpectralGrid::node(int j) const noexcept { return -kPi + 2.0 * kPi * j / n_; }

std::vector<double> SpectralGrid::nodes() const {
  std::vector<double> x(n_);
  for (int j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

std::vector<int> SpectralGrid::modes() const {
  std::vector<int> m;
  m.reserve(n_);
  for (int n = -n_ / 2 + 1; n <= n_ / 2; ++n) m.push_back(n);
  return m;
}

SpectralGrid make_grid(int n_points) { return SpectralGrid(n_points); }

Field::Field(SpectralGrid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != grid_.size()) {
    throw GridMismatch(grid_.size(), static_cast<int>(samples_.size()));
  }
}

Field::Field(SpectralGrid grid) : grid_(grid), samples_(grid.size(), 0.0) {}

Field Field::from_function(const SpectralGrid& grid, const std::function<double(double)>& f) {
  std::vector<double> s(grid.size());
  for (int j = 0; j < grid.size(); ++j) s[j] = f(grid.node(j));
  return Field(grid, std::move(s));
}

Field Field::constant(const SpectralGrid& grid, double value) {
  return Field(grid, std::vector<double>(grid.size(), value));
}

Field Field::from_coefficients(const SpectralGrid& grid, const Coefficients& coefficients) {
  const int n = grid.size();
  const int half = n / 2;
  if (static_cast<int>(coefficients.size()) != half + 1) {
    throw GridMismatch(n, 2 * (static_cast<int>(coefficients.size()) - 1));
  }
  std::vector<Complex> spec(half + 1);
  for (int k = 0; k <= half; ++k) spec[k] = mode_sign(k) * coefficients[k];
  spec[0] = spec[0].real();
  spec[half] = spec[half].real();
  std::vector<double> s(n);
  fftw_execute_dft_c2r(FftPlans::instance().get(n).backward,
                       reinterpret_cast<fftw_complex*>(spec.data()), s.data());
  return Field(grid, std::move(s));
}

Coefficients Field::coefficients() const {
  const int n = size();
  const int half = n / 2;
  Coefficients spec(half + 1);
  std::vector<double> in(samples_);
  fftw_execute_dft_r2c(FftPlans::instance().get(n).forward, in.data(),
                       reinterpret_cast<fftw_complex*>(spec.data()));
  const double inv = 1.0 / n;
  for (int k = 0; k <= half; ++k) spec[k] *= mode_sign(k) * inv;
  return spec;
}

double Field::sup_norm() const noexcept {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

double Field::max() const noexcept { return *std::max_element(samples_.begin(), samples_.end()); }

double Field::min() const noexcept { return *std::min_element(samples_.begin(), samples_.end()); }

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other);
  for (int j = 0; j < size(); ++j) samples_[j] += other.samples_[j];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other);
  for (int j = 0; j < size(); ++j) samples_[j] -= other.samples_[j];
  return *this;
}

Field& Field::operator*=(double scale) noexcept {
  for (double& v : samples_) v *= scale;
  return *this;
}

Field& Field::operator+=(double shift) noexcept {
  for (double& v : samples_) v += shift;
  return *this;
}

Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator*(double scale, Field f) { return f *= scale; }
Field operator+(Field f, double shift) { return f += shift; }
Field operator-(Field f, double shift) { return f += -shift; }

double distance_inf(const Field& a, const Field& b) {
  require_same_grid(a, b);
  double d = 0.0;
  for (int j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

double symbol_value(const SymbolSpec& spec, int n) {
  const double dispersion = std::pow(std::abs(static_cast<double>(n)), spec.alpha);
  return spec.convention == SignConvention::Classical ? -spec.c + dispersion
                                                      : spec.c + dispersion;
}

Field apply_symbol(const Field& f, const std::function<double(int)>& symbol) {
  auto coef = f.coefficients();
  for (int k = 0; k < static_cast<int>(coef.size()); ++k) coef[k] *= symbol(k);
  return Field::from_coefficients(f.grid(), coef);
}

Field apply_d_alpha(const Field& f, double alpha) {
  require_positive_alpha(alpha);
  return apply_symbol(f, [alpha](int n) { return -std::pow(static_cast<double>(n), alpha); });
}

Field apply_operator(const Field& f, const SymbolSpec& spec) {
  require_positive_alpha(spec.alpha);
  return apply_symbol(f, [&spec](int n) { return symbol_value(spec, n); });
}

Field invert_operator(const Field& f, const SymbolSpec& spec) {
  require_positive_alpha(spec.alpha);
  const int half = f.grid().nyquist();
  std::vector<double> inverse(half + 1);
  for (int n = 0; n <= half; ++n) {
    const double s = symbol_value(spec, n);
    if (std::abs(s) <= kSingularTolerance) throw ResonantSpeed(n, s);
    inverse[n] = 1.0 / s;
  }
  return apply_symbol(f, [&inverse](int n) { return inverse[n]; });
}

Field derivative(const Field& f) {
  auto coef = f.coefficients();
  const int half = f.grid().nyquist();
  for (int k = 0; k < half; ++k) coef[k] *= Complex(0.0, k);
  coef[half] = 0.0;
  return Field::from_coefficients(f.grid(), coef);
}

double inner_product(const Field& f, const Field& g) {
  require_same_grid(f, g);
  double s = 0.0;
  for (int j = 0; j < f.size(); ++j) s += f[j] * g[j];
  return s * f.grid().step();
}

Field multiply(const Field& f, const Field& g, bool dealias) {
  require_same_grid(f, g);
  Field product(f.grid());
  for (int j = 0; j < f.size(); ++j) product[j] = f[j] * g[j];
  if (!dealias) return product;
  // 2/3 rule: keep |n| < N/3.
  const int n = f.size();
  return apply_symbol(product, [n](int k) { return 3 * k < n ? 1.0 : 0.0; });
}

namespace {

// Samples the truncated Green series exactly on an M-point grid by folding
// modes |n| <= n_terms onto the M distinct discrete frequencies.
Field green_samples(double c, double alpha, const SpectralGrid& grid, int n_terms) {
  if (!(alpha > 0.5)) throw AlphaTooSmall(alpha);
  if (!(c > 0.0)) throw InvalidParameter("Green function requires c > 0");
  if (n_terms < 0) throw InvalidParameter("n_terms must be non-negative");
  const int m = grid.size();
  const int half = m / 2;
  std::vector<double> folded(m, 0.0);  // indexed by n mod m
  const double norm = 1.0 / (2.0 * kPi);
  folded[0] += norm / c;
  for (int n = 1; n <= n_terms; ++n) {
    const double g = norm / (c + std::pow(static_cast<double>(n), alpha));
    folded[n % m] += g;
    folded[(m - n % m) % m] += g;
  }
  // folded[k] is the coefficient of e^{ikx} on the grid; fold to 0..half.
  Coefficients coef(half + 1);
  coef[0] = folded[0];
  for (int k = 1; k < half; ++k) coef[k] = folded[k];
  coef[half] = folded[half];
  return Field::from_coefficients(grid, coef);
}

}  // namespace

Field green_function(double c, double alpha, const SpectralGrid& grid, int n_terms) {
  return green_samples(c, alpha, grid, n_terms);
}

GreenConstants green_constants(double c, double alpha, int n_terms, int base_points) {
  if (!(alpha > 0.5)) throw AlphaTooSmall(alpha);
  const SpectralGrid fine(base_points * kGreenOversampling);
  const Field g = green_samples(c, alpha, fine, n_terms);

  const double norm = 1.0 / (2.0 * kPi);
  double sum = 1.0 / (c * c);
  for (int n = 1; n <= n_terms; ++n) {
    const double d = c + std::pow(static_cast<double>(n), alpha);
    sum += 2.0 / (d * d);
  }
  return GreenConstants{g.min(), std::sqrt(norm * sum), n_terms, fine.size()};
}

}  // namespace petlab
