#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "petlab/errors.hpp"

namespace petlab {

using Complex = std::complex<double>;

/// Uniform collocation grid x_j = -pi + 2 pi j / N on [-pi, pi).
///
/// The paired Fourier index set is n = -N/2+1, ..., N/2. Fields are real, so
/// only n = 0..N/2 is stored; the Nyquist coefficient n = N/2 is kept real.
class SpectralGrid {
 public:
  explicit SpectralGrid(int n_points);

  int size() const noexcept { return n_; }
  int nyquist() const noexcept { return n_ / 2; }
  double step() const noexcept;
  double node(int j) const noexcept;
  std::vector<double> nodes() const;
  std::vector<int> modes() const;

  friend bool operator==(const SpectralGrid&, const SpectralGrid&) = default;

 private:
  int n_;
};

SpectralGrid make_grid(int n_points);

/// Fourier coefficients u_n for n = 0..N/2 in the expansion u(x) = sum_n u_n e^{inx}.
using Coefficients = std::vector<Complex>;

/// Real 2pi-periodic function sampled on a SpectralGrid.
class Field {
 public:
  Field(SpectralGrid grid, std::vector<double> samples);
  explicit Field(SpectralGrid grid);

  static Field from_function(const SpectralGrid& grid, const std::function<double(double)>& f);
  static Field from_coefficients(const SpectralGrid& grid, const Coefficients& coefficients);
  static Field constant(const SpectralGrid& grid, double value);

  const SpectralGrid& grid() const noexcept { return grid_; }
  int size() const noexcept { return grid_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  std::span<double> samples() noexcept { return samples_; }
  double operator[](int j) const { return samples_[j]; }
  double& operator[](int j) { return samples_[j]; }

  Coefficients coefficients() const;

  double sup_norm() const noexcept;
  double max() const noexcept;
  double min() const noexcept;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double scale) noexcept;
  Field& operator+=(double shift) noexcept;

 private:
  SpectralGrid grid_;
  std::vector<double> samples_;
};

Field operator+(Field lhs, const Field& rhs);
Field operator-(Field lhs, const Field& rhs);
Field operator*(double scale, Field f);
Field operator+(Field f, double shift);
Field operator-(Field f, double shift);

double distance_inf(const Field& a, const Field& b);

/// L_{c,alpha} = -c - D_alpha (symbol -c + |n|^alpha) or its shifted
/// counterpart c - D_alpha (symbol c + |n|^alpha).
enum class SignConvention { Classical, Shifted };

struct SymbolSpec {
  double alpha = 2.0;
  double c = 1.0;
  SignConvention convention = SignConvention::Classical;
};

/// Symbol of the constant-coefficient operator at Fourier mode n.
double symbol_value(const SymbolSpec& spec, int n);

/// Resonance threshold for invert_operator.
inline constexpr double kSingularTolerance = 1e-8;

Field apply_d_alpha(const Field& f, double alpha);
Field apply_operator(const Field& f, const SymbolSpec& spec);
Field invert_operator(const Field& f, const SymbolSpec& spec);
Field derivative(const Field& f);
Field apply_symbol(const Field& f, const std::function<double(int)>& symbol);

double inner_product(const Field& f, const Field& g);
Field multiply(const Field& f, const Field& g, bool dealias = false);

/// Truncated Fourier series of the periodic Green function of c - D_alpha,
/// G(x) = (1/2pi) sum_{|n| <= n_terms} e^{inx} / (c + |n|^alpha).
Field green_function(double c, double alpha, const SpectralGrid& grid, int n_terms);

struct GreenConstants {
  double m = 0.0;  // minimum of the truncated series on the sample grid
  double M = 0.0;  // L2 norm of the truncated series
  int n_terms = 0;
  int sample_points = 0;
};

/// Oversampling factor (relative to `base_points`) used to locate the minimum of G.
inline constexpr int kGreenOversampling = 16;

GreenConstants green_constants(double c, double alpha, int n_terms, int base_points = 256);

}  // namespace petlab
