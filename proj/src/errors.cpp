#include "petlab/errors.hpp"

#include <sstream>

namespace petlab {

namespace {

template <typename... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

}  // namespace

OddOrTooSmallGrid::OddOrTooSmallGrid(int n_points)
    : Error(concat("grid size must be even and at least 8, got ", n_points)) {}

GridMismatch::GridMismatch(int lhs, int rhs)
    : Error(concat("fields live on different grids (", lhs, " vs ", rhs, " points)")) {}

ResonantSpeed::ResonantSpeed(int mode, double symbol)
    : Error(concat("operator symbol vanishes at mode n = +/-", mode, " (symbol ", symbol, ")")),
      mode_(mode) {}

AlphaTooSmall::AlphaTooSmall(double alpha)
    : Error(concat("Green function requires alpha > 1/2, got ", alpha)) {}

ModulusOutOfRange::ModulusOutOfRange(double k)
    : Error(concat("elliptic modulus must satisfy 0 <= k <= 1 - 1e-10, got ", k)) {}

PoleAtAlpha0::PoleAtAlpha0(double alpha)
    : Error(concat("alpha = ", alpha, " sits on the pole 2^(alpha+1) = 3")) {}

VanishingDenominator::VanishingDenominator(double cubic, double scale)
    : Error(concat("Petviashvili quotient denominator <w^2, w> = ", cubic,
                   " is negligible against the scale ", scale)) {}

UnderResolvedWave::UnderResolvedWave(int mode, double magnitude)
    : Error(concat("wave coefficient at mode ", mode, " is ", magnitude,
                   "; the profile is not resolved by the requested truncation")) {}

NoComplexTrack::NoComplexTrack() : Error("no complex eigenvalue pair found along the sweep") {}

TagMismatch::TagMismatch(const std::string& label, double correlation)
    : Error(concat("could not identify the ", label, " eigenpair (best correlation ", correlation,
                   ")")) {}

WaveNotConverged::WaveNotConverged(double c, double alpha, double residual)
    : Error(concat("iteration for c = ", c, ", alpha = ", alpha, " stalled at residual ",
                   residual)) {}

}  // namespace petlab
