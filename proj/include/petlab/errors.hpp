#pragma once

#include <stdexcept>
#include <string>

namespace petlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class OddOrTooSmallGrid : public Error {
 public:
  explicit OddOrTooSmallGrid(int n_points);
};

class GridMismatch : public Error {
 public:
  GridMismatch(int lhs, int rhs);
};

/// A Fourier symbol of the operator being inverted vanishes on the grid.
class ResonantSpeed : public Error {
 public:
  ResonantSpeed(int mode, double symbol);
  int mode() const noexcept { return mode_; }

 private:
  int mode_;
};

class AlphaTooSmall : public Error {
 public:
  explicit AlphaTooSmall(double alpha);
};

class ModulusOutOfRange : public Error {
 public:
  explicit ModulusOutOfRange(double k);
};

class SpeedOutOfRange : public Error {
 public:
  using Error::Error;
};

class PoleAtAlpha0 : public Error {
 public:
  explicit PoleAtAlpha0(double alpha);
};

class VanishingDenominator : public Error {
 public:
  VanishingDenominator(double cubic, double scale);
};

class UnderResolvedWave : public Error {
 public:
  UnderResolvedWave(int mode, double magnitude);
};

class NoComplexTrack : public Error {
 public:
  NoComplexTrack();
};

/// An analytically known eigenpair could not be matched in a computed spectrum.
class TagMismatch : public Error {
 public:
  TagMismatch(const std::string& label, double correlation);
};

/// A cold-started iteration failed to produce a wave for an analysis.
class WaveNotConverged : public Error {
 public:
  WaveNotConverged(double c, double alpha, double residual);
};

}  // namespace petlab
