#pragma once

#include "petlab/errors.hpp"

namespace petlab {

/// Elliptic modulus k in [0, 1 - 1e-10]; the complementary modulus is formed
/// as sqrt((1-k)(1+k)) so it keeps full relative accuracy near k = 1.
class EllipticModulus {
 public:
  static constexpr double kMaxModulus = 1.0 - 1e-10;

  explicit EllipticModulus(double k);

  double k() const noexcept { return k_; }
  double complementary() const noexcept { return kp_; }

 private:
  double k_;
  double kp_;
};

/// Complete elliptic integral of the first kind, by the arithmetic-geometric mean.
double ellip_K(EllipticModulus k);
double ellip_K(double k);

/// Complete elliptic integral of the second kind, by the AGM recurrence.
double ellip_E(EllipticModulus k);
double ellip_E(double k);

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// sn, cn, dn from one descending Landen (AGM) pass.
JacobiTriple jacobi_sncndn(double u, EllipticModulus k);

double jacobi_cn(double u, EllipticModulus k);
double jacobi_cn(double u, double k);

}  // namespace petlab
