// Hyperbolic geometry of the unit disc: Poincare distance and metric,
// Mobius automorphisms.
#pragma once

#include <cmath>

#include "univmet/complex2.hpp"

namespace univmet {

// A point strictly inside the unit disc.  Construction rejects |z| >= 1
// outright; clamping would silently corrupt downstream optimization.
class UnitDiscPoint {
 public:
  explicit UnitDiscPoint(cplx z) : z_(z) {
    if (!(std::abs(z) < 1.0))
      throw domain_error("point with |z| = " + std::to_string(std::abs(z)) +
                         " is not inside the unit disc");
  }
  cplx value() const { return z_; }

 private:
  cplx z_;
};

// (z - w) / (1 - conj(w) z), the disc automorphism sending w to 0.
inline UnitDiscPoint mobius(UnitDiscPoint z, UnitDiscPoint w) {
  cplx den = 1.0 - std::conj(w.value()) * z.value();
  if (std::abs(den) < 1e-15)
    throw numeric_error("degenerate Mobius denominator");
  return UnitDiscPoint((z.value() - w.value()) / den);
}

// rho(z, w) = artanh |(z-w)/(1 - conj(w) z)|.  This normalization makes the
// distance infinitesimally compatible with the metric |X|/(1-|p|^2).
inline double poincare_distance(UnitDiscPoint z, UnitDiscPoint w) {
  return std::atanh(std::abs(mobius(z, w).value()));
}

inline double poincare_metric(UnitDiscPoint p, cplx X) {
  return std::abs(X) / (1.0 - std::norm(p.value()));
}

}  // namespace univmet
