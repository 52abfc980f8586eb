#pragma once

#include <vector>

#include "zcwell/designer.hpp"

namespace zcwell {

// One affine piece of the wave, psi(x) = alpha + beta * x on
// (x_lo, x_hi), carrying the superpotential
// W(x) = -(hbar/sqrt(2m)) * beta / (alpha + beta x).
// When beta != 0 the extrapolated zero of psi sits at pole = -alpha/beta,
// always outside the open segment for a nodeless wave.
struct SuperpotentialSegment {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool has_pole = false;
  double pole = 0.0;
};

struct Superpotential {
  UnitSystem units;
  std::vector<SuperpotentialSegment> segments;

  // W(x) strictly inside the well; finite jumps at cusps evaluate from the
  // segment containing x.
  double eval(double x) const;
};

// Requires the wave to be strictly positive on the open interior.
// Throws NodeInInteriorError otherwise.
Superpotential superpotential(const ZcDesign& design);

// Smooth part of a partner potential on one segment: either identically
// zero (flat psi) or K / (x - pole)^2.
struct SmoothSegment {
  double x_lo = 0.0;
  double x_hi = 0.0;
  bool zero = true;
  double pole = 0.0;
  double coefficient = 0.0;  // K, units energy * length^2
};

struct PartnerPotential {
  WellDomain domain;
  std::vector<DeltaSpike> spikes;       // sign-flipped strengths
  std::vector<SmoothSegment> smooth;

  // Smooth part at x; finite strictly inside the well (poles sit at the
  // walls for waves rising linearly from them).
  double eval_smooth(double x) const;
};

// Supersymmetric partner of a nodeless design: delta strengths flipped in
// sign, plus (hbar^2/m) (psi'/psi)^2 between spikes, built from the
// segment algebra (never by numerical differentiation).
PartnerPotential partner_potential(const ZcDesign& design);

// Rebuilds the original potential from the superpotential via
// W^2 - (hbar/sqrt(2m)) W': delta strengths from the jump of W across each
// cusp, smooth coefficients from the two cancelling segment terms.
// Both routes of the smooth part are returned so tests can assert the
// cancellation.
struct VMinusReconstruction {
  std::vector<DeltaSpike> spikes;
  std::vector<double> smooth_coefficient;  // per segment; zero in exact math
};

VMinusReconstruction reconstruct_v_minus(const ZcDesign& design);

// Packaged original/partner pair for the finite-difference oracle.
// Dirichlet wells only.
struct IsospectralPair {
  DeltaArrayPotential original;
  PartnerPotential partner;
  UnitSystem units;
};

IsospectralPair isospectral_pair(const ZcDesign& design);

}  // namespace zcwell
