#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zcwell/potential.hpp"
#include "zcwell/wave.hpp"

namespace zcwell {

// A waveform together with the delta array that makes it an exact
// zero-energy eigenstate.  Produced by the designer; the wave is stored
// normalized and each spike sits on an interior knot with a slope jump.
struct ZcDesign {
  PiecewiseLinearWave wave;
  DeltaArrayPotential potential;
  UnitSystem units;
};

// Slope jumps no larger than this fraction of the steepest segment are
// treated as smooth, so float noise never emits near-zero spikes.
inline constexpr double kSlopeJumpTol = 1e-12;

// Computes the critical strength at every slope discontinuity of the wave:
// g = (hbar^2/2m) * (slope_right - slope_left) / psi(c).  The returned
// design carries the normalized wave; strengths do not depend on the input
// amplitude.
//
// Throws CuspAtNodeError when a slope jump sits where psi vanishes, and
// PeriodicInfeasibleError for periodic waves with exactly one interior cusp
// (a single delta cannot wrap continuously) or a seam slope mismatch that
// would require a spike at a node.
ZcDesign critical_strengths(const PiecewiseLinearWave& wave,
                            const UnitSystem& units);

// Triangle waveform peaking at c with a single spike of strength
// -hbar^2 a / (2 m c (a-c)).  Throws std::domain_error unless 0 < c < width
// (the strength diverges as c approaches either wall).
ZcDesign triangle_design(double c, double width, const UnitSystem& units);

// The two flat-top/zig-zag designs with spikes at width/3 and 2*width/3:
// first the symmetric plateau (strengths -3 hbar^2/2ma), then the
// antisymmetric one (strengths -9 hbar^2/2ma).
std::pair<ZcDesign, ZcDesign> twin_designs(double width,
                                           const UnitSystem& units);

// Piecewise-linear interpolant through interior samples of a smooth
// Dirichlet waveform, with critical strengths at every sample point.  The
// samples must lie strictly inside (0, width) with increasing x; endpoints
// (0,0) and (width,0) are appended.  Requires at least two samples.
ZcDesign discretize_smooth(const WellDomain& domain,
                           const std::vector<Knot>& samples,
                           const UnitSystem& units);

// Feasibility of a waveform under a boundary condition (which may differ
// from the one the wave was built with).  Never throws.
struct FeasibilityReport {
  Boundary boundary = Boundary::Dirichlet;
  bool ok = false;
  bool endpoints_zero = false;        // Dirichlet requirement
  bool endpoint_values_match = false; // periodic requirement
  bool seam_slopes_match = false;
  bool needs_seam_spike = false;
  bool seam_spike_possible = false;   // psi(0) != 0
  bool single_cusp_infeasible = false;
  int interior_cusp_count = 0;
  std::string detail;
};

FeasibilityReport validate_bc(const PiecewiseLinearWave& wave,
                              Boundary boundary);

}  // namespace zcwell
