#pragma once

#include <utility>
#include <vector>

#include "zcwell/wave.hpp"

namespace zcwell {

// Infinite well of total width a + b with a potential step: V = 0 on the
// left region of width a, V = V0 on the right region of width b.
// Internal coordinates run over [0, a+b] with the step at x = a.
struct AsymmetricWell {
  double a = 1.0;
  double b = 1.0;
  double v0 = 0.0;
};

AsymmetricWell make_asymmetric_well(double a, double b, double v0);

enum class Regime { AboveStep, BelowStep, Threshold };

struct EnergyLevel {
  int index = 1;  // 1-based
  double energy = 0.0;
  Regime regime = Regime::AboveStep;
};

// Pole-free eigenvalue residual.  The tangent forms of the matching
// conditions share their roots with
//   sin(ka) cos(qb) + k cos(ka) sin(qb)/q          (E > V0)
//   sin(ka) cosh(kb') + k cos(ka) sinh(kb')/kappa  (0 < E < V0)
// which are one analytic function of E (cos/sinc continue across E = V0),
// so a sign-change scan never needs to treat the regime boundary
// specially.  At E = V0 the residual equals sin(chi a) + chi b cos(chi a),
// the zero-curvature condition.  Throws std::domain_error for E <= 0.
double residual(const AsymmetricWell& well, double energy,
                const UnitSystem& units);

// First `count` eigenvalues by bracketed scan plus bisection to 1e-12
// relative.  A root within the threshold tolerance of V0 is labelled
// Regime::Threshold.  Throws BracketExhaustedError when the scan ceiling
// is passed without finding enough roots.
std::vector<EnergyLevel> solve_levels(const AsymmetricWell& well, int count,
                                      const UnitSystem& units);

struct ZcTuning {
  double chi = 0.0;  // sqrt(2 m V0) / hbar
  double v0 = 0.0;
};

// Step height making branch n a zero-curvature eigenstate: the n-th
// positive root of sin(chi a) + chi b cos(chi a), bracketed inside
// ((2n+1) pi / 2a, (n+1) pi / a).
ZcTuning solve_zc_v0(double a, double b, int branch,
                     const UnitSystem& units);

// Zero-curvature eigenfunction of a tuned well: sinusoid of wavenumber chi
// on [0, a], straight line to zero on [a, a+b]; value and slope are
// continuous at the step and the whole wave is normalized.
struct ZcStepWave {
  double a = 0.0;
  double b = 0.0;
  double chi = 0.0;
  double amp_left = 0.0;   // A in  A sin(chi x)
  double amp_right = 0.0;  // C in  C (1 - (x-a)/b)

  double eval(double x) const;
  double derivative(double x) const;
};

// Throws UntunedWellError unless |sin(chi a) + chi b cos(chi a)| is below
// 1e-9 * (1 + chi b).
ZcStepWave zc_wave(const AsymmetricWell& well, const UnitSystem& units);

// Exact closed-form probabilities of the two regions; they sum to one.
std::pair<double, double> region_probabilities(const ZcStepWave& wave);

}  // namespace zcwell
