#pragma once

#include <vector>

#include "zcwell/designer.hpp"

namespace zcwell {

// Energy expectation values of a design.  The two kinetic entries evaluate
// the same observable along independent algebraic routes
// (sum of slope^2 * length versus the distributional second derivative)
// and must agree to rounding.
struct EnergyBreakdown {
  double potential = 0.0;
  double kinetic_gradient = 0.0;
  double kinetic_distributional = 0.0;
  double total = 0.0;  // potential + kinetic_gradient
};

double potential_expectation(const ZcDesign& design);
EnergyBreakdown kinetic_expectation(const ZcDesign& design);
EnergyBreakdown energy_breakdown(const ZcDesign& design);

struct MomentumSample {
  double p = 0.0;
  double phi_re = 0.0;
  double phi_im = 0.0;
  double density = 0.0;  // phi_re^2 + phi_im^2
};

// Closed-form momentum-space wavefunction of a Dirichlet design, evaluated
// from the slope jumps of the wave.  Near p = 0 the 1/p^2 form cancels
// catastrophically, so |p| < 1e-4 * hbar/width switches to a Taylor
// expansion through fourth order.
MomentumSample momentum_wavefunction(const ZcDesign& design, double p);
double momentum_density(const ZcDesign& design, double p);

// Sweep over a momentum grid.  The OpenMP variant computes each sample
// independently and is bit-identical to the serial reference.
std::vector<MomentumSample> momentum_sweep_serial(
    const ZcDesign& design, const std::vector<double>& ps);
std::vector<MomentumSample> momentum_sweep(const ZcDesign& design,
                                           const std::vector<double>& ps);

struct MomentumMoments {
  double p_mean = 0.0;       // zero for every real wave
  double p2_analytic = 0.0;  // 2m <T>
  double p2_quadrature = 0.0;
  double p_spread = 0.0;     // sqrt(p2_analytic)
  double tail_bound = 0.0;   // bound on the neglected quadrature remainder
};

// <p>, <p^2> and Delta p.  <p^2> is reported from the exact identity
// 2m<T> and cross-checked by adaptive Simpson quadrature of p^2 |phi|^2;
// tail_tolerance bounds the neglected remainder relative to <p^2>.
// Throws QuadratureError when the quadrature cannot meet its budget.
MomentumMoments momentum_moments(const ZcDesign& design,
                                 double tail_tolerance);

// Adaptive quadrature of |phi|^2 over the whole momentum axis; the
// truncation point comes from the 1/p^4 envelope so that the neglected
// tail plus quadrature error stays below tolerance.
double parseval_integral(const ZcDesign& design, double tolerance);

// Envelope constant E such that density(p) * p^4 <= E for all p,
// E = (hbar^3 / 2 pi) * (sum_j |slope jump_j|)^2.
double density_envelope_constant(const ZcDesign& design);

}  // namespace zcwell
