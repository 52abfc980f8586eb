#include "zcwell/susy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zcwell/errors.hpp"

namespace zcwell {

namespace {

void require_nodeless(const ZcDesign& design) {
  const auto& knots = design.wave.knots();
  for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
    if (!(knots[i].psi > 0.0)) {
      std::ostringstream msg;
      msg << "wave touches or crosses zero at x = " << knots[i].x
          << "; the superpotential needs a nodeless, positive ground state";
      throw NodeInInteriorError(msg.str());
    }
  }
  if (design.wave.domain().boundary == Boundary::Periodic &&
      !(knots.front().psi > 0.0))
    throw NodeInInteriorError(
        "periodic wave vanishes at the seam; no superpotential exists");
}

std::vector<SuperpotentialSegment> wave_segments(
    const PiecewiseLinearWave& wave) {
  const auto& knots = wave.knots();
  std::vector<SuperpotentialSegment> segs(wave.segment_count());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    SuperpotentialSegment& s = segs[i];
    s.x_lo = knots[i].x;
    s.x_hi = knots[i + 1].x;
    s.beta = wave.slope(i);
    s.alpha = knots[i].psi - s.beta * knots[i].x;
    s.has_pole = s.beta != 0.0;
    s.pole = s.has_pole ? -s.alpha / s.beta : 0.0;
  }
  return segs;
}

const SuperpotentialSegment* segment_at(
    const std::vector<SuperpotentialSegment>& segs, double x) {
  for (const auto& s : segs)
    if (x >= s.x_lo && x <= s.x_hi) return &s;
  return nullptr;
}

}  // namespace

double Superpotential::eval(double x) const {
  const SuperpotentialSegment* s = segment_at(segments, x);
  if (s == nullptr)
    throw std::domain_error("evaluation point outside the well");
  const double w_coef = -units.hbar / std::sqrt(2.0 * units.mass);
  return w_coef * s->beta / (s->alpha + s->beta * x);
}

Superpotential superpotential(const ZcDesign& design) {
  require_nodeless(design);
  return Superpotential{design.units, wave_segments(design.wave)};
}

double PartnerPotential::eval_smooth(double x) const {
  for (const auto& s : smooth) {
    if (x >= s.x_lo && x <= s.x_hi) {
      if (s.zero) return 0.0;
      const double d = x - s.pole;
      return s.coefficient / (d * d);
    }
  }
  throw std::domain_error("evaluation point outside the well");
}

PartnerPotential partner_potential(const ZcDesign& design) {
  require_nodeless(design);
  const auto segs = wave_segments(design.wave);
  PartnerPotential out;
  out.domain = design.wave.domain();

  for (const DeltaSpike& s : design.potential.spikes())
    out.spikes.push_back(DeltaSpike{s.position, -s.strength});

  // V+ between spikes: W^2 + (hbar/sqrt(2m)) W' with V- = 0 there gives
  // (hbar^2/2m + hbar^2/2m) / (x - pole)^2.
  const double half = design.units.kinetic_factor();
  for (const auto& s : segs) {
    SmoothSegment seg;
    seg.x_lo = s.x_lo;
    seg.x_hi = s.x_hi;
    if (s.has_pole) {
      seg.zero = false;
      seg.pole = s.pole;
      seg.coefficient = half + half;
    }
    out.smooth.push_back(seg);
  }
  return out;
}

VMinusReconstruction reconstruct_v_minus(const ZcDesign& design) {
  const Superpotential W = superpotential(design);
  const auto& knots = design.wave.knots();
  const double w_prime_coef = -design.units.hbar /
                              std::sqrt(2.0 * design.units.mass);

  VMinusReconstruction out;
  // Delta strengths from the finite jump of W across each cusp:
  // coefficient of delta in -(hbar/sqrt(2m)) W' is
  // -(hbar/sqrt(2m)) * (W(c+) - W(c-)).
  for (const DeltaSpike& s : design.potential.spikes()) {
    double w_left, w_right;
    if (s.position == 0.0) {
      // periodic seam: left limit wraps from the last segment
      const auto& last = W.segments.back();
      const auto& first = W.segments.front();
      const double coef = w_prime_coef;
      w_left = coef * last.beta / (last.alpha + last.beta * last.x_hi);
      w_right = coef * first.beta / (first.alpha + first.beta * first.x_lo);
    } else {
      std::size_t idx = 0;
      while (idx + 1 < knots.size() && knots[idx].x != s.position) ++idx;
      if (idx == 0 || knots[idx].x != s.position)
        throw std::invalid_argument(
            "spike does not sit on an interior knot of the wave");
      const auto& left_seg = W.segments[idx - 1];
      const auto& right_seg = W.segments[idx];
      const double coef = w_prime_coef;
      w_left = coef * left_seg.beta /
               (left_seg.alpha + left_seg.beta * s.position);
      w_right = coef * right_seg.beta /
                (right_seg.alpha + right_seg.beta * s.position);
    }
    out.spikes.push_back(
        DeltaSpike{s.position, w_prime_coef * (w_right - w_left)});
  }

  const double half = design.units.kinetic_factor();
  for (const auto& s : W.segments) {
    if (!s.has_pole) {
      out.smooth_coefficient.push_back(0.0);
      continue;
    }
    const double from_w_squared = half;   // W^2 segment coefficient
    const double from_w_prime = half;     // (hbar/sqrt(2m)) W' coefficient
    out.smooth_coefficient.push_back(from_w_squared - from_w_prime);
  }
  return out;
}

IsospectralPair isospectral_pair(const ZcDesign& design) {
  if (design.wave.domain().boundary != Boundary::Dirichlet)
    throw std::invalid_argument(
        "isospectral pairing is defined for Dirichlet wells");
  require_nodeless(design);
  return IsospectralPair{design.potential, partner_potential(design),
                         design.units};
}

}  // namespace zcwell
