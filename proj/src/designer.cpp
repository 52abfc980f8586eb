#include "zcwell/designer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zcwell/errors.hpp"

namespace zcwell {

namespace {

struct Cusp {
  double position;
  double psi;
  double slope_jump;  // slope_right - slope_left
};

// Interior slope discontinuities plus, for periodic waves, the seam jump
// slope(first) - slope(last) attributed to x = 0.
std::vector<Cusp> find_cusps(const PiecewiseLinearWave& wave) {
  const auto& knots = wave.knots();
  const double jump_tol = kSlopeJumpTol * wave.max_abs_slope();
  std::vector<Cusp> cusps;

  if (wave.domain().boundary == Boundary::Periodic) {
    const double seam = wave.slope(0) - wave.slope(wave.segment_count() - 1);
    if (std::abs(seam) > jump_tol)
      cusps.push_back(Cusp{0.0, knots.front().psi, seam});
  }
  for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
    const double jump = wave.slope(i) - wave.slope(i - 1);
    if (std::abs(jump) > jump_tol)
      cusps.push_back(Cusp{knots[i].x, knots[i].psi, jump});
  }
  return cusps;
}

int count_interior_cusps(const std::vector<Cusp>& cusps) {
  int n = 0;
  for (const Cusp& c : cusps)
    if (c.position > 0.0) ++n;
  return n;
}

}  // namespace

ZcDesign critical_strengths(const PiecewiseLinearWave& wave,
                            const UnitSystem& units) {
  const PiecewiseLinearWave w = wave.normalized();
  const std::vector<Cusp> cusps = find_cusps(w);
  const double psi_tol = 1e-14 * w.max_abs_psi();
  const bool periodic = w.domain().boundary == Boundary::Periodic;

  if (periodic) {
    if (count_interior_cusps(cusps) == 1)
      throw PeriodicInfeasibleError(
          "a single delta spike cannot support a continuous zero-energy "
          "state under periodic boundary conditions");
    for (const Cusp& c : cusps) {
      if (c.position == 0.0 && std::abs(c.psi) <= psi_tol)
        throw PeriodicInfeasibleError(
            "seam slopes differ but the wave vanishes at the seam, so no "
            "finite seam spike exists");
    }
  }

  std::vector<DeltaSpike> spikes;
  spikes.reserve(cusps.size());
  const double kf = units.kinetic_factor();
  for (const Cusp& c : cusps) {
    if (std::abs(c.psi) <= psi_tol) {
      std::ostringstream msg;
      msg << "slope discontinuity at x = " << c.position
          << " where the wave vanishes; no finite strength exists";
      throw CuspAtNodeError(msg.str());
    }
    spikes.push_back(DeltaSpike{c.position, kf * c.slope_jump / c.psi});
  }
  return ZcDesign{w, DeltaArrayPotential(w.domain(), std::move(spikes)),
                  units};
}

ZcDesign triangle_design(double c, double width, const UnitSystem& units) {
  if (!(width > 0.0))
    throw std::domain_error("well width must be positive");
  if (!(c > 0.0) || !(c < width))
    throw std::domain_error(
        "triangle peak must lie strictly inside the well; the critical "
        "strength diverges as c approaches either wall");
  PiecewiseLinearWave wave(make_domain(width, Boundary::Dirichlet),
                           {{0.0, 0.0}, {c, 1.0}, {width, 0.0}});
  return critical_strengths(wave, units);
}

std::pair<ZcDesign, ZcDesign> twin_designs(double width,
                                           const UnitSystem& units) {
  if (!(width > 0.0))
    throw std::domain_error("well width must be positive");
  const double x1 = width / 3.0;
  const double x2 = 2.0 * width / 3.0;
  const WellDomain dom = make_domain(width, Boundary::Dirichlet);
  PiecewiseLinearWave symmetric(
      dom, {{0.0, 0.0}, {x1, 1.0}, {x2, 1.0}, {width, 0.0}});
  PiecewiseLinearWave antisymmetric(
      dom, {{0.0, 0.0}, {x1, 1.0}, {x2, -1.0}, {width, 0.0}});
  return {critical_strengths(symmetric, units),
          critical_strengths(antisymmetric, units)};
}

ZcDesign discretize_smooth(const WellDomain& domain,
                           const std::vector<Knot>& samples,
                           const UnitSystem& units) {
  if (domain.boundary != Boundary::Dirichlet)
    throw std::invalid_argument(
        "discretize_smooth is defined for Dirichlet wells");
  if (samples.size() < 2)
    throw std::invalid_argument("need at least two interior samples");
  std::vector<Knot> knots;
  knots.reserve(samples.size() + 2);
  knots.push_back(Knot{0.0, 0.0});
  for (const Knot& s : samples) {
    if (!(s.x > 0.0) || !(s.x < domain.width))
      throw std::invalid_argument(
          "samples must lie strictly inside the well");
    knots.push_back(s);
  }
  knots.push_back(Knot{domain.width, 0.0});
  return critical_strengths(PiecewiseLinearWave(domain, std::move(knots)),
                            units);
}

FeasibilityReport validate_bc(const PiecewiseLinearWave& wave,
                              Boundary boundary) {
  FeasibilityReport rep;
  rep.boundary = boundary;
  const auto& knots = wave.knots();
  const double psi_tol = 1e-12 * std::max(wave.max_abs_psi(), 1e-300);

  if (boundary == Boundary::Dirichlet) {
    rep.endpoints_zero = std::abs(knots.front().psi) <= psi_tol &&
                         std::abs(knots.back().psi) <= psi_tol;
    rep.ok = rep.endpoints_zero;
    rep.detail = rep.ok ? "endpoint values vanish"
                        : "endpoint values must vanish under Dirichlet "
                          "boundary conditions";
    return rep;
  }

  rep.endpoint_values_match =
      std::abs(knots.front().psi - knots.back().psi) <= psi_tol;

  const double jump_tol = kSlopeJumpTol * wave.max_abs_slope();
  const double seam = wave.slope(0) - wave.slope(wave.segment_count() - 1);
  rep.seam_slopes_match = std::abs(seam) <= jump_tol;
  rep.needs_seam_spike = !rep.seam_slopes_match;
  rep.seam_spike_possible = std::abs(knots.front().psi) > psi_tol;

  for (std::size_t i = 1; i + 1 < knots.size(); ++i)
    if (std::abs(wave.slope(i) - wave.slope(i - 1)) > jump_tol)
      ++rep.interior_cusp_count;

  rep.single_cusp_infeasible =
      rep.interior_cusp_count == 1 && !rep.seam_slopes_match;

  rep.ok = rep.endpoint_values_match && !rep.single_cusp_infeasible &&
           (rep.seam_slopes_match || rep.seam_spike_possible);

  if (!rep.endpoint_values_match)
    rep.detail = "wave values at x = 0 and x = width differ";
  else if (rep.single_cusp_infeasible)
    rep.detail =
        "one cusp cannot wrap continuously around a periodic well; at "
        "least two spikes are required";
  else if (rep.needs_seam_spike && !rep.seam_spike_possible)
    rep.detail = "seam slopes differ and the wave vanishes at the seam";
  else if (rep.needs_seam_spike)
    rep.detail = "feasible with an additional seam spike at x = 0";
  else
    rep.detail = "feasible";
  return rep;
}

}  // namespace zcwell
