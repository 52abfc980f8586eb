#include "zcwell/analysis.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "zcwell/errors.hpp"

namespace zcwell {

namespace {

// Slope jumps of the wave, walls included (the slope is zero outside a
// Dirichlet well), with compensated moment sums of the jump weights.
struct CuspSums {
  std::vector<double> position;
  std::vector<double> weight;  // -(slope jump)
  double s2 = 0.0, s3 = 0.0, s4 = 0.0, s5 = 0.0, s6 = 0.0;
  double sum_abs = 0.0;   // sum |jump|
  double sum_sq = 0.0;    // sum jump^2
};

void kahan_add(double& sum, double& comp, double term) {
  const double y = term - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

CuspSums cusp_sums(const PiecewiseLinearWave& wave) {
  const auto& knots = wave.knots();
  CuspSums cs;
  cs.position.reserve(knots.size());
  cs.weight.reserve(knots.size());
  for (std::size_t j = 0; j < knots.size(); ++j) {
    const double left = j == 0 ? 0.0 : wave.slope(j - 1);
    const double right = j + 1 == knots.size() ? 0.0 : wave.slope(j);
    const double jump = right - left;
    cs.position.push_back(knots[j].x);
    cs.weight.push_back(-jump);
  }
  double c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
  for (std::size_t j = 0; j < cs.weight.size(); ++j) {
    const double w = cs.weight[j];
    const double x = cs.position[j];
    const double x2 = x * x;
    kahan_add(cs.s2, c2, w * x2);
    kahan_add(cs.s3, c3, w * x2 * x);
    kahan_add(cs.s4, c4, w * x2 * x2);
    kahan_add(cs.s5, c5, w * x2 * x2 * x);
    kahan_add(cs.s6, c6, w * x2 * x2 * x2);
    cs.sum_abs += std::abs(w);
    cs.sum_sq += w * w;
  }
  return cs;
}

void require_dirichlet(const ZcDesign& design) {
  if (design.wave.domain().boundary != Boundary::Dirichlet)
    throw std::invalid_argument(
        "momentum-space analysis is defined for Dirichlet wells");
}

MomentumSample eval_momentum(const CuspSums& cs, const UnitSystem& units,
                             double width, double p) {
  const double hbar = units.hbar;
  const double pref = 1.0 / std::sqrt(2.0 * std::numbers::pi * hbar);
  MomentumSample out;
  out.p = p;
  if (std::abs(p) < 1e-4 * hbar / width) {
    // Taylor expansion of the jump sum; the zeroth and first moments of
    // the jumps vanish identically, so the series starts at the second.
    const double u = p / hbar;
    const double u2 = u * u;
    out.phi_re = pref * (-0.5 * cs.s2 + u2 * (cs.s4 / 24.0 -
                                              u2 * cs.s6 / 720.0));
    out.phi_im = pref * u * (cs.s3 / 6.0 - u2 * cs.s5 / 120.0);
  } else {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < cs.weight.size(); ++j) {
      const double phase = p * cs.position[j] / hbar;
      re += cs.weight[j] * std::cos(phase);
      im -= cs.weight[j] * std::sin(phase);
    }
    const double factor = pref * hbar * hbar / (p * p);
    out.phi_re = factor * re;
    out.phi_im = factor * im;
  }
  out.density = out.phi_re * out.phi_re + out.phi_im * out.phi_im;
  return out;
}

// Adaptive Simpson with an absolute tolerance, seeded with enough panels
// to resolve the oscillation scale before recursion starts.
struct SimpsonState {
  int max_depth = 48;
  bool converged = true;
};

double simpson_recurse(const std::function<double(double)>& f, double a,
                       double b, double fa, double fm, double fb,
                       double whole, double tol, int depth,
                       SimpsonState& st) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth >= st.max_depth) {
    if (depth >= st.max_depth && std::abs(delta) > 15.0 * tol)
      st.converged = false;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1,
                         st) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1,
                         st);
}

double oscillatory_simpson(const std::function<double(double)>& f, double a,
                           double b, double tol, double panel_width,
                           SimpsonState& st) {
  const double panels_needed = std::ceil((b - a) / panel_width);
  if (!(panels_needed < 2e7)) {
    st.converged = false;
    return 0.0;
  }
  const int panels = std::max(1, static_cast<int>(panels_needed));
  const double w = (b - a) / panels;
  const double tol_per_panel = tol / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * w;
    const double hi = i + 1 == panels ? b : lo + w;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_recurse(f, lo, hi, fa, fm, fb, whole, tol_per_panel, 0,
                             st);
  }
  return total;
}

}  // namespace

double potential_expectation(const ZcDesign& design) {
  double v = 0.0;
  for (const DeltaSpike& s : design.potential.spikes()) {
    const double psi = design.wave.eval(s.position);
    v += s.strength * psi * psi;
  }
  return v;
}

EnergyBreakdown kinetic_expectation(const ZcDesign& design) {
  EnergyBreakdown out;
  const PiecewiseLinearWave& w = design.wave;
  const double kf = design.units.kinetic_factor();

  double grad = 0.0;
  for (std::size_t i = 0; i < w.segment_count(); ++i) {
    const double s = w.slope(i);
    grad += s * s * (w.knots()[i + 1].x - w.knots()[i].x);
  }
  out.kinetic_gradient = kf * grad;

  // Distributional route: psi'' carries a delta of weight (slope jump) at
  // every cusp, including the seam of a periodic well.
  double dist = 0.0;
  const auto& knots = w.knots();
  for (std::size_t i = 1; i + 1 < knots.size(); ++i)
    dist += (w.slope(i) - w.slope(i - 1)) * knots[i].psi;
  if (w.domain().boundary == Boundary::Periodic)
    dist += (w.slope(0) - w.slope(w.segment_count() - 1)) *
            knots.front().psi;
  out.kinetic_distributional = -kf * dist;

  out.potential = potential_expectation(design);
  out.total = out.potential + out.kinetic_gradient;
  return out;
}

EnergyBreakdown energy_breakdown(const ZcDesign& design) {
  return kinetic_expectation(design);
}

MomentumSample momentum_wavefunction(const ZcDesign& design, double p) {
  require_dirichlet(design);
  const CuspSums cs = cusp_sums(design.wave);
  return eval_momentum(cs, design.units, design.wave.width(), p);
}

double momentum_density(const ZcDesign& design, double p) {
  return momentum_wavefunction(design, p).density;
}

std::vector<MomentumSample> momentum_sweep_serial(
    const ZcDesign& design, const std::vector<double>& ps) {
  require_dirichlet(design);
  const CuspSums cs = cusp_sums(design.wave);
  const double width = design.wave.width();
  std::vector<MomentumSample> out(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    out[i] = eval_momentum(cs, design.units, width, ps[i]);
  return out;
}

std::vector<MomentumSample> momentum_sweep(const ZcDesign& design,
                                           const std::vector<double>& ps) {
  require_dirichlet(design);
  const CuspSums cs = cusp_sums(design.wave);
  const double width = design.wave.width();
  std::vector<MomentumSample> out(ps.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ps.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = eval_momentum(cs, design.units, width, ps[i]);
  return out;
}

double density_envelope_constant(const ZcDesign& design) {
  require_dirichlet(design);
  const CuspSums cs = cusp_sums(design.wave);
  const double h3 = design.units.hbar * design.units.hbar *
                    design.units.hbar;
  return h3 / (2.0 * std::numbers::pi) * cs.sum_abs * cs.sum_abs;
}

MomentumMoments momentum_moments(const ZcDesign& design,
                                 double tail_tolerance) {
  require_dirichlet(design);
  if (!(tail_tolerance > 0.0))
    throw std::invalid_argument("tail tolerance must be positive");

  const UnitSystem& units = design.units;
  const double hbar = units.hbar;
  const double width = design.wave.width();
  const CuspSums cs = cusp_sums(design.wave);

  MomentumMoments out;
  out.p_mean = 0.0;  // real wave: odd integrand over a symmetric grid
  out.p2_analytic = 2.0 * units.mass * kinetic_expectation(design)
                        .kinetic_gradient;
  out.p_spread = std::sqrt(std::max(0.0, out.p2_analytic));

  // Beyond P the integrand p^2 |phi|^2 splits into an exactly integrable
  // mean term (hbar^3/pi) sum_j w_j^2 / p^2 and an oscillatory remainder
  // whose pairwise bound fixes P:
  //   |remainder| <= (4 hbar^4 / pi) sum_{j<k} |w_j w_k| / |c_j - c_k| / P^2.
  double pair_sum = 0.0;
  for (std::size_t j = 0; j < cs.weight.size(); ++j)
    for (std::size_t k = j + 1; k < cs.weight.size(); ++k)
      pair_sum += std::abs(cs.weight[j] * cs.weight[k]) /
                  std::abs(cs.position[j] - cs.position[k]);

  const double scale =
      std::max(std::abs(out.p2_analytic), (hbar / width) * (hbar / width));
  const double tol_abs = tail_tolerance * scale;
  const double h4 = hbar * hbar * hbar * hbar;
  double P = std::sqrt(4.0 * h4 / std::numbers::pi *
                       std::max(pair_sum, 1e-300) / tol_abs);
  P = std::max(P, 50.0 * hbar / width);

  const double panel_width = 0.5 * std::numbers::pi * hbar / width;
  const double p_cap = 1.9e7 * panel_width;
  if (P > p_cap) {
    const double achievable = 4.0 * h4 / std::numbers::pi *
                              std::max(pair_sum, 1e-300) /
                              (p_cap * p_cap) / scale;
    throw QuadratureError(
        "requested tail tolerance is out of reach; achieved bound " +
        std::to_string(achievable));
  }

  const CuspSums* csp = &cs;
  const UnitSystem* up = &units;
  auto integrand = [csp, up, width](double p) {
    return p * p * eval_momentum(*csp, *up, width, p).density;
  };

  SimpsonState st;
  const double half = oscillatory_simpson(integrand, 0.0, P,
                                          0.25 * tol_abs, panel_width, st);
  const double mean_tail = hbar * hbar * hbar / std::numbers::pi *
                           cs.sum_sq / P;
  out.p2_quadrature = 2.0 * half + mean_tail;
  out.tail_bound = tol_abs + 0.25 * tol_abs;
  if (!st.converged)
    throw QuadratureError(
        "momentum quadrature did not converge; achieved bound " +
        std::to_string(out.tail_bound + std::abs(out.p2_quadrature -
                                                 out.p2_analytic)));
  return out;
}

double parseval_integral(const ZcDesign& design, double tolerance) {
  require_dirichlet(design);
  if (!(tolerance > 0.0))
    throw std::invalid_argument("tolerance must be positive");
  const UnitSystem& units = design.units;
  const double hbar = units.hbar;
  const double width = design.wave.width();
  const CuspSums cs = cusp_sums(design.wave);

  // Tail of |phi|^2 beyond P, via density <= E / p^4:
  // 2 * E / (3 P^3) <= tolerance / 2.
  const double env = density_envelope_constant(design);
  double P = std::cbrt(4.0 * env / (3.0 * 0.5 * tolerance));
  P = std::max(P, 50.0 * hbar / width);

  const double panel_width = 0.5 * std::numbers::pi * hbar / width;
  const double p_cap = 1.9e7 * panel_width;
  if (P > p_cap) {
    const double achievable = 4.0 * env / (3.0 * p_cap * p_cap * p_cap);
    throw QuadratureError(
        "requested tolerance is out of reach; achieved tail bound " +
        std::to_string(achievable));
  }

  const CuspSums* csp = &cs;
  const UnitSystem* up = &units;
  auto integrand = [csp, up, width](double p) {
    return eval_momentum(*csp, *up, width, p).density;
  };
  SimpsonState st;
  const double half = oscillatory_simpson(integrand, 0.0, P,
                                          0.25 * tolerance, panel_width, st);
  if (!st.converged)
    throw QuadratureError("momentum-density quadrature did not converge");
  return 2.0 * half;
}

}  // namespace zcwell
