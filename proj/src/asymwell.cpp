#include "zcwell/asymwell.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "zcwell/errors.hpp"

namespace zcwell {

namespace {

// cos(sqrt(w) b) continued to negative w as cosh, and sin(sqrt(w) b)/sqrt(w)
// continued as sinh(.)/sqrt(-w); both are entire in w.  For large barrier
// arguments the pair is rescaled by exp(-arg), which preserves signs and
// roots while avoiding overflow.
struct StepFactors {
  double cosq;
  double sincq;
};

StepFactors step_factors(double w, double b) {
  if (w >= 0.0) {
    const double q = std::sqrt(w);
    const double qb = q * b;
    if (qb < 1e-8) {
      // series keeps sinc exact through O(qb^2)
      return {std::cos(qb), b * (1.0 - qb * qb / 6.0)};
    }
    return {std::cos(qb), std::sin(qb) / q};
  }
  const double kappa = std::sqrt(-w);
  const double kb = kappa * b;
  if (kb < 1e-8) return {std::cosh(kb), b * (1.0 + kb * kb / 6.0)};
  if (kb > 350.0) {
    // common positive factor exp(kb)/2 dropped
    return {1.0, 1.0 / kappa};
  }
  return {std::cosh(kb), std::sinh(kb) / kappa};
}

double threshold_tolerance(const AsymmetricWell& well,
                           const UnitSystem& units) {
  const double scale = std::max(
      well.v0, units.kinetic_factor() / (well.a * well.a));
  return 1e-9 * scale;
}

double zc_residual_chi(double chi, double a, double b) {
  return std::sin(chi * a) + chi * b * std::cos(chi * a);
}

}  // namespace

AsymmetricWell make_asymmetric_well(double a, double b, double v0) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("region widths must be positive");
  if (!(v0 >= 0.0))
    throw std::invalid_argument("step height must be non-negative");
  return AsymmetricWell{a, b, v0};
}

double residual(const AsymmetricWell& well, double energy,
                const UnitSystem& units) {
  if (!(energy > 0.0))
    throw std::domain_error("residual is defined for E > 0");
  const double two_m_over_h2 =
      2.0 * units.mass / (units.hbar * units.hbar);
  const double k = std::sqrt(two_m_over_h2 * energy);
  const double w = two_m_over_h2 * (energy - well.v0);
  const StepFactors f = step_factors(w, well.b);
  return std::sin(k * well.a) * f.cosq +
         k * std::cos(k * well.a) * f.sincq;
}

std::vector<EnergyLevel> solve_levels(const AsymmetricWell& well, int count,
                                      const UnitSystem& units) {
  if (count < 1) throw std::invalid_argument("need count >= 1");
  const double kf = units.kinetic_factor();
  const double two_m_over_h2 = 1.0 / kf;
  const double total = well.a + well.b;
  const double e_ref =
      kf * std::numbers::pi * std::numbers::pi / (total * total);

  // Scan step keeps both phases k*a and q*b below pi/4 per step, which
  // separates consecutive roots.
  auto step_size = [&](double energy) {
    const double sa = std::numbers::pi / (4.0 * well.a);
    const double k = std::sqrt(two_m_over_h2 * energy);
    double de = kf * ((k + sa) * (k + sa) - k * k);
    const double sb = std::numbers::pi / (4.0 * well.b);
    if (energy > well.v0) {
      const double q = std::sqrt(two_m_over_h2 * (energy - well.v0));
      de = std::min(de, kf * ((q + sb) * (q + sb) - q * q));
    } else {
      // below the step region II is non-oscillatory; only the crossing
      // step itself must land with a small q b phase
      de = std::min(de, (well.v0 - energy) + kf * sb * sb);
    }
    return de;
  };

  const double e_cap =
      2.0 * well.v0 +
      4.0 * kf * std::pow((count + 3) * std::numbers::pi / total, 2.0) +
      10.0 * e_ref;
  const double thr_tol = threshold_tolerance(well, units);

  std::vector<EnergyLevel> levels;
  double e_prev = 1e-8 * e_ref;
  double r_prev = residual(well, e_prev, units);

  while (static_cast<int>(levels.size()) < count) {
    const double e_next = e_prev + step_size(e_prev);
    if (e_next > e_cap) {
      std::ostringstream msg;
      msg << "bracket scan exhausted at E = " << e_cap << " with "
          << levels.size() << " of " << count << " roots found";
      throw BracketExhaustedError(msg.str());
    }
    const double r_next = residual(well, e_next, units);
    if (r_prev != 0.0 &&
        ((r_prev < 0.0) != (r_next < 0.0) || r_next == 0.0)) {
      double lo = e_prev, hi = e_next;
      double r_lo = r_prev;
      while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double r_mid = residual(well, mid, units);
        if (r_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((r_lo < 0.0) == (r_mid < 0.0)) {
          lo = mid;
          r_lo = r_mid;
        } else {
          hi = mid;
        }
      }
      const double root = 0.5 * (lo + hi);
      EnergyLevel lvl;
      lvl.index = static_cast<int>(levels.size()) + 1;
      lvl.energy = root;
      if (std::abs(root - well.v0) <= thr_tol)
        lvl.regime = Regime::Threshold;
      else
        lvl.regime = root > well.v0 ? Regime::AboveStep : Regime::BelowStep;
      levels.push_back(lvl);
    }
    e_prev = e_next;
    r_prev = r_next;
  }
  return levels;
}

ZcTuning solve_zc_v0(double a, double b, int branch,
                     const UnitSystem& units) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("region widths must be positive");
  if (branch < 0) throw std::invalid_argument("branch must be >= 0");

  // sin(chi a) + chi b cos(chi a) changes sign between the bracket ends:
  // cos vanishes at the left end, sin at the right.
  double lo = (2.0 * branch + 1.0) * std::numbers::pi / (2.0 * a);
  double hi = (branch + 1.0) * std::numbers::pi / a;
  double r_lo = zc_residual_chi(lo, a, b);
  while (hi - lo > 1e-15 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double r_mid = zc_residual_chi(mid, a, b);
    if (r_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((r_lo < 0.0) == (r_mid < 0.0)) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
  }
  const double chi = 0.5 * (lo + hi);
  return ZcTuning{chi, units.kinetic_factor() * chi * chi};
}

double ZcStepWave::eval(double x) const {
  if (!(x >= 0.0) || !(x <= a + b))
    throw std::domain_error("evaluation point outside the well");
  if (x <= a) return amp_left * std::sin(chi * x);
  if (x == a + b) return 0.0;
  return amp_right * (1.0 - (x - a) / b);
}

double ZcStepWave::derivative(double x) const {
  if (!(x >= 0.0) || !(x <= a + b))
    throw std::domain_error("evaluation point outside the well");
  if (x < a) return amp_left * chi * std::cos(chi * x);
  return -amp_right / b;
}

ZcStepWave zc_wave(const AsymmetricWell& well, const UnitSystem& units) {
  const double chi =
      std::sqrt(2.0 * units.mass * well.v0) / units.hbar;
  const double res = zc_residual_chi(chi, well.a, well.b);
  if (!(std::abs(res) <= 1e-9 * (1.0 + chi * well.b))) {
    std::ostringstream msg;
    msg << "well is not tuned to a zero-curvature state: |sin(chi a) + "
           "chi b cos(chi a)| = "
        << std::abs(res);
    throw UntunedWellError(msg.str());
  }

  // With A = 1: integral over region I is a/2 - sin(2 chi a)/(4 chi),
  // over region II it is sin^2(chi a) * b / 3.
  const double s = std::sin(chi * well.a);
  const double int_left =
      0.5 * well.a - std::sin(2.0 * chi * well.a) / (4.0 * chi);
  const double int_right = s * s * well.b / 3.0;
  const double amp = 1.0 / std::sqrt(int_left + int_right);

  ZcStepWave out;
  out.a = well.a;
  out.b = well.b;
  out.chi = chi;
  out.amp_left = amp;
  out.amp_right = amp * s;
  return out;
}

std::pair<double, double> region_probabilities(const ZcStepWave& wave) {
  const double s = std::sin(wave.chi * wave.a);
  const double int_left =
      0.5 * wave.a - std::sin(2.0 * wave.chi * wave.a) / (4.0 * wave.chi);
  const double int_right = s * s * wave.b / 3.0;
  const double total = int_left + int_right;
  return {int_left / total, int_right / total};
}

}  // namespace zcwell
