#pragma once

#include <cstddef>
#include <vector>

namespace zcwell {

struct UnitSystem {
  double hbar = 1.0;
  double mass = 1.0;

  // hbar^2 / 2m, the prefactor of every kinetic term.
  double kinetic_factor() const { return hbar * hbar / (2.0 * mass); }
};

// Throws std::invalid_argument unless hbar > 0 and mass > 0.
UnitSystem make_units(double hbar, double mass);

enum class Boundary { Dirichlet, Periodic };

struct WellDomain {
  double width = 1.0;
  Boundary boundary = Boundary::Dirichlet;
};

WellDomain make_domain(double width, Boundary boundary);

struct Knot {
  double x = 0.0;
  double psi = 0.0;
};

// Continuous waveform defined by straight-line interpolation between an
// ordered list of knots spanning [0, width].  Immutable after construction;
// all member functions are const and reentrant.
//
// Construction enforces:
//   - at least two knots, first at x = 0 and last at x = width;
//   - strictly increasing x (duplicates are rejected, never sorted);
//   - Dirichlet: psi = 0 at both endpoints;
//   - Periodic:  psi(0) = psi(width).
class PiecewiseLinearWave {
public:
  PiecewiseLinearWave(WellDomain domain, std::vector<Knot> knots);

  const WellDomain& domain() const { return domain_; }
  double width() const { return domain_.width; }
  const std::vector<Knot>& knots() const { return knots_; }
  std::size_t segment_count() const { return knots_.size() - 1; }

  // Slope of segment i, between knots i and i+1.
  double slope(std::size_t segment) const;

  // Linear interpolation; exact at knots.  Throws std::domain_error for
  // x outside [0, width].
  double eval(double x) const;

  // Exact closed-form integral of psi^2 over the well.
  double norm_squared() const;

  // Exact closed-form integral of psi over the well.
  double integral() const;

  // Returns a copy with every amplitude multiplied by factor.
  PiecewiseLinearWave scaled(double factor) const;

  // Rescales so norm_squared() == 1.  A wave already normalized to within
  // a few ulp is returned unchanged, making the operation idempotent.
  // Throws std::invalid_argument for a zero-norm wave.
  PiecewiseLinearWave normalized() const;

  // Mirror image about the well centre.
  PiecewiseLinearWave reflected() const;

  double max_abs_psi() const;
  double max_abs_slope() const;

private:
  WellDomain domain_;
  std::vector<Knot> knots_;
};

}  // namespace zcwell
