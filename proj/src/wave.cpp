#include "zcwell/wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace zcwell {

UnitSystem make_units(double hbar, double mass) {
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw std::invalid_argument("hbar must be positive and finite");
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("mass must be positive and finite");
  return UnitSystem{hbar, mass};
}

WellDomain make_domain(double width, Boundary boundary) {
  if (!(width > 0.0) || !std::isfinite(width))
    throw std::invalid_argument("well width must be positive and finite");
  return WellDomain{width, boundary};
}

PiecewiseLinearWave::PiecewiseLinearWave(WellDomain domain,
                                         std::vector<Knot> knots)
    : domain_(domain), knots_(std::move(knots)) {
  if (!(domain_.width > 0.0) || !std::isfinite(domain_.width))
    throw std::invalid_argument("well width must be positive and finite");
  if (knots_.size() < 2)
    throw std::invalid_argument("a wave needs at least two knots");
  if (knots_.front().x != 0.0)
    throw std::invalid_argument("first knot must sit at x = 0");
  if (knots_.back().x != domain_.width)
    throw std::invalid_argument("last knot must sit at x = width");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].x > knots_[i - 1].x))
      throw std::invalid_argument(
          "knot positions must be strictly increasing (got x[" +
          std::to_string(i) + "] <= x[" + std::to_string(i - 1) + "])");
  }
  for (const Knot& k : knots_) {
    if (!std::isfinite(k.x) || !std::isfinite(k.psi))
      throw std::invalid_argument("knot coordinates must be finite");
  }
  if (domain_.boundary == Boundary::Dirichlet) {
    if (knots_.front().psi != 0.0 || knots_.back().psi != 0.0)
      throw std::invalid_argument(
          "Dirichlet wave must vanish at both endpoints");
  } else {
    if (knots_.front().psi != knots_.back().psi)
      throw std::invalid_argument(
          "periodic wave must take equal values at x = 0 and x = width");
  }
}

double PiecewiseLinearWave::slope(std::size_t segment) const {
  const Knot& a = knots_[segment];
  const Knot& b = knots_[segment + 1];
  return (b.psi - a.psi) / (b.x - a.x);
}

double PiecewiseLinearWave::eval(double x) const {
  if (!(x >= 0.0) || !(x <= domain_.width))
    throw std::domain_error("evaluation point outside the well");
  auto it = std::upper_bound(
      knots_.begin(), knots_.end(), x,
      [](double v, const Knot& k) { return v < k.x; });
  std::size_t seg = static_cast<std::size_t>(it - knots_.begin());
  if (seg == knots_.size()) return knots_.back().psi;
  if (seg > 0) --seg;
  const Knot& a = knots_[seg];
  if (x == a.x) return a.psi;
  const Knot& b = knots_[seg + 1];
  if (x == b.x) return b.psi;
  return a.psi + (x - a.x) * (b.psi - a.psi) / (b.x - a.x);
}

double PiecewiseLinearWave::norm_squared() const {
  // Per segment: int (affine)^2 = len * (p^2 + p q + q^2) / 3.
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double p = knots_[i].psi;
    const double q = knots_[i + 1].psi;
    const double len = knots_[i + 1].x - knots_[i].x;
    total += len * (p * p + p * q + q * q) / 3.0;
  }
  return total;
}

double PiecewiseLinearWave::integral() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double len = knots_[i + 1].x - knots_[i].x;
    total += 0.5 * len * (knots_[i].psi + knots_[i + 1].psi);
  }
  return total;
}

PiecewiseLinearWave PiecewiseLinearWave::scaled(double factor) const {
  std::vector<Knot> out = knots_;
  for (Knot& k : out) k.psi *= factor;
  return PiecewiseLinearWave(domain_, std::move(out));
}

PiecewiseLinearWave PiecewiseLinearWave::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0))
    throw std::invalid_argument("cannot normalize a zero-norm wave");
  if (std::abs(n2 - 1.0) <= 16.0 * std::numeric_limits<double>::epsilon())
    return *this;
  return scaled(1.0 / std::sqrt(n2));
}

PiecewiseLinearWave PiecewiseLinearWave::reflected() const {
  std::vector<Knot> out(knots_.size());
  const double w = domain_.width;
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const Knot& k = knots_[knots_.size() - 1 - i];
    out[i] = Knot{w - k.x, k.psi};  // exact 0 and w at the ends
  }
  return PiecewiseLinearWave(domain_, std::move(out));
}

double PiecewiseLinearWave::max_abs_psi() const {
  double m = 0.0;
  for (const Knot& k : knots_) m = std::max(m, std::abs(k.psi));
  return m;
}

double PiecewiseLinearWave::max_abs_slope() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
    m = std::max(m, std::abs(slope(i)));
  return m;
}

}  // namespace zcwell
