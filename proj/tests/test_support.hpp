#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "zcwell/designer.hpp"

namespace zcwell::testing {

// Deterministic generator for property-style tests.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 1) {}

  double uniform() {  // in [0, 1)
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state_ >> 11) / 9007199254740992.0;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }

private:
  std::uint64_t state_;
};

// Random Dirichlet wave with well-separated knots and interior amplitudes
// bounded away from zero, so every cusp admits a finite strength.
inline PiecewiseLinearWave random_wave(Rng& rng, int knot_count,
                                       double width = 1.0) {
  std::vector<Knot> knots;
  knots.push_back({0.0, 0.0});
  const int interior = knot_count - 2;
  const double min_gap = 0.4 * width / (interior + 1);
  double x = 0.0;
  for (int i = 0; i < interior; ++i) {
    const double remaining = width - x - min_gap * (interior - i + 1);
    x += min_gap + rng.uniform() * std::max(remaining, 0.0) /
                       (interior - i + 1);
    double psi = rng.uniform(-2.0, 2.0);
    if (std::abs(psi) < 0.05) psi = psi < 0.0 ? -0.05 : 0.05;
    knots.push_back({x, psi});
  }
  knots.push_back({width, 0.0});
  return PiecewiseLinearWave(make_domain(width, Boundary::Dirichlet),
                             std::move(knots));
}

// Like random_wave, but rejects shapes containing ill-conditioned cusps:
// every interior knot must carry a slope jump of at least a tenth of the
// adjoining slope magnitudes, and adjacent amplitudes must differ
// noticeably.  Scaling such a wave perturbs each strength by only a few
// ulp, so amplitude-invariance checks are meaningful at 1e-13.
inline PiecewiseLinearWave random_cusped_wave(Rng& rng, int knot_count,
                                              double width = 1.0) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    PiecewiseLinearWave wave = random_wave(rng, knot_count, width);
    const auto& knots = wave.knots();
    bool ok = true;
    for (std::size_t i = 0; i + 1 < knots.size() && ok; ++i) {
      if (std::abs(knots[i + 1].psi - knots[i].psi) < 0.25) ok = false;
    }
    for (std::size_t i = 1; i + 1 < knots.size() && ok; ++i) {
      const double left = wave.slope(i - 1);
      const double right = wave.slope(i);
      if (std::abs(right - left) <
          0.1 * (std::abs(left) + std::abs(right)))
        ok = false;
    }
    if (ok) return wave;
  }
  throw std::runtime_error("could not generate a well-cusped wave");
}

// Composite-Simpson transform oracle: integrates psi(x) e^{-ipx/hbar}
// segment by segment through direct pointwise evaluation of the wave.
// Independent of the closed-form momentum path under test.
inline std::complex<double> transform_by_quadrature(
    const PiecewiseLinearWave& wave, const UnitSystem& units, double p,
    int intervals_per_segment = 4000) {
  const double hbar = units.hbar;
  std::complex<double> total = 0.0;
  for (std::size_t seg = 0; seg + 1 < wave.knots().size(); ++seg) {
    const double lo = wave.knots()[seg].x;
    const double hi = wave.knots()[seg + 1].x;
    const int n = intervals_per_segment;  // even
    const double h = (hi - lo) / n;
    std::complex<double> sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = i == n ? hi : lo + i * h;
      const double weight = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const std::complex<double> phase(std::cos(p * x / hbar),
                                       -std::sin(p * x / hbar));
      sum += weight * wave.eval(x) * phase;
    }
    total += sum * (h / 3.0);
  }
  return total / std::sqrt(2.0 * M_PI * hbar);
}

}  // namespace zcwell::testing
