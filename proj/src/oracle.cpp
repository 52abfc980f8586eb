#include "zcwell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zcwell/errors.hpp"

namespace zcwell {

namespace {

// Smallest admissible interior count whose node set contains the position,
// from a continued-fraction rational approximation of position/width.
int smallest_compatible_n(double position, double width,
                          Boundary boundary) {
  const double target = position / width;
  double x = target;
  long long p_prev = 0, q_prev = 1, p = 1, q = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    const long long ai = static_cast<long long>(a);
    const long long p_next = ai * p + p_prev;
    const long long q_next = ai * q + q_prev;
    p_prev = p; q_prev = q; p = p_next; q = q_next;
    if (q > 0 &&
        std::abs(target - static_cast<double>(p) / static_cast<double>(q)) <
            1e-12)
      break;
    const double frac = x - a;
    if (frac < 1e-15 || q > 1000000) break;
    x = 1.0 / frac;
  }
  if (q <= 0) q = 1;
  // Dirichlet needs (n+1) divisible by q, periodic needs n divisible by q.
  const long long divisor = q;
  long long count = divisor * ((15 + divisor) / divisor);
  if (boundary == Boundary::Dirichlet) {
    while (count - 1 < 15) count += divisor;
    return static_cast<int>(count - 1);
  }
  while (count < 15) count += divisor;
  return static_cast<int>(count);
}

void spike_diagonal(const std::vector<DeltaSpike>& spikes, const Grid& grid,
                    std::vector<double>& diag) {
  for (const DeltaSpike& s : spikes) {
    const int j = grid.node_index(s.position);
    diag[j] += s.strength / grid.spacing();
  }
}

SymTridiag kinetic_skeleton(const Grid& grid, const UnitSystem& units) {
  const double h = grid.spacing();
  const double t = units.kinetic_factor() / (h * h);  // hbar^2 / 2m h^2
  SymTridiag m;
  m.diag.assign(grid.size(), 2.0 * t);
  m.offdiag = -t;
  if (grid.boundary() == Boundary::Periodic) m.corner = -t;
  return m;
}

}  // namespace

Grid::Grid(double width, int n, Boundary boundary)
    : width_(width), n_(n), boundary_(boundary) {
  if (!(width > 0.0)) throw std::invalid_argument("width must be positive");
  if (n < 15)
    throw std::invalid_argument("grid needs at least 15 interior nodes");
  h_ = boundary == Boundary::Dirichlet ? width / (n + 1) : width / n;
}

Grid Grid::dirichlet(double width, int n_interior) {
  return Grid(width, n_interior, Boundary::Dirichlet);
}

Grid Grid::periodic(double width, int n_nodes) {
  return Grid(width, n_nodes, Boundary::Periodic);
}

double Grid::node(int j) const {
  return boundary_ == Boundary::Dirichlet ? (j + 1) * h_ : j * h_;
}

int Grid::node_index(double position) const {
  const double offset = boundary_ == Boundary::Dirichlet ? 1.0 : 0.0;
  const double jf = position / h_ - offset;
  const int j = static_cast<int>(std::llround(jf));
  if (j >= 0 && j < n_ && std::abs(node(j) - position) <= 1e-9 * width_)
    return j;
  std::ostringstream msg;
  msg << "spike at x = " << position
      << " does not coincide with a grid node (n = " << n_
      << "); smallest compatible interior count is "
      << smallest_compatible_n(position, width_, boundary_);
  throw SpikeOffNodeError(msg.str());
}

SymTridiag build_hamiltonian(const DeltaArrayPotential& potential,
                             const Grid& grid, const UnitSystem& units) {
  SymTridiag m = kinetic_skeleton(grid, units);
  spike_diagonal(potential.spikes(), grid, m.diag);
  return m;
}

SymTridiag build_hamiltonian(const PartnerPotential& potential,
                             const Grid& grid, const UnitSystem& units) {
  SymTridiag m = kinetic_skeleton(grid, units);
  for (int j = 0; j < grid.size(); ++j)
    m.diag[j] += potential.eval_smooth(grid.node(j));
  spike_diagonal(potential.spikes, grid, m.diag);
  return m;
}

SymTridiag build_hamiltonian(const AsymmetricWell& well, const Grid& grid,
                             const UnitSystem& units) {
  SymTridiag m = kinetic_skeleton(grid, units);
  const double h = grid.spacing();
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    if (std::abs(x - well.a) <= 1e-9 * h)
      m.diag[j] += 0.5 * well.v0;  // midpoint value at the step node
    else if (x > well.a)
      m.diag[j] += well.v0;
  }
  return m;
}

EigenPairs lowest_eigenpairs(const SymTridiag& hamiltonian, int k,
                             double grid_spacing) {
  if (k < 1 || static_cast<std::size_t>(k) > hamiltonian.size())
    throw std::invalid_argument("eigenpair count out of range");
  EigenPairs out;
  out.values = lowest_eigenvalues(hamiltonian, static_cast<std::size_t>(k));
  out.vectors.resize(k);
  const double scale = 1.0 / std::sqrt(grid_spacing);
  const std::ptrdiff_t kk = k;
  std::exception_ptr teptr = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < kk; ++j) {
    try {
      std::vector<double> v = inverse_iteration(hamiltonian, out.values[j]);
      for (double& x : v) x *= scale;  // unit norm in sum v^2 h
      out.vectors[j] = std::move(v);
    } catch (...) {
#pragma omp critical
      if (teptr == nullptr) teptr = std::current_exception();
    }
  }
  if (teptr) std::rethrow_exception(teptr);
  return out;
}

namespace {

double ladder_order(const std::vector<double>& abs_e0,
                    const std::vector<double>& spacings) {
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i + 1 < abs_e0.size(); ++i) {
    if (abs_e0[i + 1] > 0.0 && abs_e0[i] > 0.0) {
      sum += std::log(abs_e0[i] / abs_e0[i + 1]) /
             std::log(spacings[i] / spacings[i + 1]);
      ++n;
    }
  }
  return n > 0 ? sum / n : 0.0;
}

}  // namespace

SpectralReport verify_design(const ZcDesign& design,
                             const std::vector<int>& ladder,
                             int eigencount) {
  if (ladder.empty()) throw std::invalid_argument("empty grid ladder");
  SpectralReport report;
  const PiecewiseLinearWave& wave = design.wave;
  const bool periodic = wave.domain().boundary == Boundary::Periodic;

  bool at_floor = true;
  for (int n : ladder) {
    const Grid grid = periodic ? Grid::periodic(wave.width(), n)
                               : Grid::dirichlet(wave.width(), n);
    const SymTridiag h = build_hamiltonian(design.potential, grid,
                                           design.units);
    const EigenPairs pairs = lowest_eigenpairs(h, eigencount,
                                               grid.spacing());
    const double floor =
        32.0 * std::numeric_limits<double>::epsilon() * h.inf_norm();
    at_floor = at_floor && std::abs(pairs.values[0]) <= floor;

    RungResult rung;
    rung.n = n;
    rung.h = grid.spacing();
    rung.eigenvalues = pairs.values;
    rung.zero_mode = pairs.values[0];

    // Grid-normalize the sampled design wave before the overlap so the
    // result is a pure direction cosine.
    std::vector<double> sample(grid.size());
    double s2 = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      sample[j] = wave.eval(grid.node(j));
      s2 += sample[j] * sample[j] * grid.spacing();
    }
    const double snorm = std::sqrt(s2);
    double dot = 0.0;
    for (int j = 0; j < grid.size(); ++j)
      dot += pairs.vectors[0][j] * sample[j] * grid.spacing();
    rung.overlap = std::min(1.0, std::abs(dot) / snorm);
    report.rungs.push_back(std::move(rung));
  }

  std::vector<double> abs_e0, spacings;
  for (const RungResult& r : report.rungs) {
    abs_e0.push_back(std::abs(r.zero_mode));
    spacings.push_back(r.h);
  }
  report.convergence_order = ladder_order(abs_e0, spacings);
  report.zero_mode_decreasing = true;
  for (std::size_t i = 0; i + 1 < abs_e0.size(); ++i)
    if (!(abs_e0[i + 1] < abs_e0[i])) report.zero_mode_decreasing = false;
  report.zero_mode_at_noise_floor = at_floor;

  report.ok = report.zero_mode_at_noise_floor ||
              report.zero_mode_decreasing || report.rungs.size() < 2;
  if (report.zero_mode_at_noise_floor)
    report.message =
        "zero mode confirmed: |E0| sits at the eigensolver resolution "
        "floor on every rung (exact on-node representation)";
  else if (report.zero_mode_decreasing)
    report.message = "zero mode confirmed: |E0| decreases along the ladder";
  else
    report.message =
        "verification failure: |E0| neither decreases along the ladder "
        "nor reaches the resolution floor";
  return report;
}

double richardson_extrapolate(const std::vector<double>& values,
                              const std::vector<double>& spacings) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("no values to extrapolate");
  if (n == 1) return values[0];
  const double d_coarse = n >= 3 ? values[n - 2] - values[n - 3] : 0.0;
  const double d_fine = values[n - 1] - values[n - 2];
  double order = 1.0;
  if (n >= 3 && d_fine != 0.0 && d_coarse != 0.0 &&
      (d_fine < 0.0) == (d_coarse < 0.0)) {
    const double ratio = d_coarse / d_fine;
    if (ratio > 1.0) {
      order = std::log(ratio) / std::log(spacings[n - 3] / spacings[n - 2]);
      order = std::clamp(order, 0.5, 3.0);
    } else {
      return values[n - 1];  // differences not shrinking
    }
  }
  const double factor =
      std::pow(spacings[n - 2] / spacings[n - 1], order) - 1.0;
  return values[n - 1] + d_fine / factor;
}

IsospectralReport isospectral_check(const IsospectralPair& pair, int k,
                                    const std::vector<int>& ladder,
                                    double rel_tolerance) {
  if (k < 1) throw std::invalid_argument("need k >= 1 levels");
  if (ladder.empty()) throw std::invalid_argument("empty grid ladder");
  const double width = pair.original.domain().width;

  std::vector<std::vector<double>> minus_levels(k + 1), plus_levels(k);
  std::vector<double> spacings;

  for (int n : ladder) {
    const Grid grid = Grid::dirichlet(width, n);
    spacings.push_back(grid.spacing());
    const SymTridiag h_minus =
        build_hamiltonian(pair.original, grid, pair.units);
    const SymTridiag h_plus =
        build_hamiltonian(pair.partner, grid, pair.units);
    const std::vector<double> em =
        lowest_eigenvalues(h_minus, static_cast<std::size_t>(k + 1));
    const std::vector<double> ep =
        lowest_eigenvalues(h_plus, static_cast<std::size_t>(k));
    for (int j = 0; j <= k; ++j) minus_levels[j].push_back(em[j]);
    for (int j = 0; j < k; ++j) plus_levels[j].push_back(ep[j]);
  }

  IsospectralReport report;
  report.zero_mode_minus =
      richardson_extrapolate(minus_levels[0], spacings);
  report.ground_plus = richardson_extrapolate(plus_levels[0], spacings);

  bool all_pass = true;
  for (int j = 0; j < k; ++j) {
    LevelMatch match;
    match.level = j;
    match.e_plus = richardson_extrapolate(plus_levels[j], spacings);
    match.e_minus_next =
        richardson_extrapolate(minus_levels[j + 1], spacings);
    const double scale =
        std::max({std::abs(match.e_plus), std::abs(match.e_minus_next),
                  1e-300});
    match.rel_gap = std::abs(match.e_plus - match.e_minus_next) / scale;
    match.pass = match.rel_gap <= rel_tolerance;
    all_pass = all_pass && match.pass;
    report.levels.push_back(match);
  }

  // The deleted zero mode must sit far below the partner's ground level.
  const double first_excited =
      richardson_extrapolate(minus_levels[1], spacings);
  report.zero_mode_unmatched =
      std::abs(report.zero_mode_minus) < 0.1 * std::abs(first_excited) &&
      report.ground_plus - report.zero_mode_minus >
          0.5 * std::abs(first_excited);
  report.ok = all_pass && report.zero_mode_unmatched;
  return report;
}

}  // namespace zcwell
