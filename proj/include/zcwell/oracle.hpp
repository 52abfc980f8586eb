#pragma once

#include <string>
#include <vector>

#include "zcwell/asymwell.hpp"
#include "zcwell/designer.hpp"
#include "zcwell/susy.hpp"
#include "zcwell/tridiag.hpp"

namespace zcwell {

// Uniform grid of interior nodes.  Dirichlet: n nodes x_j = j h with
// h = width / (n + 1); walls are omitted.  Periodic: n nodes x_j = j h
// with h = width / n and a seam node at x = 0.
class Grid {
public:
  static Grid dirichlet(double width, int n_interior);
  static Grid periodic(double width, int n_nodes);

  int size() const { return n_; }
  double spacing() const { return h_; }
  double width() const { return width_; }
  Boundary boundary() const { return boundary_; }
  double node(int j) const;

  // Index of the node coinciding with the position.  Throws
  // SpikeOffNodeError naming the position and the smallest compatible
  // interior count when no node matches.
  int node_index(double position) const;

private:
  Grid(double width, int n, Boundary boundary);
  double width_;
  int n_;
  double h_;
  Boundary boundary_;
};

// Discrete Hamiltonian: diag_j = hbar^2/(m h^2) + V(x_j) + g_j / h,
// offdiag = -hbar^2/(2 m h^2); the full strength of a spike lands on its
// single node (first-order representation).
SymTridiag build_hamiltonian(const DeltaArrayPotential& potential,
                             const Grid& grid, const UnitSystem& units);
SymTridiag build_hamiltonian(const PartnerPotential& potential,
                             const Grid& grid, const UnitSystem& units);
SymTridiag build_hamiltonian(const AsymmetricWell& well, const Grid& grid,
                             const UnitSystem& units);

struct EigenPairs {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // grid-normalized, sum v^2 h = 1
};

// k smallest eigenpairs: Sturm-sequence bisection for values, inverse
// iteration for vectors, first substantial component made positive.
EigenPairs lowest_eigenpairs(const SymTridiag& hamiltonian, int k,
                             double grid_spacing);

struct RungResult {
  int n = 0;
  double h = 0.0;
  std::vector<double> eigenvalues;
  double zero_mode = 0.0;  // ground eigenvalue
  double overlap = 0.0;    // |<numeric ground | sampled design>|, in [0, 1]
};

struct SpectralReport {
  std::vector<RungResult> rungs;
  double convergence_order = 0.0;  // mean empirical order of |E0|
  bool zero_mode_decreasing = false;
  bool zero_mode_at_noise_floor = false;  // |E0| <= solver resolution
  bool ok = false;
  std::string message;
};

// Independent confirmation that a design is a zero mode.  A spike array
// whose strengths satisfy the cusp condition represents the sampled wave
// exactly on any on-node grid (the second difference of an
// affine-between-kinks vector cancels the g/h diagonal identically), so
// the ladder typically reports |E0| pinned at the eigensolver's
// resolution floor on every rung.  A detuned design instead keeps |E0|
// away from zero, which the report flags as a failure (never throws).
SpectralReport verify_design(const ZcDesign& design,
                             const std::vector<int>& ladder,
                             int eigencount = 4);

struct LevelMatch {
  int level = 0;               // n: pairs E_n of the partner with E_{n+1}
  double e_plus = 0.0;         // Richardson-extrapolated partner level
  double e_minus_next = 0.0;   // extrapolated original level n+1
  double rel_gap = 0.0;
  bool pass = false;
};

struct IsospectralReport {
  std::vector<LevelMatch> levels;
  double zero_mode_minus = 0.0;   // extrapolated E0 of the original
  double ground_plus = 0.0;       // extrapolated E0 of the partner
  bool zero_mode_unmatched = false;
  bool ok = false;
};

// Compares the spectra of a design and its partner on a grid ladder,
// Richardson-extrapolating each level at its empirically measured order.
// Level n of the partner is matched against level n+1 of the original;
// the original's zero mode must have no partner counterpart.
IsospectralReport isospectral_check(const IsospectralPair& pair, int k,
                                    const std::vector<int>& ladder,
                                    double rel_tolerance);

// Two-point Richardson extrapolation at the order measured from the last
// three rungs (clamped to [0.5, 3]); falls back to the finest value when
// the differences do not shrink.
double richardson_extrapolate(const std::vector<double>& values,
                              const std::vector<double>& spacings);

}  // namespace zcwell
