#pragma once

#include <cstddef>
#include <vector>

namespace zcwell {

// Symmetric matrix with per-row diagonal, one constant off-diagonal value,
// and an optional corner entry coupling the first and last rows (periodic
// boundary coupling).
struct SymTridiag {
  std::vector<double> diag;
  double offdiag = 0.0;
  double corner = 0.0;  // zero means plain tridiagonal

  std::size_t size() const { return diag.size(); }
  double inf_norm() const;
};

// Gershgorin interval containing every eigenvalue.
struct SpectrumBounds {
  double lo = 0.0;
  double hi = 0.0;
};
SpectrumBounds gershgorin_bounds(const SymTridiag& m);

// Number of eigenvalues strictly below lambda, from the inertia of the
// LDL^T factorization (Sturm count).  The corner entry, when present, is
// handled by bordering: the last row/column is eliminated through a Schur
// complement whose sign contributes the final count.  Never misses
// eigenvalues.
std::size_t count_below(const SymTridiag& m, double lambda);

// k smallest eigenvalues by bisection on the Sturm count, ascending,
// each refined to machine precision.  The parallel variant runs the
// per-index bisections concurrently and returns bit-identical values.
std::vector<double> lowest_eigenvalues_serial(const SymTridiag& m,
                                              std::size_t k);
std::vector<double> lowest_eigenvalues(const SymTridiag& m, std::size_t k);

// Eigenvector by inverse iteration at the given eigenvalue estimate,
// normalized to unit Euclidean length with the first component of
// magnitude above tolerance made positive.  Throws EigensolveError after
// bounded retries with perturbed shifts.
std::vector<double> inverse_iteration(const SymTridiag& m, double lambda);

}  // namespace zcwell
