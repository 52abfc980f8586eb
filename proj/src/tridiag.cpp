#include "zcwell/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zcwell/errors.hpp"

namespace zcwell {

namespace {

constexpr double kPivMin = 1e-290;

// Inertia of the leading (n-1) x (n-1) tridiagonal block of (m - lambda),
// plus the Schur complement of the bordered last row/column when a corner
// entry is present.
std::size_t count_below_bordered(const SymTridiag& m, double lambda) {
  const std::size_t n = m.size();
  const double e = m.offdiag;
  const double e2 = e * e;
  std::size_t count = 0;

  // LDL^T pivots of the leading block; w tracks L^{-1} applied to the
  // border column c = (corner, 0, ..., 0, offdiag)^T.
  double d = m.diag[0] - lambda;
  if (std::abs(d) < kPivMin) d = -kPivMin;
  if (d < 0.0) ++count;
  double w = m.corner;
  double schur = (m.diag[n - 1] - lambda) - w * w / d;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double l = e / d;
    d = m.diag[i] - lambda - e2 / d;
    if (std::abs(d) < kPivMin) d = -kPivMin;
    if (d < 0.0) ++count;
    const double c_i = (i + 2 == n) ? e : 0.0;
    w = c_i - l * w;
    schur -= w * w / d;
  }
  if (schur < 0.0) ++count;
  return count;
}

}  // namespace

double SymTridiag::inf_norm() const {
  double norm = 0.0;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(offdiag);
    if (i + 1 < n) row += std::abs(offdiag);
    if (corner != 0.0 && (i == 0 || i + 1 == n)) row += std::abs(corner);
    norm = std::max(norm, row);
  }
  return norm;
}

SpectrumBounds gershgorin_bounds(const SymTridiag& m) {
  const std::size_t n = m.size();
  SpectrumBounds b{m.diag[0], m.diag[0]};
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.offdiag);
    if (i + 1 < n) r += std::abs(m.offdiag);
    if (m.corner != 0.0 && (i == 0 || i + 1 == n)) r += std::abs(m.corner);
    b.lo = std::min(b.lo, m.diag[i] - r);
    b.hi = std::max(b.hi, m.diag[i] + r);
  }
  const double pad =
      16.0 * std::numeric_limits<double>::epsilon() *
      std::max({std::abs(b.lo), std::abs(b.hi), 1.0});
  b.lo -= pad;
  b.hi += pad;
  return b;
}

std::size_t count_below(const SymTridiag& m, double lambda) {
  const std::size_t n = m.size();
  if (n == 0) return 0;
  if (m.corner != 0.0 && n >= 3) return count_below_bordered(m, lambda);

  const double e2 = m.offdiag * m.offdiag;
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    d = m.diag[i] - lambda - (i == 0 ? 0.0 : e2 / d);
    if (std::abs(d) < kPivMin) d = -kPivMin;
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

double bisect_index(const SymTridiag& m, const SpectrumBounds& bounds,
                    std::size_t index) {
  double lo = bounds.lo;
  double hi = bounds.hi;
  const double eps = std::numeric_limits<double>::epsilon();
  while (hi - lo > 2.0 * eps * (std::abs(lo) + std::abs(hi)) + 1e-300) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(m, mid) >= index + 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> lowest_eigenvalues_serial(const SymTridiag& m,
                                              std::size_t k) {
  if (k > m.size())
    throw std::invalid_argument("requested more eigenvalues than rows");
  const SpectrumBounds bounds = gershgorin_bounds(m);
  std::vector<double> vals(k);
  for (std::size_t j = 0; j < k; ++j) vals[j] = bisect_index(m, bounds, j);
  return vals;
}

std::vector<double> lowest_eigenvalues(const SymTridiag& m, std::size_t k) {
  if (k > m.size())
    throw std::invalid_argument("requested more eigenvalues than rows");
  const SpectrumBounds bounds = gershgorin_bounds(m);
  std::vector<double> vals(k);
  const std::ptrdiff_t kk = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < kk; ++j)
    vals[j] = bisect_index(m, bounds, static_cast<std::size_t>(j));
  return vals;
}

namespace {

// LU factorization with partial pivoting of (m - lambda) restricted to the
// tridiagonal part, plus dense handling of the border column when a corner
// entry is present.  Storage follows the usual four-band layout.
struct TridiagLU {
  std::vector<double> dl, d, du, du2;
  std::vector<int> pivoted;

  void factor(const SymTridiag& m, double lambda) {
    const std::size_t n = m.size();
    dl.assign(n, 0.0);
    d.assign(n, 0.0);
    du.assign(n, 0.0);
    du2.assign(n, 0.0);
    pivoted.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = m.diag[i] - lambda;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      dl[i] = m.offdiag;  // row i+1, column i
      du[i] = m.offdiag;  // row i, column i+1
    }
    const double tiny = kPivMin;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (std::abs(d[i]) < tiny) d[i] = tiny;
        const double mult = dl[i] / d[i];
        dl[i] = mult;
        d[i + 1] -= mult * du[i];
        if (i + 2 < n) du2[i] = 0.0;
      } else {
        const double mult = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = mult;
        const double tmp = d[i + 1];
        d[i + 1] = du[i] - mult * tmp;
        du[i] = tmp;
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -mult * du[i + 1];
        }
        pivoted[i] = 1;
      }
    }
    if (std::abs(d[n - 1]) < tiny) d[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (pivoted[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= dl[i] * b[i];
    }
    b[n - 1] /= d[n - 1];
    if (n >= 2) {
      b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
      for (std::size_t ii = n - 1; ii-- > 1;) {
        const std::size_t i = ii - 1;
        double v = b[i] - du[i] * b[i + 1];
        if (i + 2 < n) v -= du2[i] * b[i + 2];
        b[i] = v / d[i];
      }
    }
  }
};

// Solve (m - lambda) x = b with an optional corner via bordering: the
// leading (n-1) block is tridiagonal, the last variable is eliminated
// through its Schur complement.
struct ShiftedSolver {
  const SymTridiag* m = nullptr;
  double lambda = 0.0;
  TridiagLU lu;          // of the leading block (or whole matrix)
  std::vector<double> z; // (leading block)^{-1} c
  double schur = 0.0;
  bool bordered = false;

  void prepare(const SymTridiag& mat, double shift) {
    m = &mat;
    lambda = shift;
    bordered = mat.corner != 0.0 && mat.size() >= 3;
    if (!bordered) {
      lu.factor(mat, shift);
      return;
    }
    const std::size_t n = mat.size();
    SymTridiag lead;
    lead.diag.assign(mat.diag.begin(), mat.diag.end() - 1);
    lead.offdiag = mat.offdiag;
    lu.factor(lead, shift);
    z.assign(n - 1, 0.0);
    z[0] = mat.corner;
    z[n - 2] = mat.offdiag;
    lu.solve(z);
    schur = (mat.diag[n - 1] - shift) -
            (mat.corner * z[0] + mat.offdiag * z[n - 2]);
    if (std::abs(schur) < kPivMin) schur = kPivMin;
  }

  void solve(std::vector<double>& b) const {
    if (!bordered) {
      lu.solve(b);
      return;
    }
    const std::size_t n = m->size();
    std::vector<double> y(b.begin(), b.end() - 1);
    lu.solve(y);
    const double rhs_last =
        b[n - 1] - (m->corner * y[0] + m->offdiag * y[n - 2]);
    const double x_last = rhs_last / schur;
    for (std::size_t i = 0; i + 1 < n; ++i) b[i] = y[i] - x_last * z[i];
    b[n - 1] = x_last;
  }
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double apply_residual(const SymTridiag& m, double lambda,
                      const std::vector<double>& v) {
  const std::size_t n = m.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = (m.diag[i] - lambda) * v[i];
    if (i > 0) r += m.offdiag * v[i - 1];
    if (i + 1 < n) r += m.offdiag * v[i + 1];
    if (m.corner != 0.0) {
      if (i == 0) r += m.corner * v[n - 1];
      if (i + 1 == n) r += m.corner * v[0];
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace

std::vector<double> inverse_iteration(const SymTridiag& m, double lambda) {
  const std::size_t n = m.size();
  const double norm = std::max(m.inf_norm(), 1e-300);
  const double eps = std::numeric_limits<double>::epsilon();

  for (int attempt = 0; attempt < 4; ++attempt) {
    const double shift =
        lambda + static_cast<double>(attempt) * 64.0 * eps * norm;
    ShiftedSolver solver;
    solver.prepare(m, shift);

    // Deterministic start vector; the LCG avoids accidental orthogonality
    // to the target eigenvector.
    std::vector<double> v(n);
    unsigned long long state = 0x9e3779b97f4a7c15ull + attempt;
    for (std::size_t i = 0; i < n; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      v[i] = (static_cast<double>(state >> 11) /
                  9007199254740992.0 - 0.5);
    }

    bool ok = false;
    for (int it = 0; it < 6; ++it) {
      solver.solve(v);
      const double nv = norm2(v);
      if (!(nv > 0.0) || !std::isfinite(nv)) break;
      for (double& x : v) x /= nv;
      if (apply_residual(m, lambda, v) <=
          1024.0 * eps * norm * std::sqrt(static_cast<double>(n))) {
        ok = true;
        if (it >= 1) break;
      }
    }
    if (ok) {
      // sign convention: first component of noticeable magnitude positive
      const double thresh = 1e-12 / std::sqrt(static_cast<double>(n));
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(v[i]) > thresh) {
          if (v[i] < 0.0)
            for (double& x : v) x = -x;
          break;
        }
      }
      return v;
    }
  }
  throw EigensolveError(
      "inverse iteration did not converge after shift perturbations");
}

}  // namespace zcwell
