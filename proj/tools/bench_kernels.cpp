// Timing comparison of the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zcwell/analysis.hpp"
#include "zcwell/designer.hpp"
#include "zcwell/oracle.hpp"

using namespace zcwell;

namespace {

double now() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const double t0 = now();
    f();
    best = std::min(best, now() - t0);
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serially\n");
#endif
  const UnitSystem units{1.0, 1.0};

  {
    const auto [sym, anti] = twin_designs(1.0, units);
    (void)anti;
    const int n = 2'000'000;
    std::vector<double> ps(n);
    for (int i = 0; i < n; ++i)
      ps[i] = -200.0 + 400.0 * static_cast<double>(i) / (n - 1);

    volatile double sink = 0.0;
    const double serial = time_best_of(3, [&] {
      sink = momentum_sweep_serial(sym, ps).back().density;
    });
    const double parallel = time_best_of(3, [&] {
      sink = momentum_sweep(sym, ps).back().density;
    });
    (void)sink;
    std::printf("momentum sweep %d points: serial %.3fs  omp %.3fs  "
                "speedup %.2fx\n",
                n, serial, parallel, serial / parallel);
  }

  {
    const auto design = triangle_design(0.5, 1.0, units);
    const Grid grid = Grid::dirichlet(1.0, 23999);
    const SymTridiag h = build_hamiltonian(design.potential, grid, units);
    const std::size_t k = 16;

    volatile double sink = 0.0;
    const double serial = time_best_of(3, [&] {
      sink = lowest_eigenvalues_serial(h, k).back();
    });
    const double parallel = time_best_of(3, [&] {
      sink = lowest_eigenvalues(h, k).back();
    });
    (void)sink;
    std::printf("eigenvalues n=%d k=%zu: serial %.3fs  omp %.3fs  "
                "speedup %.2fx\n",
                grid.size(), k, serial, parallel, serial / parallel);
  }
  return 0;
}
