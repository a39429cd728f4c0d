#pragma once

// Spectral lower bounds on the chromatic number from the adjacency spectrum.

#include <algorithm>
#include <cmath>
#include <vector>

#include "qcbp/graph.hpp"

namespace qcbp {

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. Sweeps until the off-diagonal Frobenius norm drops below `tol`.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a, double tol = 1e-10,
                                              int max_sweeps = 100) {
  const std::size_t n = a.size();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a[i][j] * a[i][j];
    return std::sqrt(s);
  };
  for (int sweep = 0; sweep < max_sweeps && off_norm() >= tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        // Rotation zeroing a[p][q] (Golub & Van Loan, sym.schur2)
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline std::vector<double> adjacency_spectrum(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (auto [u, v] : g.edges()) a[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
      a[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1.0;
  return jacobi_eigenvalues(std::move(a));
}

struct SpectralBounds {
  double hoffman = 1.0;
  double elphick_wocjan = 1.0;
  double edwards_elphick = 1.0;
  int combined_lb = 1;
};

inline int ceil_bound(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

// Hoffman:         1 + λ_max / |λ_min|
// Elphick-Wocjan:  1 + max(n+/n-, n-/n+) over strictly signed eigenvalue counts
// Edwards-Elphick: n / (n - λ_max)
inline SpectralBounds spectral_lb(const Graph& g) {
  SpectralBounds b;
  if (g.n() < 1 || g.edge_count() == 0) return b;
  const auto ev = adjacency_spectrum(g);
  const double lmin = ev.front(), lmax = ev.back();
  constexpr double kZero = 1e-9;
  if (lmin < -kZero) b.hoffman = 1.0 + lmax / -lmin;
  const auto pos = std::count_if(ev.begin(), ev.end(), [](double x) { return x > kZero; });
  const auto neg = std::count_if(ev.begin(), ev.end(), [](double x) { return x < -kZero; });
  if (pos > 0 && neg > 0)
    b.elphick_wocjan = 1.0 + std::max(static_cast<double>(pos) / static_cast<double>(neg),
                                      static_cast<double>(neg) / static_cast<double>(pos));
  const double n = g.n();
  if (n - lmax > 1e-12) b.edwards_elphick = n / (n - lmax);
  b.combined_lb = std::max({1, ceil_bound(b.hoffman), ceil_bound(b.elphick_wocjan), ceil_bound(b.edwards_elphick)});
  return b;
}

}  // namespace qcbp
