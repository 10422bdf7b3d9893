#pragma once

// Concurrence-vs-ring-length sweeps and the 1/n limit fit.

#include <Eigen/Dense>

#include <chrono>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigen.hpp"
#include "entangle.hpp"

namespace xxring {

enum class Regime { ferromagnetic, antiferromagnetic };
enum class Parity { all, even, odd };

inline Coupling regime_coupling(Regime r) { return Coupling(r == Regime::ferromagnetic ? -1.0 : 1.0); }
inline std::string to_string(Regime r) { return r == Regime::ferromagnetic ? "ferro" : "antiferro"; }
inline std::string to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    default: return "all";
  }
}

struct SweepRow {
  int n = 0;
  Regime regime = Regime::ferromagnetic;
  int distance = 1;
  double concurrence = 0.0;
  std::size_t degeneracy = 0;
  double ground_energy = 0.0;
  double wall_ms = 0.0;
};

inline bool parity_matches(int n, Parity p) {
  return p == Parity::all || (p == Parity::even) == (n % 2 == 0);
}

/// One row per admissible n in [n_min, n_max], concurrence between sites 0 and `distance`.
inline std::vector<SweepRow> sweep(int n_min, int n_max, Parity parity, Regime regime, int distance = 1,
                                   unsigned threads = 1, double tol = 1e-9) {
  if (n_min < 2 || n_max < n_min || n_max > 15) throw std::invalid_argument("sweep range must satisfy 2 <= n_min <= n_max <= 15");
  if (distance < 1 || 2 * distance > n_min)
    throw std::invalid_argument("pair distance must satisfy 1 <= distance <= n_min / 2");
  std::vector<SweepRow> rows;
  const auto coupling = regime_coupling(regime);
  for (int n = n_min; n <= n_max; ++n) {
    if (!parity_matches(n, parity)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const auto gm = ground_manifold(n, coupling, {}, tol, threads);
    SweepRow row;
    row.n = n;
    row.regime = regime;
    row.distance = distance;
    row.concurrence = ground_concurrence(gm, {0, distance});
    row.degeneracy = gm.degeneracy();
    row.ground_energy = gm.energy;
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(row);
  }
  return rows;
}

/// C(n) = c_inf + a / n + b / n^2
struct LimitFit {
  double c_inf = 0.0;
  double a = 0.0;
  double b = 0.0;
  double residual_norm = 0.0;
  std::size_t points = 0;

  double predict(double n) const { return c_inf + a / n + b / (n * n); }
};

inline LimitFit extrapolate(std::span<const SweepRow> rows) {
  if (rows.size() < 3) throw std::invalid_argument("extrapolate needs at least three rows");
  for (const auto& r : rows) {
    if (r.regime != rows.front().regime) throw std::invalid_argument("extrapolate: rows mix regimes");
    if (r.n % 2 != rows.front().n % 2) throw std::invalid_argument("extrapolate: rows mix parities");
    if (r.distance != rows.front().distance) throw std::invalid_argument("extrapolate: rows mix pair distances");
  }
  const auto m = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double n = rows[static_cast<std::size_t>(i)].n;
    design(i, 0) = 1.0;
    design(i, 1) = 1.0 / n;
    design(i, 2) = 1.0 / (n * n);
    y(i) = rows[static_cast<std::size_t>(i)].concurrence;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < 3) throw numeric_failure("extrapolate: design matrix is rank deficient (need three distinct n)");
  const Eigen::VectorXd coef = qr.solve(y);
  LimitFit fit;
  fit.c_inf = coef(0);
  fit.a = coef(1);
  fit.b = coef(2);
  fit.residual_norm = (design * coef - y).norm();
  fit.points = rows.size();
  return fit;
}

}  // namespace xxring
