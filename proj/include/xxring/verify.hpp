#pragma once

// Cross-check of the sector/momentum pipeline against the full 2^n oracle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bruteforce.hpp"
#include "eigen.hpp"
#include "entangle.hpp"
#include "polarize.hpp"

namespace xxring {

struct OracleComparison {
  int n = 0;
  double j = 0.0;
  double pipeline_energy = 0.0;
  double oracle_energy = 0.0;
  std::size_t pipeline_degeneracy = 0;
  std::size_t oracle_degeneracy = 0;
  double pipeline_concurrence = 0.0;
  double oracle_concurrence = 0.0;
  double max_configuration_probability_diff = 0.0;
  double max_orbit_probability_diff = 0.0;

  double energy_diff() const { return std::abs(pipeline_energy - oracle_energy); }
  double concurrence_diff() const { return std::abs(pipeline_concurrence - oracle_concurrence); }

  bool agrees(double tol = 1e-10) const {
    return energy_diff() <= tol && pipeline_degeneracy == oracle_degeneracy && concurrence_diff() <= tol &&
           max_configuration_probability_diff <= tol && max_orbit_probability_diff <= tol;
  }
};

inline OracleComparison compare_with_oracle(int n, Coupling c, double tol = 1e-9, unsigned threads = 1) {
  OracleComparison cmp;
  cmp.n = n;
  cmp.j = c.j();
  const auto gm = ground_manifold(n, c, {}, tol, threads);
  const auto full = oracle::full_diagonalize(n, c, tol);
  cmp.pipeline_energy = gm.energy;
  cmp.oracle_energy = full.ground_energy;
  cmp.pipeline_degeneracy = gm.degeneracy();
  cmp.oracle_degeneracy = static_cast<std::size_t>(full.ground_degeneracy);
  if (n >= 2) {
    cmp.pipeline_concurrence = ground_concurrence(gm, {0, 1});
    cmp.oracle_concurrence = full.ground_nearest_concurrence;
  }

  // configuration probabilities of the equal-weight ground mixture
  const auto oracle_p = full.ground_probabilities();
  std::vector<double> pipe_p(oracle_p.size(), 0.0);
  const double w = 1.0 / static_cast<double>(gm.degeneracy());
  for (const auto& s : gm.states) {
    const auto& basis = gm.basis(s.label.k);
    for (std::size_t a = 0; a < basis.size(); ++a) pipe_p[basis[a].bits] += w * std::norm(s.amplitudes[a]);
  }
  for (std::size_t i = 0; i < pipe_p.size(); ++i)
    cmp.max_configuration_probability_diff = std::max(cmp.max_configuration_probability_diff, std::abs(pipe_p[i] - oracle_p[i]));

  // orbit totals: report rows are conditioned on their sector, undo that here
  for (int k : gm.sector_ks()) {
    const auto rep = orbit_probabilities(gm, gm.basis(k));
    for (const auto& row : rep.rows) {
      double oracle_total = 0.0;
      for (int t = 0; t < row.multiplicity; ++t) oracle_total += oracle_p[rotate(row.representative, t).bits];
      cmp.max_orbit_probability_diff =
          std::max(cmp.max_orbit_probability_diff, std::abs(row.total_probability * rep.sector_weight - oracle_total));
    }
  }
  return cmp;
}

}  // namespace xxring
