#pragma once

// Translation-orbit probability structure of ground states ("micro state"
// probabilities) and a clustering diagnostic for local polarization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigen.hpp"
#include "spinbasis.hpp"

namespace xxring {

/// Sum over unordered up-spin pairs of 1 / ring distance. Larger means more
/// tightly clustered up spins.
inline double clustering_score(SpinConfiguration c) {
  const auto ups = c.up_sites();
  double s = 0.0;
  for (std::size_t i = 0; i < ups.size(); ++i)
    for (std::size_t j = i + 1; j < ups.size(); ++j) {
      const int d = std::abs(ups[i] - ups[j]);
      s += 1.0 / std::min(d, c.n - d);
    }
  return s;
}

struct OrbitRow {
  SpinConfiguration representative;
  std::string pattern;  // "j,j+1,j+3"
  int multiplicity = 0;
  double member_probability = 0.0;
  double total_probability = 0.0;
  double clustering = 0.0;
  std::size_t dihedral_class = 0;
  /// max deviation of any member's probability from member_probability
  double member_spread = 0.0;
};

struct OrbitReport {
  int n = 0;
  int k = 0;
  /// weight of this sector in the manifold mixture; rows are conditioned on it
  double sector_weight = 0.0;
  std::vector<OrbitRow> rows;
  /// Spearman correlation between clustering score and member probability.
  double rank_correlation = 0.0;
};

namespace detail {

inline std::vector<double> ranks(const std::vector<double>& x, double tie_tol = 1e-9) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && std::abs(x[idx[j + 1]] - x[idx[i]]) <= tie_tol) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
    i = j + 1;
  }
  return r;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  if (a.size() < 2) return 0.0;
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace detail

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return detail::pearson(detail::ranks(a), detail::ranks(b));
}

/// Per-configuration probability of the equal-weight manifold mixture,
/// aggregated per translation orbit and conditioned on `sector`. Rows are
/// sorted by ascending member probability.
inline OrbitReport orbit_probabilities(const GroundManifold& gm, const SectorBasis& sector) {
  std::vector<double> prob(sector.size(), 0.0);
  bool found = false;
  const double w = 1.0 / static_cast<double>(gm.degeneracy());
  for (const auto& s : gm.states) {
    if (s.label.k != sector.k() || gm.n != sector.n()) continue;
    found = true;
    for (std::size_t a = 0; a < sector.size(); ++a) prob[a] += w * std::norm(s.amplitudes[a]);
  }
  if (!found) throw std::invalid_argument("orbit_probabilities: sector not present in the ground manifold");
  const double weight = std::accumulate(prob.begin(), prob.end(), 0.0);
  for (auto& p : prob) p /= weight;

  const auto orbits = translation_orbits(sector);
  const auto classes = dihedral_class_ids(orbits);
  OrbitReport rep;
  rep.n = sector.n();
  rep.k = sector.k();
  rep.sector_weight = weight;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const auto& orb = orbits[o];
    OrbitRow row;
    row.representative = orb.representative;
    row.pattern = offset_label(orb.representative);
    row.multiplicity = orb.period;
    for (const auto& m : orb.members) row.total_probability += prob[sector.index_of(m)];
    row.member_probability = row.total_probability / orb.period;
    for (const auto& m : orb.members)
      row.member_spread = std::max(row.member_spread, std::abs(prob[sector.index_of(m)] - row.member_probability));
    row.clustering = clustering_score(orb.representative);
    row.dihedral_class = classes[o];
    rep.rows.push_back(std::move(row));
  }
  std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const OrbitRow& a, const OrbitRow& b) {
    // quantized so symmetry-equal probabilities order by representative
    const auto qa = std::llround(a.member_probability * 1e9);
    const auto qb = std::llround(b.member_probability * 1e9);
    if (qa != qb) return qa < qb;
    return a.representative < b.representative;
  });

  std::vector<double> score, p;
  for (const auto& r : rep.rows) {
    score.push_back(r.clustering);
    p.push_back(r.member_probability);
  }
  rep.rank_correlation = spearman(score, p);
  return rep;
}

/// Full pipeline for one ring: ground manifold, then the orbit report of its
/// lowest-k sector (the only one for even n at zero field).
inline OrbitReport lp_table(int n, Coupling c, FieldSetting f = {}, double tol = 1e-9, unsigned threads = 1) {
  const auto gm = ground_manifold(n, c, f, tol, threads);
  const auto ks = gm.sector_ks();
  const int k = *std::min_element(ks.begin(), ks.end());
  return orbit_probabilities(gm, gm.basis(k));
}

}  // namespace xxring
