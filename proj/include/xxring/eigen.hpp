#pragma once

// Dense Hermitian eigendecomposition (cyclic complex Jacobi) and ground
// manifold extraction over all magnetization sectors and momentum blocks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "parallel.hpp"
#include "spinbasis.hpp"
#include "xxmodel.hpp"

namespace xxring {

class numeric_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (k, m) label; m == -1 means the whole k sector.
struct SectorLabel {
  int k = -1;
  int m = -1;
  friend auto operator<=>(const SectorLabel&, const SectorLabel&) = default;
};

struct Spectrum {
  std::vector<double> values;          // ascending
  std::vector<StateVector> vectors;    // vectors[i] pairs with values[i]
  SectorLabel source;
  int sweeps = 0;
};

struct JacobiOptions {
  double off_tolerance = 1e-13;  // off-diagonal Frobenius norm relative to ||H||_F
  int max_sweeps = 100;
  double hermitian_tolerance = 1e-12;
};

/// Rotate the largest-magnitude amplitude onto the positive real axis. The
/// first index within a relative 1e-9 of the maximum wins, so near-ties do not
/// flip between runs.
inline void fix_phase(std::span<cplx> v) {
  double best = 0.0;
  for (const auto& z : v) best = std::max(best, std::abs(z));
  if (best == 0.0) return;
  for (const auto& z : v) {
    if (std::abs(z) >= best * (1.0 - 1e-9)) {
      const cplx ph = std::conj(z) / std::abs(z);
      for (auto& w : v) w *= ph;
      return;
    }
  }
}

inline Spectrum eigh(const HermitianMatrix& h, SectorLabel label = {}, const JacobiOptions& opt = {}) {
  if (!h.is_hermitian(opt.hermitian_tolerance)) throw std::invalid_argument("eigh: matrix is not Hermitian");
  const std::size_t n = h.dim();

  HermitianMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  // Rows of vt are the eigenvectors (columns of V).
  HermitianMatrix vt(n);
  for (std::size_t i = 0; i < n; ++i) vt(i, i) = 1.0;

  const double scale = a.frobenius_norm();
  const double target = opt.off_tolerance * scale;
  int sweeps = 0;
  bool converged = scale == 0.0;
  while (!converged) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off2 += 2.0 * std::norm(a(i, j));
    if (std::sqrt(off2) <= target) {
      converged = true;
      break;
    }
    if (sweeps == opt.max_sweeps) break;
    ++sweeps;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= std::numeric_limits<double>::min()) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx e = apq / r;
        const cplx ec = std::conj(e);
        const double theta = (aqq - app) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- G^H A G with G_pp = c, G_pq = s, G_qp = -s conj(e), G_qq = c conj(e).
        auto rp = a.row(p);
        auto rq = a.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx apk = rp[k];
          const cplx aqk = rq[k];
          const cplx npk = c * apk - s * e * aqk;
          const cplx nqk = s * apk + c * e * aqk;
          rp[k] = npk;
          rq[k] = nqk;
          a(k, p) = std::conj(npk);
          a(k, q) = std::conj(nqk);
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        auto vp = vt.row(p);
        auto vq = vt.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx x = vp[k];
          const cplx y = vq[k];
          vp[k] = c * x - s * ec * y;
          vq[k] = s * x + c * ec * y;
        }
      }
    }
  }
  if (!converged)
    throw numeric_failure("eigh: Jacobi iteration did not converge in " + std::to_string(opt.max_sweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  Spectrum out;
  out.source = label;
  out.sweeps = sweeps;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (auto i : order) {
    out.values.push_back(a(i, i).real());
    StateVector v(vt.row(i).begin(), vt.row(i).end());
    fix_phase(v);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

/// Sector amplitudes of sum_r v[r] |rep_r, m>.
inline StateVector lift_block_vector(const MomentumBlock& block, std::span<const cplx> v) {
  if (v.size() != block.dim()) throw std::invalid_argument("block vector does not match block dimension");
  StateVector out(block.sector_dim);
  const double unit = -2.0 * std::numbers::pi * block.m / block.n;
  for (std::size_t r = 0; r < block.dim(); ++r) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(block.periods[r]));
    for (std::size_t t = 0; t < block.members[r].size(); ++t) {
      const double ang = unit * static_cast<double>(t);
      out[block.members[r][t]] += v[r] * amp * cplx(std::cos(ang), std::sin(ang));
    }
  }
  return out;
}

struct GroundState {
  SectorLabel label;
  double energy = 0.0;
  StateVector amplitudes;  // in enumerate_sector(n, label.k) order
};

struct GroundManifold {
  int n = 0;
  double energy = 0.0;
  double tolerance = 0.0;
  double spectral_range = 0.0;
  std::vector<GroundState> states;
  /// sectors[k] is populated for every k that appears in `states`.
  std::vector<SectorBasis> sectors;

  std::size_t degeneracy() const { return states.size(); }
  const SectorBasis& basis(int k) const { return sectors.at(static_cast<std::size_t>(k)); }
  std::vector<int> sector_ks() const {
    std::vector<int> ks;
    for (const auto& s : states)
      if (std::find(ks.begin(), ks.end(), s.label.k) == ks.end()) ks.push_back(s.label.k);
    return ks;
  }
};

struct BlockEigenvalues {
  SectorLabel label;
  double offset = 0.0;  // Zeeman shift already included in values
  std::vector<double> values;
};

namespace detail {

struct BlockTask {
  SectorLabel label;
  std::size_t sector = 0;
};

struct BlockResult {
  std::vector<double> values;
  std::vector<StateVector> candidates;  // lifted vectors near the block minimum
  std::vector<double> candidate_values;
};

struct SectorData {
  SectorBasis basis;
  std::vector<TranslationOrbit> orbits;
};

inline std::vector<SectorData> all_sectors(int n) {
  std::vector<SectorData> out;
  for (int k = 0; k <= n; ++k) {
    auto basis = enumerate_sector(n, k);
    auto orbits = translation_orbits(basis);
    out.push_back({std::move(basis), std::move(orbits)});
  }
  return out;
}

inline std::vector<BlockTask> all_tasks(int n) {
  std::vector<BlockTask> tasks;
  for (int k = 0; k <= n; ++k)
    for (int m = 0; m < n; ++m) tasks.push_back({{k, m}, static_cast<std::size_t>(k)});
  return tasks;
}

}  // namespace detail

/// Eigenvalues (with field offsets) for every (k, m) block, in (k, m) order.
/// Empty blocks are omitted.
inline std::vector<BlockEigenvalues> block_spectra(int n, Coupling c, FieldSetting f = {}, unsigned threads = 1) {
  check_ring_length(n);
  const auto sectors = detail::all_sectors(n);
  const auto tasks = detail::all_tasks(n);
  std::vector<BlockEigenvalues> results(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    const auto& task = tasks[i];
    const auto& sec = sectors[task.sector];
    auto blk = build_momentum_block(sec.basis, sec.orbits, task.label.m, c);
    const double off = sector_energy_offset(task.label.k, n, f);
    auto spec = eigh(blk.matrix, task.label);
    for (auto& v : spec.values) v += off;
    results[i] = {task.label, off, std::move(spec.values)};
  });
  std::erase_if(results, [](const BlockEigenvalues& b) { return b.values.empty(); });
  return results;
}

/// Scans every sector k = 0..n through its momentum blocks and collects the
/// eigenvectors within tol * spectral_range of the global minimum.
inline GroundManifold ground_manifold(int n, Coupling c, FieldSetting f = {}, double tol = 1e-9, unsigned threads = 1) {
  check_ring_length(n);
  if (!(tol >= 0.0)) throw std::invalid_argument("degeneracy tolerance must be nonnegative");
  const auto sectors = detail::all_sectors(n);
  const auto tasks = detail::all_tasks(n);

  // Gershgorin bound on the full spectral range; a block's vectors can only
  // belong to the manifold if they sit within tol * bound of its own minimum.
  const double range_bound = 2.0 * (2.0 * std::abs(c.j()) * n + std::abs(f.b) * n) + 1.0;
  const double window = tol * range_bound;

  std::vector<detail::BlockResult> results(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    const auto& task = tasks[i];
    const auto& sec = sectors[task.sector];
    auto blk = build_momentum_block(sec.basis, sec.orbits, task.label.m, c);
    if (blk.dim() == 0) return;
    const double off = sector_energy_offset(task.label.k, n, f);
    auto spec = eigh(blk.matrix, task.label);
    auto& res = results[i];
    for (auto& v : spec.values) v += off;
    const double lo = spec.values.front();
    for (std::size_t e = 0; e < spec.values.size() && spec.values[e] <= lo + window; ++e) {
      res.candidates.push_back(lift_block_vector(blk, spec.vectors[e]));
      res.candidate_values.push_back(spec.values[e]);
    }
    res.values = std::move(spec.values);
  });

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& r : results)
    if (!r.values.empty()) {
      lo = std::min(lo, r.values.front());
      hi = std::max(hi, r.values.back());
    }

  GroundManifold gm;
  gm.n = n;
  gm.tolerance = tol;
  gm.spectral_range = hi - lo;
  gm.energy = lo;
  gm.sectors.resize(static_cast<std::size_t>(n) + 1);
  const double cut = lo + tol * gm.spectral_range;
  double acc = 0.0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto& r = results[i];
    for (std::size_t e = 0; e < r.candidates.size(); ++e) {
      if (r.candidate_values[e] > cut) continue;
      acc += r.candidate_values[e];
      gm.states.push_back({tasks[i].label, r.candidate_values[e], std::move(r.candidates[e])});
    }
  }
  if (gm.states.empty()) throw numeric_failure("ground_manifold: no state found at the spectral minimum");
  gm.energy = acc / static_cast<double>(gm.states.size());
  for (int k : gm.sector_ks()) gm.sectors[static_cast<std::size_t>(k)] = sectors[static_cast<std::size_t>(k)].basis;
  return gm;
}

}  // namespace xxring
