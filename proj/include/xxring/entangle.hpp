#pragma once

// Two-site reduced density matrices and Wootters concurrence.
//
// Pair basis order for sites (p, q): |up up>, |up dn>, |dn up>, |dn dn>.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "eigen.hpp"
#include "matrix.hpp"
#include "spinbasis.hpp"

namespace xxring {

struct SitePair {
  int p = 0;
  int q = 1;
};

inline int ring_distance(int n, int p, int q) {
  const int d = std::abs(p - q) % n;
  return std::min(d, n - d);
}

inline void check_pair(int n, SitePair pair) {
  if (pair.p < 0 || pair.q >= n || pair.p >= pair.q)
    throw std::invalid_argument("pair must satisfy 0 <= p < q < n");
}

struct PairDensity {
  std::array<cplx, 16> matrix{};
  SitePair pair;

  cplx& operator()(int r, int c) { return matrix[static_cast<std::size_t>(4 * r + c)]; }
  const cplx& operator()(int r, int c) const { return matrix[static_cast<std::size_t>(4 * r + c)]; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < 4; ++i) t += (*this)(i, i).real();
    return t;
  }

  HermitianMatrix as_matrix() const {
    HermitianMatrix m(4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = (*this)(r, c);
    return m;
  }
};

/// One term of a mixture: weight * |psi><psi| with psi given over `basis`.
struct WeightedState {
  double weight = 1.0;
  const SectorBasis* basis = nullptr;
  std::span<const cplx> amplitudes;
};

inline int pair_index(bool up_p, bool up_q) { return (up_p ? 0 : 2) + (up_q ? 0 : 1); }

/// Partial trace of sum_i w_i |psi_i><psi_i| onto sites (p, q). States in
/// different magnetization sectors add block-diagonally, so each is reduced
/// on its own.
inline PairDensity pair_density(std::span<const WeightedState> states, SitePair pair) {
  if (states.empty()) throw std::invalid_argument("pair_density: empty mixture");
  double wsum = 0.0;
  for (const auto& s : states) {
    if (!s.basis) throw std::invalid_argument("pair_density: state without basis");
    if (s.weight < 0.0) throw std::invalid_argument("pair_density: negative weight");
    if (s.amplitudes.size() != s.basis->size()) throw std::invalid_argument("pair_density: amplitude size mismatch");
    if (std::abs(norm2(s.amplitudes) - 1.0) > 1e-10) throw std::invalid_argument("pair_density: state is not unit norm");
    check_pair(s.basis->n(), pair);
    wsum += s.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-10) throw std::invalid_argument("pair_density: weights must sum to 1");

  PairDensity rho;
  rho.pair = pair;
  const std::uint32_t bp = std::uint32_t{1} << pair.p;
  const std::uint32_t bq = std::uint32_t{1} << pair.q;
  for (const auto& s : states) {
    const auto& basis = *s.basis;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const cplx amp = s.amplitudes[a];
      if (amp == cplx{}) continue;
      const std::uint32_t bits = basis[a].bits;
      const int row = pair_index(bits & bp, bits & bq);
      const std::uint32_t rest = bits & ~(bp | bq);
      for (int up_p = 0; up_p < 2; ++up_p)
        for (int up_q = 0; up_q < 2; ++up_q) {
          const std::uint32_t partner = rest | (up_p ? bp : 0u) | (up_q ? bq : 0u);
          const auto b = basis.find(partner);
          if (b == basis.size()) continue;
          rho(row, pair_index(up_p, up_q)) += s.weight * amp * std::conj(s.amplitudes[b]);
        }
    }
  }
  return rho;
}

struct ConcurrenceResult {
  double value = 0.0;
  std::array<double, 4> lambdas{};  // descending
};

/// Wootters concurrence. The lambdas (square roots of the eigenvalues of
/// rho * rho~) are the singular values of M = sqrt(rho) Y conj(sqrt(rho)),
/// Y = sy x sy, since M M^H = sqrt(rho) rho~ sqrt(rho). They are read off the
/// Hermitian dilation [[0, M], [M^H, 0]] so small lambdas are not squared.
inline ConcurrenceResult concurrence_wootters(const PairDensity& rho) {
  const auto sr = eigh(rho.as_matrix());
  // sqrt(rho) = V diag(sqrt(max(l, 0))) V^H
  HermitianMatrix sq(4);
  for (std::size_t e = 0; e < 4; ++e) {
    const double l = std::sqrt(std::max(sr.values[e], 0.0));
    if (l == 0.0) continue;
    const auto& v = sr.vectors[e];
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) sq(r, c) += l * v[r] * std::conj(v[c]);
  }
  // Y is anti-diagonal with entries (-1, 1, 1, -1): (Y X)(r, c) = sign[r] X(3 - r, c).
  static constexpr std::array<double, 4> flip_sign{-1.0, 1.0, 1.0, -1.0};
  std::array<cplx, 16> m{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += sq(r, k) * flip_sign[k] * std::conj(sq(3 - k, c));
      m[4 * r + c] = acc;
    }

  HermitianMatrix dilation(8);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      dilation(r, 4 + c) = m[4 * r + c];
      dilation(4 + c, r) = std::conj(m[4 * r + c]);
    }
  const auto ev = eigh(dilation);
  ConcurrenceResult out;
  for (std::size_t i = 0; i < 4; ++i) out.lambdas[i] = std::max(ev.values[7 - i], 0.0);
  out.value = std::max(0.0, out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3]);
  out.value = std::min(out.value, 1.0);
  return out;
}

inline bool is_x_form(const PairDensity& rho, double tol = 1e-10) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (r == c) continue;
      if ((r == 1 && c == 2) || (r == 2 && c == 1)) continue;
      if (std::abs(rho(r, c)) > tol) return false;
    }
  return true;
}

/// Closed form for densities whose only coherence is between |up dn> and |dn up>:
/// C = 2 max(0, |z| - sqrt(u+ u-)).
inline double concurrence_xstate(const PairDensity& rho) {
  if (!is_x_form(rho)) throw std::invalid_argument("concurrence_xstate: density is not of X form");
  const double up = std::max(rho(0, 0).real(), 0.0);
  const double dn = std::max(rho(3, 3).real(), 0.0);
  return 2.0 * std::max(0.0, std::abs(rho(1, 2)) - std::sqrt(up * dn));
}

/// Equal-weight mixture of the manifold states reduced to `pair`.
inline PairDensity manifold_pair_density(const GroundManifold& gm, SitePair pair) {
  std::vector<WeightedState> mix;
  const double w = 1.0 / static_cast<double>(gm.degeneracy());
  for (const auto& s : gm.states) mix.push_back({w, &gm.basis(s.label.k), s.amplitudes});
  return pair_density(mix, pair);
}

inline double ground_concurrence(const GroundManifold& gm, SitePair pair) {
  check_pair(gm.n, pair);
  return concurrence_wootters(manifold_pair_density(gm, pair)).value;
}

inline double ground_concurrence(int n, Coupling c, FieldSetting f, SitePair pair, double tol = 1e-9,
                                 unsigned threads = 1) {
  if (n < 2) throw std::invalid_argument("ground_concurrence needs at least two sites");
  check_pair(n, pair);
  return ground_concurrence(ground_manifold(n, c, f, tol, threads), pair);
}

inline double state_concurrence(const SectorBasis& basis, std::span<const cplx> state, SitePair pair) {
  const WeightedState ws{1.0, &basis, state};
  return concurrence_wootters(pair_density(std::span(&ws, 1), pair)).value;
}

/// Uniform superposition of all one-up configurations.
inline StateVector w_state(const SectorBasis& one_up) {
  if (one_up.k() != 1) throw std::invalid_argument("w_state needs the k = 1 sector");
  return StateVector(one_up.size(), cplx(1.0 / std::sqrt(static_cast<double>(one_up.size())), 0.0));
}

}  // namespace xxring
