#pragma once

// XX ring Hamiltonian  H = J * sum_i (s+_i s-_{i+1} + s+_{i+1} s-_i),  site n == site 0.
// Built per fixed-magnetization sector, either densely or per momentum block.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "spinbasis.hpp"

namespace xxring {

class Coupling {
 public:
  explicit Coupling(double j) : j_(j) {
    if (j == 0.0 || !std::isfinite(j)) throw std::invalid_argument("coupling J must be finite and nonzero");
  }
  double j() const { return j_; }
  bool ferromagnetic() const { return j_ < 0.0; }
  bool antiferromagnetic() const { return j_ > 0.0; }

 private:
  double j_;
};

/// Uniform Zeeman field; adds -b * sum_i Sz_i.
struct FieldSetting {
  double b = 0.0;
};

/// Calls visit(target_bits) once per ring bond whose exchange changes `bits`.
/// For n == 2 the bond (0,1) appears twice in the ring sum and is visited twice.
template <class Visit>
void for_each_hop(int n, std::uint32_t bits, Visit&& visit) {
  if (n < 2) return;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if (((bits >> i) ^ (bits >> j)) & 1u) visit(bits ^ (std::uint32_t{1} << i) ^ (std::uint32_t{1} << j));
  }
}

inline HermitianMatrix build_sector_hamiltonian(const SectorBasis& basis, Coupling c) {
  HermitianMatrix h(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a)
    for_each_hop(basis.n(), basis[a].bits, [&](std::uint32_t target) { h(basis.find(target), a) += c.j(); });
  return h;
}

/// Matrix-free H * v in the sector basis.
inline StateVector apply_hamiltonian(const SectorBasis& basis, Coupling c, std::span<const cplx> v) {
  if (v.size() != basis.size()) throw std::invalid_argument("amplitude vector does not match sector dimension");
  StateVector out(v.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (v[a] == cplx{}) continue;
    const cplx w = c.j() * v[a];
    for_each_hop(basis.n(), basis[a].bits, [&](std::uint32_t target) { out[basis.find(target)] += w; });
  }
  return out;
}

inline double sector_energy_offset(int k, int n, FieldSetting f) {
  return -f.b * (static_cast<double>(k) - 0.5 * static_cast<double>(n));
}

/// Translation-symmetric sub-block of a sector with Bloch momentum 2*pi*m/n.
///
/// Basis vector for representative a with period p:
///   |a_m> = (1/sqrt(n^2/p)) sum_{t=0}^{n-1} exp(-2 pi i m t / n) |rotate(a, t)>
/// so member rotate(a, t), t < p, carries amplitude exp(-2 pi i m t / n) / sqrt(p).
struct MomentumBlock {
  int n = 0;
  int k = 0;
  int m = 0;
  std::size_t sector_dim = 0;
  std::vector<std::size_t> orbit_ids;
  std::vector<SpinConfiguration> reps;
  std::vector<int> periods;
  std::vector<double> norms;
  /// Sector indices of rotate(rep, t) for t = 0 .. period-1.
  std::vector<std::vector<std::size_t>> members;
  HermitianMatrix matrix;

  std::size_t dim() const { return reps.size(); }
};

inline bool momentum_admissible(int period, int m, int n) { return (static_cast<long>(m) * period) % n == 0; }

inline MomentumBlock build_momentum_block(const SectorBasis& basis, std::span<const TranslationOrbit> orbits, int m,
                                          Coupling c) {
  const int n = basis.n();
  if (m < 0 || m >= n) throw std::invalid_argument("momentum index must lie in [0, n)");

  // sector index -> (orbit, shift)
  std::vector<std::size_t> orbit_of(basis.size());
  std::vector<int> shift_of(basis.size());
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (int t = 0; t < orbits[o].period; ++t) {
      const auto idx = basis.index_of(orbits[o].members[static_cast<std::size_t>(t)]);
      orbit_of[idx] = o;
      shift_of[idx] = t;
    }

  MomentumBlock blk;
  blk.n = n;
  blk.k = basis.k();
  blk.m = m;
  blk.sector_dim = basis.size();
  std::vector<std::size_t> row_of(orbits.size(), static_cast<std::size_t>(-1));
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const int p = orbits[o].period;
    if (!momentum_admissible(p, m, n)) continue;
    row_of[o] = blk.reps.size();
    blk.orbit_ids.push_back(o);
    blk.reps.push_back(orbits[o].representative);
    blk.periods.push_back(p);
    blk.norms.push_back(static_cast<double>(n) * n / p);
    std::vector<std::size_t> mem;
    mem.reserve(static_cast<std::size_t>(p));
    for (const auto& cfg : orbits[o].members) mem.push_back(basis.index_of(cfg));
    blk.members.push_back(std::move(mem));
  }

  const double phase_unit = 2.0 * std::numbers::pi * m / n;
  blk.matrix = HermitianMatrix(blk.dim());
  for (std::size_t col = 0; col < blk.dim(); ++col) {
    const double pb = blk.periods[col];
    for_each_hop(n, blk.reps[col].bits, [&](std::uint32_t target) {
      const auto idx = basis.find(target);
      const auto row = row_of[orbit_of[idx]];
      if (row == static_cast<std::size_t>(-1)) return;
      const double pa = blk.periods[row];
      const double angle = phase_unit * shift_of[idx];
      blk.matrix(row, col) += c.j() * std::sqrt(pb / pa) * cplx(std::cos(angle), std::sin(angle));
    });
  }
  // Phase sums that cancel leave rounding residue; entries are O(|J|) otherwise.
  const double floor = 1e-13 * std::abs(c.j());
  for (std::size_t i = 0; i < blk.dim(); ++i)
    for (std::size_t j = 0; j < blk.dim(); ++j) {
      auto& z = blk.matrix(i, j);
      z = cplx(std::abs(z.real()) <= floor ? 0.0 : z.real(), std::abs(z.imag()) <= floor ? 0.0 : z.imag());
    }
  return blk;
}

}  // namespace xxring
