#pragma once

// Full 2^n reference solver. Deliberately shares nothing with the sector /
// momentum pipeline except the SpinConfiguration bit convention: the
// Hamiltonian, partial trace and concurrence are rebuilt here on top of
// Eigen's dense solvers.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "xxmodel.hpp"

namespace xxring::oracle {

inline constexpr int kMaxOracleSites = 14;
inline constexpr int kMaxFullDenseSites = 10;

using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;

/// Two-site density of sum_i w_i |v_i><v_i| (real full-space vectors), basis
/// order |uu>, |ud>, |du>, |dd>.
inline Matrix4c reduce_to_pair(int n, const Eigen::MatrixXd& vectors, const std::vector<double>& weights, int p, int q) {
  Matrix4c rho = Matrix4c::Zero();
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t mp = std::uint64_t{1} << p;
  const std::uint64_t mq = std::uint64_t{1} << q;
  auto slot = [&](std::uint64_t s) { return ((s & mp) ? 0 : 2) + ((s & mq) ? 0 : 1); };
  const std::uint64_t patterns[4] = {mp | mq, mp, mq, 0};
  for (Eigen::Index col = 0; col < vectors.cols(); ++col) {
    const double w = weights[static_cast<std::size_t>(col)];
    for (std::uint64_t s = 0; s < dim; ++s) {
      if (s & (mp | mq)) continue;  // s enumerates the environment
      double amp[4];
      for (int a = 0; a < 4; ++a) amp[a] = vectors(static_cast<Eigen::Index>(s | patterns[a]), col);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) rho(slot(s | patterns[a]), slot(s | patterns[b])) += w * amp[a] * amp[b];
    }
  }
  return rho;
}

/// max(0, l1 - l2 - l3 - l4), l = sqrt(eig(rho (sy x sy) rho* (sy x sy))).
inline double concurrence(const Matrix4c& rho) {
  Matrix4c flip = Matrix4c::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Matrix4c r = rho * flip * rho.conjugate() * flip;
  Eigen::ComplexEigenSolver<Matrix4c> es(r, false);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0)));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline Eigen::MatrixXd full_hamiltonian(int n, double j) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t s = 0; s < dim; ++s)
    for (int i = 0; i < n && n >= 2; ++i) {
      const int k = (i + 1) % n;
      const bool si = (s >> i) & 1u;
      const bool sk = (s >> k) & 1u;
      if (si != sk) h(static_cast<Eigen::Index>(s ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << k)),
                      static_cast<Eigen::Index>(s)) += j;
    }
  return h;
}

struct FullSpectrumReport {
  int n = 0;
  double ground_energy = 0.0;
  int ground_degeneracy = 0;
  std::vector<double> energies;      // all 2^n, ascending
  std::vector<int> sector_tags;      // dominant up count of each eigenvector
  Eigen::MatrixXd ground_vectors;    // 2^n x degeneracy, indexed by configuration bits
  double max_nearest_concurrence = 0.0;
  double ground_nearest_concurrence = 0.0;

  /// Diagonal of the equal-weight ground mixture, indexed by configuration bits.
  std::vector<double> ground_probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(ground_vectors.rows()), 0.0);
    for (Eigen::Index c = 0; c < ground_vectors.cols(); ++c)
      for (Eigen::Index s = 0; s < ground_vectors.rows(); ++s)
        p[static_cast<std::size_t>(s)] += ground_vectors(s, c) * ground_vectors(s, c) / ground_degeneracy;
    return p;
  }

  Matrix4c ground_pair_density(int p, int q) const {
    const std::vector<double> w(static_cast<std::size_t>(ground_degeneracy), 1.0 / ground_degeneracy);
    return reduce_to_pair(n, ground_vectors, w, p, q);
  }

  double ground_concurrence(int p, int q) const { return concurrence(ground_pair_density(p, q)); }
};

struct FullEigensystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

/// Single dense solve of the 2^n x 2^n matrix.
inline FullEigensystem full_eigensystem(int n, Coupling c) {
  if (n < 1 || n > kMaxFullDenseSites) throw std::invalid_argument("full dense oracle supports 1 <= n <= 10");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(full_hamiltonian(n, c.j()));
  if (es.info() != Eigen::Success) throw std::runtime_error("oracle eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline int dominant_popcount(int n, const Eigen::Ref<const Eigen::VectorXd>& v) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index s = 0; s < v.size(); ++s)
    w[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(s)))] += v(s) * v(s);
  return static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());
}

/// Dense diagonalization of the whole 2^n space. Up to 10 sites a single
/// 2^n x 2^n matrix is solved; beyond that the matrix is split by popcount,
/// still indexed by full-space configuration, and only vectors near each
/// block's minimum are retained.
inline FullSpectrumReport full_diagonalize(int n, Coupling c, double degeneracy_tol = 1e-9) {
  if (n < 1 || n > kMaxOracleSites) throw std::invalid_argument("oracle supports 1 <= n <= 14");
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  FullSpectrumReport rep;
  rep.n = n;
  const std::vector<double> unit{1.0};

  // (energy, vector) candidates for the ground level
  std::vector<std::pair<double, Eigen::VectorXd>> candidates;
  if (n <= kMaxFullDenseSites) {
    const auto sys = full_eigensystem(n, c);
    for (Eigen::Index e = 0; e < dim; ++e) {
      rep.energies.push_back(sys.values(e));
      rep.sector_tags.push_back(dominant_popcount(n, sys.vectors.col(e)));
      candidates.emplace_back(sys.values(e), sys.vectors.col(e));
      if (n >= 2)
        rep.max_nearest_concurrence = std::max(
            rep.max_nearest_concurrence, concurrence(reduce_to_pair(n, sys.vectors.col(e), unit, 0, 1)));
    }
  } else {
    std::vector<std::pair<double, int>> tagged;
    const double window = degeneracy_tol * (4.0 * std::abs(c.j()) * n + 1.0);
    for (int k = 0; k <= n; ++k) {
      std::vector<std::uint64_t> states;
      for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s)
        if (std::popcount(s) == k) states.push_back(s);
      const auto d = static_cast<Eigen::Index>(states.size());
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
      for (Eigen::Index a = 0; a < d; ++a)
        for (int i = 0; i < n; ++i) {
          const int i2 = (i + 1) % n;
          const std::uint64_t s = states[static_cast<std::size_t>(a)];
          if (((s >> i) ^ (s >> i2)) & 1u) {
            const auto t = s ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << i2);
            const auto b = std::lower_bound(states.begin(), states.end(), t) - states.begin();
            h(b, a) += c.j();
          }
        }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      if (es.info() != Eigen::Success) throw std::runtime_error("oracle eigensolver failed");
      const double lo = es.eigenvalues()(0);
      for (Eigen::Index e = 0; e < d; ++e) {
        Eigen::VectorXd full = Eigen::VectorXd::Zero(dim);
        for (Eigen::Index a = 0; a < d; ++a)
          full(static_cast<Eigen::Index>(states[static_cast<std::size_t>(a)])) = es.eigenvectors()(a, e);
        tagged.emplace_back(es.eigenvalues()(e), k);
        rep.max_nearest_concurrence =
            std::max(rep.max_nearest_concurrence, concurrence(reduce_to_pair(n, full, unit, 0, 1)));
        if (es.eigenvalues()(e) <= lo + window) candidates.emplace_back(es.eigenvalues()(e), std::move(full));
      }
    }
    std::stable_sort(tagged.begin(), tagged.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [e, k] : tagged) {
      rep.energies.push_back(e);
      rep.sector_tags.push_back(k);
    }
  }

  const double range = rep.energies.back() - rep.energies.front();
  rep.ground_energy = rep.energies.front();
  std::vector<const Eigen::VectorXd*> ground;
  for (const auto& [e, v] : candidates)
    if (e - rep.ground_energy <= degeneracy_tol * range) ground.push_back(&v);
  rep.ground_degeneracy = static_cast<int>(ground.size());
  rep.ground_vectors.resize(dim, rep.ground_degeneracy);
  for (int i = 0; i < rep.ground_degeneracy; ++i) rep.ground_vectors.col(i) = *ground[static_cast<std::size_t>(i)];
  if (n >= 2) rep.ground_nearest_concurrence = rep.ground_concurrence(0, 1);
  return rep;
}

struct LevelConcurrence {
  double energy = 0.0;
  int degeneracy = 0;
  double concurrence = 0.0;  // nearest pair, equal-weight mixture over the level
};

struct ConcurrenceScan {
  int n = 0;
  std::vector<LevelConcurrence> levels;  // ascending energy
  bool ground_is_max = true;
  double max_excited = 0.0;
};

/// Nearest-pair concurrence of every energy level (degenerate levels mixed
/// with equal weights) and whether the ground level attains the maximum.
inline ConcurrenceScan eigenvector_concurrence_scan(int n, Coupling c, double degeneracy_tol = 1e-9) {
  if (n < 2 || n > 10) throw std::invalid_argument("concurrence scan supports 2 <= n <= 10");
  const auto sys = full_eigensystem(n, c);
  const std::vector<double> energies(sys.values.data(), sys.values.data() + sys.values.size());
  const double range = energies.back() - energies.front();
  const double gap = degeneracy_tol * std::max(range, 1.0);
  ConcurrenceScan scan;
  scan.n = n;
  std::size_t i = 0;
  const auto dim = energies.size();
  while (i < dim) {
    std::size_t j = i + 1;
    while (j < dim && energies[j] - energies[i] <= gap) ++j;
    const int d = static_cast<int>(j - i);
    const std::vector<double> w(static_cast<std::size_t>(d), 1.0 / d);
    const auto rho = reduce_to_pair(n, sys.vectors.middleCols(static_cast<Eigen::Index>(i), d), w, 0, 1);
    scan.levels.push_back({energies[i], d, concurrence(rho)});
    i = j;
  }
  const double ground = scan.levels.front().concurrence;
  for (std::size_t l = 1; l < scan.levels.size(); ++l)
    scan.max_excited = std::max(scan.max_excited, scan.levels[l].concurrence);
  scan.ground_is_max = scan.max_excited <= ground + 1e-10;
  return scan;
}

}  // namespace xxring::oracle
