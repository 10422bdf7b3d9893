#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <xxring/bruteforce.hpp>
#include <xxring/eigen.hpp>

using namespace xxring;

namespace {

HermitianMatrix random_hermitian(std::size_t n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = cplx(g(rng), g(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

void expect_eigensystem(const HermitianMatrix& h, const Spectrum& s, double tol) {
  const double scale = std::max(h.frobenius_norm(), 1.0);
  ASSERT_EQ(s.values.size(), h.dim());
  for (std::size_t e = 0; e < s.values.size(); ++e) {
    if (e) EXPECT_LE(s.values[e - 1], s.values[e]);
    const auto hv = h.multiply(s.vectors[e]);
    double res = 0.0;
    for (std::size_t i = 0; i < hv.size(); ++i) res += std::norm(hv[i] - s.values[e] * s.vectors[e][i]);
    EXPECT_LE(std::sqrt(res), tol * scale);
    for (std::size_t f = 0; f <= e; ++f)
      EXPECT_NEAR(std::abs(inner(s.vectors[f], s.vectors[e]) - (e == f ? 1.0 : 0.0)), 0.0, tol);
  }
}

double min_sector_energy(int n, int k, double j) {
  return eigh(build_sector_hamiltonian(enumerate_sector(n, k), Coupling(j))).values.front();
}

}  // namespace

TEST(Eigh, DiagonalMatrixSorted) {
  HermitianMatrix h(4);
  h(0, 0) = 3.0;
  h(1, 1) = -1.0;
  h(2, 2) = 2.0;
  h(3, 3) = 0.5;
  const auto s = eigh(h);
  EXPECT_EQ(s.values, (std::vector<double>{-1.0, 0.5, 2.0, 3.0}));
  EXPECT_EQ(s.sweeps, 0);
  EXPECT_EQ(s.vectors[0][1], cplx(1.0));
}

TEST(Eigh, EmptyAndScalar) {
  EXPECT_TRUE(eigh(HermitianMatrix(0)).values.empty());
  HermitianMatrix one(1);
  one(0, 0) = 7.0;
  const auto s = eigh(one);
  EXPECT_EQ(s.values, std::vector<double>{7.0});
  EXPECT_EQ(s.vectors[0][0], cplx(1.0));
}

TEST(Eigh, RandomHermitianResidualAndOrthonormality) {
  std::mt19937 rng(20240611);
  for (std::size_t n : {2u, 3u, 5u, 8u, 17u, 40u}) {
    const auto h = random_hermitian(n, rng);
    const auto s = eigh(h);
    expect_eigensystem(h, s, 1e-10);
  }
}

TEST(Eigh, AgreesWithReferenceSolver) {
  std::mt19937 rng(7);
  const auto h = random_hermitian(30, rng);
  Eigen::MatrixXcd m(30, 30);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) m(i, j) = h(i, j);
  const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m, Eigen::EigenvaluesOnly).eigenvalues();
  const auto s = eigh(h);
  for (int i = 0; i < 30; ++i) EXPECT_NEAR(s.values[static_cast<std::size_t>(i)], ref(i), 1e-10);
}

TEST(Eigh, PhaseConvention) {
  std::mt19937 rng(99);
  const auto s = eigh(random_hermitian(12, rng));
  for (const auto& v : s.vectors) {
    std::size_t big = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (std::abs(v[i]) > std::abs(v[big]) * (1.0 + 1e-9)) big = i;
    EXPECT_GT(v[big].real(), 0.0);
    EXPECT_NEAR(v[big].imag(), 0.0, 1e-14);
  }
}

TEST(Eigh, Deterministic) {
  std::mt19937 rng(5);
  const auto h = random_hermitian(20, rng);
  const auto a = eigh(h);
  const auto b = eigh(h);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(Eigh, RejectsNonHermitian) {
  HermitianMatrix h(2);
  h(0, 1) = 1.0;
  h(1, 0) = 2.0;
  EXPECT_THROW(eigh(h), std::invalid_argument);
  HermitianMatrix im(2);
  im(0, 0) = cplx(1.0, 0.5);
  EXPECT_THROW(eigh(im), std::invalid_argument);
}

TEST(Eigh, IterationCapRaisesNumericFailure) {
  std::mt19937 rng(3);
  const auto h = random_hermitian(10, rng);
  JacobiOptions opt;
  opt.max_sweeps = 1;
  EXPECT_THROW(eigh(h, {}, opt), numeric_failure);
}

TEST(Eigh, SectorExamples) {
  EXPECT_NEAR(min_sector_energy(6, 3, 1.0), -4.0, 1e-12);
  // single-particle levels 2J cos(2 pi q / 7), q = 0, +-1
  EXPECT_NEAR(min_sector_energy(7, 3, -1.0), -4.493959207434934, 1e-12);
}

TEST(GroundManifold, SmallRingExamples) {
  const auto g4 = ground_manifold(4, Coupling(-1.0));
  EXPECT_EQ(g4.degeneracy(), 1u);
  EXPECT_NEAR(g4.energy, -2.0 * std::sqrt(2.0), 1e-12);

  const auto g3f = ground_manifold(3, Coupling(-1.0));
  EXPECT_EQ(g3f.degeneracy(), 2u);
  EXPECT_NEAR(g3f.energy, -2.0, 1e-12);

  const auto g3a = ground_manifold(3, Coupling(1.0));
  EXPECT_EQ(g3a.degeneracy(), 4u);
  EXPECT_NEAR(g3a.energy, -1.0, 1e-12);
}

TEST(GroundManifold, ClosedFormEnergies) {
  const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
  struct Case {
    int n;
    double j;
    double e;
  };
  const Case cases[] = {
      {2, -1.0, -2.0},          {2, 1.0, -2.0},
      {3, -1.0, -2.0},          {3, 1.0, -1.0},
      {4, -1.0, -2.0 * s2},     {4, 1.0, -2.0 * s2},
      {5, -1.0, -(s5 + 1.0)},   {5, 1.0, -(3.0 + s5) / 2.0},
      {6, -1.0, -4.0},          {6, 1.0, -4.0},
      {7, -1.0, -2.0 * (1.0 + 2.0 * std::cos(2.0 * std::numbers::pi / 7.0))},
      {8, -1.0, -2.0 * std::sqrt(4.0 + 2.0 * s2)},
      {8, 1.0, -2.0 * std::sqrt(4.0 + 2.0 * s2)},
  };
  for (const auto& c : cases) EXPECT_NEAR(ground_manifold(c.n, Coupling(c.j)).energy, c.e, 1e-10 * std::abs(c.e)) << c.n;
}

TEST(GroundManifold, DegeneracyPattern) {
  for (int n = 2; n <= 12; n += 2)
    for (double j : {-1.0, 1.0}) EXPECT_EQ(ground_manifold(n, Coupling(j)).degeneracy(), 1u) << n;
  for (int n : {3, 5, 7, 9}) {
    EXPECT_EQ(ground_manifold(n, Coupling(-1.0)).degeneracy(), 2u) << n;
    EXPECT_EQ(ground_manifold(n, Coupling(1.0)).degeneracy(), 4u) << n;
  }
}

TEST(GroundManifold, LivesInMinimalSpinSectors) {
  for (int n = 2; n <= 12; ++n)
    for (double j : {-1.0, 1.0}) {
      const auto gm = ground_manifold(n, Coupling(j));
      for (int k : gm.sector_ks()) {
        if (n % 2 == 0)
          EXPECT_EQ(k, n / 2);
        else
          EXPECT_TRUE(k == (n - 1) / 2 || k == (n + 1) / 2) << n << " " << k;
      }
      if (n % 2) EXPECT_EQ(gm.sector_ks().size(), 2u);
    }
}

TEST(GroundManifold, BlockPathMatchesDenseSectors) {
  for (int n = 2; n <= 12; ++n)
    for (double j : {-1.0, 1.0}) {
      double dense = std::numeric_limits<double>::infinity();
      for (int k = 0; k <= n; ++k) {
        const auto basis = enumerate_sector(n, k);
        const auto h = build_sector_hamiltonian(basis, Coupling(j));
        Eigen::MatrixXd m(basis.size(), basis.size());
        for (std::size_t a = 0; a < basis.size(); ++a)
          for (std::size_t b = 0; b < basis.size(); ++b) m(a, b) = h(a, b).real();
        dense = std::min(dense, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0));
      }
      EXPECT_NEAR(ground_manifold(n, Coupling(j)).energy, dense, 1e-10) << n;
    }
}

TEST(GroundManifold, StatesAreOrthonormalEigenvectors) {
  for (int n : {5, 7, 8, 9})
    for (double j : {-1.0, 1.0}) {
      const auto gm = ground_manifold(n, Coupling(j));
      for (std::size_t a = 0; a < gm.states.size(); ++a) {
        const auto& s = gm.states[a];
        const auto& basis = gm.basis(s.label.k);
        const auto hv = apply_hamiltonian(basis, Coupling(j), s.amplitudes);
        EXPECT_NEAR(inner(s.amplitudes, hv).real(), gm.energy, 1e-10);
        EXPECT_NEAR(std::abs(s.energy - gm.energy), 0.0, 1e-10);
        for (std::size_t b = 0; b <= a; ++b) {
          const auto& t = gm.states[b];
          const double expect = a == b ? 1.0 : 0.0;
          const double overlap = t.label.k == s.label.k ? std::abs(inner(t.amplitudes, s.amplitudes)) : 0.0;
          EXPECT_NEAR(overlap, expect, 1e-10);
        }
      }
    }
}

TEST(GroundManifold, FieldSelectsUpperSector) {
  const auto gm = ground_manifold(3, Coupling(-1.0), {0.01});
  ASSERT_EQ(gm.degeneracy(), 1u);
  EXPECT_EQ(gm.states[0].label.k, 2);
  EXPECT_NEAR(gm.energy, -2.0 - 0.005, 1e-12);
}

TEST(GroundManifold, ThreadCountDoesNotChangeResult) {
  const auto a = ground_manifold(9, Coupling(1.0), {}, 1e-9, 1);
  const auto b = ground_manifold(9, Coupling(1.0), {}, 1e-9, 4);
  ASSERT_EQ(a.degeneracy(), b.degeneracy());
  EXPECT_EQ(a.energy, b.energy);
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    EXPECT_EQ(a.states[i].label, b.states[i].label);
    EXPECT_EQ(a.states[i].amplitudes, b.states[i].amplitudes);
  }
}

TEST(GroundManifold, Errors) {
  EXPECT_THROW(ground_manifold(0, Coupling(1.0)), std::invalid_argument);
  EXPECT_THROW(ground_manifold(21, Coupling(1.0)), std::invalid_argument);
  EXPECT_THROW(ground_manifold(4, Coupling(1.0), {}, -1.0), std::invalid_argument);
}

TEST(LiftBlockVector, FourSiteGroundState) {
  const auto basis = enumerate_sector(4, 2);
  const auto orbits = translation_orbits(basis);
  const auto blk = build_momentum_block(basis, orbits, 0, Coupling(-1.0));
  const auto s = eigh(blk.matrix);
  EXPECT_NEAR(s.values[0], -2.0 * std::sqrt(2.0), 1e-12);
  const auto v = lift_block_vector(blk, s.vectors[0]);
  EXPECT_NEAR(norm2(v), 1.0, 1e-12);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const bool adjacent = period(basis[a]) == 4;
    EXPECT_NEAR(std::abs(v[a]), adjacent ? 1.0 / (2.0 * std::sqrt(2.0)) : 0.5, 1e-12);
  }
  EXPECT_THROW(lift_block_vector(blk, StateVector(3)), std::invalid_argument);
}

TEST(LiftBlockVector, SingleRepresentativeIsMomentumState) {
  const auto basis = enumerate_sector(5, 1);
  const auto orbits = translation_orbits(basis);
  for (int m = 0; m < 5; ++m) {
    const auto blk = build_momentum_block(basis, orbits, m, Coupling(1.0));
    ASSERT_EQ(blk.dim(), 1u);
    const auto v = lift_block_vector(blk, StateVector{cplx(1.0)});
    for (int t = 0; t < 5; ++t) {
      const double ang = -2.0 * std::numbers::pi * m * t / 5.0;
      const cplx expect = cplx(std::cos(ang), std::sin(ang)) / std::sqrt(5.0);
      EXPECT_NEAR(std::abs(v[basis.index_of(from_up_sites(5, {t}))] - expect), 0.0, 1e-14);
    }
    // eigenvalue 2J cos(2 pi m / 5)
    EXPECT_NEAR(blk.matrix(0, 0).real(), 2.0 * std::cos(2.0 * std::numbers::pi * m / 5.0), 1e-12);
  }
}

TEST(LiftBlockVector, OrbitMagnitudesConstant) {
  for (int n : {6, 8, 9})
    for (int k = 1; k < n; ++k) {
      const auto basis = enumerate_sector(n, k);
      const auto orbits = translation_orbits(basis);
      for (int m = 0; m < n; ++m) {
        const auto blk = build_momentum_block(basis, orbits, m, Coupling(-1.0));
        const auto s = eigh(blk.matrix);
        for (const auto& bv : s.vectors) {
          const auto v = lift_block_vector(blk, bv);
          for (const auto& mem : blk.members)
            for (auto idx : mem) EXPECT_NEAR(std::abs(v[idx]), std::abs(v[mem.front()]), 1e-12);
        }
      }
    }
}

TEST(BlockSpectra, CoversWholeSpace) {
  const int n = 6;
  const auto blocks = block_spectra(n, Coupling(1.0));
  std::vector<double> all;
  for (const auto& b : blocks) all.insert(all.end(), b.values.begin(), b.values.end());
  ASSERT_EQ(all.size(), 64u);
  const auto full = oracle::full_eigensystem(n, Coupling(1.0));
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_NEAR(all[i], full.values(static_cast<Eigen::Index>(i)), 1e-10);
}

TEST(BlockSpectra, FieldShiftsEachSector) {
  const int n = 5;
  const FieldSetting f{0.3};
  const auto plain = block_spectra(n, Coupling(-1.0));
  const auto shifted = block_spectra(n, Coupling(-1.0), f);
  ASSERT_EQ(plain.size(), shifted.size());
  for (std::size_t i = 0; i < plain.size(); ++i) {
    EXPECT_EQ(plain[i].label, shifted[i].label);
    EXPECT_DOUBLE_EQ(shifted[i].offset, sector_energy_offset(shifted[i].label.k, n, f));
    for (std::size_t e = 0; e < plain[i].values.size(); ++e)
      EXPECT_NEAR(shifted[i].values[e], plain[i].values[e] + shifted[i].offset, 1e-14);
  }
}
