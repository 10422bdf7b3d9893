#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <xxring/bruteforce.hpp>
#include <xxring/eigen.hpp>
#include <xxring/xxmodel.hpp>

using namespace xxring;

namespace {

std::vector<double> sector_spectrum(int n, int k, double j) {
  return eigh(build_sector_hamiltonian(enumerate_sector(n, k), Coupling(j))).values;
}

void expect_same_values(std::vector<double> a, std::vector<double> b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

}  // namespace

TEST(Coupling, RejectsZeroAndNonFinite) {
  EXPECT_THROW(Coupling(0.0), std::invalid_argument);
  EXPECT_THROW(Coupling(std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_THROW(Coupling(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  EXPECT_TRUE(Coupling(-1.0).ferromagnetic());
  EXPECT_TRUE(Coupling(0.5).antiferromagnetic());
}

TEST(SectorHamiltonian, ThreeSitesOneUp) {
  const auto h = build_sector_hamiltonian(enumerate_sector(3, 1), Coupling(-1.0));
  ASSERT_EQ(h.dim(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(h(i, j), cplx(i == j ? 0.0 : -1.0));
  const auto s = eigh(h);
  EXPECT_NEAR(s.values.front(), -2.0, 1e-12);
}

TEST(SectorHamiltonian, FourSitesTwoUpExtremes) {
  const auto s = sector_spectrum(4, 2, -1.0);
  ASSERT_EQ(s.size(), 6u);
  EXPECT_NEAR(s.front(), -2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.back(), 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(SectorHamiltonian, EmptyAndFullSectorsAreZero) {
  for (int n = 1; n <= 6; ++n)
    for (int k : {0, n}) {
      const auto h = build_sector_hamiltonian(enumerate_sector(n, k), Coupling(1.0));
      EXPECT_EQ(h.max_abs(), 0.0);
    }
  EXPECT_EQ(build_sector_hamiltonian(enumerate_sector(1, 1), Coupling(1.0)).max_abs(), 0.0);
}

TEST(SectorHamiltonian, TwoSiteBondCountedTwice) {
  const auto h = build_sector_hamiltonian(enumerate_sector(2, 1), Coupling(1.0));
  EXPECT_EQ(h(0, 1), cplx(2.0));
  const auto s = eigh(h);
  EXPECT_NEAR(s.values[0], -2.0, 1e-14);
  EXPECT_NEAR(s.values[1], 2.0, 1e-14);
}

TEST(SectorHamiltonian, HermitianAndRealSymmetric) {
  for (int n = 2; n <= 10; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto h = build_sector_hamiltonian(enumerate_sector(n, k), Coupling(-0.7));
      EXPECT_EQ(h.hermiticity_defect(), 0.0);
    }
}

TEST(ApplyHamiltonian, MatchesDenseMatrix) {
  const auto basis = enumerate_sector(7, 3);
  const Coupling c(1.3);
  const auto h = build_sector_hamiltonian(basis, c);
  StateVector v(basis.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(std::sin(1.0 + i), std::cos(0.3 * i));
  const auto a = apply_hamiltonian(basis, c, v);
  const auto b = h.multiply(v);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-13);
}

TEST(ApplyHamiltonian, UniformVectorCountsBonds) {
  // each configuration maps onto neighbours once per domain-wall bond
  const auto basis = enumerate_sector(4, 2);
  const StateVector uniform(basis.size(), cplx(1.0));
  const auto out = apply_hamiltonian(basis, Coupling(1.0), uniform);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    int incoming = 0;
    for (std::size_t b = 0; b < basis.size(); ++b)
      for_each_hop(4, basis[b].bits, [&](std::uint32_t t) { incoming += t == basis[a].bits; });
    EXPECT_EQ(out[a], cplx(incoming));
  }
  EXPECT_EQ(out[basis.index_of(from_up_sites(4, {0, 1}))], cplx(2.0));
  EXPECT_EQ(out[basis.index_of(from_up_sites(4, {0, 2}))], cplx(4.0));
}

TEST(ApplyHamiltonian, EigenRelationAndErrors) {
  const auto basis = enumerate_sector(6, 3);
  const Coupling c(-1.0);
  const auto s = eigh(build_sector_hamiltonian(basis, c));
  for (std::size_t e = 0; e < s.values.size(); ++e) {
    const auto hv = apply_hamiltonian(basis, c, s.vectors[e]);
    for (std::size_t i = 0; i < hv.size(); ++i) EXPECT_NEAR(std::abs(hv[i] - s.values[e] * s.vectors[e][i]), 0.0, 1e-11);
  }
  const auto zero = apply_hamiltonian(enumerate_sector(5, 0), c, StateVector{cplx(1.0)});
  EXPECT_EQ(zero[0], cplx(0.0));
  EXPECT_THROW(apply_hamiltonian(basis, c, StateVector(3)), std::invalid_argument);
}

TEST(FieldOffset, Values) {
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(sector_energy_offset(k, 5, {}), 0.0);
  EXPECT_NEAR(sector_energy_offset(2, 3, {0.1}), -0.05, 1e-15);
  EXPECT_NEAR(sector_energy_offset(1, 3, {0.1}), 0.05, 1e-15);
}

TEST(MomentumBlock, FourSitesTwoUpDimensions) {
  const auto basis = enumerate_sector(4, 2);
  const auto orbits = translation_orbits(basis);
  EXPECT_EQ(build_momentum_block(basis, orbits, 0, Coupling(-1.0)).dim(), 2u);
  EXPECT_EQ(build_momentum_block(basis, orbits, 1, Coupling(-1.0)).dim(), 1u);
  EXPECT_EQ(build_momentum_block(basis, orbits, 2, Coupling(-1.0)).dim(), 2u);
  EXPECT_EQ(build_momentum_block(basis, orbits, 3, Coupling(-1.0)).dim(), 1u);
  EXPECT_THROW(build_momentum_block(basis, orbits, 4, Coupling(-1.0)), std::invalid_argument);
  EXPECT_THROW(build_momentum_block(basis, orbits, -1, Coupling(-1.0)), std::invalid_argument);
}

TEST(MomentumBlock, FifteenSitesBlockOrder) {
  const auto basis = enumerate_sector(15, 7);
  const auto orbits = translation_orbits(basis);
  for (int m : {0, 4, 14}) EXPECT_EQ(build_momentum_block(basis, orbits, m, Coupling(1.0)).dim(), 429u);
}

TEST(MomentumBlock, DimensionsSumToSector) {
  for (int n = 1; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto basis = enumerate_sector(n, k);
      const auto orbits = translation_orbits(basis);
      std::size_t total = 0;
      for (int m = 0; m < n; ++m) {
        const auto blk = build_momentum_block(basis, orbits, m, Coupling(1.0));
        total += blk.dim();
        EXPECT_LE(blk.matrix.hermiticity_defect(), 1e-12);
        for (std::size_t r = 0; r < blk.dim(); ++r) {
          EXPECT_EQ((m * blk.periods[r]) % n, 0);
          EXPECT_DOUBLE_EQ(blk.norms[r], static_cast<double>(n) * n / blk.periods[r]);
        }
      }
      EXPECT_EQ(total, basis.size()) << "n=" << n << " k=" << k;
    }
}

TEST(MomentumBlock, SpectraUnionEqualsSectorSpectrum) {
  for (int n = 2; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto basis = enumerate_sector(n, k);
      const auto orbits = translation_orbits(basis);
      for (double j : {-1.0, 1.0}) {
        std::vector<double> blocks;
        for (int m = 0; m < n; ++m) {
          const auto s = eigh(build_momentum_block(basis, orbits, m, Coupling(j)).matrix);
          blocks.insert(blocks.end(), s.values.begin(), s.values.end());
        }
        const auto h = build_sector_hamiltonian(basis, Coupling(j));
        Eigen::MatrixXd dense(basis.size(), basis.size());
        for (std::size_t a = 0; a < basis.size(); ++a)
          for (std::size_t b = 0; b < basis.size(); ++b) dense(a, b) = h(a, b).real();
        const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense, Eigen::EigenvaluesOnly).eigenvalues();
        expect_same_values(blocks, std::vector<double>(ref.data(), ref.data() + ref.size()), 1e-10);
      }
    }
}

TEST(Symmetry, ParticleHoleSectorsShareSpectra) {
  for (int n = 2; n <= 10; ++n)
    for (int k = 0; k <= n / 2; ++k)
      for (double j : {-1.0, 1.0}) expect_same_values(sector_spectrum(n, k, j), sector_spectrum(n, n - k, j), 1e-10);
}

TEST(Symmetry, EvenRingSpectrumOddUnderCouplingSign) {
  for (int n : {4, 6, 8})
    for (int k = 0; k <= n; ++k) {
      auto neg = sector_spectrum(n, k, 1.0);
      for (auto& v : neg) v = -v;
      expect_same_values(sector_spectrum(n, k, -1.0), neg, 1e-10);
    }
}

TEST(Symmetry, EigenvaluesScaleWithCoupling) {
  const auto unit = sector_spectrum(7, 3, 1.0);
  const auto scaled = sector_spectrum(7, 3, 2.5);
  for (std::size_t i = 0; i < unit.size(); ++i) EXPECT_NEAR(scaled[i], 2.5 * unit[i], 1e-10);
}

TEST(SectorHamiltonian, EmbedsInFullHamiltonian) {
  for (int n : {3, 5, 6}) {
    const auto full = oracle::full_hamiltonian(n, -1.0);
    for (int k = 0; k <= n; ++k) {
      const auto basis = enumerate_sector(n, k);
      const auto h = build_sector_hamiltonian(basis, Coupling(-1.0));
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b)
          EXPECT_EQ(h(a, b).real(), full(basis[a].bits, basis[b].bits));
    }
  }
}
