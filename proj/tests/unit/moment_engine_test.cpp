#include "hankelritz/moment_engine.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "hankelritz/errors.hpp"
#include "test_support.hpp"

namespace hankelritz {
namespace {

using testing::ProblemGenerator;

TEST(ComputeMomentsTest, ExactEigenstateHasUnitMoments) {
  const auto t = compute_moments(GaussianWidth(Rational(1, 2)), Potential::monomial(2), 5);
  ASSERT_EQ(t.normalized.size(), 6u);
  for (const auto& nu : t.normalized) EXPECT_EQ(nu, 1);
  EXPECT_EQ(t.connected[0], 1);
  for (std::size_t k = 1; k < t.connected.size(); ++k) EXPECT_EQ(t.connected[k], 0);
}

TEST(ComputeMomentsTest, OcticMeanEnergy) {
  const auto t = compute_moments(GaussianWidth(8), Potential::monomial(8), 1);
  EXPECT_EQ(t.normalized[1], Rational(8) + Rational(105, 1048576));
  EXPECT_EQ(t.max_index(), 1u);
  ASSERT_TRUE(t.width.has_value());
  EXPECT_EQ(*t.width, GaussianWidth(8));
}

// <H> = (int phi'^2 + V phi^2) / int phi^2, by quadrature on the analytic
// derivative phi' = -2ax e^{-ax^2}.
TEST(ComputeMomentsTest, OcticMeanEnergyMatchesQuadrature) {
  const PrecisionScope scope(256);
  const BigReal a(8L);
  auto weight = [&](const BigReal& x) { return exp(-2 * a * x * x); };
  const BigReal norm = testing::gaussian_quadrature_oracle(weight, 16.0);
  const BigReal energy = testing::gaussian_quadrature_oracle(
      [&](const BigReal& x) { return (4 * a * a * x * x + pow(x, 8)) * weight(x); }, 16.0);
  const auto t = compute_moments(GaussianWidth(8), Potential::monomial(8), 1);
  EXPECT_LE(abs(energy / norm - BigReal(t.normalized[1])), BigReal::parse("1e-30"));
}

TEST(ComputeMomentsTest, FreeParticleKineticMoments) {
  const auto t = compute_moments(GaussianWidth(8), Potential(), 2);
  EXPECT_EQ(t.normalized[1], 8);
  EXPECT_EQ(t.normalized[2], 192);
}

TEST(ComputeMomentsTest, FreeParticleSecondMomentMatchesQuadrature) {
  const PrecisionScope scope(256);
  const BigReal a(8L);
  // H phi = (2a - 4a^2 x^2) e^{-a x^2}; nu_2 = <H phi|H phi> / <phi|phi>.
  auto h_phi = [&](const BigReal& x) { return (2 * a - 4 * a * a * x * x) * exp(-a * x * x); };
  const BigReal num = testing::gaussian_quadrature_oracle(
      [&](const BigReal& x) { return h_phi(x) * h_phi(x); }, 16.0);
  const BigReal den = testing::gaussian_quadrature_oracle(
      [&](const BigReal& x) { return exp(-2 * a * x * x); }, 16.0);
  EXPECT_LE(abs(num / den - 192), BigReal::parse("1e-30"));
}

TEST(ComputeMomentsTest, EnforcesMomentCap) {
  EXPECT_THROW(compute_moments(GaussianWidth(1), Potential::monomial(2), 65), MomentLimitExceeded);
  MomentOptions tight;
  tight.max_moments = 4;
  EXPECT_THROW(compute_moments(GaussianWidth(1), Potential::monomial(2), 5, tight),
               MomentLimitExceeded);
  EXPECT_NO_THROW(compute_moments(GaussianWidth(1), Potential::monomial(2), 4, tight));
}

TEST(ConnectedMomentsTest, PointSpectrumCollapses) {
  const Rational e(7, 3);
  const auto i = connected_from_normalized({1, e, e * e, e * e * e});
  ASSERT_EQ(i.size(), 3u);
  EXPECT_EQ(i[0], e);
  EXPECT_EQ(i[1], 0);
  EXPECT_EQ(i[2], 0);
}

TEST(ConnectedMomentsTest, SymmetricTwoPointSpectrum) {
  const auto i = connected_from_normalized({1, 0, 1, 0});
  EXPECT_EQ(i, (std::vector<Rational>{0, 1, 0}));
}

TEST(ConnectedMomentsTest, SecondIsVariance) {
  const Rational nu1(5, 7), nu2(13, 4);
  const auto i = connected_from_normalized({1, nu1, nu2});
  EXPECT_EQ(i[1], nu2 - nu1 * nu1);
}

// Hand expansion of the recursion through I_4.
TEST(ConnectedMomentsTest, FourthOrderHandExpansion) {
  const Rational n1(1, 2), n2(3), n3(-2, 5), n4(11);
  const auto i = connected_from_normalized({1, n1, n2, n3, n4});
  const Rational i1 = n1;
  const Rational i2 = n2 - i1 * n1;
  const Rational i3 = n3 - (i1 * n2 + 2 * i2 * n1);
  const Rational i4 = n4 - (i1 * n3 + 3 * i2 * n2 + 3 * i3 * n1);
  EXPECT_EQ(i, (std::vector<Rational>{i1, i2, i3, i4}));
}

TEST(ConnectedMomentsTest, RejectsUnnormalizedInput) {
  EXPECT_THROW(connected_from_normalized({2, 1}), InvalidArgument);
  EXPECT_THROW(connected_from_normalized({}), InvalidArgument);
}

TEST(MomentTableTest, FromReducedValidates) {
  EXPECT_THROW(MomentTable::from_reduced({}), InvalidArgument);
  EXPECT_THROW(MomentTable::from_reduced({0, 1}), InvalidArgument);
  EXPECT_THROW(MomentTable::from_reduced({-1, 1}), InvalidArgument);
}

TEST(MomentTableTest, ScaleInvariance) {
  ProblemGenerator gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = compute_moments(GaussianWidth(gen.width()), gen.potential(), 8);
    const Rational c = gen.rational(1, 50, 17);
    std::vector<Rational> scaled;
    for (const auto& m : t.reduced) scaled.push_back(Rational(c * m));
    const auto s = MomentTable::from_reduced(scaled);
    EXPECT_EQ(s.normalized, t.normalized);
    EXPECT_EQ(s.connected, t.connected);
  }
}

// H + s: moments built from the shifted potential equal the binomial shift
// of the original moments; I_1 moves by s and higher I_k stay put.
TEST(MomentTableTest, ShiftCovariance) {
  ProblemGenerator gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    const GaussianWidth a(gen.width());
    const Potential v = gen.potential();
    const Rational s = gen.rational(-7, 7, 3);
    const auto base = compute_moments(a, v, 8);
    const auto shifted = compute_moments(a, v.shifted(s), 8);
    EXPECT_EQ(shifted.normalized, shift_normalized_moments(base.normalized, s));
    EXPECT_EQ(shifted.connected[0], base.connected[0] + s);
    for (std::size_t k = 1; k < base.connected.size(); ++k) {
      EXPECT_EQ(shifted.connected[k], base.connected[k]) << "k=" << k + 1;
    }
  }
}

TEST(MomentTableTest, VarianceIsNonNegative) {
  for (const auto& p : testing::random_corpus()) {
    const auto t = compute_moments(GaussianWidth(p.width), p.potential, 4);
    EXPECT_GE(sgn(t.connected[1]), 0) << p.description;
  }
  const auto eig = compute_moments(GaussianWidth(Rational(1, 2)), Potential::monomial(2), 2);
  EXPECT_EQ(eig.connected[1], 0);
}

// Exact LDL^T pivots of the moment Hankel matrix are non-negative.
TEST(MomentTableTest, HankelMomentMatrixIsPositiveSemidefinite) {
  for (const auto& p : testing::random_corpus()) {
    const auto t = compute_moments(GaussianWidth(p.width), p.potential, 10);
    const std::size_t n = 6;
    std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s[i][j] = t.normalized[i + j];
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_GE(sgn(s[k][k]), 0) << p.description << " pivot " << k;
      if (sgn(s[k][k]) == 0) break;
      for (std::size_t i = k + 1; i < n; ++i) {
        const Rational f = s[i][k] / s[k][k];
        for (std::size_t j = k; j < n; ++j) s[i][j] -= f * s[k][j];
      }
    }
  }
}

TEST(MomentSerializationTest, TextFormat) {
  const auto t = compute_moments(GaussianWidth(8), Potential(), 2);
  std::ostringstream os;
  write_moment_table(os, t);
  EXPECT_EQ(os.str(), "0\t1/1\n1\t8/1\n2\t192/1\n");
}

TEST(MomentSerializationTest, RoundTrip) {
  const auto t = compute_moments(GaussianWidth(Rational(3, 4)), Potential::from_even_coeffs({-1, Rational(1, 3), 2}), 12);
  std::stringstream ss;
  write_moment_table(ss, t);
  EXPECT_EQ(read_reduced_moments(ss), t.reduced);
}

TEST(MomentSerializationTest, RejectsMalformedLines) {
  std::istringstream no_tab("0 1/1\n");
  EXPECT_THROW(read_reduced_moments(no_tab), InvalidArgument);
  std::istringstream gap("0\t1/1\n2\t3/1\n");
  EXPECT_THROW(read_reduced_moments(gap), InvalidArgument);
  std::istringstream zero_den("0\t1/0\n");
  EXPECT_THROW(read_reduced_moments(zero_den), InvalidArgument);
}

}  // namespace
}  // namespace hankelritz
