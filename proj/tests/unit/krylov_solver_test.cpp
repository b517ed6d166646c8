#include "hankelritz/krylov_solver.hpp"

#include <gtest/gtest.h>

#include "hankelritz/errors.hpp"
#include "test_support.hpp"

namespace hankelritz {
namespace {

const BigReal& tol30() {
  static const BigReal t = BigReal::parse("1e-30", 256);
  return t;
}

MomentTable octic(std::size_t m = 24) {
  return compute_moments(GaussianWidth(8), Potential::monomial(8), m);
}

MomentTable harmonic_eigenstate(std::size_t m = 12) {
  return compute_moments(GaussianWidth(Rational(1, 2)), Potential::monomial(2), m);
}

void expect_all_close(const std::vector<BigReal>& a, const std::vector<BigReal>& b,
                      const BigReal& tol, const std::string& what) {
  ASSERT_EQ(a.size(), b.size()) << what;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_LE(abs(a[i] - b[i]), tol) << what << " root " << i << ": " << a[i] << " vs " << b[i];
  }
}

TEST(MethodNameTest, RoundTrip) {
  for (Method m : {Method::kRrvm, Method::kCmpa, Method::kBishop, Method::kCmxLt}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  EXPECT_EQ(parse_method("cmx-lt"), Method::kCmxLt);
  EXPECT_EQ(parse_method("rrvm"), Method::kRrvm);
  EXPECT_FALSE(parse_method("lanczos").has_value());
}

TEST(BuildPencilTest, OrderOne) {
  const auto t = octic(2);
  const auto p = build_pencil(t, 1);
  EXPECT_EQ(p.h(0, 0), BigReal(t.normalized[1]));
  EXPECT_EQ(p.s(0, 0), BigReal(1L));
}

TEST(BuildPencilTest, HankelStructure) {
  const auto t = octic(7);
  const auto p = build_pencil(t, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(p.s(i, j), BigReal(t.normalized[i + j]));
      EXPECT_EQ(p.h(i, j), BigReal(t.normalized[i + j + 1]));
    }
}

TEST(BuildPencilTest, ExactEigenstateGivesAllOnes) {
  const auto t = harmonic_eigenstate(3);
  const auto p = build_pencil(t, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(p.s(i, j), BigReal(1L));
  EXPECT_EQ(cholesky(p.s, default_pivot_tolerance()).report.rank, 1u);
}

TEST(BuildPencilTest, OcticOrderThreeIsPositiveDefinite) {
  const auto p = build_pencil(octic(5), 3);
  EXPECT_EQ(cholesky(p.s, default_pivot_tolerance()).report.rank, 3u);
}

TEST(BuildPencilTest, InsufficientMoments) {
  const auto t = octic(4);
  EXPECT_THROW(build_pencil(t, 3), InsufficientMoments);
  EXPECT_THROW(build_pencil(t, 0), InvalidArgument);
}

TEST(RrvmTest, OrderOneIsRayleighQuotient) {
  const auto t = octic(2);
  const auto est = rrvm_eigenvalues(build_pencil(t, 1));
  ASSERT_EQ(est.values.size(), 1u);
  EXPECT_EQ(est.values[0], BigReal(t.normalized[1]));
  ASSERT_TRUE(est.exact_value.has_value());
  EXPECT_EQ(*est.exact_value, Rational(8) + Rational(105, 1048576));
  EXPECT_EQ(est.moments_used, 2u);
}

TEST(RrvmTest, ExactEigenstateCollapsesToOneRoot) {
  const auto t = harmonic_eigenstate();
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto est = rrvm_eigenvalues(build_pencil(t, n));
    EXPECT_TRUE(est.krylov_collapse);
    ASSERT_EQ(est.values.size(), 1u);
    EXPECT_EQ(est.values[0], BigReal(1L));
    ASSERT_TRUE(est.rank_report.has_value());
    EXPECT_EQ(est.rank_report->rank, 1u);
    EXPECT_TRUE(est.rank_report->krylov_collapse());
    EXPECT_FALSE(est.rank_report->precision_loss());
    EXPECT_EQ(est.exact_value, Rational(1));
  }
}

TEST(RrvmTest, OcticGroundRootsMatchOracleFixture) {
  const auto t = octic();
  for (const auto& row : testing::read_fixture("x8_a8_rrvm_ground.txt")) {
    const std::size_t n = std::stoul(row[0]);
    const auto est = rrvm_eigenvalues(build_pencil(t, n));
    EXPECT_LE(abs(est.values[0] - BigReal::parse(row[1])), tol30()) << "N=" << n;
    EXPECT_TRUE(est.rank_report->full_rank()) << "N=" << n;
  }
}

TEST(RrvmTest, OcticAllRootsAtOrderFourMatchOracle) {
  const auto est = rrvm_eigenvalues(build_pencil(octic(), 4));
  std::vector<BigReal> expected;
  for (const auto& row : testing::read_fixture("x8_a8_rrvm_n4_all.txt")) expected.push_back(BigReal::parse(row[0]));
  expect_all_close(est.values, expected, tol30(), "N=4");
}

// Ground root decreases with N and stays above the reference energy.
TEST(RrvmTest, MonotoneConvergenceFromAbove) {
  const auto t = octic();
  const BigReal e0 = BigReal::parse("1.225820113800492191");
  BigReal previous = BigReal::parse("1e10");
  for (std::size_t n = 1; n <= 12; ++n) {
    const BigReal w = rrvm_eigenvalues(build_pencil(t, n)).values[0];
    EXPECT_LT(w, previous) << "N=" << n;
    EXPECT_GT(w, e0) << "N=" << n;
    previous = w;
  }
}

TEST(RrvmTest, ConsecutiveOrdersInterlace) {
  const auto t = octic();
  for (std::size_t n = 1; n < 12; ++n) {
    const auto lo = rrvm_eigenvalues(build_pencil(t, n)).values;
    const auto hi = rrvm_eigenvalues(build_pencil(t, n + 1)).values;
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_LE(hi[k], lo[k]) << "N=" << n << " k=" << k;
      EXPECT_LE(lo[k], hi[k + 1]) << "N=" << n << " k=" << k;
    }
  }
}

TEST(CmpaTest, OrderOneCoefficients) {
  const auto t = octic(2);
  const auto c = cmpa_coefficients(t, 1);
  ASSERT_EQ(c.p.size(), 2u);
  EXPECT_EQ(c.p[0], BigReal(1L));
  EXPECT_LE(abs(c.p[1] + BigReal(Rational(1) / t.normalized[1])), epsilon_bits(250));
  const auto r = cmpa_roots(c);
  ASSERT_EQ(r.values.size(), 1u);
  EXPECT_LE(abs(r.values[0] - BigReal(t.normalized[1])), epsilon_bits(240));
}

TEST(CmpaTest, ExactEigenstateOrderOne) {
  const auto t = harmonic_eigenstate();
  const auto c = cmpa_coefficients(t, 1);
  EXPECT_EQ(c.p[1], BigReal(-1L));
  EXPECT_EQ(cmpa_roots(c).values, std::vector<BigReal>{BigReal(1L)});
  EXPECT_THROW(cmpa_coefficients(t, 2), SingularMomentMatrix);
}

TEST(CmpaTest, CoefficientsAnnihilateMomentRows) {
  const auto t = octic();
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto c = cmpa_coefficients(t, n);
    for (std::size_t i = 0; i < n; ++i) {
      BigReal residual = 0, scale = 0;
      for (std::size_t j = 0; j <= n; ++j) {
        const BigReal term = c.p[j] * BigReal(t.normalized[i + j]);
        residual += term;
        scale = std::max(scale, abs(term));
      }
      EXPECT_LE(abs(residual), scale * epsilon_bits(180)) << "N=" << n << " row " << i;
    }
  }
}

TEST(CmpaTest, RootsMatchRrvm) {
  const auto t = octic();
  for (std::size_t n : {4u, 6u}) {
    expect_all_close(cmpa_roots(cmpa_coefficients(t, n)).values,
                     rrvm_eigenvalues(build_pencil(t, n)).values, tol30(), "CMPA N=" + std::to_string(n));
  }
}

TEST(CmpaTest, RootCountMismatchWhenBracketCannotGrow) {
  CmpaCoefficients c;
  c.p = {BigReal(1L), BigReal(0L), BigReal(1L)};  // 1 + W^2 has no real roots
  c.bracket = {BigReal(0L), BigReal(1L)};
  SolverOptions options;
  options.max_bracket_doublings = 5;
  EXPECT_THROW(cmpa_roots(c, options), RootCountMismatch);
}

TEST(BishopTest, OrderOne) {
  const auto t = octic(2);
  const auto est = bishop_roots(t, 1);
  ASSERT_EQ(est.values.size(), 1u);
  EXPECT_EQ(est.exact_value, t.normalized[1]);
  EXPECT_LE(abs(est.values[0] - BigReal(t.normalized[1])), epsilon_bits(240));
}

TEST(BishopTest, ExactEigenstate) {
  const auto t = harmonic_eigenstate();
  const auto est = bishop_roots(t, 1);
  EXPECT_EQ(est.values, std::vector<BigReal>{BigReal(1L)});
  EXPECT_THROW(bishop_roots(t, 2), RootCountMismatch);
}

TEST(BishopTest, OrderFiveMatchesRrvm) {
  const auto t = octic();
  expect_all_close(bishop_roots(t, 5).values, rrvm_eigenvalues(build_pencil(t, 5)).values, tol30(), "Bishop N=5");
}

TEST(EquivalenceTest, ThreeRoutesAgreeOnOctic) {
  const auto t = octic();
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto rrvm = rrvm_eigenvalues(build_pencil(t, n)).values;
    const auto cmpa = cmpa_roots(cmpa_coefficients(t, n)).values;
    const auto bishop = bishop_roots(t, n).values;
    expect_all_close(rrvm, cmpa, tol30(), "RRVM/CMPA N=" + std::to_string(n));
    expect_all_close(rrvm, bishop, tol30(), "RRVM/Bishop N=" + std::to_string(n));
    expect_all_close(cmpa, bishop, tol30(), "CMPA/Bishop N=" + std::to_string(n));
  }
}

TEST(EquivalenceTest, ThreeRoutesAgreeOnRandomCorpus) {
  for (const auto& p : testing::random_corpus()) {
    const auto t = compute_moments(GaussianWidth(p.width), p.potential, 2 * p.order - 1);
    const auto rrvm = rrvm_eigenvalues(build_pencil(t, p.order)).values;
    expect_all_close(rrvm, cmpa_roots(cmpa_coefficients(t, p.order)).values, tol30(), p.description);
    expect_all_close(rrvm, bishop_roots(t, p.order).values, tol30(), p.description);
  }
}

TEST(PropertyTest, ScaledMomentsGiveBitIdenticalRoots) {
  const auto t = octic(11);
  std::vector<Rational> scaled;
  for (const auto& m : t.reduced) scaled.push_back(Rational(m * Rational(1234567, 89)));
  const auto s = MomentTable::from_reduced(scaled);
  for (std::size_t n : {1u, 3u, 6u}) {
    EXPECT_EQ(rrvm_eigenvalues(build_pencil(t, n)).values, rrvm_eigenvalues(build_pencil(s, n)).values);
    EXPECT_EQ(cmpa_roots(cmpa_coefficients(t, n)).values, cmpa_roots(cmpa_coefficients(s, n)).values);
    EXPECT_EQ(bishop_roots(t, n).values, bishop_roots(s, n).values);
  }
}

TEST(PropertyTest, ShiftMovesEveryRoot) {
  const Rational s(-17, 3);
  const auto t = octic(11);
  const auto shifted = compute_moments(GaussianWidth(8), Potential::monomial(8).shifted(s), 11);
  const BigReal big_s(s);
  for (std::size_t n = 1; n <= 6; ++n) {
    auto expected = rrvm_eigenvalues(build_pencil(t, n)).values;
    for (auto& w : expected) w += big_s;
    expect_all_close(rrvm_eigenvalues(build_pencil(shifted, n)).values, expected, tol30(), "RRVM shift");
    expect_all_close(cmpa_roots(cmpa_coefficients(shifted, n)).values, expected, tol30(), "CMPA shift");
    expect_all_close(bishop_roots(shifted, n).values, expected, tol30(), "Bishop shift");
  }
}

TEST(RootBracketTest, CentredOnMeanEnergy) {
  const auto t = octic(4);
  const auto b = default_root_bracket(t, 2, 256);
  EXPECT_EQ(b.center, BigReal(t.normalized[1]));
  EXPECT_LE(abs(b.half_width - 8 * sqrt(BigReal(t.connected[1]))), epsilon_bits(240) * b.half_width);
  const auto e = default_root_bracket(harmonic_eigenstate(), 2, 256);
  EXPECT_EQ(e.half_width, BigReal(1L));
}

}  // namespace
}  // namespace hankelritz
