#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace siegel;

namespace {

LinearModel model(long p, long N, const std::vector<std::vector<long>>& m) {
  std::vector<std::vector<Int>> r;
  for (auto& row : m) {
    std::vector<Int> rr(row.begin(), row.end());
    r.push_back(rr);
  }
  return LinearModel::from_ints(p, N, r);
}

IntMatrix s1(long a) { return IntMatrix{{2 * a}}; }

}  // namespace

TEST(Projector, DiagonalExample) {
  long p = 5;
  LinearModel e = ordinary_projector(model(p, 10, {{1 + p, 0}, {0, p}}), 10);
  EXPECT_TRUE(models_equal(e, model(p, 10, {{1, 0}, {0, 0}}), 10));
  EXPECT_EQ(projector_rank(e), 1);
}

TEST(Projector, Identity) {
  LinearModel I = model(7, 6, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_TRUE(models_equal(ordinary_projector(I, 6), I, 6));
}

TEST(Projector, NilpotentAndJordan) {
  // a unipotent Jordan block is all unit root: e = 1
  LinearModel J = model(5, 8, {{1, 1}, {0, 1}});
  EXPECT_TRUE(models_equal(ordinary_projector(J, 8), model(5, 8, {{1, 0}, {0, 1}}), 8));
  LinearModel Z = model(5, 8, {{0, 1}, {0, 0}});
  EXPECT_EQ(projector_rank(ordinary_projector(Z, 8)), 0);
}

TEST(Projector, RejectsNonIntegral) {
  LinearModel M = model(5, 6, {{1, 0}, {0, 1}});
  M.rows[0][1] = PAdic::from_rat(Rat(1, 5), 5, 6);
  EXPECT_THROW(ordinary_projector(M, 6), DomainError);
}

TEST(Projector, PlantedSpectra) {
  std::mt19937_64 rng(11);
  long p = 5, N = 10;
  for (int trial = 0; trial < 20; ++trial) {
    long units = trial % 7;
    auto pl = fixtures::planted_model(rng, p, 6, units, trial % 2);
    LinearModel U = LinearModel::from_ints(p, N, pl.M);
    LinearModel e = ordinary_projector(U, N);
    EXPECT_TRUE(models_equal(model_mul(e, e), e, N));
    EXPECT_TRUE(models_equal(model_mul(e, U), model_mul(U, e), N));
    EXPECT_EQ(projector_rank(e), units);
    if (pl.diagonal) EXPECT_TRUE(models_equal(e, LinearModel::from_ints(p, N, pl.E), N));
  }
}

TEST(Tensor, Examples) {
  LinearModel I = model(5, 6, {{1, 0}, {0, 1}});
  EXPECT_TRUE(models_equal(tensor_projector(I, I), model(5, 6, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}), 6));
  LinearModel d = model(5, 6, {{1, 0}, {0, 0}});
  LinearModel t = tensor_projector(d, d);
  EXPECT_EQ(projector_rank(t), 1);
  EXPECT_EQ(t.rows[0][0], PAdic::from_int(1, 5, 6));
}

TEST(Tensor, RandomPairIdempotentAndCommutes) {
  std::mt19937_64 rng(5);
  long p = 5, N = 8;
  for (int trial = 0; trial < 4; ++trial) {
    auto a = fixtures::planted_model(rng, p, 3, 1 + trial % 3, true);
    auto b = fixtures::planted_model(rng, p, 3, trial % 3, false);
    LinearModel Ua = LinearModel::from_ints(p, N, a.M), Ub = LinearModel::from_ints(p, N, b.M);
    LinearModel e = tensor_projector(ordinary_projector(Ua, N), ordinary_projector(Ub, N));
    LinearModel UU = tensor_projector(Ua, Ub);
    EXPECT_TRUE(models_equal(model_mul(e, e), e, N));
    EXPECT_TRUE(models_equal(model_mul(e, UU), model_mul(UU, e), N));
    EXPECT_EQ(projector_rank(e), a.units * b.units);
  }
}

TEST(Up, SingleTerm) {
  long p = 5;
  QExp2 F;
  F.bound1 = F.bound2 = 10;
  F.coeffs[{s1(5), s1(10)}] = PAdic::from_int(7, p, 4);
  QExp2 G = up_on_qexp(F, Side::Both, p);
  EXPECT_EQ(G.bound1, 2);
  ASSERT_EQ(G.coeffs.size(), 1u);
  EXPECT_EQ(G.coeffs.begin()->first, std::make_pair(s1(1), s1(2)));
}

TEST(Up, LeftKillsUnscaled) {
  long p = 5;
  QExp2 F;
  F.bound1 = F.bound2 = 12;
  for (long a : {1L, 2L, 3L, 4L, 6L, 7L, 11L}) F.coeffs[{s1(a), s1(1)}] = PAdic::from_int(a, p, 4);
  EXPECT_TRUE(up_on_qexp(F, Side::Left, p).coeffs.empty());
}

TEST(Up, IteratedIsIndexMapBySquare) {
  long p = 3;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> val(0, 80);
  QExp2 F;
  F.bound1 = F.bound2 = 20;
  for (long a = 0; a <= 20; ++a)
    for (long c = 0; c <= 20; ++c) F.coeffs[{s1(a), s1(c)}] = PAdic::from_int(val(rng), p, 4);
  QExp2 G = up_on_qexp(up_on_qexp(F, Side::Both, p), Side::Both, p);
  EXPECT_EQ(G.bound1, 2);
  EXPECT_EQ(G.coeffs.size(), 9u);
  for (auto& [key, v] : G.coeffs) {
    IntMatrix a = key.first, c = key.second;
    a[0][0] *= 9;
    c[0][0] *= 9;
    EXPECT_EQ(v, F.coeffs.at({a, c}));
  }
}

TEST(Twist, UnitEigenvectorAndKernel) {
  long p = 5, N = 8;
  LinearModel U = model(p, N, {{2, 0}, {0, 5}});
  auto one = PAdic::from_int(1, p, N), zero = PAdic::zero(p, N);
  auto r = twist_stability_check(U, {one, zero}, {1, 2, 3}, N);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.images[0][0], one);
  auto k = twist_stability_check(U, {zero, one}, {2, 3}, N);
  EXPECT_TRUE(k.holds);
  EXPECT_TRUE(k.images[0][1].is_zero());
}

TEST(Twist, SyntheticFourDimensional) {
  std::mt19937_64 rng(21);
  long p = 5, N = 8;
  auto pl = fixtures::planted_model(rng, p, 4, 2, true);
  LinearModel U = LinearModel::from_ints(p, N, pl.M);
  std::vector<PAdic> F;
  for (long i = 0; i < 4; ++i) F.push_back(PAdic::from_int(3 * i + 1, p, N));
  auto r = twist_stability_check(U, F, {2, 3}, N);
  EXPECT_TRUE(r.holds);
  // both equal eF
  LinearModel e = ordinary_projector(U, N);
  for (size_t i = 0; i < 4; ++i) {
    PAdic s = PAdic::zero(p, N);
    for (size_t j = 0; j < 4; ++j) s += e.rows[i][j] * F[j];
    EXPECT_EQ(r.images[0][i], s);
  }
}
