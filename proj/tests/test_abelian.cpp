#include "support.hpp"

#include <gtest/gtest.h>

using namespace equichain;

namespace {

std::vector<std::vector<Int>> rows_of(const IntMatrix& m) {
  std::vector<std::vector<Int>> r;
  for (std::size_t i = 0; i < m.rows(); ++i) r.push_back(m.row(i));
  return r;
}

bool divisibility_chain(const std::vector<Int>& pivots, std::size_t rank) {
  for (std::size_t i = 0; i + 1 < rank; ++i)
    if (!(pivots[i + 1] % pivots[i]).is_zero()) return false;
  for (std::size_t i = 0; i < rank; ++i)
    if (pivots[i] <= 0) return false;
  return true;
}

}  // namespace

TEST(SmithNormalForm, TwoByTwoExample) {
  const IntMatrix a{{2, 4}, {6, 8}};
  const auto s = smith_normal_form(a);
  EXPECT_EQ(s.D, (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ(s.U * a * s.V, s.D);
  // Oracle: d1 = gcd of entries, d1 d2 = |det|.
  EXPECT_EQ(oracle::invariant_factors(a), (std::vector<Int>{2, 4}));
}

TEST(SmithNormalForm, IdentityAndZero) {
  const IntMatrix id = IntMatrix::identity(4);
  EXPECT_EQ(smith_normal_form(id).D, id);
  const IntMatrix z(3, 5);
  const auto s = smith_normal_form(z);
  EXPECT_TRUE(s.D.is_zero());
  EXPECT_EQ(s.rank, 0u);
}

TEST(SmithNormalForm, RandomMatricesAgreeWithDeterminantalDivisors) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix a = oracle::random_matrix(rng, r, c);
    const auto s = smith_normal_form(a);
    ASSERT_EQ(s.U * a * s.V, s.D);
    const auto du = oracle::det(rows_of(s.U));
    const auto dv = oracle::det(rows_of(s.V));
    ASSERT_TRUE(du == 1 || du == -1);
    ASSERT_TRUE(dv == 1 || dv == -1);
    ASSERT_TRUE(divisibility_chain(s.pivots, s.rank));
    const auto f = oracle::invariant_factors(a);
    ASSERT_EQ(s.rank, f.size());
    for (std::size_t i = 0; i < f.size(); ++i) ASSERT_EQ(s.pivots[i], f[i]);
  }
}

TEST(SmithNormalForm, LargeEntriesFallBackToBigIntegers) {
  const Int big = Int(1) << 62;
  const IntMatrix a{{big, big + 1}, {big - 1, big}};
  const auto s = smith_normal_form(a);
  EXPECT_EQ(s.U * a * s.V, s.D);
  // det = big^2 - (big^2 - 1) = 1, so the form is the identity.
  EXPECT_EQ(s.D, IntMatrix::identity(2));
  const IntMatrix b{{big * 3, 0}, {0, big * 6}};
  EXPECT_EQ(smith_normal_form(b).pivots, (std::vector<Int>{big * 3, big * 6}));
}

TEST(Cokernel, SpecExamples) {
  EXPECT_EQ(cokernel(IntMatrix{{2}, {2}}), (AbelianGroup{1, {2}}));
  EXPECT_EQ(cokernel(IntMatrix(2, 0)), AbelianGroup::free(2));
  EXPECT_EQ(cokernel(IntMatrix{{1, 0}, {0, 3}}), AbelianGroup::cyclic(3));
  EXPECT_EQ(cokernel(IntMatrix{{2}, {2}}).to_string(), "Z + Z/2");
}

TEST(Cokernel, InvariantUnderUnimodularConjugation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = rng() % 4;
    const IntMatrix a = oracle::random_matrix(rng, r, c);
    const IntMatrix b = oracle::random_unimodular(rng, r) * a * oracle::random_unimodular(rng, c);
    ASSERT_EQ(cokernel(a), cokernel(b));
    ASSERT_EQ(cokernel(a), oracle::cokernel(a));
  }
}

TEST(Notation, CanonicalRendering) {
  EXPECT_EQ((AbelianGroup{2, {2, 4}}).to_string(), "Z^2 + Z/2 + Z/4");
  EXPECT_EQ(AbelianGroup{}.to_string(), "0");
  EXPECT_EQ(AbelianGroup::free(1).to_string(), "Z");
  EXPECT_EQ(cokernel(IntMatrix{{4, 0}, {0, 6}}).to_string(), "Z/2 + Z/12");
}

TEST(KernelBasis, SpecExamples) {
  const IntMatrix k = kernel_basis(IntMatrix{{1, 1}});
  ASSERT_EQ(k.cols(), 1u);
  const Int a = k(0, 0), b = k(1, 0);
  EXPECT_TRUE((a == 1 && b == -1) || (a == -1 && b == 1));
  const IntMatrix k2 = kernel_basis(IntMatrix{{2}}, 2);
  ASSERT_EQ(k2.cols(), 1u);
  EXPECT_EQ(mod_reduce(k2(0, 0), 2), 1);
  EXPECT_EQ(kernel_basis(IntMatrix{{2}}).cols(), 0u);
}

TEST(KernelBasis, RankNullityOverPrimeFields) {
  std::mt19937_64 rng(13);
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t r = rng() % 5, c = 1 + rng() % 5;
      const IntMatrix a = oracle::random_matrix(rng, r, c, -6, 6);
      const IntMatrix k = kernel_basis(a, p);
      const std::size_t rk = rank(a, p);
      ASSERT_EQ(rk, oracle::rank_mod(a, p));
      ASSERT_EQ(k.cols() + rk, c);
      ASSERT_TRUE(reduce_mod(a * k, p).is_zero());
      ASSERT_EQ(oracle::rank_mod(k, p), k.cols());
    }
  }
}

TEST(KernelBasis, IntegerKernelIsSaturated) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 5;
    const IntMatrix a = oracle::random_matrix(rng, r, c);
    const IntMatrix k = kernel_basis(a);
    ASSERT_TRUE((a * k).is_zero());
    ASSERT_EQ(k.cols() + oracle::rank_q(a), c);
    // Saturated: Z^c / span(k) is torsion-free.
    ASSERT_TRUE(cokernel(k).torsion.empty());
  }
}

TEST(Rank, RationalRankAgreesWithSmithRank) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix a = oracle::random_matrix(rng, rng() % 6, rng() % 6, -2, 2);
    ASSERT_EQ(rank(a), rational_rank(a));
    ASSERT_EQ(rank(a), oracle::rank_q(a));
  }
}

TEST(Solve, FindsSolutionsOrReportsNone) {
  const IntMatrix a{{2, 0}, {0, 3}};
  auto x = solve(a, IntVector{4, 9});
  ASSERT_TRUE(x);
  EXPECT_EQ(a * *x, (IntVector{4, 9}));
  EXPECT_FALSE(solve(a, IntVector{1, 0}));
  auto y = solve(a, IntVector{1, 0}, 5);
  ASSERT_TRUE(y);
  EXPECT_EQ(reduce_mod(a * *y, 5), (IntVector{1, 0}));
}

TEST(Subquotient, SpecExamples) {
  EXPECT_EQ(subquotient(IntMatrix::identity(2), IntMatrix{{2}, {2}}).group, (AbelianGroup{1, {2}}));
  const IntMatrix c{{1, 0}, {1, 1}, {0, 2}};
  EXPECT_TRUE(subquotient(c, c).group.is_trivial());
  EXPECT_EQ(subquotient(IntMatrix{{1}, {0}}, IntMatrix(2, 0)).group, AbelianGroup::free(1));
}

TEST(Subquotient, ProjectionRespectsRelations) {
  const auto q = subquotient(IntMatrix::identity(2), IntMatrix{{2}, {2}});
  const auto b = q.project(IntVector{2, 2});
  ASSERT_TRUE(b);
  for (const auto& v : *b) EXPECT_EQ(v, 0);
  const auto e1 = q.project(IntVector{1, 0});
  const auto e2 = q.project(IntVector{0, 1});
  ASSERT_TRUE(e1 && e2);
  // [e1] + [e2] has order 2.
  IntVector diff(e1->size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = (*e1)[i] + (*e2)[i];
  EXPECT_NE(q.normalize(diff), IntVector(diff.size(), Int(0)));
  IntVector twice(diff.size());
  for (std::size_t i = 0; i < diff.size(); ++i) twice[i] = 2 * diff[i];
  EXPECT_EQ(q.normalize(twice), IntVector(diff.size(), Int(0)));
  // Representatives project to unit coordinates.
  for (std::size_t j = 0; j < q.generator_count(); ++j) {
    auto c = q.project(q.representatives.column(j));
    ASSERT_TRUE(c);
    for (std::size_t i = 0; i < c->size(); ++i) EXPECT_EQ((*c)[i], i == j ? 1 : 0);
  }
}

TEST(Subquotient, RejectsBoundariesOutsideCycles) {
  try {
    subquotient(IntMatrix{{1}, {0}}, IntMatrix{{0}, {1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotASubgroup);
  }
}

TEST(Subquotient, CompositeModulusRejected) {
  try {
    subquotient(IntMatrix::identity(1), IntMatrix(1, 0), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CompositeModulus);
  }
}

TEST(HomOnPresentations, SpecExamples) {
  const auto z = Presentation::free(1);
  const auto doubling = hom_on_presentations({z, z, IntMatrix{{2}}});
  EXPECT_TRUE(doubling.kernel.is_trivial());
  EXPECT_EQ(doubling.cokernel, AbelianGroup::cyclic(2));

  const auto z2 = Presentation::of(AbelianGroup::cyclic(2));
  const auto to_zero = hom_on_presentations({z2, Presentation::free(0), IntMatrix(0, 1)});
  EXPECT_EQ(to_zero.kernel, AbelianGroup::cyclic(2));
  ASSERT_TRUE(to_zero.kernel_exponent);
  EXPECT_EQ(*to_zero.kernel_exponent, 2);

  // Z + Z/2 -> Z projecting onto the free factor; generators are torsion first.
  const auto zz2 = Presentation::of(AbelianGroup{1, {2}});
  const IntMatrix proj{{0, 1}};
  const auto h = hom_on_presentations({zz2, z, proj});
  EXPECT_EQ(h.kernel, AbelianGroup::cyclic(2));
  EXPECT_TRUE(h.surjective());
}

TEST(HomOnPresentations, IllDefinedMapRejected) {
  const auto z2 = Presentation::of(AbelianGroup::cyclic(2));
  const auto z = Presentation::free(1);
  try {
    hom_on_presentations({z2, z, IntMatrix{{1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllDefined);
  }
}

TEST(HomOnPresentations, ImageKernelCokernelOrdersMultiply) {
  // For a map between finite groups, |ker| |im| = |domain| and |im| |coker| = |codomain|.
  std::mt19937_64 rng(23);
  auto order = [](const AbelianGroup& g) {
    Int o = 1;
    for (const auto& t : g.torsion) o *= t;
    return o;
  };
  for (int trial = 0; trial < 60; ++trial) {
    const AbelianGroup a{0, {2, 6}}, b{0, {3, 12}};
    const auto pa = Presentation::of(a), pb = Presentation::of(b);
    IntMatrix m(2, 2);
    // Z/2 + Z/6 -> Z/3 + Z/12: images of generators must have compatible orders.
    m(0, 0) = 0;
    m(1, 0) = 6 * (rng() % 2);
    m(0, 1) = rng() % 3;
    m(1, 1) = 2 * (rng() % 6);
    const auto h = hom_on_presentations({pa, pb, m});
    ASSERT_EQ(order(h.kernel) * order(h.image), order(a));
    ASSERT_EQ(order(h.image) * order(h.cokernel), order(b));
  }
}
