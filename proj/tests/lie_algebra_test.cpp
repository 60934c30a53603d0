#include <gtest/gtest.h>

#include "support/random.hpp"

using namespace wtg;
using wtg::testing::Rng;

namespace {

using Vec = GradedLieAlgebra::Vector;

Vec add(const Vec& a, const Vec& b) {
  Vec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

TEST(NilpotentFrames, Heisenberg) {
  auto W = WeightSequence::from_weights({"x1", "x2"}, {1, 2});
  auto k = nilpotent_frames(W);
  EXPECT_EQ(k.dim(), 3u);
  EXPECT_EQ(k.dim_l(), 1u);
  auto d1 = *k.find(0, {0, 0});
  auto d2 = *k.find(1, {0, 0});
  auto x1d2 = *k.find(1, {1, 0});
  EXPECT_EQ(k.bracket(k.unit(d1), k.unit(x1d2)), k.unit(d2));
  EXPECT_TRUE(k.basis()[x1d2].in_l);
}

TEST(NilpotentFrames, TrivialWeightingIsAbelian) {
  auto W = WeightSequence::from_weights({"x1", "x2", "x3"}, {1, 1, 1});
  auto k = nilpotent_frames(W);
  EXPECT_EQ(k.dim(), 3u);
  EXPECT_EQ(k.dim_l(), 0u);
  for (std::size_t i = 0; i < k.dim(); ++i)
    for (std::size_t j = 0; j < k.dim(); ++j) EXPECT_TRUE(is_zero(k.structure()[i][j]));
}

TEST(NilpotentFrames, Dimensions112) {
  auto k = nilpotent_frames(WeightSequence::from_weights({"a", "b", "c"}, {1, 1, 2}));
  EXPECT_EQ(k.dim(), 5u);
  EXPECT_EQ(k.dim_l(), 2u);
}

TEST(NilpotentFrames, RandomAlgebraLaws) {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto W = wtg::testing::random_weights(rng, wtg::testing::uniform(rng, 1, 3), 0, 3);
    auto k = nilpotent_frames(W);
    std::size_t n = k.dim();
    EXPECT_EQ(k.dim() - k.dim_l(), W.size() - W.k0());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec ij = k.bracket(k.unit(i), k.unit(j));
        EXPECT_TRUE(is_zero(add(ij, k.bracket(k.unit(j), k.unit(i)))));
        for (std::size_t c = 0; c < n; ++c)
          if (ij[c] != 0) {
            EXPECT_EQ(k.basis()[c].degree, k.basis()[i].degree + k.basis()[j].degree);
            if (k.basis()[i].in_l && k.basis()[j].in_l) {
              EXPECT_TRUE(k.basis()[c].in_l);
            }
          }
        for (std::size_t l = 0; l < n; ++l) {
          Vec jac = add(add(k.bracket(k.unit(i), k.bracket(k.unit(j), k.unit(l))),
                            k.bracket(k.unit(j), k.bracket(k.unit(l), k.unit(i)))),
                        k.bracket(k.unit(l), k.bracket(k.unit(i), k.unit(j))));
          EXPECT_TRUE(is_zero(jac));
        }
      }
    // (r+1)-fold nested brackets vanish
    for (int s = 0; s < 20 && n > 0; ++s) {
      Vec acc = k.unit(wtg::testing::uniform(rng, 0, static_cast<int>(n) - 1));
      for (int depth = 0; depth < W.order(); ++depth)
        acc = k.bracket(k.unit(wtg::testing::uniform(rng, 0, static_cast<int>(n) - 1)), acc);
      EXPECT_TRUE(is_zero(acc));
    }
  }
}
