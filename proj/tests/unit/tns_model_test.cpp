#include <gtest/gtest.h>

#include <random>

#include "tnsrank/cuts.hpp"
#include "tnsrank/errors.hpp"
#include "tnsrank/tns_model.hpp"
#include "tree_enum.hpp"

using namespace tnsrank;
namespace tt = tnsrank::testing;

namespace {

const Tree& cat4() {
  static const Tree t = Tree::parse("((1,2),(3,4))");
  return t;
}

TnsModel cat4_nonconstant() {
  const auto& t = cat4();
  EdgeFunction f;
  f.set(t, EdgeId::parse("1"), 2);
  f.set(t, EdgeId::parse("2"), 3);
  f.set(t, EdgeId::parse("3"), 2);
  f.set(t, EdgeId::parse("4"), 3);
  f.set(t, EdgeId::parse("1-2"), 5);
  return TnsModel(t, f, {2, 2, 2, 2});
}

TnsModel random_model(std::mt19937_64& rng, int max_leaves) {
  std::uniform_int_distribution<int> leaves(2, max_leaves);
  std::uniform_int_distribution<std::uint64_t> fv(1, 4), dv(2, 4);
  auto t = tt::random_tree(leaves(rng), rng);
  EdgeFunction f;
  for (const auto& id : t.edge_ids()) f.set(t, id, fv(rng));
  std::vector<std::uint64_t> dims(static_cast<std::size_t>(t.leaf_count()));
  for (auto& d : dims) d = dv(rng);
  return TnsModel(t, f, dims);
}

}  // namespace

TEST(TnsModel, Validation) {
  const auto& t = cat4();
  auto f = EdgeFunction::constant(t, 2);
  EXPECT_NO_THROW(TnsModel(t, f, {2, 2, 2, 2}));
  EXPECT_THROW(TnsModel(t, f, {2, 2, 2}), InputError);
  EXPECT_THROW(TnsModel(t, f, {2, 0, 2, 2}), InputError);
  EdgeFunction partial;
  partial.set(t, EdgeId::parse("1"), 2);
  EXPECT_THROW(TnsModel(t, partial, {2, 2, 2, 2}), InputError);
  EXPECT_THROW(TnsModel::constant(t, 0), InputError);
  auto m = TnsModel::constant(t, 3);
  EXPECT_EQ(m.dims(), (std::vector<std::uint64_t>{3, 3, 3, 3}));
  EXPECT_EQ(TnsModel::constant(t, 3, 5).dim(2), 5u);
}

TEST(EdgeFunction, SetResolvesEitherSide) {
  auto tt5 = Tree::train_track(5);
  EdgeFunction f;
  f.set(tt5, EdgeId::parse("1-2-3"), 7);
  EXPECT_EQ(f.at(EdgeId::from_side(LeafSet({4, 5}), 5)), 7u);
  EXPECT_THROW(f.set(tt5, EdgeId::parse("1-3"), 2), InputError);
  EXPECT_THROW(f.at(EdgeId::parse("1")), InputError);
  EXPECT_EQ(f.constant_value(), 7u);
  f.set(tt5, EdgeId::parse("1"), 2);
  EXPECT_FALSE(f.constant_value());
  EXPECT_EQ(EdgeFunction::constant(tt5, 4).constant_value(), 4u);
}

TEST(PredictRank, Examples) {
  auto p = predict_rank(TnsModel::constant(cat4(), 2), LeafSet({1, 3}));
  EXPECT_EQ(p.value, 4);
  EXPECT_TRUE(p.exact);

  auto ex12 = Tree::parse("((((1,2),3),((4,5),6)),(((7,8),9),((10,11),12)))");
  auto q = predict_rank(TnsModel::constant(ex12, 2), LeafSet({1, 4, 8, 9, 11, 12}));
  EXPECT_EQ(q.value, 32);
  EXPECT_TRUE(q.exact);

  auto nc = predict_rank(cat4_nonconstant(), LeafSet({1, 3}));
  EXPECT_EQ(nc.value, 4);
  EXPECT_FALSE(nc.exact);
}

TEST(PredictRank, TrivialSubsetsAreExact) {
  for (const auto& m : {TnsModel::constant(cat4(), 2), cat4_nonconstant()}) {
    for (const auto& a : {LeafSet(), cat4().all_leaves()}) {
      auto p = predict_rank(m, a);
      EXPECT_EQ(p.value, 1);
      EXPECT_TRUE(p.exact);
      EXPECT_TRUE(p.witness.empty());
    }
  }
}

TEST(PredictRank, ExactOnlyWhenBondFitsDims) {
  auto small_dims = TnsModel::constant(cat4(), 3, 2);
  EXPECT_FALSE(predict_rank(small_dims, LeafSet({1, 3})).exact);
  EXPECT_TRUE(predict_rank(TnsModel::constant(cat4(), 2, 5), LeafSet({1, 3})).exact);
}

TEST(Optimalize, Examples) {
  auto constant = TnsModel::constant(cat4(), 2);
  EXPECT_EQ(optimalize(constant), constant);

  const auto& t = cat4();
  auto f = EdgeFunction::constant(t, 2);
  f.set(t, EdgeId::parse("1-2"), 100);
  auto reduced = optimalize(TnsModel(t, f, {2, 2, 2, 2}));
  EXPECT_EQ(reduced.f().at(EdgeId::parse("1-2")), 4u);
  EXPECT_EQ(reduced.f().at(EdgeId::parse("1")), 2u);

  auto two = Tree::parse("(1,2)");
  auto g = TnsModel(two, EdgeFunction::constant(two, 5), {3, 3});
  EXPECT_EQ(optimalize(g).f().at(EdgeId::parse("1")), 3u);
}

TEST(Optimalize, IdempotentAndPointwiseSmaller) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_model(rng, 9);
    auto once = optimalize(m);
    EXPECT_EQ(optimalize(once), once);
    EXPECT_EQ(once.dims(), m.dims());
    for (const auto& [edge, value] : once.f().values()) EXPECT_LE(value, m.f().at(edge));
  }
}

TEST(CompareModels, ApbAgainstTrainTrack) {
  auto m1 = TnsModel::constant(Tree::almost_perfect_binary(6), 2);
  auto pass = compare_models(m1, TnsModel::constant(Tree::train_track(6), 4, 2));
  EXPECT_TRUE(pass.necessary_condition_holds);
  EXPECT_FALSE(pass.failing_edge);
  BigNat max_required = 0;
  for (const auto& e : pass.edges) {
    EXPECT_TRUE(e.pass);
    max_required = std::max(max_required, e.required);
  }
  EXPECT_EQ(max_required, 4);

  auto fail = compare_models(m1, TnsModel::constant(Tree::train_track(6), 3, 2));
  EXPECT_FALSE(fail.necessary_condition_holds);
  ASSERT_TRUE(fail.failing_edge);
  EXPECT_EQ(fail.failing_edge->key(), "1-2-3");
  for (const auto& e : fail.edges) {
    if (e.edge == *fail.failing_edge) {
      EXPECT_EQ(e.required, 4);
      EXPECT_EQ(e.bound, 3u);
      EXPECT_FALSE(e.pass);
    }
  }
}

TEST(CompareModels, OptimalModelContainsItself) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = optimalize(random_model(rng, 9));
    auto report = compare_models(m, m);
    EXPECT_TRUE(report.necessary_condition_holds);
    EXPECT_EQ(report.edges.size(), m.tree().edge_count());
  }
}

TEST(CompareModels, Mismatches) {
  auto m4 = TnsModel::constant(cat4(), 2);
  EXPECT_THROW(compare_models(m4, TnsModel::constant(Tree::train_track(5), 2)), InputError);
  EXPECT_THROW(compare_models(m4, TnsModel::constant(cat4(), 2, 3)), InputError);
}

TEST(HardSubset, Examples) {
  auto a = construct_hard_subset(cat4());
  EXPECT_EQ(a, LeafSet({1, 3}));
  EXPECT_EQ(*min_mono_cut(cat4(), a).size, 2u);

  auto two = Tree::parse("(1,2)");
  EXPECT_EQ(construct_hard_subset(two), LeafSet({1}));
  EXPECT_EQ(*min_mono_cut(two, LeafSet({1})).size, 1u);

  auto tt6 = Tree::train_track(6);
  EXPECT_GE(brute_force_min_mono(tt6, construct_hard_subset(tt6)), 3u);
}

TEST(HardSubset, AtLeastHalfTheLeaves) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + trial % 30;
    auto t = tt::random_tree(n, rng);
    auto a = construct_hard_subset(t);
    EXPECT_GE(*min_mono_cut(t, a).size, static_cast<std::size_t>(n / 2)) << t.serialize();
  }
}
