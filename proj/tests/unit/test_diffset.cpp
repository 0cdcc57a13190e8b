// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include <gtest/gtest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "affwave/diffset.hpp"
#include "affwave/error.hpp"
#include "oracles.hpp"

using namespace affwave;
using namespace affwave::diffset;

namespace {

const DifferenceSet kPublished{133, 12, 1, {0, 1, 8, 14, 30, 45, 47, 56, 66, 106, 109, 129}};

}  // namespace

TEST(Diffset, SingerParameters) {
  const SingerParams p{11, 2};
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.N(), 133u);
  EXPECT_EQ(p.C1(), 12u);
  EXPECT_EQ(p.C2(), 1u);
  EXPECT_THROW((SingerParams{4, 2}).validate(), InvalidArgument);
  EXPECT_THROW((SingerParams{3, 0}).validate(), InvalidArgument);
  EXPECT_THROW((SingerParams{2, 40}).validate(), InvalidArgument);
}

TEST(Diffset, SingerQ3D2) {
  const DifferenceSet ds = singer_construct({3, 2});
  EXPECT_EQ(ds.N, 13u);
  EXPECT_EQ(ds.k, 4u);
  EXPECT_EQ(ds.lambda, 1u);
  EXPECT_TRUE(verify(ds).valid);
  EXPECT_TRUE(oracle::is_difference_set(ds.elements, 13, 1));
  const DifferenceSet ref{13, 4, 1, {0, 1, 3, 9}};
  EXPECT_TRUE(find_equivalence(ds, ref).has_value());
}

TEST(Diffset, SingerQ11D2) {
  const DifferenceSet ds = singer_construct({11, 2});
  EXPECT_EQ(ds.N, 133u);
  EXPECT_EQ(ds.elements.size(), 12u);
  EXPECT_TRUE(verify(ds).valid);
  EXPECT_TRUE(oracle::is_difference_set(ds.elements, 133, 1));
  // Regression value of the deterministic construction.
  EXPECT_EQ(ds.elements, (std::vector<std::uint64_t>{1, 11, 18, 29, 45, 50, 51, 53, 65, 96, 121, 125}));
}

TEST(Diffset, PublishedSetIsEquivalentToOurs) {
  const DifferenceSet ours = singer_construct({11, 2});
  const auto eq = find_equivalence(ours, kPublished);
  ASSERT_TRUE(eq.has_value());
  EXPECT_EQ(affine_image(ours, eq->multiplier, eq->shift), kPublished);
  // Smallest multiplier first; 44 and 85 with the same shift also work.
  EXPECT_EQ(eq->multiplier, 4u);
  EXPECT_EQ(eq->shift, 62u);
  EXPECT_EQ(affine_image(ours, 44, 62), kPublished);
  EXPECT_EQ(affine_image(ours, 85, 62), kPublished);
}

TEST(Diffset, DegenerateQ2D1) {
  const DifferenceSet ds = singer_construct({2, 1});
  EXPECT_EQ(ds.N, 3u);
  EXPECT_EQ(ds.k, 1u);
  EXPECT_EQ(ds.lambda, 0u);
  EXPECT_TRUE(verify(ds).valid);
}

TEST(Diffset, VerifyExamples) {
  EXPECT_TRUE(verify(kPublished).valid);
  const VerifyResult bad = verify({7, 3, 1, {0, 1, 2}});
  EXPECT_FALSE(bad.valid);
  ASSERT_EQ(bad.histogram.size(), 7u);
  EXPECT_EQ(bad.histogram[3], 0u);
  EXPECT_TRUE(verify({7, 3, 1, {0, 1, 3}}).valid);
}

TEST(Diffset, VerifyHistogramMatchesOracle) {
  const DifferenceSet ds{31, 6, 1, {1, 5, 11, 24, 25, 27}};
  const VerifyResult r = verify(ds);
  const auto h = oracle::difference_counts(ds.elements, 31);
  for (std::uint64_t x = 1; x < 31; ++x) {
    const auto it = h.find(x);
    EXPECT_EQ(r.histogram[x], it == h.end() ? 0u : it->second);
  }
  EXPECT_EQ(r.valid, oracle::is_difference_set(ds.elements, 31, 1));
}

TEST(Diffset, VerifyRejectsMalformedWithoutThrowing) {
  for (const DifferenceSet& ds : {DifferenceSet{7, 3, 1, {0, 3, 1}}, DifferenceSet{7, 3, 1, {0, 1, 7}},
                                  DifferenceSet{7, 3, 1, {0, 1, 1}}, DifferenceSet{7, 4, 1, {0, 1, 3}},
                                  DifferenceSet{1, 1, 0, {0}}}) {
    VerifyResult r;
    EXPECT_NO_THROW(r = verify(ds));
    EXPECT_FALSE(r.valid);
    EXPECT_FALSE(r.reason.empty());
  }
}

TEST(Diffset, WelchBound) {
  EXPECT_NEAR(welch_bound(SingerParams{11, 2}), std::sqrt(121.0 / 1584.0), 1e-12);
  EXPECT_NEAR(welch_bound(SingerParams{3, 2}), 0.4330127, 1e-7);
  EXPECT_EQ(welch_bound(10, 10), 0.0);
  EXPECT_THROW(welch_bound(10, 0), InvalidArgument);
}

class SingerFamily : public ::testing::TestWithParam<std::pair<std::uint32_t, std::uint32_t>> {};

TEST_P(SingerFamily, ConstructionVerifiesAndTranslates) {
  const auto [q, d] = GetParam();
  const SingerParams p{q, d};
  const DifferenceSet ds = singer_construct(p);
  EXPECT_EQ(ds.N, p.N());
  EXPECT_EQ(ds.k, p.C1());
  EXPECT_EQ(ds.lambda, p.C2());
  EXPECT_EQ(ds.elements.size(), ds.k);
  EXPECT_TRUE(verify(ds).valid);
  EXPECT_TRUE(oracle::is_difference_set(ds.elements, ds.N, ds.lambda));
  EXPECT_EQ(ds.k * (ds.k - 1), ds.lambda * (ds.N - 1));
  for (std::uint64_t s : {std::uint64_t{1}, ds.N - 1}) {
    const DifferenceSet t = translate(ds, s);
    EXPECT_TRUE(verify(t).valid);
    EXPECT_TRUE(std::is_sorted(t.elements.begin(), t.elements.end()));
  }
}

INSTANTIATE_TEST_SUITE_P(Params, SingerFamily,
                         ::testing::Values(std::pair{2u, 2u}, std::pair{3u, 2u}, std::pair{5u, 2u},
                                           std::pair{7u, 2u}, std::pair{11u, 2u}, std::pair{13u, 2u},
                                           std::pair{2u, 3u}, std::pair{3u, 3u}, std::pair{2u, 4u},
                                           std::pair{2u, 5u}));

TEST(Diffset, AffineImageRequiresUnitMultiplier) {
  EXPECT_THROW(affine_image(kPublished, 7, 0), InvalidArgument);  // 133 = 7 * 19
  EXPECT_TRUE(verify(affine_image(kPublished, 2, 5)).valid);
}

TEST(Diffset, NonEquivalentSetsReportNullopt) {
  EXPECT_FALSE(find_equivalence(DifferenceSet{7, 3, 1, {0, 1, 3}}, DifferenceSet{7, 3, 1, {0, 1, 2}}));
}

TEST(Diffset, JsonRoundTrip) {
  const nlohmann::json j = kPublished;
  EXPECT_EQ(j.at("lambda"), 1);
  EXPECT_EQ(j.get<DifferenceSet>(), kPublished);
  EXPECT_EQ(nlohmann::json::parse(j.dump()).get<DifferenceSet>(), kPublished);
}

TEST(Diffset, JsonIsStrict) {
  auto parse = [](const char* s) { return nlohmann::json::parse(s).get<DifferenceSet>(); };
  EXPECT_THROW(parse(R"({"N":7,"k":3,"lambda":1,"elements":[0,1,3],"x":1})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"N":7,"k":3,"elements":[0,1,3]})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"N":7.5,"k":3,"lambda":1,"elements":[0,1,3]})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"N":7,"k":3,"lambda":1,"elements":[0,-1,3]})"), InvalidArgument);
  EXPECT_THROW(parse(R"([1,2,3])"), InvalidArgument);
}
