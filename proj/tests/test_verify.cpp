#include <gtest/gtest.h>

#include "symfem/errors.hpp"
#include "symfem/verify_suite.hpp"

namespace symfem {
namespace {

const Witness* find(const CheckReport& r, const std::string& prefix) {
  for (const auto& w : r.witnesses)
    if (w.what.rfind(prefix, 0) == 0) return &w;
  return nullptr;
}

TEST(ChuVandermonde, SmallCase) {
  const CheckReport r = check_chu_vandermonde(2, 2);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.witnesses.size(), 2u);
  EXPECT_EQ(r.witnesses[0].computed, 6.0);
  EXPECT_EQ(r.witnesses[1].computed, 3.0);
}

TEST(ChuVandermonde, Grid) {
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= 6; ++k) EXPECT_TRUE(check_chu_vandermonde(n, k).pass) << n << " " << k;
  EXPECT_THROW(check_chu_vandermonde(0, 2), InvalidArgument);
}

TEST(DimensionFormulas, PublishedValues) {
  const CheckReport r2 = check_dimension_formulas(2, 2);
  EXPECT_TRUE(r2.pass);
  EXPECT_EQ(find(r2, "dim P_2* (n=2)")->computed, 24.0);
  EXPECT_EQ(find(r2, "simplified (n=2)")->computed, 21.0);
  EXPECT_EQ(find(r2, "dim M_k (constructed)")->computed, 0.0);
  const CheckReport r3 = check_dimension_formulas(3, 2);
  EXPECT_TRUE(r3.pass);
  EXPECT_EQ(find(r3, "dim P_2* (n=3)")->computed, 162.0);
  EXPECT_EQ(find(r3, "simplified (n=3)")->computed, 156.0);
  EXPECT_EQ(find(r3, "dim M_k (constructed)")->computed, 6.0);
}

TEST(DimensionFormulas, FormulaOnlyUpToFive) {
  for (int n = 4; n <= 5; ++n)
    for (int k = 1; k <= 4; ++k) EXPECT_TRUE(check_dimension_formulas(n, k).pass) << n << " " << k;
}

TEST(BubbleLemmas, Dimensions) {
  const CheckReport a = check_bubble_lemmas(2, 2);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(find(a, "dim zero-trace subspace")->computed, 3.0);
  const CheckReport b = check_bubble_lemmas(3, 4);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(find(b, "dim zero-trace subspace")->computed, 60.0);
  // n C(n+k-1, n) - n(n+1)/2 = 3 * 20 - 6
  EXPECT_EQ(find(b, "rank div(bubbles)")->computed, 54.0);
}

TEST(Unisolvence, ReferenceAndRandomCells) {
  for (Family f : {Family::hz2plus, Family::aw21, Family::first1}) {
    const CheckReport r = check_unisolvence(f, 10);
    EXPECT_TRUE(r.pass) << to_string(f);
  }
  const CheckReport hz = check_unisolvence(Family::hz2plus, 1);
  EXPECT_EQ(find(hz, "rank of the 15 boundary DOFs")->computed, 15.0);
  EXPECT_EQ(find(hz, "rank of the normal traces")->computed, 15.0);
}

TEST(Infsup, PositiveAndStable) {
  const std::vector<double> b = infsup_constants(3, Family::hz2plus);
  ASSERT_EQ(b.size(), 3u);
  for (double v : b) EXPECT_GT(v, 0.0);
  EXPECT_GE(b[2], kInfsupRatio * b[1]);
  EXPECT_THROW(infsup_constants(5, Family::aw21), InvalidArgument);
}

TEST(FaceBubble, Suite) { EXPECT_TRUE(check_face_bubble_3d().pass); }

TEST(Suite, FilterAndJson) {
  const std::vector<CheckReport> r = run_verify_suite("chu_vandermonde(n=2");
  ASSERT_EQ(r.size(), 6u);
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_LT(r[i - 1].label(), r[i].label());
  const nlohmann::json j = r;
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["name"], "chu_vandermonde");
  EXPECT_EQ(j[0]["params"]["n"], 2);
  EXPECT_TRUE(j[0]["witnesses"][0].contains("computed"));
  EXPECT_TRUE(run_verify_suite("no-such-check").empty());
}

TEST(Suite, FailingWitnessKeepsBothSides) {
  CheckReport r;
  r.name = "x";
  r.add("value", 2.0, 3.0, "==", false);
  EXPECT_FALSE(r.pass);
  const nlohmann::json j = r;
  EXPECT_EQ(j["witnesses"][0]["computed"], 2.0);
  EXPECT_EQ(j["witnesses"][0]["expected"], 3.0);
}

} // namespace
} // namespace symfem
