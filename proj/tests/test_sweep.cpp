#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "tdasweep/sweep.hpp"

using namespace tdasweep;

namespace {

const BinaryMask& toy_mask() {
  static const BinaryMask m = BinaryMask::from_rows({"10011101", "10111100", "10101101"});
  return m;
}

std::vector<std::uint8_t> bits(const char* s) {
  std::vector<std::uint8_t> v;
  for (; *s; ++s) v.push_back(static_cast<std::uint8_t>(*s - '0'));
  return v;
}

}  // namespace

TEST(Binarize, AllZeroImageGivesEmptyMask) {
  GrayImage img(4, 5);
  const auto m = binarize(img, 0, 100);
  for (auto b : m.bits()) EXPECT_EQ(b, 0);
}

TEST(Binarize, AllMaxImageGivesFullMask) {
  GrayImage img(4, 5, 1, 255);
  const auto m = binarize(img, 0, 100);
  for (auto b : m.bits()) EXPECT_EQ(b, 1);
}

TEST(Binarize, PixelEqualToThresholdSurvives) {
  GrayImage img(1, 3);
  img(0, 0) = 99;
  img(0, 1) = 100;
  img(0, 2) = 101;
  const auto m = binarize(img, 0, 100);
  EXPECT_EQ(m(0, 0), 0);
  EXPECT_EQ(m(0, 1), 1);
  EXPECT_EQ(m(0, 2), 1);
  EXPECT_EQ(m, oracle::threshold(img, 0, 100));
}

TEST(Binarize, BoundaryThresholdsAgreeWithOracle) {
  GrayImage img(16, 16);
  for (std::size_t i = 0; i < img.size(); ++i) img.pixels()[i] = static_cast<Pixel>(i);
  for (int t : {1, 2, 127, 128, 254, 255}) EXPECT_EQ(binarize(img, 0, t), oracle::threshold(img, 0, t)) << t;
}

TEST(Binarize, SelectsChannel) {
  GrayImage img(1, 2, 3);
  img(0, 0, 1) = 200;
  img(0, 1, 2) = 200;
  EXPECT_EQ(binarize(img, 0, 50), BinaryMask(1, 2, {0, 0}));
  EXPECT_EQ(binarize(img, 1, 50), BinaryMask(1, 2, {1, 0}));
  EXPECT_EQ(binarize(img, 2, 50), BinaryMask(1, 2, {0, 1}));
}

TEST(Binarize, RejectsBadArguments) {
  GrayImage img(2, 2, 3);
  EXPECT_THROW(binarize(img, 3, 100), std::invalid_argument);
  EXPECT_THROW(binarize(img, 0, 0), std::invalid_argument);
  EXPECT_THROW(binarize(img, 0, 256), std::invalid_argument);
  EXPECT_NO_THROW(binarize(img, 2, 255));
}

TEST(CountRuns, ToyRows) {
  EXPECT_EQ(count_runs(bits("10011101")), 3);
  EXPECT_EQ(count_runs(bits("10111100")), 2);
  EXPECT_EQ(count_runs(bits("10101101")), 4);
}

TEST(CountRuns, DegenerateVectors) {
  EXPECT_EQ(count_runs({}), 0);
  EXPECT_EQ(count_runs(bits("0000")), 0);
  EXPECT_EQ(count_runs(bits("111")), 1);
  EXPECT_EQ(count_runs(bits("1")), 1);
  EXPECT_EQ(count_runs(bits("0101010")), 3);
}

TEST(Sweep, ToyMaskRowCounts) {
  EXPECT_EQ(sweep(toy_mask()).rows, (std::vector<Count>{3, 2, 4}));
}

TEST(Sweep, ToyMaskAllFamilies) {
  // frozen from the brute-force line oracle (and an independent script)
  const auto dc = sweep(toy_mask());
  EXPECT_EQ(dc.cols, (std::vector<Count>{1, 0, 1, 1, 1, 1, 0, 2}));
  EXPECT_EQ(dc.diag_nwse, (std::vector<Count>{1, 1, 2, 1, 1, 1, 1, 2, 0, 1}));
  EXPECT_EQ(dc.diag_nesw, (std::vector<Count>{1, 1, 1, 1, 1, 1, 1, 2, 0, 1}));
  EXPECT_EQ(dc, oracle::sweep(toy_mask()));
}

TEST(Sweep, SinglePixel) {
  const auto dc = sweep(BinaryMask(1, 1, {1}));
  EXPECT_EQ(dc.rows, std::vector<Count>{1});
  EXPECT_EQ(dc.cols, std::vector<Count>{1});
  EXPECT_EQ(dc.diag_nwse, std::vector<Count>{1});
  EXPECT_EQ(dc.diag_nesw, std::vector<Count>{1});
  EXPECT_EQ(sweep(BinaryMask(1, 1, {0})).rows, std::vector<Count>{0});
}

TEST(Sweep, DegenerateStrips) {
  const auto row = BinaryMask::from_rows({"1101"});
  const auto dc = sweep(row);
  EXPECT_EQ(dc.rows, std::vector<Count>{2});
  EXPECT_EQ(dc.cols, (std::vector<Count>{1, 1, 0, 1}));
  EXPECT_EQ(dc.diag_nwse, (std::vector<Count>{1, 1, 0, 1}));
  EXPECT_EQ(dc.diag_nesw, (std::vector<Count>{1, 1, 0, 1}));

  const auto col = BinaryMask::from_rows({"1", "1", "0", "1"});
  EXPECT_EQ(sweep(col).cols, std::vector<Count>{2});
  EXPECT_EQ(sweep(col), oracle::sweep(col));
}

TEST(Sweep, CheckerboardDiagonalsAreSolid) {
  const auto m = BinaryMask::from_rows({"1010", "0101", "1010", "0101"});
  const auto dc = sweep(m);
  EXPECT_EQ(dc.rows, (std::vector<Count>{2, 2, 2, 2}));
  // every diagonal of a checkerboard is constant
  EXPECT_EQ(dc.diag_nwse, (std::vector<Count>{0, 1, 0, 1, 0, 1, 0}));
  EXPECT_EQ(dc.diag_nesw, (std::vector<Count>{1, 0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(dc, oracle::sweep(m));
}

TEST(Coalesce, Examples) {
  EXPECT_EQ(coalesce(std::vector<Count>{3, 2, 4}, 2), (std::vector<Count>{5, 4}));
  EXPECT_EQ(coalesce(std::vector<Count>{1, 1, 1, 1, 1, 1}, 3), (std::vector<Count>{3, 3}));
  EXPECT_EQ(coalesce(std::vector<Count>{7, 0, 2}, 1), (std::vector<Count>{7, 0, 2}));
  EXPECT_EQ(coalesce(std::vector<Count>{7, 0, 2}, 10), (std::vector<Count>{9}));
  EXPECT_TRUE(coalesce(std::vector<Count>{}, 3).empty());
}

TEST(Coalesce, RejectsZeroWidth) {
  EXPECT_THROW(coalesce(std::vector<Count>{1}, 0), std::invalid_argument);
}

TEST(Extract, FeatureCountsMatchPublishedConfigs) {
  SweepConfig one{{100}, 2, {}};
  SweepConfig two{{100, 175}, 2, {}};
  EXPECT_EQ(extract(GrayImage(28, 28), one).size(), 84u);
  EXPECT_EQ(extract(GrayImage(28, 28), two).size(), 168u);
  SweepConfig color{{25, 100}, 1, {}};
  EXPECT_EQ(extract(GrayImage(32, 32, 3), color).size(), 1140u);
}

TEST(Extract, HistologyShapeFollowsFormula) {
  // 64x64 grayscale at w=1 contributes 64+64+127+127 = 382 features per threshold
  EXPECT_EQ(feature_length(64, 64, 1, 1, 1), 382u);
  EXPECT_EQ(feature_length(64, 64, 1, 2, 1), 764u);
}

TEST(Extract, ZeroImageGivesZeroFeatures) {
  SweepConfig cfg{{1, 50, 255}, 2, {}};
  const auto fv = extract(GrayImage(5, 5), cfg);
  EXPECT_EQ(fv.size(), feature_length(5, 5, 1, 3, 2));
  for (auto v : fv.values) EXPECT_EQ(v, 0);
}

TEST(Extract, ToyImageLayout) {
  GrayImage img(3, 8);
  const auto& m = toy_mask();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 8; ++j) img(i, j) = m(i, j) ? 255 : 0;

  const auto w1 = extract(img, SweepConfig{{100}, 1, {}});
  EXPECT_EQ(std::vector<Count>(w1.values.begin(), w1.values.begin() + 3), (std::vector<Count>{3, 2, 4}));

  const auto w2 = extract(img, SweepConfig{{100}, 2, {}});
  EXPECT_EQ(w2.values, (std::vector<Count>{5, 4, 1, 2, 2, 2, 2, 3, 2, 3, 1, 2, 2, 2, 3, 1}));
  EXPECT_EQ(w2.layout.offset(0, 0, Direction::Cols), 2u);
  EXPECT_EQ(w2.layout.offset(0, 0, Direction::DiagNwse), 6u);
  EXPECT_EQ(w2.layout.offset(0, 0, Direction::DiagNesw), 11u);
}

TEST(Extract, BlockOrderIsThresholdThenChannel) {
  GrayImage img(2, 2, 2);
  img(0, 0, 1) = 200;  // only channel 1, only above the low threshold
  const auto fv = extract(img, SweepConfig{{100, 250}, 1, {}});
  const auto& L = fv.layout;
  EXPECT_EQ(L.group_size(), 2u + 2u + 3u + 3u);
  EXPECT_EQ(fv.values[L.offset(0, 0, Direction::Rows)], 0);
  EXPECT_EQ(fv.values[L.offset(0, 1, Direction::Rows)], 1);
  EXPECT_EQ(fv.values[L.offset(1, 1, Direction::Rows)], 0);
  EXPECT_EQ(fv.values, oracle::extract(img, {100, 250}, 1));
}

TEST(Extract, RejectsInvalidConfig) {
  GrayImage img(4, 4);
  EXPECT_THROW(extract(img, SweepConfig{{}, 1, {}}), std::invalid_argument);
  EXPECT_THROW(extract(img, SweepConfig{{175, 100}, 1, {}}), std::invalid_argument);
  EXPECT_THROW(extract(img, SweepConfig{{100, 100}, 1, {}}), std::invalid_argument);
  EXPECT_THROW(extract(img, SweepConfig{{0}, 1, {}}), std::invalid_argument);
  EXPECT_THROW(extract(img, SweepConfig{{256}, 1, {}}), std::invalid_argument);
  EXPECT_THROW(extract(img, SweepConfig{{100}, 0, {}}), std::invalid_argument);
}

TEST(Config, ParseThresholds) {
  EXPECT_EQ(parse_thresholds("100"), std::vector<int>{100});
  EXPECT_EQ(parse_thresholds("25,100"), (std::vector<int>{25, 100}));
  EXPECT_THROW(parse_thresholds(""), std::invalid_argument);
  EXPECT_THROW(parse_thresholds("100,"), std::invalid_argument);
  EXPECT_THROW(parse_thresholds("1x"), std::invalid_argument);
}

TEST(Image, RejectsWrongPixelCount) {
  EXPECT_THROW(GrayImage(2, 2, 1, std::vector<Pixel>(3)), std::invalid_argument);
  EXPECT_THROW(GrayImage(0, 2), std::invalid_argument);
  EXPECT_THROW(BinaryMask(1, 2, {0, 2}), std::invalid_argument);
}
