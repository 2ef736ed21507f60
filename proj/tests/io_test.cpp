#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "pkt/io.hpp"
#include "pkt/rng.hpp"

namespace pkt {
namespace {

TEST(FeatureFile, RoundTripIsBitExact) {
  Rng rng(1);
  FeatureMatrix m(7, 3);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal() * std::exp(rng.uniform(-30, 30));
  m(0, 0) = std::numeric_limits<double>::denorm_min();
  m(0, 1) = -0.0;
  m(0, 2) = 0.1;
  std::stringstream ss;
  write_features(ss, m);
  const FeatureMatrix back = read_features(ss);
  ASSERT_EQ(back.rows(), 7);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    EXPECT_EQ(std::memcmp(&back.data()[i], &m.data()[i], sizeof(double)), 0);
  }
}

TEST(FeatureFile, Layout) {
  FeatureMatrix m(2, 2);
  m << 1, 0.5, -3, 1e-20;
  std::ostringstream out;
  write_features(out, m);
  EXPECT_EQ(out.str(), "2 2\n1 0.5\n-3 9.9999999999999995e-21\n");
}

TEST(FeatureFile, RejectsMalformedInput) {
  for (const char* text : {"", "2\n1 2\n", "1 2\n1\n", "1 2\n1 2 3\n", "2 1\n1\n",
                           "1 1\nabc\n", "1 1\nnan\n", "1 1\ninf\n", "0 3\n", "1 1\n1\n2\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_features(in), std::invalid_argument) << "input: " << text;
  }
}

TEST(FeatureFile, ToleratesBlankLinesAndCarriageReturns) {
  std::istringstream in("2 2\r\n\n1 2\r\n3 4\n\n");
  const FeatureMatrix m = read_features(in);
  EXPECT_EQ(m(1, 1), 4.0);
}

TEST(LabelFile, ParsesAndRejects) {
  std::istringstream good("0\n3\n\n1\n");
  EXPECT_EQ(read_labels(good), (std::vector<int>{0, 3, 1}));
  for (const char* text : {"", "-1\n", "1 2\n", "x\n", "1.5\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_labels(in), std::invalid_argument) << "input: " << text;
  }
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_THROW(load_features("/nonexistent/dir/f.txt"), IoError);
  EXPECT_THROW(load_labels("/nonexistent/dir/l.txt"), IoError);
  EXPECT_THROW(save_features("/nonexistent/dir/f.txt", FeatureMatrix::Ones(1, 1)), IoError);
}

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(parse_double(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(parse_double("+2.5"), 2.5);
  EXPECT_THROW(parse_double("1e999"), std::invalid_argument);
}

}  // namespace
}  // namespace pkt
