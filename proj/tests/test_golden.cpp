#include "golden_runner.hpp"

#include <gtest/gtest.h>

#include <cctype>
#include <string>

namespace {

using k3lat::golden::Case;

class Golden : public ::testing::TestWithParam<Case> {};

TEST_P(Golden, MatchesRecordedTranscript) {
  const Case& c = GetParam();
  bool matched = false;
  const std::string actual = k3lat::golden::check(K3LAT_BINARY, K3LAT_GOLDEN_DIR, c, &matched);
  EXPECT_TRUE(matched) << "k3lat " << c.command << "\n--- actual ---\n" << actual << "--- expected ---\n"
                       << k3lat::golden::read_file(c.expected);
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(k3lat::golden::list_cases(K3LAT_GOLDEN_DIR)),
                         [](const ::testing::TestParamInfo<Case>& info) {
                           std::string name = info.param.name;
                           for (char& ch : name)
                             if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                           return name;
                         });

}  // namespace
