#include <gtest/gtest.h>

#include "properties.hpp"

using namespace noether::proptest;

namespace {

constexpr int kCases = 200;
constexpr std::uint64_t kSeed = 20240601;

class Laws : public ::testing::TestWithParam<NamedLaw> {};

TEST_P(Laws, HoldOnRandomCases) {
    const auto out = run_property(GetParam().law, kCases, kSeed);
    EXPECT_EQ(out.cases, kCases);
    EXPECT_EQ(out.failures, 0) << out.first_failure;
}

INSTANTIATE_TEST_SUITE_P(Property, Laws, ::testing::ValuesIn(all_laws()),
                         [](const auto& info) { return std::string(info.param.name); });

}  // namespace
