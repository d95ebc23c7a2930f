#include "dyadic/report.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace dyadic;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("dyadic_test_" + name)).string();
}

} // namespace

TEST(Csv, ExactRowForSingleWord) {
    const std::string csv = plateaus_csv(plateaus(3, 1));
    EXPECT_EQ(csv, std::string(kCsvHeader) + "\n3,28,1,7,0.6942419136,1,001\n");
}

TEST(Csv, RoundTrip) {
    const auto ps = plateaus(6, 2);
    const auto rows = parse_plateaus_csv(plateaus_csv(ps));
    ASSERT_EQ(rows.size(), ps.size());
    for (std::size_t k = 0; k < ps.size(); ++k) {
        EXPECT_EQ(rows[k].left, ps[k].left);
        EXPECT_EQ(rows[k].right, ps[k].right);
        EXPECT_EQ(rows[k].level, ps[k].level);
        EXPECT_EQ(rows[k].representative, ps[k].representative.str());
        EXPECT_NEAR(rows[k].dim, ps[k].dim, 1e-10);
    }
}

TEST(Csv, RejectsMalformed) {
    EXPECT_THROW(parse_plateaus_csv("wrong header\n"), DomainError);
    EXPECT_THROW(parse_plateaus_csv(std::string(kCsvHeader) + "\n1,2,3\n"), DomainError);
}

TEST(Csv, FormatDim) {
    EXPECT_EQ(format_dim(0.69424191363061), "0.6942419136");
    EXPECT_EQ(format_dim(0.0), "0");
}

TEST(Svg, HasOneSegmentPerPlateau) {
    const auto rows = parse_plateaus_csv(plateaus_csv(plateaus(5, 1)));
    const std::string svg = plateaus_svg(rows, zero_threshold_upper(64).to_double());
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    std::size_t lines = 0;
    for (auto pos = svg.find("<line"); pos != std::string::npos; pos = svg.find("<line", pos + 1)) ++lines;
    EXPECT_GE(lines, rows.size());
}

TEST(Json, DimensionRecord) {
    const auto j = dimension_json("3/28", phi(Fraction::parse("3/28")));
    EXPECT_EQ(j["level"], "1");
    EXPECT_EQ(j["representative"], "001");
    EXPECT_EQ(j["plateau"]["left"], "3/28");
    EXPECT_NEAR(j["dim"].get<double>(), 0.6942419136, 1e-9);
    const auto zero = dimension_json("01", phi(Word("01")));
    EXPECT_TRUE(zero["representative"].is_null());
    EXPECT_TRUE(zero["plateau"].is_null());
}

TEST(Cache, SaveLoadRoundTrip) {
    const std::string path = temp_path("cache.json");
    std::filesystem::remove(path);
    SpectralCache empty;
    EXPECT_FALSE(load_cache(path, empty, 1e-9));

    SpectralCache cache;
    cache.insert("001", {1.5, 1.75});
    cache.insert("0001", {1.8, 1.9});
    save_cache(path, cache, 1e-9);

    SpectralCache back;
    ASSERT_TRUE(load_cache(path, back, 1e-9));
    EXPECT_EQ(back.size(), 2u);
    EXPECT_EQ(back.find("001")->lower, 1.5);
    EXPECT_EQ(back.find("0001")->upper, 1.9);

    SpectralCache other_tol;
    EXPECT_FALSE(load_cache(path, other_tol, 1e-6));
    EXPECT_EQ(other_tol.size(), 0u);

    std::ofstream(path) << R"({"version":"old","tol":1e-9,"entries":{"001":[0,0]}})";
    SpectralCache stale;
    EXPECT_FALSE(load_cache(path, stale, 1e-9));

    std::ofstream(path) << "not json";
    EXPECT_FALSE(load_cache(path, stale, 1e-9));
    std::filesystem::remove(path);
}
