#include "dyadic/dimension.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dyadic;

namespace {

Fraction frac(long n, long d) { return Fraction(BigInt(n), BigInt(d)); }

const double kGoldenDim = std::log2((1 + std::sqrt(5.0)) / 2);

DimensionOptions fast() {
    DimensionOptions o;
    o.tol = 1e-10;
    return o;
}

} // namespace

TEST(Phi, Examples) {
    const auto r = phi(Word("001"));
    EXPECT_NEAR(r.dim(), 0.6942419136, 1e-9);
    EXPECT_LE(r.dim_upper - r.dim_lower, 1e-9);
    EXPECT_EQ(r.level, LevelClass::at(1));
    ASSERT_TRUE(r.representative);
    EXPECT_EQ(*r.representative, Word("001"));

    const auto half = phi(Word("001011"));
    EXPECT_EQ(half.level, LevelClass::at(2));
    EXPECT_EQ(half.reduced_e1, Word("001"));
    EXPECT_NEAR(half.dim(), 0.3471209568, 1e-9);

    const auto zero = phi(frac(1, 4));
    EXPECT_TRUE(zero.level.is_above_all());
    EXPECT_EQ(zero.dim_lower, 0.0);
    EXPECT_EQ(zero.dim_upper, 0.0);

    EXPECT_EQ(phi(Word("01")).dim(), 0.0);
    EXPECT_TRUE(phi(frac(1, 2)).empty);
    EXPECT_TRUE(phi(frac(3, 4)).empty);
    EXPECT_THROW(phi(Word("000")), DomainError);
}

TEST(Phi, InputFormsAgree) {
    const double w = phi(Word("000111")).dim();
    EXPECT_DOUBLE_EQ(phi(EPWord::parse("000(110)")).dim(), w);
    EXPECT_DOUBLE_EQ(phi(frac(3, 28)).dim(), w);
    EXPECT_DOUBLE_EQ(phi(parse_parameter("6/56")).dim(), w);
    EXPECT_NEAR(w, kGoldenDim, 1e-9);
}

TEST(Parse, RejectsDecimals) {
    EXPECT_THROW(parse_parameter("0.125"), DomainError);
    EXPECT_THROW(parse_parameter("1/0"), DomainError);
    EXPECT_THROW(parse_parameter("01x"), DomainError);
    EXPECT_EQ(parse_parameter("001"), EPWord::embed(Word("001")));
}

TEST(Interval, Examples) {
    for (const char* w : {"001", "000111"}) {
        const auto p = interval(Word(w));
        EXPECT_EQ(p.left, frac(3, 28)) << w;
        EXPECT_EQ(p.right, frac(1, 7)) << w;
        EXPECT_EQ(p.representative, Word("001"));
        EXPECT_NEAR(p.dim, kGoldenDim, 1e-9);
    }
    // 01 lies above every e_i: phi is 0 there but no plateau is defined
    EXPECT_THROW(interval(Word("01")), DomainError);
}

TEST(Interval, Constancy) {
    EXPECT_TRUE(verify_plateau_constancy(interval(Word("001")), 5));
    EXPECT_TRUE(verify_plateau_constancy(interval(Word("001011")), 5));
    EXPECT_TRUE(verify_plateau_constancy(interval(Word("00101")), 8));
    EXPECT_THROW(verify_plateau_constancy(interval(Word("001")), 0), DomainError);
}

TEST(ZeroThreshold, Values) {
    EXPECT_EQ(zero_threshold(4), frac(1, 8));
    const double z = zero_threshold(40).to_double();
    EXPECT_NEAR(z, 0.1750919327, 1e-10);
    EXPECT_EQ(zero_threshold_upper(4), frac(3, 16));
    EXPECT_THROW(zero_threshold(0), DomainError);
}

TEST(ZeroSet, PhiVanishesExactlyBeyondThreshold) {
    const Fraction lo = zero_threshold(64), hi = zero_threshold_upper(64);
    for (long k = 1; k < 512; ++k) {
        const Fraction c = frac(k, 1024);
        const auto r = phi(c);
        if (c > hi) {
            EXPECT_EQ(r.dim_upper, 0.0) << k;
        } else if (c < lo) {
            EXPECT_GT(r.dim_upper, 0.0) << k;
        }
    }
}

TEST(DimBounds, Examples) {
    const auto e1 = dim_bounds(e_threshold(1), 14);
    EXPECT_LE(e1.lower, 0.5);
    EXPECT_GE(e1.upper, 0.5);
    EXPECT_LE(e1.upper - e1.lower, 0.02);

    const auto e2 = dim_bounds(e_threshold(2), 16);
    EXPECT_LE(e2.lower, 0.25);
    EXPECT_GE(e2.upper, 0.25);
    EXPECT_LE(e2.upper - e2.lower, 0.02);

    const auto g = dim_bounds(EPWord::parse("(001)"), 12);
    EXPECT_LE(g.lower, kGoldenDim + 1e-9);
    EXPECT_GE(g.upper, kGoldenDim - 1e-9);

    EXPECT_THROW(dim_bounds(EPWord::parse("(001)"), 1), DomainError);
    EXPECT_THROW(dim_bounds(EPWord::parse("(001)"), 41), ResourceError);
    EXPECT_THROW(dim_bounds(EPWord::parse("(01)"), 8), DomainError);
}

TEST(DimBounds, ContainPlateauValueAtRightEndpoint) {
    for (const auto& c : e1_minimal_words(7)) {
        const double d = phi(c).dim();
        const auto b = dim_bounds(EPWord::periodic(c), 16);
        EXPECT_LE(b.lower, d + 1e-9) << c.str();
        EXPECT_GE(b.upper, d - 1e-9) << c.str();
    }
}

TEST(WindowDimension, Edges) {
    EXPECT_EQ(window_dimension(Word("")).first, 1.0);
    EXPECT_EQ(window_dimension(Word("000")).second, 1.0);
    EXPECT_EQ(window_dimension(Word("1")).second, 0.0);
    EXPECT_NEAR(window_dimension(Word("0010")).first, kGoldenDim, 1e-9);
}

TEST(Plateaus, SingleWord) {
    const auto ps = plateaus(3, 1);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].left, frac(3, 28));
    EXPECT_EQ(ps[0].right, frac(1, 7));
    EXPECT_EQ(ps[0].representative, Word("001"));
    EXPECT_NEAR(ps[0].dim, 0.6942419136, 1e-9);

    // higher levels sit closer to the zero threshold, so to the right
    const auto two = plateaus(3, 2);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[1].level, 2u);
    EXPECT_EQ(two[1].representative, Word("001011"));
    EXPECT_NEAR(two[1].dim, 0.34712, 1e-5);
    EXPECT_LT(two[0].right, two[1].left);
}

TEST(Plateaus, FrozenCoverageAtLevelOne) {
    const auto ps = plateaus(8, 1);
    EXPECT_EQ(ps.size(), 30u);
    Fraction total;
    for (const auto& p : ps) total = total + (p.right - p.left);
    EXPECT_NEAR(total.to_double(), 0.0837649574371, 1e-12);
}

TEST(Plateaus, SortedDisjointNonIncreasing) {
    const auto ps = plateaus(8, 3);
    EXPECT_EQ(ps.size(), 90u);
    for (std::size_t k = 1; k < ps.size(); ++k) {
        EXPECT_LE(ps[k - 1].right, ps[k].left);
        EXPECT_GE(ps[k - 1].dim_upper + 1e-9, ps[k].dim_lower) << ps[k].representative.str();
    }
    for (const auto& p : ps) EXPECT_LT(p.left, zero_threshold(64));
}

TEST(Plateaus, Guards) {
    EXPECT_THROW(plateaus(13, 1), ResourceError);
    EXPECT_THROW(plateaus(6, 0), ResourceError);
    EXPECT_THROW(plateaus(6, 7), ResourceError);
}

TEST(Plateaus, DeterministicAcrossWorkersAndCached) {
    DimensionOptions one, many;
    one.workers = 1;
    many.workers = 6;
    SpectralCache cache;
    std::atomic<std::size_t> runs{0};
    many.cache = &cache;
    many.spectral_runs = &runs;

    const auto a = plateaus(7, 2, one);
    const auto b = plateaus(7, 2, many);
    const std::size_t first = runs.load();
    EXPECT_EQ(first, e1_minimal_words(7).size());
    const auto c = plateaus(7, 2, many);
    EXPECT_EQ(runs.load(), first);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].left, b[k].left);
        EXPECT_EQ(a[k].dim_lower, b[k].dim_lower);
        EXPECT_EQ(b[k].dim_upper, c[k].dim_upper);
    }
}

TEST(Monotonicity, DyadicSamples) {
    const auto o = fast();
    DimensionResult prev = phi(frac(1, 1024), o);
    for (long k = 2; k < 512; ++k) {
        const auto cur = phi(frac(k, 1024), o);
        EXPECT_LE(cur.dim_lower, prev.dim_upper + 1e-9) << k;
        prev = cur;
    }
}

TEST(SelfSimilarity, WindowSystemOfTheImage) {
    // no mu reduction: the image word's own window system has radius sqrt(rho)
    for (const auto& c : e1_minimal_words(7)) {
        const Word image = mu_inverse(c, Word("01"));
        const auto outer = spectral_radius(build_sft(c), 1e-12);
        const auto inner = spectral_radius(build_sft(image), 1e-12);
        EXPECT_NEAR(inner.mid(), std::sqrt(outer.mid()), 1e-8) << image.str();
    }
}

TEST(Maximality, LeftOfPlateauIsStrictlyLarger) {
    for (const auto& c : e1_minimal_words(7)) {
        const auto base = phi(c);
        const auto left = phi(accumulate_a(c, 1));
        EXPECT_GT(left.dim_lower, base.dim_upper) << c.str();
    }
}

TEST(Concurrency, SharedCacheFromThreads) {
    SpectralCache cache;
    DimensionOptions o;
    o.cache = &cache;
    const auto words = e1_minimal_words(8);
    std::vector<double> dims(words.size());
    detail::parallel_for(words.size(), 8, [&](std::size_t k) { dims[k] = phi(words[k], o).dim(); });
    for (std::size_t k = 0; k < words.size(); ++k) EXPECT_DOUBLE_EQ(dims[k], phi(words[k]).dim());
    EXPECT_EQ(cache.size(), words.size());
}

TEST(Concurrency, ExceptionPropagates) {
    EXPECT_THROW(detail::parallel_for(16, 4,
                                      [](std::size_t k) {
                                          if (k == 7) throw DomainError("boom");
                                      }),
                 DomainError);
}
