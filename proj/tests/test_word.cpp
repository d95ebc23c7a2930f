#include "dyadic/word.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dyadic;

namespace {

EPWord ep(const char* pre, const char* per) { return EPWord(Word(pre), Word(per)); }
Fraction frac(long n, long d) { return Fraction(BigInt(n), BigInt(d)); }

} // namespace

TEST(Word, LeadingZerosAreSignificant) {
    EXPECT_NE(Word("001"), Word("01"));
    EXPECT_EQ(Word("001").size(), 3u);
    EXPECT_TRUE(Word("").empty());
    EXPECT_THROW(Word("012"), DomainError);
}

TEST(Word, CodeRoundTrip) {
    EXPECT_EQ(Word::from_code(5, 4), Word("0101"));
    EXPECT_EQ(Word("0101").code(), 5u);
}

TEST(Word, Star) {
    EXPECT_EQ(star(Word("01")), Word("10"));
    EXPECT_EQ(star(Word("0011")), Word("1100"));
    EXPECT_EQ(star(Word("")), Word(""));
}

TEST(Word, Prime) {
    EXPECT_EQ(prime(Word("1")), Word("1"));
    EXPECT_EQ(prime(Word("01")), Word("11"));
    EXPECT_EQ(prime(Word("0011")), Word("1101"));
    EXPECT_THROW(prime(Word("000")), DomainError);
}

TEST(Word, Tilde) {
    EXPECT_EQ(tilde(Word("001")), Word("000"));
    EXPECT_EQ(tilde(Word("0011")), Word("0010"));
    EXPECT_EQ(tilde(Word("0")), Word("1"));
    EXPECT_THROW(tilde(Word("")), DomainError);
}

TEST(Word, Shift) {
    EXPECT_EQ(shift(Word("0011"), 2), Word("11"));
    EXPECT_EQ(shift(Word("01"), 2), Word(""));
    EXPECT_THROW(shift(Word("01"), 3), DomainError);
    EXPECT_EQ(shift(ep("001", "10"), 3), ep("", "10"));
    EXPECT_EQ(shift(ep("0", "011"), 3), ep("", "101"));
}

TEST(Word, InvolutionsAndComplementValue) {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        const auto len = 1 + rng() % 20;
        const Word w = Word::from_code(rng() & ((1u << len) - 1), len);
        EXPECT_EQ(star(star(w)), w);
        if (w.contains_one()) {
            EXPECT_EQ(prime(prime(w)), w);
            EXPECT_EQ(value(prime(w)) + value(w), frac(1, 1));
        }
        for (std::size_t m = 0; m <= len; ++m)
            for (std::size_t n = 0; m + n <= len; ++n) EXPECT_EQ(shift(w, m + n), shift(shift(w, m), n));
    }
}

TEST(EPWord, Canonicalization) {
    EXPECT_EQ(ep("", "0101"), ep("", "01"));
    EXPECT_EQ(ep("0", "10"), ep("", "01"));
    EXPECT_EQ(ep("00", "10").preperiod(), Word("0"));
    EXPECT_EQ(ep("00", "10").period(), Word("01"));
    EXPECT_EQ(EPWord::embed(Word("0100")), EPWord::embed(Word("01")));
    EXPECT_EQ(EPWord::parse("000(110)"), ep("000", "110"));
    EXPECT_EQ(EPWord::parse("000(110)").str(), "00(011)");
    EXPECT_THROW(EPWord::parse("0011"), DomainError);
    EXPECT_THROW(EPWord::parse("01()"), DomainError);
    EXPECT_THROW(ep("0", ""), DomainError);
}

TEST(Compare, Examples) {
    EXPECT_EQ(compare(Word("01"), Word("001")), std::strong_ordering::greater);
    EXPECT_EQ(compare(ep("", "01"), ep("0", "10")), std::strong_ordering::equal);
    EXPECT_EQ(compare(Word("000111"), ep("000", "110")), std::strong_ordering::greater);
    EXPECT_EQ(compare(Word("01"), Word("0100")), std::strong_ordering::equal);
}

TEST(Compare, DyadicExpansionsAreEqual) {
    EXPECT_EQ(compare(ep("01", "0"), ep("00", "1")), std::strong_ordering::equal);
    EXPECT_EQ(compare(ep("1", "0"), ep("0", "1")), std::strong_ordering::equal);
    EXPECT_EQ(compare(ep("", "1"), Word("1")), std::strong_ordering::greater);
}

TEST(Compare, AgreesWithRationalOrder) {
    std::mt19937 rng(11);
    auto random_ep = [&] {
        const auto a = rng() % 5, b = 1 + rng() % 5;
        return EPWord(Word::from_code(rng() & ((1u << a) - 1), a), Word::from_code(rng() & ((1u << b) - 1), b));
    };
    for (int t = 0; t < 2000; ++t) {
        const EPWord x = random_ep(), y = random_ep();
        EXPECT_EQ(compare(x, y), to_fraction(x) <=> to_fraction(y)) << x.str() << " vs " << y.str();
    }
}

TEST(Fraction, Values) {
    EXPECT_EQ(to_fraction(ep("", "001")), frac(1, 7));
    EXPECT_EQ(to_fraction(ep("000", "110")), frac(3, 28));
    EXPECT_EQ(to_fraction(ep("1", "0")), frac(1, 2));
    EXPECT_EQ(value(Word("0010")), frac(1, 8));
    EXPECT_EQ(Fraction::parse("6/56"), frac(3, 28));
    EXPECT_EQ(Fraction::parse("6/56").str(), "3/28");
    EXPECT_THROW(Fraction::parse("0.25"), DomainError);
    EXPECT_THROW(Fraction::parse("1/0"), DomainError);
    EXPECT_THROW(Fraction(BigInt(1), BigInt(0)), DomainError);
}

TEST(Fraction, FromFraction) {
    EXPECT_EQ(from_fraction(frac(1, 7)), ep("", "001"));
    EXPECT_EQ(from_fraction(frac(1, 4)), ep("01", "0"));
    EXPECT_EQ(from_fraction(frac(3, 28)), ep("000", "110"));
    EXPECT_EQ(from_fraction(frac(1, 1)), ep("", "1"));
    EXPECT_THROW(from_fraction(frac(3, 2)), DomainError);
}

TEST(Fraction, RoundTrip) {
    for (std::uint64_t a = 0; a <= 4; ++a) {
        for (std::uint64_t b = 1; b <= 5; ++b) {
            for (std::uint64_t pc = 0; pc < (1u << a); ++pc) {
                for (std::uint64_t qc = 0; qc < (1u << b); ++qc) {
                    const EPWord e(Word::from_code(pc, a), Word::from_code(qc, b));
                    const EPWord back = from_fraction(to_fraction(e));
                    EXPECT_EQ(compare(back, e), std::strong_ordering::equal) << e.str();
                    if (e.period() != Word("1") || e.preperiod().empty()) {
                        EXPECT_EQ(back, e) << e.str();
                    }
                }
            }
        }
    }
}
