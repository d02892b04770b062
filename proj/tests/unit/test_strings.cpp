#include "betgames/strings.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace betgames;

namespace {

BitString bs(const char* s) { return BitString::parse(s); }

// Lexicographic comparison of the textual forms, as an oracle for operator<=>.
bool text_less(const BitString& a, const BitString& b) { return a.str() < b.str(); }

}  // namespace

TEST_SUITE("strings") {

TEST_CASE("parse, print and basic accessors") {
    auto s = bs("0110");
    CHECK(s.size() == 4);
    CHECK(s.str() == "0110");
    CHECK(s[0] == 0);
    CHECK(s[1] == 1);
    CHECK(s.last() == 0);
    CHECK(s.parent().str() == "011");
    CHECK(s.child(1).str() == "01101");
    CHECK(s.sibling().str() == "0111");
    CHECK(s.prefix(2).str() == "01");
    CHECK(s.suffix_from(1).str() == "110");
    CHECK(bs("01").concat(bs("10")).str() == "0110");
    CHECK(BitString().str().empty());
    CHECK_THROWS_AS(BitString::parse("012"), std::invalid_argument);
}

TEST_CASE("prefix relation") {
    CHECK(BitString().is_prefix_of(bs("101")));
    CHECK(bs("10").is_prefix_of(bs("101")));
    CHECK(bs("101").is_prefix_of(bs("101")));
    CHECK_FALSE(bs("11").is_prefix_of(bs("101")));
    CHECK_FALSE(bs("1010").is_prefix_of(bs("101")));
}

TEST_CASE("order agrees with string comparison") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 2000; ++t) {
        int la = static_cast<int>(rng() % 7), lb = static_cast<int>(rng() % 7);
        BitString a(rng() & ((1u << la) - 1), la), b(rng() & ((1u << lb) - 1), lb);
        CHECK((a < b) == text_less(a, b));
        CHECK((a == b) == (a.str() == b.str()));
    }
}

TEST_CASE("heap index round trip covers 2^{<=n} once") {
    std::set<std::size_t> seen;
    for (int len = 0; len <= 6; ++len)
        for (std::uint64_t x = 0; x < (1u << len); ++x) {
            BitString s(x, len);
            CHECK(BitString::from_heap_index(s.heap_index()) == s);
            seen.insert(s.heap_index());
        }
    CHECK(seen.size() == 127);
    CHECK(*seen.rbegin() == 126);
}

TEST_CASE("antichain and prefix freeness") {
    std::vector<BitString> v{bs("01"), bs("0"), bs("11"), bs("110"), bs("11")};
    auto a = antichain(v);
    REQUIRE(a.size() == 2);
    CHECK(a[0].str() == "0");
    CHECK(a[1].str() == "11");
    CHECK(is_prefix_free(a));
    CHECK_FALSE(is_prefix_free(v));
    CHECK_THROWS_AS(PrefixFreeSet({bs("0"), bs("01")}), std::invalid_argument);
}

TEST_CASE("measure of a prefix-free set") {
    std::vector<BitString> v{bs("0"), bs("10"), bs("110")};
    CHECK(measure(v) == Rational(7, 8));
    CHECK(measure(std::vector<BitString>{}) == 0);
    CHECK(measure(std::vector<BitString>{BitString()}) == 1);
    // Overlapping cylinders count once.
    CHECK(measure(std::vector<BitString>{bs("0"), bs("01")}) == Rational(1, 2));
}

TEST_CASE("conditional measure below a node") {
    std::vector<BitString> v{bs("000"), bs("001"), bs("010"), bs("110")};
    CHECK(conditional_measure(v, bs("0")) == Rational(3, 4));
    CHECK(conditional_measure(v, bs("00")) == 1);
    CHECK(conditional_measure(v, bs("1")) == Rational(1, 4));
    CHECK(conditional_measure(v, BitString()) == Rational(1, 2));
}

TEST_CASE("cylinder and complement leaves") {
    auto c = cylinder_leaves(bs("10"), 4);
    REQUIRE(c.size() == 4);
    CHECK(c.front().str() == "1000");
    CHECK(c.back().str() == "1011");
    std::vector<BitString> done{bs("000")};
    auto rest = complement_leaves(bs("1"), 3, done);
    CHECK(rest.size() == 3);  // 001, 010, 011
    for (const auto& s : rest) CHECK(s[0] == 0);
    CHECK(std::find(rest.begin(), rest.end(), bs("000")) == rest.end());
    CHECK(all_strings(3).size() == 8);
}

TEST_CASE("ternary embedding digits") {
    CHECK(ternary_embed(parse_ternary("")).str().empty());
    CHECK(ternary_embed(parse_ternary("0")).str() == "0");
    CHECK(ternary_embed(parse_ternary("1")).str() == "11");
    CHECK(ternary_embed(parse_ternary("2")).str() == "10");
    CHECK(ternary_embed(parse_ternary("120")).str() == "11100");
}

TEST_CASE("ternary lex iteration") {
    for (int d = 0; d <= 5; ++d) {
        auto seq = ternary_lex_iter(d);
        std::size_t expected = 1;
        for (int i = 0; i < d; ++i) expected *= 3;
        CHECK(seq.size() == expected);
        CHECK(std::is_sorted(seq.begin(), seq.end()));
        for (const auto& a : seq) CHECK(static_cast<int>(a.size()) == d);
    }
}

TEST_CASE("embedding is injective and prefix free at fixed ternary depth") {
    for (int d = 1; d <= 5; ++d) {
        std::vector<BitString> images;
        for (const auto& a : ternary_lex_iter(d)) images.push_back(ternary_embed(a));
        CHECK(is_prefix_free(images));
        std::set<BitString> uniq(images.begin(), images.end());
        CHECK(uniq.size() == images.size());
    }
}

}
