#include "betgames/claims.hpp"

#include "../support/random_gales.hpp"

#include <doctest.h>

using namespace betgames;

namespace {

BitString bs(const char* s) { return BitString::parse(s); }

GaleVector single(int depth, std::initializer_list<std::pair<const char*, Rational>> values) {
    GaleTree m(depth);
    for (const auto& [s, v] : values) m.set(bs(s), v);
    return GaleVector({m});
}

// Variance as E[X²] − E[X]² over the leaves below B, each leaf carrying its
// member's value. Shares no code with the engine's formula.
Rational brute_variance(const GaleVector& v, const PrefixFreeSet& b) {
    const int n = v.depth();
    Rational total = 0;
    for (int j = 0; j < v.k(); ++j) {
        Rational mass = 0, first = 0, second = 0;
        for (const auto& s : b) {
            Rational x = v[static_cast<std::size_t>(j)](s);
            long count = 1L << (n - s.size());
            mass += count;
            first += x * count;
            second += x * x * count;
        }
        Rational mean = first / mass;
        total += second / mass - mean * mean;
    }
    return total;
}

PrefixFreeSet set_of(std::initializer_list<const char*> xs) {
    std::vector<BitString> v;
    for (auto x : xs) v.push_back(bs(x));
    return PrefixFreeSet(v);
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("conditional expectation examples") {
    auto v = single(2, {{"0", 1}, {"11", 3}});
    CHECK(cond_expectation(v, set_of({"0", "11"}))[0] == Rational(5, 3));
    GaleVector c({GaleTree(2, Rational(7, 3))});
    CHECK(cond_expectation(c, set_of({"0", "10", "11"}))[0] == Rational(7, 3));
    auto fair = single(1, {{"", 1}, {"0", Rational(3, 2)}, {"1", Rational(1, 2)}});
    CHECK(cond_expectation(fair, set_of({"0", "1"}))[0] == 1);
}

TEST_CASE("conditional variance examples") {
    auto v = single(2, {{"0", 1}, {"11", 3}});
    CHECK(cond_variance(v, set_of({"0", "11"})) == Rational(8, 9));
    GaleVector two({v[0], v[0]});
    CHECK(cond_variance(two, set_of({"0", "11"})) == Rational(16, 9));
    GaleVector flat({GaleTree(3, Rational(2))});
    CHECK(cond_variance(flat, set_of({"0", "10", "11"})) == 0);
}

TEST_CASE("martingale completion examples") {
    std::vector<Rational> leaves{1, 3, 0, 2};
    auto m = martingale_completion(leaves);
    CHECK(m(bs("0")) == 2);
    CHECK(m(bs("1")) == 1);
    CHECK(m(BitString()) == Rational(3, 2));
    std::vector<Rational> ones(8, Rational(1));
    auto o = martingale_completion(ones);
    for (const auto& x : o.values()) CHECK(x == 1);
    std::vector<Rational> two{2, 0};
    CHECK(martingale_completion(two)(BitString()) == 1);
}

TEST_CASE("variance budget examples") {
    LevelChain chain({set_of({""}), set_of({"0", "1"}), set_of({"00", "01", "10", "11"})});
    GaleVector flat({GaleTree(2, Rational(1))});
    CHECK(variance_budget(flat, chain) == 0);
    std::vector<Rational> leaves{1, 3, 0, 2};
    GaleVector m({martingale_completion(leaves)});
    CHECK(variance_budget(m, chain) == cond_variance(m, chain.levels().back()) - cond_variance(m, chain.levels().front()));
    LevelChain one({set_of({""}), set_of({"0", "1"})});
    CHECK(variance_budget(m, one) == cond_variance(m, set_of({"0", "1"})));
}

TEST_CASE("sqrtvar claim examples") {
    // Constant 1/2 per component on {0,11}: zero variance and no deficit.
    GaleTree a(2, Rational(1, 2)), b(2, Rational(1, 2));
    auto r = check_claim_sqrtvar(GaleVector({a, b}));
    CHECK(r.valid_instance());
    CHECK(r.holds);
    CHECK(r.lhs == 0);
    CHECK(r.rhs == 0);
    // Deficit 1/2 against C = 4 needs variance at least 1/64.
    Rational deficit(1, 2);
    CHECK(deficit * deficit <= 16 * Rational(1, 64));
    CHECK_FALSE(deficit * deficit <= 16 * Rational(1, 65));
    // A broken instance is reported, not judged.
    auto bad = check_claim_sqrtvar(GaleVector({GaleTree(2), GaleTree(2)}));
    CHECK_FALSE(bad.valid_instance());
}

TEST_CASE("budget bound examples") {
    LevelChain chain({set_of({""}), set_of({"0", "1"}), set_of({"00", "01", "10", "11"})});
    GaleVector flat({GaleTree(2, Rational(1)), GaleTree(2)});
    auto r = check_budget_bound(flat, chain, Rational(0), 2);
    CHECK(r.valid_instance());
    CHECK(r.holds);
    CHECK(r.lhs == 0);
    CHECK(r.rhs == 16);
    std::vector<Rational> leaves{2, 0, 2, 0};
    GaleVector m({martingale_completion(leaves)});
    auto s = check_budget_bound(m, chain, Rational(0), 1);
    CHECK(s.valid_instance());
    CHECK(s.lhs == 1);
    CHECK(s.holds);
}

TEST_CASE("property: statistics match a brute-force recomputation") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
        int k = gen::roll(rng, 1, 3);
        std::vector<GaleTree> comps;
        for (int j = 0; j < k; ++j) comps.push_back(gen::noise(rng, 4));
        GaleVector v(comps);
        LevelChain chain = sample_chain(rng, 4, 3);
        const auto& b = chain.levels().back();
        CHECK(cond_variance(v, b) == brute_variance(v, b));
    }
}

TEST_CASE("property: variance dominates every single weighted deviation") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 200; ++t) {
        GaleVector v({gen::noise(rng, 3), gen::noise(rng, 3)});
        LevelChain chain = sample_chain(rng, 3, 3);
        const auto& b = chain.levels().back();
        auto e = cond_expectation(v, b);
        Rational var = cond_variance(v, b);
        Rational mb = measure(b.members());
        for (const auto& s : b)
            for (int j = 0; j < 2; ++j) {
                Rational d = v[static_cast<std::size_t>(j)](s) - e[static_cast<std::size_t>(j)];
                CHECK(var >= pow2(-s.size()) / mb * d * d);
            }
    }
}

TEST_CASE("property: martingale completion is dominated by the supermartingale") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 200; ++t) {
        GaleVector v({gen::supermartingale(rng, 4), gen::supermartingale(rng, 4)});
        auto hat = martingale_completion(v);
        for (int j = 0; j < 2; ++j) {
            CHECK(dominates(v[static_cast<std::size_t>(j)], hat[static_cast<std::size_t>(j)]));
            CHECK(is_supermartingale(hat[static_cast<std::size_t>(j)]).martingale);
        }
    }
}

TEST_CASE("property: law of total variance holds exactly") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 200; ++t) {
        int depth = gen::roll(rng, 1, 6);
        std::vector<Rational> leaves;
        for (int x = 0; x < (1 << depth); ++x) leaves.emplace_back(gen::roll(rng, 0, 9), gen::roll(rng, 1, 4));
        GaleVector m({martingale_completion(leaves)});
        CHECK_FALSE(total_variance_mismatch(m, sample_chain(rng, depth, 5)));
    }
}

TEST_CASE("samplers only emit valid instances") {
    std::mt19937_64 rng(59);
    for (int t = 0; t < 300; ++t) {
        auto v = sample_sqrtvar_instance(rng, gen::roll(rng, 2, 4));
        CHECK(check_claim_sqrtvar(v).valid_instance());
        auto b = sample_budget_instance(rng, t % 3 + 1, gen::roll(rng, 2, 7), 6);
        CHECK(check_budget_bound(b.gales, b.chain, b.eps, b.k).valid_instance());
        CHECK(b.chain.size() <= 6);
    }
}

TEST_CASE("claim samplers: defaults pass, a corrupted constant fails with a witness") {
    CHECK(verify_sqrtvar(2000, 1).pass());
    auto good = verify_budget(300, 2);
    CHECK(good.pass());
    CHECK(good.telescoping_checks == 300);
    auto bad = verify_budget(300, 2, Rational(8), Rational(1));
    CHECK_FALSE(bad.pass());
    REQUIRE(bad.witness);
    CHECK(bad.witness->contains("gales"));
    CHECK(verify_total_variance(300, 3).pass());
}

TEST_CASE("level chains reject non-covers and non-refinements") {
    CHECK_THROWS_AS(LevelChain({set_of({"0"})}), std::invalid_argument);
    CHECK_THROWS_AS(LevelChain({set_of({"0", "1"}), set_of({""})}), std::invalid_argument);
}

}
