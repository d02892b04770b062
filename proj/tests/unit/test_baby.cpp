#include "betgames/match.hpp"

#include "../support/referee_fuzz.hpp"

#include <doctest.h>

#include <random>

using namespace betgames;

namespace {

Rational root(const GameState& s) { return s.latest() ? l1_at(*s.latest(), BitString()) : Rational(0); }

std::optional<BitString> fresh_leaf(std::mt19937_64& rng, const GameState& s) {
    const int n = s.spec().n;
    for (int t = 0; t < 64; ++t) {
        BitString leaf(rng() % (std::uint64_t{1} << n), n);
        if (!s.is_enumerated(leaf)) return leaf;
    }
    return std::nullopt;
}

std::optional<std::vector<SidePolicy>> policies_for(const GameSpec& spec, const BabyReply& r) {
    if (!spec.partial()) return std::nullopt;
    return r.policies;
}

}  // namespace

TEST_SUITE("baby") {

TEST_CASE("sided pair: the LP catches 11 through the 1-sided gale") {
    auto s = alice_move(new_game(GameSpec::sided(Rational(1, 2), 1, 2)), BitString::parse("11"));
    auto adv = Adversary::lp_disjunctive();
    auto r = adv.respond(s);
    REQUIRE(r);
    CHECK(l1_at(r->gales, BitString()) == Rational(1, 4));
    CHECK(r->gales[0](BitString()) == 0);
    CHECK(r->gales[1](BitString::parse("1")) == Rational(1, 2));
}

TEST_CASE("property: every adversary reply is accepted and disjunctive never costs more") {
    std::mt19937_64 rng(101);
    for (const auto& spec : fuzz::kinds()) {
        for (int game = 0; game < 3; ++game) {
            auto s = new_game(spec);
            auto rnd = Adversary::random(rng());
            while (s.status() == Status::Ongoing) {
                auto leaf = fresh_leaf(rng, s);
                if (!leaf) break;
                s = alice_move(s, *leaf);
                INFO(spec.id() << " round " << s.round());
                auto lp = Adversary::lp_disjunctive(), leafy = Adversary::lp_leaf_catch(),
                     lazy = Adversary::lazy_minimal();
                auto a = lp.respond(s), b = leafy.respond(s), c = lazy.respond(s), d = rnd.respond(s);
                for (const auto* r : {&a, &b, &c, &d})
                    if (*r) CHECK(baby_move(s, (*r)->gales, policies_for(spec, **r)).accepted());
                if (a && b) CHECK(l1_at(a->gales, BitString()) <= l1_at(b->gales, BitString()));
                if (!d) break;
                s = baby_move(s, d->gales, policies_for(spec, *d)).state;
            }
        }
    }
}

TEST_CASE("property: round-greedy root values never decrease") {
    std::mt19937_64 rng(103);
    for (const auto& spec : fuzz::kinds()) {
        auto s = new_game(spec);
        auto lp = Adversary::lp_disjunctive();
        Rational last = 0;
        while (s.status() == Status::Ongoing) {
            auto leaf = fresh_leaf(rng, s);
            if (!leaf) break;
            s = alice_move(s, *leaf);
            auto r = lp.respond(s);
            if (!r) break;
            s = baby_move(s, r->gales, policies_for(spec, *r)).state;
            CHECK(root(s) >= last);
            last = root(s);
        }
    }
}

TEST_CASE("scripted replay reproduces a recorded match") {
    auto spec = GameSpec::sided(Rational(1, 2), 1, 3);
    auto s1 = make_strategy("half-block:n=3");
    auto rnd = Adversary::random(7);
    auto first = play_match(spec, *s1, rnd, 7);
    auto s2 = make_strategy("half-block:n=3");
    auto script = Adversary::scripted(scripted_replies(first.trace));
    auto second = play_match(spec, *s2, script, 7);
    REQUIRE(first.trace.size() == second.trace.size());
    // Headers name different adversaries; every record after them matches.
    for (std::size_t i = 1; i < first.trace.size(); ++i) CHECK(first.trace[i] == second.trace[i]);
}

TEST_CASE("exhaustive verdicts") {
    auto spec = GameSpec::variance_partial(4, Rational(1, 1024), 4, 1);
    auto good = exhaustive_verdict(spec, *variance_k1_strategy(4, 4), 1);
    CHECK(good.kind == Verdict::Kind::AliceAlwaysWins);
    CHECK(good.max_cost < 1);
    CHECK(good.leaves > 1);

    auto much = exhaustive_verdict(GameSpec::parse("class:cls=muchgale(2,0),c=1,n=4,k=1"),
                                   *muchgale_strategy(2, 0, 4), 1);
    CHECK(much.kind == Verdict::Kind::AliceAlwaysWins);

    auto weak = exhaustive_verdict(spec, *variance_k1_strategy(4, 4, false), 1);
    CHECK(weak.kind == Verdict::Kind::Counterexample);
    CHECK_FALSE(weak.trace.empty());

    auto starved = exhaustive_verdict(spec, *variance_k1_strategy(4, 4), 1, 2);
    CHECK(starved.kind == Verdict::Kind::BudgetExhausted);
}

}
