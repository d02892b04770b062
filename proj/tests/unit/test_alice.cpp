#include "betgames/match.hpp"

#include "../support/drive.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace betgames;

namespace {

BitString bs(const char* s) { return BitString::parse(s); }

std::vector<std::string> strs(const std::vector<BitString>& v) {
    std::vector<std::string> out;
    for (const auto& s : v) out.push_back(s.str());
    return out;
}

}  // namespace

TEST_SUITE("alice") {

TEST_CASE("lex block roots and first leaf") {
    CHECK(strs(lex_block_roots(4)) ==
          std::vector<std::string>{"00", "011", "010", "110", "1111", "1110", "100", "1011", "1010"});
    auto s = lex_variance_strategy(2, Rational(1, 2), 4);
    auto mv = s->next_move(GameView::detached(nullptr, 4, 1, {}));
    REQUIRE_FALSE(mv.is_pass());
    CHECK(mv.leaf->str() == "0000");
}

TEST_CASE("property: lex enumeration finishes B before touching tau") {
    for (int n = 2; n <= 8; n += 2) {
        auto s = lex_variance_strategy(2, Rational(1, 2), n);
        auto order = drive::planned_leaves(*s, n);
        CHECK(order.size() == (std::size_t(1) << n));
        CHECK(drive::block_order_problem(order, n) == "");
    }
}

TEST_CASE("lex strategy turns to the complement once attention appears") {
    auto s = lex_variance_strategy(2, Rational(1, 2), 4);
    std::vector<BitString> played;
    for (int t = 0; t < 6; ++t) played.push_back(*s->next_move(GameView::detached(nullptr, 4, 1, played)).leaf);
    CHECK(strs(played) == std::vector<std::string>{"0000", "0001", "0010", "0011", "0110", "0111"});
    // Capital 1 at 0 with 3/4 of [0] enumerated: attention at 0 and nowhere deeper.
    GaleTree m(4);
    m.set(BitString(), 1);
    m.set(bs("0"), 1);
    m.set(bs("00"), 2);
    for (const auto& x : cylinder_leaves(bs("00"), 4)) m.set(x, 2);
    for (const char* x : {"000", "001"}) m.set(bs(x), 2);
    GaleVector v({m, GaleTree(4)});
    auto view = GameView::detached(&v, 4, 1, played);
    REQUIRE(view.attention(2));
    CHECK(view.attention(2)->str() == "0");
    int rest = 0;
    while (true) {
        auto mv = s->next_move(GameView::detached(&v, 4, 1, played));
        if (mv.is_pass()) break;
        CHECK((*mv.leaf)[0] == 1);
        played.push_back(*mv.leaf);
        ++rest;
    }
    CHECK(rest == 8);
}

TEST_CASE("muchgale strategy plays the i-zero leaves") {
    auto s = muchgale_strategy(2, 1, 3);
    auto leaves = drive::planned_leaves(*s, 3);
    CHECK(strs(leaves) == std::vector<std::string>{"000", "001", "100", "101"});
    CHECK(measure(leaves) == Rational(1, 2));
    for (int l = 1; l <= 3; ++l)
        for (int i = 0; i < l; ++i)
            for (int n = l; n <= 6; ++n) {
                auto t = muchgale_strategy(l, i, n);
                CHECK(measure(drive::planned_leaves(*t, n)) == Rational(1, 2));
            }
}

TEST_CASE("variance k=1 strategy without a root commitment") {
    auto s = variance_k1_strategy(4, 3);
    CHECK(strs(drive::planned_leaves(*s, 3)) == std::vector<std::string>{"100", "101", "110"});
}

TEST_CASE("variance k=1 strategy follows a root commitment") {
    auto s = variance_k1_strategy(4, 3);
    auto adv = Adversary::lp_disjunctive();
    auto m = play_match(GameSpec::variance_partial(4, Rational(1, 1024), 3, 1), *s, adv);
    CHECK(m.alice_won());
    auto e = m.state.enumerated();
    REQUIRE(e.size() >= 2);
    CHECK(e[0].str() == "100");
    // The LP commits p0(∅) toward 1 for the first leaf, so Alice moves to [0].
    for (std::size_t t = 1; t < e.size(); ++t) CHECK(e[t][0] == 0);
    CHECK(m.cost() < 1);
}

TEST_CASE("nest of two half-cost toys wins the product game") {
    auto spec = GameSpec::sided(Rational(1, 4), 1, 2);
    for (auto id : {"lp", "random:seed=5"}) {
        auto s = make_strategy("nest:outer=(single-leaf:n=1),inner=(single-leaf:n=1),n0=1,n1=1,c1=1/2");
        auto adv = Adversary::parse(id);
        auto m = play_match(spec, *s, adv);
        CHECK(m.alice_won());
        CHECK(m.cost() <= Rational(1, 4));
    }
}

TEST_CASE("identity nest behaves as the outer strategy") {
    auto spec = GameSpec::sided(Rational(1, 2), 1, 2);
    for (auto id : {"lp", "random:seed=3", "random:seed=4"}) {
        auto outer = make_strategy("half-block:n=2");
        auto nested = make_strategy("nest:outer=(half-block:n=2),inner=(single-leaf:n=0),n0=2,n1=0,c1=1");
        auto a1 = Adversary::parse(id), a2 = Adversary::parse(id);
        auto m1 = play_match(spec, *outer, a1), m2 = play_match(spec, *nested, a2);
        CHECK(strs(m1.state.enumerated()) == strs(m2.state.enumerated()));
        CHECK(m1.alice_won() == m2.alice_won());
    }
}

TEST_CASE("strategy ids round trip through the registry") {
    for (auto id : {"single-leaf:n=1", "half-block:n=2", "muchgale:l=2,i=0,n=4", "variance-k1:a=4/1,m=4",
                    "lex-variance:a=2/1,delta=1/2,n=4", "fixed:leaves=00;11",
                    "nest:outer=(single-leaf:n=1),inner=(single-leaf:n=1),n0=1,n1=1,c1=1/2"}) {
        auto s = make_strategy(id);
        CHECK(s->id() == id);
        CHECK(s->clone()->id() == id);
    }
    CHECK_THROWS(make_strategy("no-such-strategy"));
}

TEST_CASE("pipeline parameters") {
    auto p = build_pipeline(Rational(1, 4), Rational(3, 4));
    CHECK(p.params.violations().empty());
    CHECK(p.params.cost_bound() <= Rational(3, 4));
    CHECK(p.params.threshold() >= Rational(1, 4));
    CHECK(p.strategy->id() == p.params.strategy_id());
    auto back = PipelineParams::from_json(p.params.to_json());
    CHECK(back.to_json() == p.params.to_json());
    CHECK_THROWS_AS(build_pipeline(Rational(63, 64), Rational(1, 64)), PipelineInfeasible);
}

TEST_CASE("fuzz: strategies only make legal moves") {
    std::vector<std::pair<GameSpec, std::string>> cases = {
        {GameSpec::sided(Rational(1, 2), 1, 3), "half-block:n=3"},
        {GameSpec::dynamic_sided(2, 4), "lex-variance:a=2/1,delta=1/2,n=4"},
        {GameSpec::variance_partial(4, Rational(1, 1024), 3, 1), "variance-k1:a=4/1,m=3"},
        {GameSpec::parse("class:cls=muchgale(2,0),c=1,n=4,k=1"), "muchgale:l=2,i=0,n=4"},
    };
    for (const auto& [spec, id] : cases)
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto s = make_strategy(id);
            auto adv = Adversary::random(seed);
            INFO(id << " seed " << seed);
            CHECK_NOTHROW(play_match(spec, *s, adv, seed));
        }
}

}
