#include "betgames/referee.hpp"

#include "../support/referee_fuzz.hpp"

#include <doctest.h>

using namespace betgames;

namespace {

BitString bs(const char* s) { return BitString::parse(s); }

GaleTree tree(int depth, std::initializer_list<std::pair<const char*, Rational>> values) {
    GaleTree m(depth);
    for (const auto& [s, v] : values) m.set(bs(s), v);
    return m;
}

GaleVector example_reply() {
    return GaleVector({GaleTree(2), tree(2, {{"", Rational(1, 4)}, {"1", Rational(1, 2)}, {"11", 1}})});
}

}  // namespace

TEST_SUITE("referee") {

TEST_CASE("new games and game spec validation") {
    auto s = new_game(GameSpec::sided(Rational(1, 2), 1, 3));
    CHECK(s.round() == 0);
    CHECK(s.enumerated().empty());
    CHECK(s.status() == Status::Ongoing);
    CHECK(new_game(GameSpec::variance_partial(4, Rational(1, 64), 4, 1)).status() == Status::Ongoing);
    CHECK_THROWS_AS(new_game(GameSpec::sided(Rational(3, 2), 1, 3)), std::invalid_argument);
}

TEST_CASE("alice move errors") {
    auto s = new_game(GameSpec::sided(Rational(1, 2), 1, 2));
    auto t = alice_move(s, bs("11"));
    CHECK(t.enumerated().size() == 1);
    CHECK_THROWS_AS(alice_move(t, bs("10")), GameError);  // out of turn
    auto u = baby_move(t, example_reply()).state;
    try {
        alice_move(u, bs("11"));
        FAIL("duplicate accepted");
    } catch (const GameError& e) {
        CHECK(e.code() == "DUPLICATE");
    }
    CHECK_THROWS_AS(alice_move(u, bs("1")), GameError);
}

TEST_CASE("hand-checked reply is accepted and the game continues") {
    auto s = alice_move(new_game(GameSpec::sided(Rational(1, 2), 1, 2)), bs("11"));
    auto out = baby_move(s, example_reply());
    REQUIRE(out.accepted());
    CHECK(out.state.status() == Status::Ongoing);
    CHECK(out.state.round() == 1);
}

TEST_CASE("rejections name the first broken rule") {
    auto s = alice_move(new_game(GameSpec::sided(Rational(1, 2), 1, 2)), bs("11"));
    auto v = example_reply();
    v[1].set(bs("10"), 2);
    auto out = baby_move(s, v);
    REQUIRE_FALSE(out.accepted());
    // M₁(10)=2 also breaks the supermartingale rule at 1, which is checked first.
    CHECK(*out.rejection == Rule::Supermartingale);
    v[1].set(bs("1"), Rational(3, 2));
    v[1].set(BitString(), 1);
    out = baby_move(s, v);
    REQUIRE_FALSE(out.accepted());
    CHECK(*out.rejection == Rule::Sidedness);
    auto none = baby_move(s, GaleVector::zero(2, 2));
    CHECK(*none.rejection == Rule::Catching);
    CHECK(none.state.round() == s.round());
}

TEST_CASE("domination is required across rounds") {
    auto s = alice_move(new_game(GameSpec::sided(Rational(1, 2), 1, 2)), bs("11"));
    s = baby_move(s, example_reply()).state;
    s = alice_move(s, bs("10"));
    auto v = example_reply();
    v[1].set(bs("11"), Rational(1, 2));
    auto out = baby_move(s, v);
    CHECK(*out.rejection == Rule::Domination);
}

TEST_CASE("win criteria") {
    // Sided threshold is inclusive.
    auto s = alice_move(new_game(GameSpec::sided(Rational(1, 4), 1, 2)), bs("11"));
    auto out = baby_move(s, example_reply());
    CHECK(out.state.status() == Status::AliceWon);
    CHECK(out.state.criterion() == WinCriterion::Threshold);

    // Dynamic, a = 1, half the leaves enumerated, deficit 1/4 ≤ 1/2.
    auto d = new_game(GameSpec::dynamic_sided(1, 1));
    d = alice_move(d, bs("1"));
    auto dv = GaleVector({GaleTree(1), tree(1, {{"", Rational(3, 4)}, {"1", Rational(3, 2)}})});
    auto dw = baby_move(d, dv);
    REQUIRE(dw.accepted());
    CHECK(dw.state.criterion() == WinCriterion::TypeA);

    // Constant capital on A has no variance.
    auto g = new_game(GameSpec::variance_partial(8, Rational(1, 64), 1, 1));
    g = alice_move(g, bs("0"));
    auto gv = baby_move(g, GaleVector({GaleTree(1, Rational(1))}), std::vector<SidePolicy>{SidePolicy()});
    REQUIRE(gv.accepted());
    CHECK(gv.state.criterion() != WinCriterion::TypeB);
}

TEST_CASE("winning attention and cost") {
    CHECK(cost(new_game(GameSpec::sided(Rational(1, 2), 1, 3))) == 0);

    auto t = alice_move(new_game(GameSpec::dynamic_sided(2, 2)), bs("00"));
    auto v = GaleVector(
        {tree(2, {{"", Rational(3, 8)}, {"0", Rational(3, 4)}, {"00", 1}, {"01", Rational(1, 2)}}), GaleTree(2)});
    auto out = baby_move(t, v);
    REQUIRE(out.accepted());
    CHECK(out.state.status() == Status::Ongoing);
    // Deficit 1/4 at 0 against (1/2)(1 − 1/2): the bound is inclusive.
    CHECK(winning_attention(out.state, bs("0")));
    // Nothing is left below 00.
    CHECK_FALSE(winning_attention(out.state, bs("00")));
    CHECK_FALSE(winning_attention(out.state, BitString()));

    // a = 1: root attention is the type-a criterion itself, so it ends the game.
    auto u = alice_move(new_game(GameSpec::dynamic_sided(1, 2)), bs("00"));
    auto w = GaleVector({tree(2, {{"", Rational(3, 4)}, {"0", 1}, {"00", 1}, {"01", 1}, {"1", Rational(1, 2)}, {"10", 1}}),
                         GaleTree(2)});
    auto o = baby_move(u, w);
    REQUIRE(o.accepted());
    CHECK(cost(o.state) == Rational(1, 4));
    CHECK(o.state.criterion() == WinCriterion::TypeA);
    CHECK(winning_attention(o.state, BitString()));
}

TEST_CASE("property: scaling the game spec and the capital together changes nothing") {
    std::mt19937_64 rng(83);
    for (const auto& spec : fuzz::kinds()) {
        Rational c(3, 2);
        auto a = new_game(spec);
        auto b = new_game(spec.with_scale(c * spec.scale));
        Adversary adv = Adversary::lp_leaf_catch();
        for (int r = 0; r < 4 && a.status() == Status::Ongoing; ++r) {
            BitString leaf(rng() % (1u << spec.n), spec.n);
            if (a.is_enumerated(leaf)) continue;
            a = alice_move(a, leaf);
            b = alice_move(b, leaf);
            auto reply = adv.respond(a);
            if (!reply) break;
            auto pol = spec.partial() ? std::optional(reply->policies) : std::nullopt;
            auto oa = baby_move(a, reply->gales, pol);
            auto ob = baby_move(b, reply->gales.scaled(c), pol);
            CHECK(oa.accepted() == ob.accepted());
            if (!oa.accepted() || !ob.accepted()) break;
            CHECK(oa.state.status() == ob.state.status());
            CHECK(oa.state.criterion() == ob.state.criterion());
            a = oa.state;
            b = ob.state;
        }
    }
}

TEST_CASE("property: attention at the root implies a type-a win") {
    std::mt19937_64 rng(89);
    for (int t = 0; t < 200; ++t) {
        auto spec = GameSpec::dynamic_sided(Rational(1 << (t % 3)), 3);
        auto s = new_game(spec);
        Adversary adv = Adversary::random(rng());
        while (s.status() == Status::Ongoing) {
            BitString leaf(rng() % 8, 3);
            if (s.is_enumerated(leaf)) continue;
            s = alice_move(s, leaf);
            auto reply = adv.respond(s);
            REQUIRE(reply);
            s = baby_move(s, reply->gales).state;
            if (cost(s) < 1 && winning_attention(s, BitString())) CHECK(check_win(s).second == WinCriterion::TypeA);
        }
    }
}

TEST_CASE("fuzz: referee agrees with the slow validator on every kind") {
    std::uint64_t seed = 97;
    for (const auto& spec : fuzz::kinds()) {
        auto st = fuzz::run(spec, 200, seed++);
        INFO(spec.id() << " " << st.first_problem);
        CHECK(st.disagreements == 0);
        CHECK(st.monotone_failures == 0);
        CHECK(st.accepted > 0);
        CHECK(st.verdicts.size() >= 2);
    }
}

}
