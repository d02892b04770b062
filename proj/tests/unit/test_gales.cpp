#include "betgames/serialize.hpp"

#include "../support/random_gales.hpp"

#include <doctest.h>

using namespace betgames;

namespace {

BitString bs(const char* s) { return BitString::parse(s); }

GaleTree tree(int depth, std::initializer_list<std::pair<const char*, Rational>> values) {
    GaleTree m(depth);
    for (const auto& [s, v] : values) m.set(bs(s), v);
    return m;
}

// Direct supermartingale check over explicit strings.
bool slow_supermartingale(const GaleTree& m) {
    for (int len = 0; len < m.depth(); ++len)
        for (std::uint64_t x = 0; x < (1u << len); ++x) {
            BitString s(x, len);
            if (2 * m(s) < m(s.child(0)) + m(s.child(1))) return false;
        }
    return true;
}

}  // namespace

TEST_SUITE("gales") {

TEST_CASE("supermartingale examples") {
    auto fair = tree(1, {{"", 1}, {"0", 2}, {"1", 0}});
    auto chk = is_supermartingale(fair);
    CHECK(chk.ok);
    CHECK(chk.martingale);
    auto bad = tree(1, {{"", 1}, {"0", 2}, {"1", 1}});
    auto chk2 = is_supermartingale(bad);
    CHECK_FALSE(chk2.ok);
    REQUIRE(chk2.violation);
    CHECK(chk2.violation->str().empty());
    CHECK(is_supermartingale(GaleTree(2, Rational(1))).ok);
}

TEST_CASE("sidedness examples") {
    auto m = tree(2, {{"00", 2}, {"01", 1}});
    CHECK(is_sided_at(m, bs("0"), 0));
    CHECK_FALSE(is_sided_at(m, bs("0"), 1));
    auto flat = GaleTree(2, Rational(1));
    CHECK(is_sided_at(flat, bs("1"), 0));
    CHECK(is_sided_at(flat, bs("1"), 1));
}

TEST_CASE("policy sidedness examples") {
    SidePolicy none;
    CHECK(is_p_sided(GaleTree(2, Rational(1)), none));
    SidePolicy p;
    p.set(BitString(), 1);
    auto m = tree(2, {{"", 1}, {"1", 2}, {"10", 2}, {"11", 2}});
    CHECK(is_p_sided(m, p));
    CHECK_FALSE(is_p_sided(m, none));
}

TEST_CASE("(l,i)-betting examples") {
    CHECK(is_li_betting(GaleTree(3, Rational(1)), 2, 0));
    CHECK(is_li_betting(GaleTree(3, Rational(1)), 3, 2));
    auto up = tree(2, {{"", 1}, {"0", 2}});
    CHECK_FALSE(is_li_betting(up, 2, 0));
    auto ok = tree(2, {{"", 1}, {"0", 2}, {"00", 2}, {"01", 2}});
    CHECK(is_li_betting(ok, 2, 1));
}

TEST_CASE("domination and l1") {
    std::mt19937_64 rng(3);
    auto m = gen::supermartingale(rng, 3);
    CHECK(dominates(m, m));
    CHECK(dominates(m, GaleTree(3)));
    auto lower = m;
    lower.set(bs("010"), m(bs("010")) + 1);
    CHECK_FALSE(dominates(m, lower));

    GaleVector v({tree(1, {{"0", Rational(1, 2)}}), tree(1, {{"0", Rational(1, 4)}})});
    CHECK(l1_at(v, bs("0")) == Rational(3, 4));
    GaleVector one({tree(1, {{"1", Rational(2, 3)}})});
    CHECK(l1_at(one, bs("1")) == Rational(2, 3));
    CHECK(l1_at(GaleVector::zero(3, 2), bs("01")) == 0);
}

TEST_CASE("kaster consistency examples") {
    CHECK(kaster_consistent({GaleTree(2, Rational(1))}));
    auto left = tree(1, {{"", 1}, {"0", 2}, {"1", 0}});
    auto right = tree(1, {{"", 2}, {"0", 2}, {"1", 3}});
    CHECK_FALSE(kaster_consistent({left, right}));
    auto grow = tree(1, {{"", 2}, {"0", 4}, {"1", 0}});
    CHECK(kaster_consistent({left, grow}));
}

TEST_CASE("class meta checks") {
    auto a = tree(1, {{"", 1}, {"0", 2}, {"1", 0}});
    auto b = tree(1, {{"", 2}, {"0", 3}, {"1", 1}});
    auto rep = class_meta_checks({a, b}, GaleClass::kaster());
    CHECK(rep.member);
    CHECK(rep.nondecreasing);
    auto shrink = class_meta_checks({b, a}, GaleClass::kaster());
    CHECK_FALSE(shrink.nondecreasing);

    std::mt19937_64 rng(5);
    auto mg = gen::li_betting(rng, 4, 2, 1);
    REQUIRE(is_li_betting(mg, 2, 1));
    CHECK(GaleClass::muchgale(2, 1).contains({mg, mg.scaled(2)}));
}

TEST_CASE("property: supermartingale check agrees with a direct scan") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        auto m = t % 2 ? gen::supermartingale(rng, 3) : gen::noise(rng, 3);
        CHECK(static_cast<bool>(is_supermartingale(m)) == slow_supermartingale(m));
    }
}

TEST_CASE("property: predicates are invariant under positive scaling") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 200; ++t) {
        auto m = t % 3 ? gen::supermartingale(rng, 3, t % 2) : gen::noise(rng, 3);
        Rational c(gen::roll(rng, 1, 9), gen::roll(rng, 1, 5));
        auto cm = m.scaled(c);
        CHECK(static_cast<bool>(is_supermartingale(cm)) == static_cast<bool>(is_supermartingale(m)));
        CHECK(is_sided_at(cm, bs("0"), 1) == is_sided_at(m, bs("0"), 1));
        SidePolicy p;
        p.set(BitString(), 0);
        CHECK(is_p_sided(cm, p) == is_p_sided(m, p));
        CHECK(is_li_betting(cm, 2, 1) == is_li_betting(m, 2, 1));
    }
}

TEST_CASE("property: constant total policy equals single-sidedness") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        int side = t % 2;
        auto m = gen::supermartingale(rng, 3, t % 3 == 0 ? -1 : side);
        SidePolicy p;
        for (std::size_t n = 0; n < 7; ++n) p.set(BitString::from_heap_index(n), side);
        CHECK(is_p_sided(m, p) == is_sided(m, side));
    }
}

TEST_CASE("property: sums of supermartingales are supermartingales") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 200; ++t) {
        auto a = gen::supermartingale(rng, 4);
        auto b = gen::supermartingale(rng, 4);
        CHECK(is_supermartingale(a + b).ok);
    }
}

TEST_CASE("property: grafting keeps class membership with a shifted residue") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        int l = gen::roll(rng, 1, 3), i = gen::roll(rng, 0, l - 1);
        auto m = gen::li_betting(rng, 5, l, i);
        REQUIRE(is_li_betting(m, l, i));
        int len = gen::roll(rng, 0, 2);
        BitString rho(rng() % (1u << len), len);
        auto g = m.shifted(rho, 5 - rho.size());
        auto cls = GaleClass::muchgale(l, i).shifted(rho.size());
        CHECK(is_li_betting(g, cls.l(), cls.i()));

        auto k1 = gen::supermartingale(rng, 4, 0);
        auto k2 = k1 + gen::supermartingale(rng, 4, 0);
        REQUIRE(kaster_consistent({k1, k2}));
        CHECK(kaster_consistent({k1.shifted(rho, 4 - rho.size()), k2.shifted(rho, 4 - rho.size())}));
    }
}

TEST_CASE("serialization round trip and digest stability") {
    std::mt19937_64 rng(37);
    GaleVector v({gen::supermartingale(rng, 3), gen::supermartingale(rng, 3)});
    CHECK(gale_vector_from_json(to_json(v)) == v);
    SidePolicy p;
    p.set(bs("01"), 1);
    p.set(BitString(), 0);
    CHECK(policy_from_json(to_json(p)) == p);
    std::vector<SidePolicy> ps{p, SidePolicy()};
    CHECK(digest(v, ps) == digest(v, ps));
    auto w = v;
    w[1].set(bs("111"), w[1](bs("111")) + Rational(1, 1024));
    CHECK(digest(v, ps) != digest(w, ps));
    CHECK(digest(v, ps).size() == 16);
}

}
