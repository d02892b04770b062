#pragma once

#include "betgames/baby.hpp"
#include "slow_validator.hpp"

#include <random>
#include <string>
#include <vector>

namespace fuzz {

using namespace betgames;

struct Stats {
    long moves = 0;
    long accepted = 0;
    long disagreements = 0;
    long monotone_failures = 0;
    std::map<std::string, long> verdicts;
    std::string first_problem;

    bool ok() const { return disagreements == 0 && monotone_failures == 0 && moves > 0; }
};

// One game spec per kind, small enough for brute-force checking.
inline std::vector<GameSpec> kinds() {
    return {
        GameSpec::parse("sided:c=1/2,d=1,n=3"),
        GameSpec::parse("dynamic:a=2,n=3"),
        GameSpec::parse("restricted:a=2,delta=1/2,n=3"),
        GameSpec::parse("partial:c=1/2,n=3,k=2"),
        GameSpec::parse("dynamic-partial:a=2,n=3,k=2"),
        GameSpec::parse("restricted-partial:a=2,delta=1/2,n=3,k=2"),
        GameSpec::parse("variance-partial:a=2,Delta=1/4,m=3,k=2"),
        GameSpec::parse("class:cls=muchgale(2,0),c=1,n=3,k=1"),
        GameSpec::parse("class:cls=kaster,c=1,n=3,k=2"),
        GameSpec::parse("variance-class:cls=kaster,a=2,Delta=1/4,m=3,k=1"),
    };
}

inline SidePolicy without(const SidePolicy& p, const BitString& node) {
    SidePolicy q;
    for (const auto& [s, b] : p.assignments())
        if (!(s == node)) q.set(s, b);
    return q;
}

inline void mutate(std::mt19937_64& rng, const GameState& s, GaleVector& v, std::vector<SidePolicy>& pol) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int n = s.spec().n;
    const std::size_t nodes = (std::size_t{1} << (n + 1)) - 1;
    const std::size_t internal = (std::size_t{1} << n) - 1;
    auto& m = v[static_cast<std::size_t>(pick(0, v.k() - 1))];
    std::size_t at = static_cast<std::size_t>(pick(0, static_cast<int>(nodes) - 1));
    switch (pick(0, 7)) {
        case 0: {
            static const Rational factors[] = {Rational(0), Rational(1, 2), Rational(3, 2), Rational(2)};
            m.mutable_at_index(at) *= factors[pick(0, 3)];
            break;
        }
        case 1: m.mutable_at_index(at) += Rational(1, 4); break;
        case 2: {
            std::size_t node = static_cast<std::size_t>(pick(0, static_cast<int>(internal) - 1));
            std::swap(m.mutable_at_index(2 * node + 1), m.mutable_at_index(2 * node + 2));
            break;
        }
        case 3: {
            std::size_t j = static_cast<std::size_t>(pick(0, v.k() - 1));
            v[j] = s.latest() ? (*s.latest())[j] : GaleTree(n);
            break;
        }
        case 4: m = m.scaled(Rational(3, 2)); break;
        case 5: m.mutable_at_index(0) = 0; break;
        default: {
            if (pol.empty()) {
                m.mutable_at_index(at) += Rational(1, 8);
                break;
            }
            auto& p = pol[static_cast<std::size_t>(pick(0, static_cast<int>(pol.size()) - 1))];
            BitString node = BitString::from_heap_index(static_cast<std::size_t>(pick(0, static_cast<int>(internal) - 1)));
            int what = pick(0, 2);
            if (what == 0 && p.size() > 0) {
                auto it = p.assignments().begin();
                std::advance(it, pick(0, static_cast<int>(p.size()) - 1));
                BitString key = it->first;
                int bit = it->second;
                p = without(p, key);
                p.set(key, 1 - bit);
            } else if (what == 1 && p.size() > 0) {
                p = without(p, p.assignments().begin()->first);
            } else if (!p.defined(node)) {
                p.set(node, pick(0, 1));
            }
        }
    }
}

// Plays random leaves and fuzzed Baby moves; compares every decision with the slow validator.
inline Stats run(const GameSpec& spec, long moves, std::uint64_t seed) {
    Stats st;
    std::mt19937_64 rng(seed);
    Adversary lp = Adversary::lp_leaf_catch();
    Adversary rnd = Adversary::random(seed);
    GameState s = new_game(spec);
    const std::size_t leaves = std::size_t{1} << spec.n;
    auto note = [&](const std::string& what) {
        if (st.first_problem.empty()) st.first_problem = spec.id() + ": " + what;
    };
    while (st.moves < moves) {
        if (s.status() != Status::Ongoing) s = new_game(spec);
        if (s.turn() == Turn::Alice) {
            if (s.enumerated().size() == leaves) {
                s = new_game(spec);
                continue;
            }
            BitString leaf;
            do {
                leaf = BitString(std::uniform_int_distribution<std::uint64_t>(0, leaves - 1)(rng), spec.n);
            } while (s.is_enumerated(leaf));
            s = alice_move(s, leaf);
            continue;
        }
        auto reply = (rng() % 2 ? lp : rnd).respond(s);
        if (!reply) {
            s = new_game(spec);
            continue;
        }
        GaleVector v = reply->gales;
        std::vector<SidePolicy> pol = spec.partial() ? (reply->policies.empty() ? s.policies() : reply->policies)
                                                     : std::vector<SidePolicy>{};
        int rounds = static_cast<int>(rng() % 4);  // 0: the unmodified reply
        for (int r = 0; r < rounds; ++r) mutate(rng, s, v, pol);

        std::vector<GaleVector> history;
        for (const auto& h : s.history()) history.push_back(*h);
        std::string expect = slow::validate(spec, history, s.policies(), s.enumerated(), v,
                                            spec.partial() ? pol : std::vector<SidePolicy>{});
        BabyOutcome out = spec.partial() ? baby_move(s, v, pol) : baby_move(s, v);
        std::string got = out.accepted() ? "ACCEPT" : rule_name(*out.rejection);
        ++st.moves;
        ++st.verdicts[got];
        if (got != expect) {
            ++st.disagreements;
            note("referee " + got + " vs slow " + expect + " at round " + std::to_string(s.round()));
        }
        if (!out.accepted()) continue;
        ++st.accepted;
        if (s.latest()) {
            for (std::size_t x = 0; x < leaves; ++x) {
                std::string sigma = BitString(x, spec.n).str();
                if (slow::caught(spec, *s.latest(), sigma) && !slow::caught(spec, v, sigma)) {
                    ++st.monotone_failures;
                    note("leaf " + sigma + " lost its catch");
                }
            }
        }
        s = out.state;
    }
    return st;
}

}  // namespace fuzz
