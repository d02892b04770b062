#include "betgames/claims.hpp"

#include <algorithm>
#include <functional>

namespace betgames {

namespace {

int roll(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Top-down i-sided supermartingale: the favoured child gets at least as much as its sibling.
GaleTree sample_sided(std::mt19937_64& rng, int depth, int side, const Rational& root, bool fair) {
    GaleTree m(depth);
    m.mutable_at_index(0) = root;
    std::size_t internal = (std::size_t{1} << depth) - 1;
    for (std::size_t i = 0; i < internal; ++i) {
        const Rational v = m.at_index(i);
        Rational low = v * roll(rng, 0, 8) / 8;
        int spread = fair || roll(rng, 0, 3) == 0 ? 8 : roll(rng, 0, 8);
        Rational high = low + (2 * v - 2 * low) * spread / 8;
        m.mutable_at_index(2 * i + 1 + static_cast<std::size_t>(side)) = high;
        m.mutable_at_index(2 * i + 2 - static_cast<std::size_t>(side)) = low;
    }
    return m;
}

// Supermartingale bounded by 2 with large swings and occasional losses.
GaleTree sample_bounded(std::mt19937_64& rng, int depth, const Rational& root, bool extreme) {
    GaleTree m(depth);
    m.mutable_at_index(0) = root;
    std::size_t internal = (std::size_t{1} << depth) - 1;
    for (std::size_t i = 0; i < internal; ++i) {
        const Rational v = m.at_index(i);
        if (v == 0) continue;
        Rational bmax = std::min(Rational(1), Rational((2 - v) / v));
        int s = extreme || roll(rng, 0, 2) == 0 ? (roll(rng, 0, 1) ? 4 : -4) : roll(rng, -4, 4);
        Rational b = bmax * s / 4;
        Rational keep = !extreme && roll(rng, 0, 3) == 0 ? Rational(8 - roll(rng, 1, 2), 8) : Rational(1);
        m.mutable_at_index(2 * i + 1) = v * (1 + b) * keep;
        m.mutable_at_index(2 * i + 2) = v * (1 - b) * keep;
    }
    return m;
}

LevelChain uniform_chain(int depth, int levels) {
    levels = std::min(levels, depth + 1);
    std::vector<PrefixFreeSet> out;
    for (int l = 0; l < levels; ++l) out.emplace_back(all_strings(l == levels - 1 ? depth : l * depth / (levels - 1)));
    return LevelChain(std::move(out));
}

Json chain_json(const LevelChain& chain) {
    Json levels = Json::array();
    for (const auto& level : chain.levels()) {
        Json row = Json::array();
        for (const auto& s : level) row.push_back(s.str());
        levels.push_back(row);
    }
    return levels;
}

}  // namespace

GaleVector sample_sqrtvar_instance(std::mt19937_64& rng, int depth) {
    for (;;) {
        // Fair (martingale) instances are the ones with a positive deficit.
        bool fair = roll(rng, 0, 1) == 0;
        std::vector<GaleTree> comps;
        for (int j = 0; j < 2; ++j) comps.push_back(sample_sided(rng, depth, j, Rational(roll(rng, 1, 8), 8), fair));
        GaleVector v(std::move(comps));
        Rational at0 = l1_at(v, BitString::parse("0"));
        Rational at11 = l1_at(v, BitString::parse("11"));
        if (at0 == 0 || at11 == 0) continue;
        // Scale until both preconditions hold, usually exactly at the boundary.
        Rational lambda = std::max(Rational(1 / at0), Rational(1 / at11));
        if (!fair && roll(rng, 0, 3) == 0) lambda *= Rational(8 + roll(rng, 1, 8), 8);
        return v.scaled(lambda);
    }
}

LevelChain sample_chain(std::mt19937_64& rng, int depth, int levels) {
    std::vector<PrefixFreeSet> out{PrefixFreeSet({BitString()})};
    std::function<void(const BitString&, std::vector<BitString>&, bool)> refine =
        [&](const BitString& rho, std::vector<BitString>& into, bool first) {
            bool split = rho.size() < depth && roll(rng, 0, 9) < (first ? 6 : 4);
            if (!split) {
                into.push_back(rho);
                return;
            }
            refine(rho.child(0), into, false);
            refine(rho.child(1), into, false);
        };
    for (int l = 1; l < levels; ++l) {
        std::vector<BitString> next;
        for (const auto& rho : out.back()) refine(rho, next, true);
        out.emplace_back(std::move(next));
    }
    return LevelChain(std::move(out));
}

BudgetInstance sample_budget_instance(std::mt19937_64& rng, int k, int depth, int max_levels) {
    std::vector<int> w;
    int wsum = 0;
    for (int j = 0; j < k; ++j) {
        w.push_back(roll(rng, 1, 8));
        wsum += w.back();
    }
    // Extreme instances swing fully at every node and are refined down to the leaves.
    bool extreme = roll(rng, 0, 3) == 0;
    Rational total = extreme ? Rational(1) : Rational(roll(rng, 4, 8), 8);
    std::vector<GaleTree> comps;
    for (int j = 0; j < k; ++j)
        comps.push_back(sample_bounded(rng, depth, total * w[static_cast<std::size_t>(j)] / wsum, extreme));
    GaleVector v(std::move(comps));
    Rational eps = std::max(Rational(0), Rational(1 - leaf_integral(v)));
    LevelChain chain = extreme ? uniform_chain(depth, max_levels) : sample_chain(rng, depth, roll(rng, 2, max_levels));
    return BudgetInstance{std::move(v), std::move(chain), std::move(eps), k};
}

std::optional<int> total_variance_mismatch(const GaleVector& martingale, const LevelChain& chain) {
    const auto& levels = chain.levels();
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
        Rational lhs = variance_budget(martingale, LevelChain({levels[l], levels[l + 1]}));
        Rational rhs = cond_variance(martingale, levels[l + 1]) - cond_variance(martingale, levels[l]);
        if (lhs != rhs) return static_cast<int>(l);
    }
    return std::nullopt;
}

Json ClaimReport::to_json() const {
    Json j;
    j["claim"] = which;
    j["seed"] = seed;
    j["samples"] = samples;
    j["violations"] = violations;
    if (telescoping_checks > 0) {
        j["telescoping_checks"] = telescoping_checks;
        j["telescoping_failures"] = telescoping_failures;
    }
    j["verdict"] = pass() ? "pass" : "fail";
    if (witness) j["witness"] = *witness;
    return j;
}

ClaimReport verify_sqrtvar(long samples, std::uint64_t seed, const Rational& bound_c) {
    ClaimReport r;
    r.which = "sqrtvar";
    r.seed = seed;
    r.samples = samples;
    std::mt19937_64 rng(seed);
    for (long i = 0; i < samples; ++i) {
        GaleVector v = sample_sqrtvar_instance(rng, roll(rng, 2, 4));
        ClaimCheck c = check_claim_sqrtvar(v, bound_c);
        if (c.valid_instance() && c.holds) continue;
        ++r.violations;
        if (!r.witness) {
            Json w;
            w["sample"] = i;
            w["gales"] = betgames::to_json(v);
            w["C"] = to_string(bound_c);
            w["lhs"] = to_string(c.lhs);
            w["rhs"] = to_string(c.rhs);
            w["precondition_violations"] = c.precondition_violations;
            r.witness = std::move(w);
        }
    }
    return r;
}

ClaimReport verify_budget(long samples, std::uint64_t seed, const Rational& per_k,
                          const std::optional<Rational>& constant) {
    ClaimReport r;
    r.which = "budget";
    r.seed = seed;
    r.samples = samples;
    std::mt19937_64 rng(seed);
    for (long i = 0; i < samples; ++i) {
        int k = static_cast<int>(i % 3) + 1;
        BudgetInstance inst = sample_budget_instance(rng, k, roll(rng, 2, 10), 6);
        Rational factor = constant ? Rational(*constant / k) : per_k;
        ClaimCheck c = check_budget_bound(inst.gales, inst.chain, inst.eps, k, factor);
        GaleVector completion = martingale_completion(inst.gales);
        ++r.telescoping_checks;
        auto bad_level = total_variance_mismatch(completion, inst.chain);
        if (bad_level) ++r.telescoping_failures;
        bool violated = !c.valid_instance() || !c.holds;
        if (violated) ++r.violations;
        if ((violated || bad_level) && !r.witness) {
            Json w;
            w["sample"] = i;
            w["k"] = k;
            w["eps"] = to_string(inst.eps);
            w["per_k"] = to_string(factor);
            w["gales"] = betgames::to_json(inst.gales);
            w["chain"] = chain_json(inst.chain);
            w["lhs"] = to_string(c.lhs);
            w["rhs"] = to_string(c.rhs);
            w["precondition_violations"] = c.precondition_violations;
            if (bad_level) w["telescoping_level"] = *bad_level;
            r.witness = std::move(w);
        }
    }
    return r;
}

ClaimReport verify_total_variance(long samples, std::uint64_t seed) {
    ClaimReport r;
    r.which = "total-variance";
    r.seed = seed;
    r.samples = samples;
    std::mt19937_64 rng(seed);
    for (long i = 0; i < samples; ++i) {
        int depth = roll(rng, 1, 10);
        int k = roll(rng, 1, 3);
        std::vector<GaleTree> comps;
        for (int j = 0; j < k; ++j) {
            std::vector<Rational> leaves;
            for (std::size_t x = 0; x < (std::size_t{1} << depth); ++x) leaves.emplace_back(roll(rng, 0, 16), roll(rng, 1, 8));
            comps.push_back(martingale_completion(leaves));
        }
        GaleVector m(std::move(comps));
        LevelChain chain = sample_chain(rng, depth, roll(rng, 2, 6));
        ++r.telescoping_checks;
        if (auto bad = total_variance_mismatch(m, chain)) {
            ++r.telescoping_failures;
            ++r.violations;
            if (!r.witness) {
                Json w;
                w["sample"] = i;
                w["gales"] = betgames::to_json(m);
                w["chain"] = chain_json(chain);
                w["level"] = *bad;
                r.witness = std::move(w);
            }
        }
    }
    return r;
}

}  // namespace betgames
