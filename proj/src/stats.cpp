#include "betgames/stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace betgames {

LevelChain::LevelChain(std::vector<PrefixFreeSet> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw std::invalid_argument("LevelChain needs at least one level");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (measure(levels_[i].members()) != 1)
            throw std::invalid_argument("chain level " + std::to_string(i) + " does not cover 2^ω");
        if (i == 0) continue;
        for (const auto& s : levels_[i]) {
            bool found = false;
            for (const auto& r : levels_[i - 1])
                if (r.is_prefix_of(s)) { found = true; break; }
            if (!found)
                throw std::invalid_argument("chain member " + s.str() + " extends nothing at level " +
                                            std::to_string(i - 1));
        }
    }
}

int LevelChain::max_length() const {
    int best = 0;
    for (const auto& level : levels_)
        for (const auto& s : level) best = std::max(best, s.size());
    return best;
}

namespace {

void require_usable(const GaleVector& v, const PrefixFreeSet& b) {
    if (b.empty()) throw std::invalid_argument("conditional statistics over an empty set");
    for (const auto& s : b)
        if (s.size() > v.depth()) throw std::invalid_argument("set member " + s.str() + " deeper than the gales");
}

}  // namespace

std::vector<Rational> cond_expectation(const GaleVector& v, const PrefixFreeSet& b) {
    require_usable(v, b);
    Rational mb = measure(b.members());
    std::vector<Rational> e(static_cast<std::size_t>(v.k()), Rational(0));
    for (const auto& s : b) {
        Rational w = pow2(-s.size());
        for (std::size_t j = 0; j < e.size(); ++j) e[j] += v[j](s) * w;
    }
    for (auto& x : e) x /= mb;
    return e;
}

Rational cond_variance(const GaleVector& v, const PrefixFreeSet& b) {
    auto e = cond_expectation(v, b);
    Rational mb = measure(b.members());
    Rational total = 0;
    for (const auto& s : b) {
        Rational w = pow2(-s.size());
        for (std::size_t j = 0; j < e.size(); ++j) {
            Rational d = v[j](s) - e[j];
            total += w * d * d;
        }
    }
    return total / mb;
}

GaleTree martingale_completion(std::span<const Rational> leaves) {
    std::size_t count = leaves.size();
    int n = 0;
    while ((std::size_t{1} << n) < count) ++n;
    if ((std::size_t{1} << n) != count) throw std::invalid_argument("leaf count must be a power of two");
    GaleTree m(n);
    std::size_t first_leaf = count - 1;
    for (std::size_t i = 0; i < count; ++i) {
        if (leaves[i] < 0) throw std::invalid_argument("negative leaf value");
        m.mutable_at_index(first_leaf + i) = leaves[i];
    }
    for (std::size_t i = first_leaf; i-- > 0;)
        m.mutable_at_index(i) = (m.at_index(2 * i + 1) + m.at_index(2 * i + 2)) / 2;
    return m;
}

GaleVector martingale_completion(const GaleVector& v) {
    std::vector<GaleTree> comps;
    std::size_t first_leaf = (std::size_t{1} << v.depth()) - 1;
    for (const auto& m : v.components) {
        std::vector<Rational> leaves(m.values().begin() + static_cast<std::ptrdiff_t>(first_leaf), m.values().end());
        comps.push_back(martingale_completion(leaves));
    }
    return GaleVector(std::move(comps));
}

Rational variance_budget(const GaleVector& v, const LevelChain& chain) {
    if (chain.max_length() > v.depth()) throw std::invalid_argument("chain deeper than the gales");
    Rational budget = 0;
    const auto& levels = chain.levels();
    for (std::size_t lvl = 0; lvl + 1 < levels.size(); ++lvl) {
        // Both levels are sorted and the finer one refines the coarser, so the
        // members under each rho form a contiguous run.
        const auto& fine = levels[lvl + 1].members();
        std::size_t j = 0;
        for (const auto& rho : levels[lvl]) {
            std::vector<BitString> below;
            while (j < fine.size() && rho.is_prefix_of(fine[j])) below.push_back(fine[j++]);
            budget += pow2(-rho.size()) * cond_variance(v, PrefixFreeSet(std::move(below)));
        }
    }
    return budget;
}

Rational leaf_integral(const GaleVector& v) {
    std::size_t first_leaf = (std::size_t{1} << v.depth()) - 1;
    Rational sum = 0;
    for (const auto& m : v.components)
        for (std::size_t i = first_leaf; i < m.node_count(); ++i) sum += m.at_index(i);
    return sum * pow2(-v.depth());
}

ClaimCheck check_claim_sqrtvar(const GaleVector& v, const Rational& bound_c) {
    ClaimCheck r;
    auto zero = BitString::parse("0");
    auto oneone = BitString::parse("11");
    if (v.k() != 2) r.precondition_violations.push_back("expected exactly 2 components");
    if (v.depth() < 2) r.precondition_violations.push_back("depth must be at least 2");
    if (!r.precondition_violations.empty()) return r;
    for (int j = 0; j < 2; ++j) {
        if (!is_supermartingale(v[j]))
            r.precondition_violations.push_back("component " + std::to_string(j) + " is not a supermartingale");
        if (!is_sided(v[j], j))
            r.precondition_violations.push_back("component " + std::to_string(j) + " is not " +
                                                std::to_string(j) + "-sided");
    }
    if (l1_at(v, zero) < 1) r.precondition_violations.push_back("||V(0)||₁ < 1");
    if (l1_at(v, oneone) < 1) r.precondition_violations.push_back("||V(11)||₁ < 1");

    Rational deficit = 1 - l1_at(v, BitString());
    Rational var = cond_variance(v, PrefixFreeSet({zero, oneone}));
    r.lhs = deficit > 0 ? deficit * deficit : Rational(0);
    r.rhs = bound_c * bound_c * var;
    r.holds = deficit <= 0 || r.lhs <= r.rhs;
    return r;
}

ClaimCheck check_budget_bound(const GaleVector& v, const LevelChain& chain, const Rational& eps, int k,
                              const Rational& per_k) {
    ClaimCheck r;
    if (v.k() != k) r.precondition_violations.push_back("component count differs from k");
    if (eps < 0) r.precondition_violations.push_back("ε must be nonnegative");
    for (int j = 0; j < v.k(); ++j) {
        if (!is_supermartingale(v[static_cast<std::size_t>(j)]))
            r.precondition_violations.push_back("component " + std::to_string(j) + " is not a supermartingale");
        for (const auto& x : v[static_cast<std::size_t>(j)].values())
            if (x > 2) {
                r.precondition_violations.push_back("component " + std::to_string(j) + " exceeds 2");
                break;
            }
    }
    if (l1_at(v, BitString()) > 1) r.precondition_violations.push_back("||V(∅)||₁ > 1");
    if (leaf_integral(v) < 1 - eps) r.precondition_violations.push_back("leaf integral below 1 − ε");

    r.lhs = variance_budget(v, chain);
    r.rhs = per_k * k * (1 + chain.steps() * eps);
    r.holds = r.lhs <= r.rhs;
    return r;
}

}  // namespace betgames
