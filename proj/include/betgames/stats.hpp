#pragma once

#include "betgames/gales.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace betgames {

// Refining sequence of full covers of Cantor space.
class LevelChain {
public:
    explicit LevelChain(std::vector<PrefixFreeSet> levels);

    const std::vector<PrefixFreeSet>& levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }
    // Number of refinement steps (levels − 1).
    int steps() const { return static_cast<int>(levels_.size()) - 1; }
    int max_length() const;

private:
    std::vector<PrefixFreeSet> levels_;
};

std::vector<Rational> cond_expectation(const GaleVector& v, const PrefixFreeSet& b);
Rational cond_variance(const GaleVector& v, const PrefixFreeSet& b);

// Leaves of 2^n in lexicographic order; size must be a power of two.
GaleTree martingale_completion(std::span<const Rational> leaves);
GaleVector martingale_completion(const GaleVector& v);

Rational variance_budget(const GaleVector& v, const LevelChain& chain);

struct ClaimCheck {
    bool holds = false;
    std::vector<std::string> precondition_violations;
    Rational lhs;  // squared deficit, or the variance budget
    Rational rhs;  // C²·Var, or the bound C(k)(1+mε)

    bool valid_instance() const { return precondition_violations.empty(); }
};

// (1 − ||V(∅)||₁)² ≤ C²·Var(V | {0, 11}) or the deficit is nonpositive.
ClaimCheck check_claim_sqrtvar(const GaleVector& v, const Rational& bound_c = Rational(4));

// variance_budget ≤ per_k·k·(1 + mε), m the number of refinement steps.
ClaimCheck check_budget_bound(const GaleVector& v, const LevelChain& chain, const Rational& eps, int k,
                              const Rational& per_k = Rational(8));

// Average of ||V||₁ over the leaves 2^depth.
Rational leaf_integral(const GaleVector& v);

}  // namespace betgames
