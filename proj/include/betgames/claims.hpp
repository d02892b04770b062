#pragma once

#include "betgames/serialize.hpp"
#include "betgames/stats.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace betgames {

// Random valid instances for the claim checkers. Every sampler produces an
// instance that meets the checker's preconditions exactly.

// Two components, 0-sided and 1-sided supermartingales with ||V(0)||₁, ||V(11)||₁ ≥ 1.
GaleVector sample_sqrtvar_instance(std::mt19937_64& rng, int depth);

struct BudgetInstance {
    GaleVector gales;
    LevelChain chain;
    Rational eps;
    int k = 1;
};

// k supermartingales bounded by 2 with ||V(∅)||₁ ≤ 1; ε is the exact shortfall of the leaf integral.
BudgetInstance sample_budget_instance(std::mt19937_64& rng, int k, int depth, int max_levels);

// Random refining chain of full covers starting at {∅}.
LevelChain sample_chain(std::mt19937_64& rng, int depth, int levels);

// Law of total variance between consecutive chain levels, checked exactly.
// Returns the index of the first failing level pair.
std::optional<int> total_variance_mismatch(const GaleVector& martingale, const LevelChain& chain);

struct ClaimReport {
    std::string which;
    std::uint64_t seed = 0;
    long samples = 0;
    long violations = 0;
    long telescoping_checks = 0;
    long telescoping_failures = 0;
    std::optional<Json> witness;  // first failing instance

    bool pass() const { return violations == 0 && telescoping_failures == 0; }
    Json to_json() const;
};

ClaimReport verify_sqrtvar(long samples, std::uint64_t seed, const Rational& bound_c = Rational(4));
// Also checks the telescoping identity on the martingale completion of each sample.
// A constant, when given, replaces per_k·k as the whole bound factor C(k).
ClaimReport verify_budget(long samples, std::uint64_t seed, const Rational& per_k = Rational(8),
                          const std::optional<Rational>& constant = std::nullopt);
ClaimReport verify_total_variance(long samples, std::uint64_t seed);

}  // namespace betgames
