#pragma once

#include "betgames/alice.hpp"
#include "betgames/referee.hpp"
#include "betgames/response.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace betgames {

struct BabyReply {
    GaleVector gales;
    std::vector<SidePolicy> policies;  // empty outside partial games
};

// Feasible set for Baby's next move without any catching requirement: the
// game's shapes under the given policies, floored by the latest snapshot.
ResponseProblem base_problem(const GameState& s, const std::vector<SidePolicy>& policies);
// Enumerated leaves not yet caught by the latest snapshot.
std::vector<BitString> uncaught_leaves(const GameState& s);
// Nodes that may serve as the catching point of a leaf, leaf first.
std::vector<BitString> catch_options(const GameSpec& spec, const BitString& leaf);
// Minimal root capital for catching exactly at the given nodes (no policy changes).
std::optional<ResponseSolution> solve_catches(const GameState& s, const std::vector<SidePolicy>& policies,
                                              const std::vector<BitString>& nodes);

class Adversary {
public:
    enum class Kind { LpLeafCatch, LpDisjunctive, LazyMinimal, Scripted, Random };

    static Adversary lp_leaf_catch() { return Adversary(Kind::LpLeafCatch); }
    static Adversary lp_disjunctive() { return Adversary(Kind::LpDisjunctive); }
    static Adversary lazy_minimal() { return Adversary(Kind::LazyMinimal); }
    static Adversary random(std::uint64_t seed);
    static Adversary scripted(std::vector<BabyReply> replies);
    // "lp-leaf", "lp", "lazy" or "random:seed=N".
    static Adversary parse(const std::string& id);

    Kind kind() const { return kind_; }
    std::string id() const;
    std::uint64_t seed() const { return seed_; }

    // nullopt when no move satisfies every rule (NO_VALID_MOVE).
    std::optional<BabyReply> respond(const GameState& s);

private:
    explicit Adversary(Kind k) : kind_(k) {}

    Kind kind_;
    std::uint64_t seed_ = 0;
    std::mt19937_64 rng_;
    std::vector<BabyReply> script_;
    std::size_t script_pos_ = 0;
};

// Policies after committing every component toward each target node, then
// dropping fresh commitments (root first) whose removal keeps the optimum.
// Nodes in `keep` are left exactly as in `base`.
std::vector<SidePolicy> lazy_policies(const GameState& s, const std::vector<SidePolicy>& base,
                                      const std::vector<BitString>& targets, bool drop, const std::vector<BitString>& keep = {});

struct Verdict {
    enum class Kind { AliceAlwaysWins, Counterexample, BudgetExhausted };
    Kind kind = Kind::AliceAlwaysWins;
    std::vector<std::string> trace;  // counterexample, as trace lines
    std::string reason;
    std::size_t leaves = 0;           // finished branches
    std::size_t nodes = 0;            // Baby decision points visited
    Rational max_cost{0};
};

std::string verdict_name(Verdict::Kind k);

// Enumerates Baby's discrete choices (catching points, root policy menu) and
// plays each branch with round-greedy minimal responses.
Verdict exhaustive_verdict(const GameSpec& spec, const Strategy& alice, const Rational& cost_bound,
                           std::size_t budget = 200000);

// All distinct replies offered to the exhaustive search in this state.
std::vector<BabyReply> exhaustive_options(const GameState& s);

}  // namespace betgames
