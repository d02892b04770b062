#pragma once

#include "betgames/alice.hpp"
#include "betgames/baby.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace betgames {

// JSON-lines trace: a header line, then one record per half-move.
std::string trace_header(const GameSpec& spec, const std::string& alice, const std::string& baby, std::uint64_t seed);
std::string alice_record(const GameState& after, const BitString& leaf);
std::string pass_record(const GameState& s);
std::string baby_record(const GameState& after, const BabyReply& reply);
std::string rejection_record(const GameState& s, Rule rule);
std::string forfeit_record(const GameState& after);

struct MatchResult {
    GameState state;
    bool alice_passed = false;
    // PASS-TO-WIN agreed with the referee (or the strategy never passed).
    bool pass_consistent = true;
    std::optional<Rule> baby_rejection;
    std::vector<std::string> trace;

    bool alice_won() const { return state.status() == Status::AliceWon; }
    Rational cost() const { return betgames::cost(state); }
    Json summary() const;
};

MatchResult play_match(const GameSpec& spec, Strategy& alice, Adversary& baby, std::uint64_t seed = 0);

struct ReplayResult {
    bool identical = false;
    std::size_t mismatch_line = 0;  // 1-based, when not identical
    std::string detail;
    std::optional<GameState> state;
};

// Re-validates every record against the referee and re-renders it byte for byte.
ReplayResult replay_trace(const std::vector<std::string>& lines);
// Baby's replies in a trace, for the scripted adversary.
std::vector<BabyReply> scripted_replies(const std::vector<std::string>& lines);

}  // namespace betgames
