#pragma once

#include "betgames/alice.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace betgames {

// A roster member stands in for one pair (M_{0,j}, M_{1,j}) of the effective
// list: a 0-sided and a 1-sided gale on the full construction depth.
struct RosterMember {
    enum class Kind { Zero, Scripted, Greedy };
    Kind kind = Kind::Zero;
    // Scripted: snapshot at construction step t is script[min(t, size-1)].
    std::vector<GaleVector> script;

    static RosterMember zero() { return {}; }
    static RosterMember greedy() { return {Kind::Greedy, {}}; }
    static RosterMember scripted(std::vector<GaleVector> script) { return {Kind::Scripted, std::move(script)}; }
    std::string name() const;
};

struct ConstructionConfig {
    std::vector<int> depths;  // n_0..n_{K-1}
    std::vector<Rational> c, d, delta;
    std::vector<RosterMember> roster;  // member j enters at level j
    std::string strategy = "half-block";  // level strategy family
    std::string ladder = "half";

    int levels() const { return static_cast<int>(depths.size()); }
    int total_depth() const;
    int depth_through(int k) const;  // n_0 + ... + n_k

    // Ladders: "half" (d_k = 2c_k, c_{k+1} = 5c_k/2) or "unit" (c_k = 1 − 2^{−k−2}).
    static ConstructionConfig with_ladder(const std::string& ladder, std::vector<int> depths);
    // key=value lines: levels, depths, ladder, c, d, delta, roster, strategy.
    static ConstructionConfig parse(const std::string& text);
    // Roster member 0 catches 0^{n_0} once level 1 has started; forces one backtrack.
    static ConstructionConfig backtrack_fixture();

    // Threshold and margin violations; empty when the ladder is usable.
    std::vector<std::string> violations() const;
    Json to_json() const;
};

class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConstructionResult {
    BitString prefix;
    std::vector<std::vector<BitString>> V;        // V_k, in enumeration order
    std::vector<Rational> level_certificate;     // max over the level's segment of Σ_{j≤k} l1_j
    std::vector<Rational> prefix_certificate;    // Σ_j l1_j(x↾m) for m = 0..|prefix|
    std::vector<GaleVector> roster_final;
    int backtracks = 0;
    int steps = 0;
    std::vector<std::string> events;  // JSON lines
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
    Json bundle(const ConstructionConfig& cfg) const;
};

class Construction {
public:
    explicit Construction(ConstructionConfig cfg);

    bool complete() const;
    void step();
    ConstructionResult run(int max_steps = 100000);

private:
    struct Level {
        BitString root;
        StrategyBox strategy;
        std::vector<BitString> local;
        std::optional<BitString> candidate;
    };

    Rational sum_l1(int upto, const BitString& node) const;
    bool caught(int k) const;
    void respond(int k, const BitString& sigma);
    void log(const std::string& event, int level, const std::optional<BitString>& s);
    GaleVector level_gales(int k) const;

    ConstructionConfig cfg_;
    std::vector<GaleVector> members_;
    std::vector<Level> levels_;
    std::vector<std::vector<BitString>> V_;
    int step_ = 0;
    int backtracks_ = 0;
    std::vector<std::string> events_;
};

ConstructionResult run_construction(const ConstructionConfig& cfg, int max_steps = 100000);

}  // namespace betgames
