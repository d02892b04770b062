#pragma once

#include "betgames/gales.hpp"
#include "betgames/serialize.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace betgames {

enum class GameKind {
    Sided,
    DynamicSided,
    RestrictedDynamicSided,
    PartialSided,
    DynamicPartial,
    RestrictedDynamicPartial,
    VariancePartial,
    ClassGame,
    VarianceClassGame,
};

struct GameSpec {
    GameKind kind = GameKind::Sided;
    Rational c{0};
    Rational d{1};
    Rational a{1};
    Rational delta{0};
    Rational variance{0};  // Δ of the variance games
    int n = 1;              // leaf depth (n, or m for variance games)
    int k = 2;
    std::optional<GaleClass> cls;
    Rational scale{1};

    static GameSpec sided(Rational c, Rational d, int n);
    static GameSpec dynamic_sided(Rational a, int n);
    static GameSpec restricted(Rational a, Rational delta, int n);
    static GameSpec partial_sided(Rational c, int n, int k);
    static GameSpec dynamic_partial(Rational a, int n, int k);
    static GameSpec restricted_partial(Rational a, Rational delta, int n, int k);
    static GameSpec variance_partial(Rational a, Rational variance, int m, int k);
    static GameSpec class_game(GaleClass cls, Rational c, int n, int k);
    static GameSpec variance_class(GaleClass cls, Rational a, Rational variance, int m, int k);

    GameSpec with_scale(Rational s) const;
    // Throws std::invalid_argument naming the broken invariant.
    void validate() const;

    bool partial() const;
    bool sided_layout() const;   // fixed 0-sided/1-sided pair
    bool class_kind() const;
    bool has_a() const;          // dynamic-family win criterion
    bool restricted_kind() const;
    bool variance_kind() const;
    bool catch_at_leaf() const;
    Rational catch_threshold() const;  // already multiplied by scale

    std::string id() const;
    static GameSpec parse(const std::string& id);
};

enum class Status { Ongoing, AliceWon, InvalidBaby, Exhausted };
enum class WinCriterion { None, Threshold, TypeA, TypeB };
enum class Rule { Supermartingale, Sidedness, PolicyRetraction, Class, Domination, Catching, RestrictionI, RestrictionII };
enum class Turn { Alice, Baby };

std::string status_name(Status s);
std::string criterion_name(WinCriterion c);
std::string rule_name(Rule r);

// Misuse of the game API (wrong turn, stale leaf, game over).
class GameError : public std::runtime_error {
public:
    GameError(std::string code, const std::string& what) : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct BabyOutcome;

class GameState {
public:
    const GameSpec& spec() const { return spec_; }
    int round() const { return static_cast<int>(history_.size()); }
    const std::vector<BitString>& enumerated() const { return enumerated_; }
    bool is_enumerated(const BitString& s) const;
    // nullptr until Baby's first accepted move.
    const GaleVector* latest() const { return history_.empty() ? nullptr : history_.back().get(); }
    const std::vector<std::shared_ptr<const GaleVector>>& history() const { return history_; }
    const std::vector<SidePolicy>& policies() const { return policies_; }
    Status status() const { return status_; }
    WinCriterion criterion() const { return criterion_; }
    const std::string& forfeit_reason() const { return forfeit_reason_; }
    Turn turn() const { return turn_; }
    // Kaster games: per component, per internal node, bit 1 = left strict seen, bit 2 = right strict seen.
    const std::vector<std::shared_ptr<const std::vector<char>>>& orientation() const { return orientation_; }

private:
    friend GameState new_game(const GameSpec& spec);
    friend GameState alice_move(const GameState& s, const BitString& sigma);
    friend BabyOutcome baby_move(const GameState& s, const GaleVector& v,
                                 const std::optional<std::vector<SidePolicy>>& p);
    friend GameState forfeit(const GameState& s, const std::string& reason);

    GameSpec spec_;
    std::vector<BitString> enumerated_;
    std::shared_ptr<std::vector<char>> membership_;  // leaf index → enumerated (copy on write)
    std::vector<std::shared_ptr<const GaleVector>> history_;
    std::vector<SidePolicy> policies_;
    // Kaster orientation seen so far per component and internal node: bit 1 = left strict, 2 = right strict.
    std::vector<std::shared_ptr<const std::vector<char>>> orientation_;
    Status status_ = Status::Ongoing;
    WinCriterion criterion_ = WinCriterion::None;
    Turn turn_ = Turn::Alice;
    std::string forfeit_reason_;
};

struct BabyOutcome {
    GameState state;
    std::optional<Rule> rejection;
    std::string detail;
    bool accepted() const { return !rejection; }
};

GameState new_game(const GameSpec& spec);
GameState alice_move(const GameState& s, const BitString& sigma);
BabyOutcome baby_move(const GameState& s, const GaleVector& v,
                      const std::optional<std::vector<SidePolicy>>& p = std::nullopt);
// Records that Baby had no valid move.
GameState forfeit(const GameState& s, const std::string& reason);

// Evaluates the win criteria on the latest snapshot.
std::pair<Status, WinCriterion> check_win(const GameState& s);
bool winning_attention(const GameState& s, const BitString& rho);
Rational cost(const GameState& s);
// Some prefix (or the leaf itself, in leaf-catching games) reaches the catch threshold.
bool is_caught(const GameState& s, const GaleVector& v, const BitString& sigma);

// Shared criterion used by the referee and by strategy views.
bool attention_holds(const Rational& scale, const Rational& a, const Rational& l1, const Rational& cond_measure);

Json to_json(const GameSpec& spec);

}  // namespace betgames
