#pragma once

#include "betgames/view.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace betgames {

// A fresh leaf, or PASS-TO-WIN when the strategy believes the game is already won.
struct AliceMove {
    std::optional<BitString> leaf;
    static AliceMove pass() { return {}; }
    static AliceMove play(BitString s) { return {std::move(s)}; }
    bool is_pass() const { return !leaf; }
};

// An inner strategy stopped without producing the outcome its wrapper relies on.
class CompositionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Strategy {
public:
    virtual ~Strategy() = default;
    // Called once per Alice turn, with the view of the current state.
    virtual AliceMove next_move(const GameView& view) = 0;
    virtual std::string id() const = 0;
    virtual std::unique_ptr<Strategy> clone() const = 0;
    virtual Json cursor() const = 0;

    AliceMove next_move(const GameState& s) { return next_move(GameView::of(s)); }
};

using StrategyPtr = std::unique_ptr<Strategy>;
using StrategyFactory = std::function<StrategyPtr()>;

// Owning pointer that deep-copies, so composite strategies stay copyable.
class StrategyBox {
public:
    StrategyBox() = default;
    StrategyBox(StrategyPtr p) : p_(std::move(p)) {}
    StrategyBox(const StrategyBox& o) : p_(o.p_ ? o.p_->clone() : nullptr) {}
    StrategyBox(StrategyBox&&) noexcept = default;
    StrategyBox& operator=(StrategyBox o) noexcept {
        p_ = std::move(o.p_);
        return *this;
    }
    Strategy* operator->() const { return p_.get(); }
    Strategy& operator*() const { return *p_; }
    explicit operator bool() const { return p_ != nullptr; }
    void reset() { p_.reset(); }

private:
    StrategyPtr p_;
};

// Plays the listed leaves in order, skipping ones already enumerated, then passes.
StrategyPtr fixed_list_strategy(std::vector<BitString> leaves, std::string id = "");
StrategyPtr single_leaf_strategy(int n);
StrategyPtr half_block_strategy(int n);
StrategyPtr muchgale_strategy(int l, int i, int n);

StrategyPtr lex_variance_strategy(const Rational& a, const Rational& delta, int n);
// The cylinder roots e(α) of lex_variance_strategy, in play order.
std::vector<BitString> lex_block_roots(int n);

StrategyPtr variance_k1_strategy(const Rational& a, int m, bool switch_on_policy = true);

StrategyPtr nest(StrategyFactory outer, StrategyFactory inner, int n0, int n1, const Rational& c1);
StrategyPtr dynamic_to_fixed(StrategyFactory dyn, const Rational& a, const Rational& delta, int tilde_n, int n_sub);
StrategyPtr restricted_to_dynamic(StrategyFactory restricted, const Rational& a, const Rational& delta, int n_r,
                                  int hat_n);
StrategyPtr variance_to_restricted(StrategyFactory var, const Rational& a, const Rational& variance, int m, int levels);
StrategyPtr variance_induction(StrategyFactory sub, const Rational& a, const Rational& variance, int k, int m,
                               const Rational& hat_delta);

// Builds a strategy from its id; make_strategy(s->id()) reproduces s.
StrategyPtr make_strategy(const std::string& id);
StrategyFactory strategy_factory(const std::string& id);

struct PipelineParams {
    Rational target_c;
    Rational target_eps;
    Rational a;
    Rational delta;
    int k_iter = 1;
    int tilde_n = 0;
    int hat_n = 0;
    int n_lex = 0;
    Rational a_r;
    Rational delta_r;
    Rational eps_dyn;  // margin of the dynamic sub-strategy: its cost is at most 1 − eps_dyn
    int n_sub = 0;
    int n_total = 0;
    Rational delta_scale;  // 2^{−hat_n}

    Rational threshold() const;   // (1 − 2δ)^k_iter, the composed win threshold
    Rational cost_bound() const;  // (1 − aδ)^k_iter
    // Names of violated constraints; empty when every one holds exactly.
    std::vector<std::string> violations() const;
    GameSpec game() const;
    std::string strategy_id() const;
    Json to_json() const;
    static PipelineParams from_json(const Json& j);
};

class PipelineInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Pipeline {
    PipelineParams params;
    StrategyPtr strategy;
};

Pipeline build_pipeline(const Rational& target_c, const Rational& target_eps, int depth_budget = 14);

}  // namespace betgames
