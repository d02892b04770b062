#pragma once

#include "betgames/referee.hpp"

#include <optional>
#include <vector>

namespace betgames {

// What a strategy sees: a window of the real game rooted at some prefix,
// possibly with a fictitious enumerated set, a rescaled threshold and a
// subset of Baby's components. Holds pointers into the game state, so it must
// not outlive the state it was built from.
class GameView {
public:
    static GameView of(const GameState& s);
    // A view over gales that no referee produced (the construction's roster sums).
    static GameView detached(const GaleVector* gales, int depth, Rational scale, std::vector<BitString> enumerated);

    int depth() const { return depth_; }
    const Rational& scale() const { return scale_; }
    bool has_reply() const { return gales_ != nullptr; }
    int components() const { return static_cast<int>(comps_.size()); }
    const BitString& root() const { return root_; }

    // Capital of the j-th visible component at a local string (0 before any reply).
    Rational value(int j, const BitString& local) const;
    Rational l1(const BitString& local) const;
    std::optional<int> policy(int j, const BitString& local) const;

    const std::vector<BitString>& enumerated() const { return enumerated_; }
    bool is_enumerated(const BitString& local) const;
    Rational cost() const;
    Rational cond_measure(const BitString& rho) const;

    // Window on [root]∩2^{≤depth} with its own enumerated set (local strings).
    GameView block(const BitString& local_root, int depth, std::vector<BitString> enumerated, Rational scale,
                   std::vector<int> comps = {}) const;
    // Window covering the rest of this view below local_root, keeping the real enumerations there.
    GameView real_block(const BitString& local_root, Rational scale, std::vector<int> comps = {}) const;

    // Deepest ρ (lexicographically first on ties) receiving winning attention for parameter a.
    std::optional<BitString> attention(const Rational& a) const;
    // Some prefix of the local string has combined capital ≥ threshold.
    bool prefix_caught(const BitString& local, const Rational& threshold) const;
    // Dynamic criterion at the window root: scale − l1(∅) ≤ scale·(1/a)(1 − cost).
    bool dynamic_won(const Rational& a) const;
    // Conditional variance of the visible components over the enumerated set.
    Rational enumerated_variance() const;

private:
    GameView() = default;
    void index_enumerated();

    const GaleVector* gales_ = nullptr;
    const std::vector<SidePolicy>* policies_ = nullptr;
    BitString root_;
    std::vector<int> comps_;
    int depth_ = 0;
    Rational scale_{1};
    std::vector<BitString> enumerated_;
    std::vector<char> member_;
};

}  // namespace betgames
