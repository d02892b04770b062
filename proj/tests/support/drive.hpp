#pragma once

// Steps a strategy with no Baby reply until it passes, collecting its leaves.

#include "betgames/alice.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace drive {

inline std::vector<betgames::BitString> planned_leaves(betgames::Strategy& s, int n, std::size_t limit = 1u << 16) {
    std::vector<betgames::BitString> out;
    while (out.size() < limit) {
        auto view = betgames::GameView::detached(nullptr, n, betgames::Rational(1), out);
        auto mv = s.next_move(view);
        if (mv.is_pass()) break;
        out.push_back(*mv.leaf);
    }
    return out;
}

// Position of every leaf in `order`, keyed by value; -1 when never played.
inline std::vector<long> positions(const std::vector<betgames::BitString>& order, int n) {
    std::vector<long> pos(std::size_t(1) << n, -1);
    for (std::size_t t = 0; t < order.size(); ++t) pos[order[t].value()] = static_cast<long>(t);
    return pos;
}

inline std::vector<betgames::TernaryString> ternary_up_to(int depth) {
    std::vector<betgames::TernaryString> out;
    for (int d = 0; d <= depth; ++d)
        for (auto& a : betgames::ternary_lex_iter(d)) out.push_back(a);
    return out;
}

// Block order of a full enumeration of 2^n: for ρ = e(α), every leaf under
// ρ0 and ρ11 comes before any leaf under ρ10. Empty when it holds.
inline std::string block_order_problem(const std::vector<betgames::BitString>& order, int n) {
    using betgames::BitString;
    auto pos = positions(order, n);
    for (const auto& alpha : ternary_up_to(n / 2 - 1)) {
        BitString rho = betgames::ternary_embed(alpha);
        long last_b = -1, first_tau = static_cast<long>(pos.size());
        for (const char* tail : {"0", "11"})
            for (const auto& x : betgames::cylinder_leaves(rho.concat(BitString::parse(tail)), n)) {
                if (pos[x.value()] < 0) return "never enumerated: " + x.str();
                last_b = std::max(last_b, pos[x.value()]);
            }
        for (const auto& x : betgames::cylinder_leaves(rho.concat(BitString::parse("10")), n))
            if (pos[x.value()] >= 0) first_tau = std::min(first_tau, pos[x.value()]);
        if (last_b >= first_tau) return "order broken at alpha=" + betgames::ternary_str(alpha);
    }
    return "";
}

}  // namespace drive
