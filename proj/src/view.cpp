#include "betgames/view.hpp"

#include "betgames/stats.hpp"

#include <stdexcept>

namespace betgames {

GameView GameView::of(const GameState& s) {
    GameView v;
    v.gales_ = s.latest();
    v.policies_ = &s.policies();
    v.depth_ = s.spec().n;
    v.scale_ = s.spec().scale;
    for (int j = 0; j < s.spec().k; ++j) v.comps_.push_back(j);
    v.enumerated_ = s.enumerated();
    v.index_enumerated();
    return v;
}

GameView GameView::detached(const GaleVector* gales, int depth, Rational scale, std::vector<BitString> enumerated) {
    GameView v;
    v.gales_ = gales;
    v.depth_ = depth;
    v.scale_ = std::move(scale);
    if (gales)
        for (int j = 0; j < gales->k(); ++j) v.comps_.push_back(j);
    v.enumerated_ = std::move(enumerated);
    v.index_enumerated();
    return v;
}

void GameView::index_enumerated() {
    member_.assign(std::size_t{1} << depth_, 0);
    for (const auto& s : enumerated_) {
        if (s.size() != depth_) throw std::invalid_argument("view: enumerated string " + s.str() + " has the wrong length");
        member_[static_cast<std::size_t>(s.value())] = 1;
    }
}

Rational GameView::value(int j, const BitString& local) const {
    if (!gales_) return Rational(0);
    return (*gales_)[static_cast<std::size_t>(comps_[static_cast<std::size_t>(j)])](root_.concat(local));
}

Rational GameView::l1(const BitString& local) const {
    Rational sum = 0;
    if (!gales_) return sum;
    BitString abs = root_.concat(local);
    for (int c : comps_) sum += (*gales_)[static_cast<std::size_t>(c)](abs);
    return sum;
}

std::optional<int> GameView::policy(int j, const BitString& local) const {
    if (!policies_ || policies_->empty()) return std::nullopt;
    return (*policies_)[static_cast<std::size_t>(comps_[static_cast<std::size_t>(j)])].get(root_.concat(local));
}

bool GameView::is_enumerated(const BitString& local) const {
    return local.size() == depth_ && member_[static_cast<std::size_t>(local.value())] != 0;
}

Rational GameView::cost() const { return Rational(static_cast<long>(enumerated_.size())) * pow2(-depth_); }

Rational GameView::cond_measure(const BitString& rho) const {
    std::size_t under = 0;
    for (const auto& s : enumerated_)
        if (rho.is_prefix_of(s)) ++under;
    return Rational(static_cast<long>(under)) * pow2(rho.size() - depth_);
}

GameView GameView::block(const BitString& local_root, int depth, std::vector<BitString> enumerated, Rational scale,
                         std::vector<int> comps) const {
    if (local_root.size() + depth > depth_) throw std::invalid_argument("view block exceeds the parent window");
    GameView v;
    v.gales_ = gales_;
    v.policies_ = policies_;
    v.root_ = root_.concat(local_root);
    if (comps.empty()) {
        v.comps_ = comps_;
    } else {
        for (int c : comps) v.comps_.push_back(comps_[static_cast<std::size_t>(c)]);
    }
    v.depth_ = depth;
    v.scale_ = std::move(scale);
    v.enumerated_ = std::move(enumerated);
    v.index_enumerated();
    return v;
}

GameView GameView::real_block(const BitString& local_root, Rational scale, std::vector<int> comps) const {
    std::vector<BitString> inside;
    for (const auto& s : enumerated_)
        if (local_root.is_prefix_of(s)) inside.push_back(s.suffix_from(local_root.size()));
    return block(local_root, depth_ - local_root.size(), std::move(inside), std::move(scale), std::move(comps));
}

std::optional<BitString> GameView::attention(const Rational& a) const {
    const std::size_t nodes = (std::size_t{1} << (depth_ + 1)) - 1;
    const std::size_t first_leaf = (std::size_t{1} << depth_) - 1;
    std::vector<long> count(nodes, 0);
    for (const auto& s : enumerated_) ++count[first_leaf + static_cast<std::size_t>(s.value())];
    for (std::size_t i = first_leaf; i-- > 0;) count[i] = count[2 * i + 1] + count[2 * i + 2];
    for (int len = depth_; len >= 0; --len) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << len); ++x) {
            BitString rho(x, len);
            Rational cm = Rational(count[rho.heap_index()]) * pow2(len - depth_);
            if (cm >= 1) continue;
            if (attention_holds(scale_, a, l1(rho), cm)) return rho;
        }
    }
    return std::nullopt;
}

bool GameView::prefix_caught(const BitString& local, const Rational& threshold) const {
    for (int len = 0; len <= local.size(); ++len)
        if (l1(local.prefix(len)) >= threshold) return true;
    return false;
}

bool GameView::dynamic_won(const Rational& a) const {
    return scale_ - l1(BitString()) <= scale_ * (1 - cost()) / a;
}

Rational GameView::enumerated_variance() const {
    if (enumerated_.empty() || !gales_) return Rational(0);
    std::vector<GaleTree> comps;
    for (int j = 0; j < components(); ++j) {
        GaleTree m(depth_);
        for (std::size_t i = 0; i < m.node_count(); ++i) m.mutable_at_index(i) = value(j, BitString::from_heap_index(i));
        comps.push_back(std::move(m));
    }
    return cond_variance(GaleVector(std::move(comps)), PrefixFreeSet(enumerated_));
}

}  // namespace betgames
