#include "betgames/alice.hpp"

#include "betgames/params.hpp"

#include <algorithm>
#include <limits>

namespace betgames {

namespace {

void require_depth(const GameView& v, int n, const std::string& who) {
    if (v.depth() != n)
        throw std::invalid_argument(who + ": game depth " + std::to_string(v.depth()) + " does not match strategy depth " +
                                    std::to_string(n));
}

std::optional<BitString> first_free(const GameView& v, const std::vector<BitString>& candidates) {
    for (const auto& s : candidates)
        if (!v.is_enumerated(s)) return s;
    return std::nullopt;
}

// Next unenumerated leaf outside [rho], lexicographic.
AliceMove play_outside(const GameView& v, const BitString& rho) {
    auto rest = complement_leaves(rho, v.depth(), v.enumerated());
    if (rest.empty()) return AliceMove::pass();
    return AliceMove::play(rest.front());
}

AliceMove play_inside(const GameView& v, const BitString& rho) {
    auto s = first_free(v, cylinder_leaves(rho, v.depth()));
    return s ? AliceMove::play(*s) : AliceMove::pass();
}

Json opt_json(const std::optional<BitString>& s) { return s ? Json(s->str()) : Json(nullptr); }

std::string wrap(const std::string& id) { return "(" + id + ")"; }

std::string unwrap(std::string s) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
    return s;
}

std::string leaf_str(const BitString& s) { return s.empty() ? "-" : s.str(); }

BitString parse_leaf(const std::string& s) { return s == "-" ? BitString() : BitString::parse(s); }

// ---- lists ------------------------------------------------------------------

class FixedList final : public Strategy {
public:
    FixedList(std::vector<BitString> leaves, std::string id) : leaves_(std::move(leaves)), id_(std::move(id)) {
        for (const auto& s : leaves_)
            if (s.size() != leaves_.front().size()) throw std::invalid_argument("fixed list: leaves differ in length");
        if (id_.empty()) {
            id_ = "fixed:leaves=";
            for (std::size_t i = 0; i < leaves_.size(); ++i) id_ += (i ? ";" : "") + leaf_str(leaves_[i]);
        }
    }

    AliceMove next_move(const GameView& v) override {
        if (!leaves_.empty()) require_depth(v, leaves_.front().size(), id_);
        while (pos_ < leaves_.size() && v.is_enumerated(leaves_[pos_])) ++pos_;
        if (pos_ == leaves_.size()) return AliceMove::pass();
        return AliceMove::play(leaves_[pos_]);
    }
    std::string id() const override { return id_; }
    StrategyPtr clone() const override { return std::make_unique<FixedList>(*this); }
    Json cursor() const override { return Json{{"pos", pos_}}; }

private:
    std::vector<BitString> leaves_;
    std::string id_;
    std::size_t pos_ = 0;
};

// ---- lexicographic variance strategy -------------------------------------------

class LexVariance final : public Strategy {
public:
    LexVariance(Rational a, Rational delta, int n) : a_(std::move(a)), delta_(std::move(delta)), n_(n) {
        if (n < 2 || n % 2) throw std::invalid_argument("lex-variance: n must be even and at least 2");
        if (a_ <= 0) throw std::invalid_argument("lex-variance: a must be positive");
        for (const auto& root : lex_block_roots(n))
            for (auto& s : cylinder_leaves(root, n)) order_.push_back(std::move(s));
    }

    AliceMove next_move(const GameView& v) override {
        require_depth(v, n_, "lex-variance");
        if (!focus_ && v.has_reply()) focus_ = v.attention(a_);
        if (focus_) return play_outside(v, *focus_);
        while (pos_ < order_.size() && v.is_enumerated(order_[pos_])) ++pos_;
        if (pos_ == order_.size()) return AliceMove::pass();
        return AliceMove::play(order_[pos_]);
    }
    std::string id() const override {
        return "lex-variance:a=" + to_string(a_) + ",delta=" + to_string(delta_) + ",n=" + std::to_string(n_);
    }
    StrategyPtr clone() const override { return std::make_unique<LexVariance>(*this); }
    Json cursor() const override { return Json{{"pos", pos_}, {"focus", opt_json(focus_)}}; }

private:
    Rational a_, delta_;
    int n_;
    std::vector<BitString> order_;
    std::size_t pos_ = 0;
    std::optional<BitString> focus_;
};

// ---- k = 1 variance strategy -----------------------------------------------------

class VarianceK1 final : public Strategy {
public:
    VarianceK1(Rational a, int m, bool switch_on_policy) : a_(std::move(a)), m_(m), switch_(switch_on_policy) {
        if (m < 1) throw std::invalid_argument("variance-k1: m must be positive");
        for (auto& s : cylinder_leaves(BitString(1, 1), m))
            if (s != BitString::ones(m)) list_.push_back(std::move(s));
    }

    AliceMove next_move(const GameView& v) override {
        require_depth(v, m_, "variance-k1");
        if (switch_ && !side_) {
            if (auto p = v.policy(0, BitString())) side_ = 1 - *p;
        }
        if (side_) return play_inside(v, BitString(static_cast<std::uint64_t>(*side_), 1));
        auto s = first_free(v, list_);
        return s ? AliceMove::play(*s) : AliceMove::pass();
    }
    std::string id() const override {
        return "variance-k1:a=" + to_string(a_) + ",m=" + std::to_string(m_) + (switch_ ? "" : ",switch=0");
    }
    StrategyPtr clone() const override { return std::make_unique<VarianceK1>(*this); }
    Json cursor() const override { return Json{{"side", side_ ? Json(*side_) : Json(nullptr)}}; }

private:
    Rational a_;
    int m_;
    bool switch_;
    std::vector<BitString> list_;
    std::optional<int> side_;
};

// ---- nest ----------------------------------------------------------------------------

class Nest final : public Strategy {
public:
    Nest(StrategyFactory outer, StrategyFactory inner, int n0, int n1, Rational c1)
        : outer_(outer()), inner_factory_(std::move(inner)), n0_(n0), n1_(n1), c1_(std::move(c1)) {
        if (n0 < 1 || n1 < 0) throw std::invalid_argument("nest: bad depths");
        if (c1_ <= 0 || c1_ > 1) throw std::invalid_argument("nest: c1 must lie in (0,1]");
        inner_id_ = inner_factory_()->id();
    }

    AliceMove next_move(const GameView& v) override {
        require_depth(v, n0_ + n1_, "nest");
        const Rational thr = v.scale() * c1_;
        for (;;) {
            if (block_) {
                if (v.prefix_caught(*block_, thr)) {
                    block_.reset();
                    inner_.reset();
                    continue;
                }
                AliceMove mv = inner_->next_move(v.real_block(*block_, v.scale()));
                if (mv.is_pass())
                    throw CompositionFailure("nest: inner strategy passed on block '" + block_->str() +
                                             "' without a catch at c1");
                return AliceMove::play(block_->concat(*mv.leaf));
            }
            AliceMove mv = outer_->next_move(v.block(BitString(), n0_, fict_, thr));
            if (mv.is_pass()) return mv;
            fict_.push_back(*mv.leaf);
            block_ = *mv.leaf;
            inner_ = inner_factory_();
        }
    }
    std::string id() const override {
        return "nest:outer=" + wrap(outer_->id()) + ",inner=" + wrap(inner_id_) + ",n0=" + std::to_string(n0_) +
               ",n1=" + std::to_string(n1_) + ",c1=" + to_string(c1_);
    }
    StrategyPtr clone() const override { return std::make_unique<Nest>(*this); }
    Json cursor() const override {
        Json fict = Json::array();
        for (const auto& s : fict_) fict.push_back(s.str());
        return Json{{"outer", outer_->cursor()},
                    {"fictitious", fict},
                    {"block", opt_json(block_)},
                    {"inner", inner_ ? inner_->cursor() : Json(nullptr)}};
    }

private:
    StrategyBox outer_;
    StrategyFactory inner_factory_;
    std::string inner_id_;
    int n0_, n1_;
    Rational c1_;
    std::vector<BitString> fict_;
    std::optional<BitString> block_;
    StrategyBox inner_;
};

// ---- dynamic goal to fixed goal ---------------------------------------------------------

class DynamicToFixed final : public Strategy {
public:
    DynamicToFixed(StrategyFactory dyn, Rational a, Rational delta, int tilde_n, int n_sub)
        : dyn_factory_(std::move(dyn)), a_(std::move(a)), delta_(std::move(delta)), tilde_n_(tilde_n), n_sub_(n_sub) {
        if (tilde_n < 0 || n_sub < 0) throw std::invalid_argument("dynamic-to-fixed: bad depths");
        if (a_ <= 0 || delta_ <= 0) throw std::invalid_argument("dynamic-to-fixed: a and delta must be positive");
        dyn_id_ = dyn_factory_()->id();
        blocks_ = all_strings(tilde_n);
    }

    AliceMove next_move(const GameView& v) override {
        require_depth(v, tilde_n_ + n_sub_, "dynamic-to-fixed");
        const Rational& s = v.scale();
        for (;;) {
            if (finishing_) {
                for (std::size_t b = next_block_; b < blocks_.size(); ++b) {
                    AliceMove mv = play_inside(v, blocks_[b]);
                    if (!mv.is_pass()) return mv;
                }
                return AliceMove::pass();
            }
            if (dyn_) {
                const BitString& rho = blocks_[next_block_ - 1];
                GameView sub = v.real_block(rho, s);
                if (v.prefix_caught(rho, s) || sub.dynamic_won(a_)) {
                    dyn_.reset();
                    acc_ += pow2(-tilde_n_) * (1 - sub.cost());
                    if (acc_ > 2 * a_ * delta_)
                        throw std::logic_error("dynamic-to-fixed: accumulator " + to_string(acc_) + " overshoots 2a*delta");
                    if (acc_ >= a_ * delta_) finishing_ = true;
                    continue;
                }
                AliceMove mv = dyn_->next_move(sub);
                if (mv.is_pass())
                    throw CompositionFailure("dynamic-to-fixed: dynamic strategy passed on block '" + rho.str() +
                                             "' before its criterion held");
                return AliceMove::play(rho.concat(*mv.leaf));
            }
            if (next_block_ == blocks_.size()) {
                finishing_ = true;
                continue;
            }
            ++next_block_;
            dyn_ = dyn_factory_();
        }
    }
    std::string id() const override {
        return "dynamic-to-fixed:dyn=" + wrap(dyn_id_) + ",a=" + to_string(a_) + ",delta=" + to_string(delta_) +
               ",tilde_n=" + std::to_string(tilde_n_) + ",n_sub=" + std::to_string(n_sub_);
    }
    StrategyPtr clone() const override { return std::make_unique<DynamicToFixed>(*this); }
    Json cursor() const override {
        return Json{{"blocks_started", next_block_},
                    {"accumulator", to_string(acc_)},
                    {"finishing", finishing_},
                    {"dyn", dyn_ ? dyn_->cursor() : Json(nullptr)}};
    }
    const Rational& accumulator() const { return acc_; }

private:
    StrategyFactory dyn_factory_;
    std::string dyn_id_;
    Rational a_, delta_;
    int tilde_n_, n_sub_;
    std::vector<BitString> blocks_;
    std::size_t next_block_ = 0;  // blocks_[next_block_-1] is active while dyn_ is set
    StrategyBox dyn_;
    Rational acc_{0};
    bool finishing_ = false;
};

// ---- restricted game to dynamic game ---------------------------------------------------------

class RestrictedToDynamic final : public Strategy {
public:
    RestrictedToDynamic(StrategyFactory restricted, Rational a, Rational delta, int n_r, int hat_n)
        : inner_(restricted()), a_(std::move(a)), delta_(std::move(delta)), n_r_(n_r), hat_n_(hat_n) {
        if (hat_n < 1) throw std::invalid_argument("restricted-to-dynamic: hat_n must be at least 1");
        if (n_r < 1) throw std::invalid_argument("restricted-to-dynamic: n_r must be positive");
    }

    AliceMove next_move(const GameView& v) override {
        require_depth(v, n_r_ + hat_n_, "restricted-to-dynamic");
        if (!focus_ && v.has_reply()) focus_ = v.attention(a_ / 2);
        if (focus_) return play_outside(v, *focus_);
        while (pend_ < pending_.size() && v.is_enumerated(pending_[pend_])) ++pend_;
        if (pend_ < pending_.size()) return AliceMove::play(pending_[pend_]);

        const Rational fict_scale = v.scale() * (1 - pow2(-hat_n_));
        AliceMove mv = inner_->next_move(v.block(BitString(), n_r_, fict_, fict_scale));
        if (mv.is_pass()) return mv;
        const BitString tau = *mv.leaf;
        fict_.push_back(tau);
        const BitString reserved = tau.concat(BitString::zeros(hat_n_));
        pending_.clear();
        for (auto& s : cylinder_leaves(tau, n_r_ + hat_n_))
            if (s != reserved) pending_.push_back(std::move(s));
        pend_ = 0;
        return AliceMove::play(pending_.front());
    }
    std::string id() const override {
        return "restricted-to-dynamic:inner=" + wrap(inner_->id()) + ",a=" + to_string(a_) + ",delta=" +
               to_string(delta_) + ",n_r=" + std::to_string(n_r_) + ",hat_n=" + std::to_string(hat_n_);
    }
    StrategyPtr clone() const override { return std::make_unique<RestrictedToDynamic>(*this); }
    Json cursor() const override {
        Json fict = Json::array();
        for (const auto& s : fict_) fict.push_back(s.str());
        return Json{{"inner", inner_->cursor()}, {"fictitious", fict}, {"pending", pending_.size() - pend_},
                    {"focus", opt_json(focus_)}};
    }

private:
    StrategyBox inner_;
    Rational a_, delta_;
    int n_r_, hat_n_;
    std::vector<BitString> fict_;
    std::vector<BitString> pending_;
    std::size_t pend_ = 0;
    std::optional<BitString> focus_;
};

// ---- variance strategy to restricted game ---------------------------------------------------

class VarianceToRestricted final : public Strategy {
public:
    VarianceToRestricted(StrategyFactory var, Rational a, Rational variance, int m, int levels)
        : factory_(std::move(var)), a_(std::move(a)), variance_(std::move(variance)), m_(m), levels_(levels) {
        if (levels < 1) throw std::invalid_argument("variance-to-restricted: recursion depth 0");
        if (m < 1) throw std::invalid_argument("variance-to-restricted: m must be positive");
        var_id_ = factory_()->id();
        stack_.push_back(Frame{BitString(), levels, factory_(), {}, false});
    }

    AliceMove next_move(const GameView& v) override {
        require_depth(v, m_ * levels_, "variance-to-restricted");
        if (!focus_ && v.has_reply()) focus_ = v.attention(a_);
        if (focus_) return play_outside(v, *focus_);
        const Rational& s = v.scale();
        while (!stack_.empty()) {
            Frame& f = stack_.back();
            if (!f.finishing) {
                GameView top = f.level == 1 ? v.real_block(f.root, s) : v.block(f.root, m_, f.fict, s);
                bool won = top.has_reply() &&
                           (top.dynamic_won(a_) || top.enumerated_variance() >= s * s * variance_);
                if (!won) {
                    AliceMove mv = f.var->next_move(top);
                    if (!mv.is_pass()) {
                        BitString leaf = f.root.concat(*mv.leaf);
                        if (f.level == 1) return AliceMove::play(leaf);
                        f.fict.push_back(*mv.leaf);
                        int level = f.level - 1;
                        stack_.push_back(Frame{leaf, level, factory_(), {}, false});
                        continue;
                    }
                }
                f.finishing = true;
            }
            AliceMove mv = play_inside(v, f.root);
            if (!mv.is_pass()) return mv;
            stack_.pop_back();
        }
        return AliceMove::pass();
    }
    std::string id() const override {
        return "variance-to-restricted:var=" + wrap(var_id_) + ",a=" + to_string(a_) + ",Delta=" +
               to_string(variance_) + ",m=" + std::to_string(m_) + ",l=" + std::to_string(levels_);
    }
    StrategyPtr clone() const override { return std::make_unique<VarianceToRestricted>(*this); }
    Json cursor() const override {
        Json frames = Json::array();
        for (const auto& f : stack_)
            frames.push_back(Json{{"root", f.root.str()}, {"level", f.level}, {"finishing", f.finishing}});
        return Json{{"frames", frames}, {"focus", opt_json(focus_)}};
    }

private:
    struct Frame {
        BitString root;
        int level;
        StrategyBox var;
        std::vector<BitString> fict;
        bool finishing;
    };
    StrategyFactory factory_;
    std::string var_id_;
    Rational a_, variance_;
    int m_, levels_;
    std::vector<Frame> stack_;
    std::optional<BitString> focus_;
};

// ---- induction on k for the variance game -----------------------------------------------------

class VarianceInduction final : public Strategy {
public:
    VarianceInduction(StrategyFactory sub, Rational a, Rational variance, int k, int m, Rational hat_delta)
        : factory_(std::move(sub)), a_(std::move(a)), variance_(std::move(variance)), k_(k), m_(m),
          hat_delta_(std::move(hat_delta)) {
        if (k < 2) throw std::invalid_argument("variance-induction: k must be at least 2");
        if (m < 2 || m % 2) throw std::invalid_argument("variance-induction: m must be even and at least 2");
        sub_id_ = factory_()->id();
        blocks_ = all_strings(m / 2);
        for (int j = 1; j < k; ++j) rest_.push_back(j);
    }

    AliceMove next_move(const GameView& v) override {
        require_depth(v, m_, "variance-induction");
        const Rational& s = v.scale();
        if (v.has_reply() && !v.enumerated().empty()) {
            if (!c0_) c0_ = v.value(0, v.enumerated().front()) / s;
            if (v.dynamic_won(a_) || v.enumerated_variance() >= s * s * variance_) return AliceMove::pass();
        }
        const Rational c0 = c0_ ? *c0_ : Rational(0);
        for (;;) {
            if (phase_ == 1) {
                const Rational scale1 = s * (1 - c0 - hat_delta_);
                if (scale1 <= 0) {
                    phase_ = 2;
                    continue;
                }
                if (realizing_) {
                    AliceMove mv = play_inside(v, *realizing_);
                    if (!mv.is_pass()) return mv;
                    realizing_.reset();
                }
                if (!sub_) sub_ = factory_();
                AliceMove mv = sub_->next_move(v.block(BitString(), m_ / 2, fict_, scale1, rest_));
                if (mv.is_pass()) {
                    sub_.reset();
                    phase_ = 2;
                    continue;
                }
                fict_.push_back(*mv.leaf);
                realizing_ = *mv.leaf;
                continue;
            }
            if (phase_ == 2) {
                const Rational scale2 = s * (c0 - hat_delta_);
                if (scale2 <= 0) {
                    phase_ = 3;
                    continue;
                }
                if (!sub_) {
                    while (next_block_ < blocks_.size() &&
                           std::find(fict_.begin(), fict_.end(), blocks_[next_block_]) != fict_.end())
                        ++next_block_;
                    if (next_block_ == blocks_.size()) {
                        phase_ = 3;
                        continue;
                    }
                    sub_ = factory_();
                    ++next_block_;
                }
                const BitString& rho = blocks_[next_block_ - 1];
                AliceMove mv = sub_->next_move(v.real_block(rho, scale2, {0}));
                if (mv.is_pass()) {
                    sub_.reset();
                    continue;
                }
                return AliceMove::play(rho.concat(*mv.leaf));
            }
            return AliceMove::pass();
        }
    }
    std::string id() const override {
        return "variance-induction:sub=" + wrap(sub_id_) + ",a=" + to_string(a_) + ",Delta=" + to_string(variance_) +
               ",k=" + std::to_string(k_) + ",m=" + std::to_string(m_) + ",hat_Delta=" + to_string(hat_delta_);
    }
    StrategyPtr clone() const override { return std::make_unique<VarianceInduction>(*this); }
    Json cursor() const override {
        return Json{{"phase", phase_},
                    {"c0", c0_ ? Json(to_string(*c0_)) : Json(nullptr)},
                    {"treated", fict_.size()},
                    {"block", next_block_}};
    }

private:
    StrategyFactory factory_;
    std::string sub_id_;
    Rational a_, variance_;
    int k_, m_;
    Rational hat_delta_;
    std::vector<BitString> blocks_;
    std::vector<int> rest_;
    int phase_ = 1;
    std::optional<Rational> c0_;
    std::vector<BitString> fict_;
    std::optional<BitString> realizing_;
    std::size_t next_block_ = 0;
    StrategyBox sub_;
};

}  // namespace

// ---- constructors -------------------------------------------------------------------

StrategyPtr fixed_list_strategy(std::vector<BitString> leaves, std::string id) {
    return std::make_unique<FixedList>(std::move(leaves), std::move(id));
}

StrategyPtr single_leaf_strategy(int n) {
    return fixed_list_strategy({BitString::zeros(n)}, "single-leaf:n=" + std::to_string(n));
}

StrategyPtr half_block_strategy(int n) {
    if (n < 1) throw std::invalid_argument("half-block: n must be positive");
    return fixed_list_strategy(cylinder_leaves(BitString(0, 1), n), "half-block:n=" + std::to_string(n));
}

StrategyPtr muchgale_strategy(int l, int i, int n) {
    if (!(0 <= i && i < l && l <= n)) throw std::invalid_argument("muchgale strategy needs i < l <= n");
    std::vector<BitString> leaves;
    for (auto& s : all_strings(n))
        if (s[i] == 0) leaves.push_back(std::move(s));
    return fixed_list_strategy(std::move(leaves),
                               "muchgale:l=" + std::to_string(l) + ",i=" + std::to_string(i) + ",n=" + std::to_string(n));
}

std::vector<BitString> lex_block_roots(int n) {
    if (n < 2 || n % 2) throw std::invalid_argument("lex blocks need an even n >= 2");
    std::vector<BitString> roots;
    for (const auto& alpha : ternary_lex_iter(n / 2)) roots.push_back(ternary_embed(alpha));
    return roots;
}

StrategyPtr lex_variance_strategy(const Rational& a, const Rational& delta, int n) {
    return std::make_unique<LexVariance>(a, delta, n);
}

StrategyPtr variance_k1_strategy(const Rational& a, int m, bool switch_on_policy) {
    return std::make_unique<VarianceK1>(a, m, switch_on_policy);
}

StrategyPtr nest(StrategyFactory outer, StrategyFactory inner, int n0, int n1, const Rational& c1) {
    return std::make_unique<Nest>(std::move(outer), std::move(inner), n0, n1, c1);
}

StrategyPtr dynamic_to_fixed(StrategyFactory dyn, const Rational& a, const Rational& delta, int tilde_n, int n_sub) {
    return std::make_unique<DynamicToFixed>(std::move(dyn), a, delta, tilde_n, n_sub);
}

StrategyPtr restricted_to_dynamic(StrategyFactory restricted, const Rational& a, const Rational& delta, int n_r,
                                  int hat_n) {
    return std::make_unique<RestrictedToDynamic>(std::move(restricted), a, delta, n_r, hat_n);
}

StrategyPtr variance_to_restricted(StrategyFactory var, const Rational& a, const Rational& variance, int m, int levels) {
    return std::make_unique<VarianceToRestricted>(std::move(var), a, variance, m, levels);
}

StrategyPtr variance_induction(StrategyFactory sub, const Rational& a, const Rational& variance, int k, int m,
                               const Rational& hat_delta) {
    return std::make_unique<VarianceInduction>(std::move(sub), a, variance, k, m, hat_delta);
}

// ---- registry -------------------------------------------------------------------------

StrategyFactory strategy_factory(const std::string& id) {
    make_strategy(id);  // fail early on bad ids
    return [id] { return make_strategy(id); };
}

StrategyPtr make_strategy(const std::string& id) {
    auto p = ParamList::parse(id);
    const auto& name = p.name();
    auto sub = [&p](const std::string& key) { return strategy_factory(unwrap(p.str(key))); };
    if (name == "fixed") {
        std::vector<BitString> leaves;
        std::string all = p.str("leaves", "");
        std::size_t start = 0;
        while (start <= all.size() && !all.empty()) {
            auto end = all.find(';', start);
            if (end == std::string::npos) end = all.size();
            leaves.push_back(parse_leaf(all.substr(start, end - start)));
            start = end + 1;
        }
        return fixed_list_strategy(std::move(leaves));
    }
    if (name == "single-leaf") return single_leaf_strategy(p.integer("n"));
    if (name == "half-block") return half_block_strategy(p.integer("n"));
    if (name == "muchgale") return muchgale_strategy(p.integer("l"), p.integer("i"), p.integer("n"));
    if (name == "lex-variance") return lex_variance_strategy(p.rational("a"), p.rational("delta"), p.integer("n"));
    if (name == "variance-k1") return variance_k1_strategy(p.rational("a"), p.integer("m"), p.integer("switch", 1) != 0);
    if (name == "nest")
        return nest(sub("outer"), sub("inner"), p.integer("n0"), p.integer("n1"), p.rational("c1"));
    if (name == "dynamic-to-fixed")
        return dynamic_to_fixed(sub("dyn"), p.rational("a"), p.rational("delta"), p.integer("tilde_n"),
                                p.integer("n_sub"));
    if (name == "restricted-to-dynamic")
        return restricted_to_dynamic(sub("inner"), p.rational("a"), p.rational("delta"), p.integer("n_r"),
                                     p.integer("hat_n"));
    if (name == "variance-to-restricted")
        return variance_to_restricted(sub("var"), p.rational("a"), p.rational("Delta"), p.integer("m"), p.integer("l"));
    if (name == "variance-induction")
        return variance_induction(sub("sub"), p.rational("a"), p.rational("Delta"), p.integer("k"), p.integer("m"),
                                  p.rational("hat_Delta"));
    if (name == "pipeline")
        return build_pipeline(p.rational("c"), p.rational("eps"), p.integer("budget", 14)).strategy;
    throw std::invalid_argument("unknown strategy: " + name);
}

// ---- pipeline -------------------------------------------------------------------------

namespace {

Rational qpow(const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

Rational dyn_margin(const Rational& a, int n_sub) {
    // With a ≤ 1 the first caught leaf already meets the dynamic criterion.
    return a <= 1 ? 1 - pow2(-n_sub) : pow2(-n_sub);
}

}  // namespace

Rational PipelineParams::threshold() const { return qpow(1 - 2 * delta, k_iter); }

Rational PipelineParams::cost_bound() const { return qpow(1 - a * delta, k_iter); }

std::vector<std::string> PipelineParams::violations() const {
    std::vector<std::string> out;
    auto need = [&out](bool ok, const char* what) {
        if (!ok) out.emplace_back(what);
    };
    need(target_c > 0 && target_c < 1, "0 < target_c < 1");
    need(target_eps > 0, "target_eps > 0");
    need(a > 0 && delta > 0 && delta < Rational(1, 2), "a > 0, 0 < delta < 1/2");
    need(k_iter >= 1, "k_iter >= 1");
    need(cost_bound() <= target_eps, "(1-a*delta)^k <= eps");
    need(qpow(1 - delta, k_iter) >= target_c, "(1-delta)^k >= c");
    need(threshold() >= target_c, "(1-2*delta)^k >= c");
    need(eps_dyn == dyn_margin(a, n_sub), "eps_dyn matches the dynamic margin");
    need(delta <= eps_dyn / (2 * a), "delta <= eps_dyn/(2a)");
    need(pow2(-tilde_n) < a * delta, "2^-tilde_n < a*delta");
    need(a_r == 2 * a, "a_r = 2a");
    need(n_lex >= 2 && n_lex % 2 == 0, "n_lex even and >= 2");
    need(hat_n >= 1, "hat_n >= 1");
    need(delta_r > 0 && pow2(-hat_n) <= delta_r / (1 + delta_r), "2^-hat_n <= delta_r/(1+delta_r)");
    need(pow2(-hat_n) <= pow2(-n_lex) / a_r, "2^-hat_n <= 2^-n_lex/a_r");
    need(delta_scale == pow2(-hat_n), "delta_scale = 2^-hat_n");
    need(n_sub == n_lex + hat_n, "n_sub = n_lex + hat_n");
    need(n_total == k_iter * (tilde_n + n_sub), "n_total = k*(tilde_n + n_sub)");
    return out;
}

GameSpec PipelineParams::game() const { return GameSpec::sided(threshold(), Rational(1), n_total); }

std::string PipelineParams::strategy_id() const {
    const std::string lex =
        "lex-variance:a=" + to_string(a_r) + ",delta=" + to_string(delta_r) + ",n=" + std::to_string(n_lex);
    const std::string dyn = "restricted-to-dynamic:inner=" + wrap(lex) + ",a=" + to_string(a_r) +
                            ",delta=" + to_string(delta_r) + ",n_r=" + std::to_string(n_lex) +
                            ",hat_n=" + std::to_string(hat_n);
    const std::string level = "dynamic-to-fixed:dyn=" + wrap(dyn) + ",a=" + to_string(a) + ",delta=" +
                              to_string(delta) + ",tilde_n=" + std::to_string(tilde_n) +
                              ",n_sub=" + std::to_string(n_sub);
    const int n_level = tilde_n + n_sub;
    std::string id = level;
    for (int j = 1; j < k_iter; ++j)
        id = "nest:outer=" + wrap(id) + ",inner=" + wrap(level) + ",n0=" + std::to_string(j * n_level) +
             ",n1=" + std::to_string(n_level) + ",c1=" + to_string(1 - 2 * delta);
    return id;
}

Json PipelineParams::to_json() const {
    return Json{{"target_c", to_string(target_c)},
                {"target_eps", to_string(target_eps)},
                {"a", to_string(a)},
                {"delta", to_string(delta)},
                {"k_iter", k_iter},
                {"tilde_n", tilde_n},
                {"hat_n", hat_n},
                {"n_lex", n_lex},
                {"a_r", to_string(a_r)},
                {"delta_r", to_string(delta_r)},
                {"eps_dyn", to_string(eps_dyn)},
                {"n_sub", n_sub},
                {"n_total", n_total},
                {"delta_scale", to_string(delta_scale)},
                {"threshold", to_string(threshold())},
                {"cost_bound", to_string(cost_bound())},
                {"strategy", strategy_id()}};
}

PipelineParams PipelineParams::from_json(const Json& j) {
    PipelineParams p;
    auto q = [&j](const char* key) { return parse_rational(j.at(key).get<std::string>()); };
    p.target_c = q("target_c");
    p.target_eps = q("target_eps");
    p.a = q("a");
    p.delta = q("delta");
    p.k_iter = j.at("k_iter").get<int>();
    p.tilde_n = j.at("tilde_n").get<int>();
    p.hat_n = j.at("hat_n").get<int>();
    p.n_lex = j.at("n_lex").get<int>();
    p.a_r = q("a_r");
    p.delta_r = q("delta_r");
    p.eps_dyn = q("eps_dyn");
    p.n_sub = j.at("n_sub").get<int>();
    p.n_total = j.at("n_total").get<int>();
    p.delta_scale = q("delta_scale");
    return p;
}

Pipeline build_pipeline(const Rational& target_c, const Rational& target_eps, int depth_budget) {
    if (!(target_c > 0 && target_c < 1)) throw std::invalid_argument("pipeline: target_c must lie in (0,1)");
    if (target_eps <= 0) throw std::invalid_argument("pipeline: target_eps must be positive");

    std::optional<PipelineParams> best;
    std::optional<PipelineParams> closest;
    std::size_t closest_count = std::numeric_limits<std::size_t>::max();
    const Rational delta_r(1, 2);
    for (const Rational& a : {Rational(1, 2), Rational(1), Rational(2), Rational(4)}) {
        for (int dj = 2; dj <= 10; ++dj) {
            for (int k = 1; k <= 8; ++k) {
                for (int n_lex : {2, 4}) {
                    PipelineParams p;
                    p.target_c = target_c;
                    p.target_eps = target_eps;
                    p.a = a;
                    p.delta = pow2(-dj);
                    p.k_iter = k;
                    p.tilde_n = 0;
                    while (pow2(-p.tilde_n) >= a * p.delta) ++p.tilde_n;
                    p.n_lex = n_lex;
                    p.a_r = 2 * a;
                    p.delta_r = delta_r;
                    p.hat_n = 1;
                    while (pow2(-p.hat_n) > delta_r / (1 + delta_r) || pow2(-p.hat_n) > pow2(-n_lex) / p.a_r) ++p.hat_n;
                    p.delta_scale = pow2(-p.hat_n);
                    p.n_sub = n_lex + p.hat_n;
                    p.eps_dyn = dyn_margin(a, p.n_sub);
                    p.n_total = k * (p.tilde_n + p.n_sub);
                    if (p.n_total > depth_budget) continue;
                    auto bad = p.violations();
                    if (bad.empty()) {
                        if (!best || p.n_total < best->n_total) best = p;
                    } else if (bad.size() < closest_count) {
                        closest_count = bad.size();
                        closest = p;
                    }
                }
            }
        }
    }
    if (!best) {
        std::string why = closest ? "closest candidate violates '" + closest->violations().front() + "'"
                                  : "every candidate exceeds the depth budget";
        throw PipelineInfeasible("no feasible pipeline parameters within depth budget " + std::to_string(depth_budget) +
                                 ": " + why);
    }
    Pipeline out{*best, make_strategy(best->strategy_id())};
    return out;
}

}  // namespace betgames
