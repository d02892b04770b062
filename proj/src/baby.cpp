#include "betgames/baby.hpp"

#include "betgames/match.hpp"
#include "betgames/params.hpp"

#include <algorithm>
#include <set>

namespace betgames {

ResponseProblem base_problem(const GameState& s, const std::vector<SidePolicy>& policies) {
    const GameSpec& spec = s.spec();
    const int n = spec.n;
    ResponseProblem p;
    for (int j = 0; j < spec.k; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        ComponentShape sh(n);
        if (spec.sided_layout()) {
            sh = ComponentShape::sided(n, j);
        } else if (spec.partial()) {
            sh = ComponentShape::policy(n, policies.at(ju));
        } else if (spec.cls->kind() == GaleClass::Kind::Muchgale) {
            sh = ComponentShape::li_betting(n, spec.cls->l(), spec.cls->i());
        } else {
            const auto& seen = *s.orientation().at(ju);
            for (std::size_t i = 0; i < seen.size(); ++i)
                sh.rule[i] = (seen[i] & 1) ? NodeRule::Side0 : (seen[i] & 2) ? NodeRule::Side1 : NodeRule::Free;
        }
        if (s.latest()) sh.floor = (*s.latest())[ju];
        p.components.push_back(std::move(sh));
    }
    if (spec.restricted_kind()) p.upper = spec.scale * (1 + spec.delta);
    return p;
}

std::vector<BitString> uncaught_leaves(const GameState& s) {
    if (!s.latest()) return s.enumerated();
    std::vector<BitString> out;
    for (const auto& sigma : s.enumerated())
        if (!is_caught(s, *s.latest(), sigma)) out.push_back(sigma);
    return out;
}

std::vector<BitString> catch_options(const GameSpec& spec, const BitString& leaf) {
    if (spec.catch_at_leaf()) return {leaf};
    std::vector<BitString> out;
    for (int len = leaf.size(); len >= 0; --len) out.push_back(leaf.prefix(len));
    return out;
}

namespace {

std::optional<ResponseSolution> solve_weighted(const GameState& s, const std::vector<SidePolicy>& policies,
                                               const std::vector<BitString>& nodes,
                                               std::vector<std::vector<Rational>> weights) {
    ResponseProblem p = base_problem(s, policies);
    for (const auto& node : nodes) p.catches.push_back({node, s.spec().catch_threshold()});
    p.weights = std::move(weights);
    ResponseSolution sol = solve_response(p);
    if (!sol.feasible) return std::nullopt;
    return sol;
}

// Cartesian product of per-leaf catch options; leaf-only catches when it would exceed cap.
std::vector<std::vector<BitString>> combinations(const GameSpec& spec, const std::vector<BitString>& leaves,
                                                 bool disjunctive, std::size_t cap = 4096) {
    std::vector<std::vector<BitString>> per;
    std::size_t total = 1;
    for (const auto& leaf : leaves) {
        per.push_back(disjunctive ? catch_options(spec, leaf) : std::vector<BitString>{leaf});
        total *= per.back().size();
        if (total > cap) break;
    }
    if (total > cap) {
        per.clear();
        for (const auto& leaf : leaves) per.push_back({leaf});
    }
    std::vector<std::vector<BitString>> out{{}};
    for (const auto& opts : per) {
        std::vector<std::vector<BitString>> next;
        for (const auto& partial : out)
            for (const auto& o : opts) {
                auto c = partial;
                c.push_back(o);
                next.push_back(std::move(c));
            }
        out = std::move(next);
    }
    return out;
}

SidePolicy without(const SidePolicy& p, const BitString& node) {
    SidePolicy out;
    for (const auto& [u, b] : p.assignments())
        if (u != node) out.set(u, b);
    return out;
}

std::vector<std::vector<Rational>> random_weights(std::mt19937_64& rng, int k, std::size_t nodes) {
    std::uniform_int_distribution<int> pick(1, 8);
    std::vector<std::vector<Rational>> w(static_cast<std::size_t>(k));
    for (auto& row : w)
        for (std::size_t i = 0; i < nodes; ++i) row.push_back(Rational(pick(rng)));
    return w;
}

}  // namespace

std::optional<ResponseSolution> solve_catches(const GameState& s, const std::vector<SidePolicy>& policies,
                                              const std::vector<BitString>& nodes) {
    return solve_weighted(s, policies, nodes, {});
}

std::vector<SidePolicy> lazy_policies(const GameState& s, const std::vector<SidePolicy>& base,
                                      const std::vector<BitString>& targets, bool drop, const std::vector<BitString>& keep) {
    std::vector<SidePolicy> pol = base;
    std::vector<std::pair<BitString, std::size_t>> fresh;
    for (const auto& t : targets) {
        for (int len = 0; len < t.size(); ++len) {
            BitString u = t.prefix(len);
            if (std::find(keep.begin(), keep.end(), u) != keep.end()) continue;
            for (std::size_t j = 0; j < pol.size(); ++j) {
                if (pol[j].defined(u)) continue;
                pol[j].set(u, t[len]);
                fresh.emplace_back(u, j);
            }
        }
    }
    if (!drop || fresh.empty()) return pol;
    auto best = solve_catches(s, pol, targets);
    if (!best) return pol;
    std::sort(fresh.begin(), fresh.end(), [](const auto& x, const auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });
    for (const auto& [u, j] : fresh) {
        auto trial = pol;
        trial[j] = without(pol[j], u);
        auto sol = solve_catches(s, trial, targets);
        if (sol && sol->objective == best->objective) pol = std::move(trial);
    }
    return pol;
}

// ---- adversary ------------------------------------------------------------------------

Adversary Adversary::random(std::uint64_t seed) {
    Adversary a(Kind::Random);
    a.seed_ = seed;
    a.rng_.seed(seed);
    return a;
}

Adversary Adversary::scripted(std::vector<BabyReply> replies) {
    Adversary a(Kind::Scripted);
    a.script_ = std::move(replies);
    return a;
}

Adversary Adversary::parse(const std::string& id) {
    auto p = ParamList::parse(id);
    if (p.name() == "lp-leaf") return lp_leaf_catch();
    if (p.name() == "lp") return lp_disjunctive();
    if (p.name() == "lazy") return lazy_minimal();
    if (p.name() == "random") return random(static_cast<std::uint64_t>(std::stoull(p.str("seed", "0"))));
    throw std::invalid_argument("unknown adversary: " + p.name());
}

std::string Adversary::id() const {
    switch (kind_) {
        case Kind::LpLeafCatch: return "lp-leaf";
        case Kind::LpDisjunctive: return "lp";
        case Kind::LazyMinimal: return "lazy";
        case Kind::Scripted: return "scripted";
        case Kind::Random: return "random:seed=" + std::to_string(seed_);
    }
    return "?";
}

std::optional<BabyReply> Adversary::respond(const GameState& s) {
    if (s.turn() != Turn::Baby) throw GameError("OUT_OF_TURN", "adversary asked to move on Alice's turn");
    if (kind_ == Kind::Scripted) {
        if (script_pos_ >= script_.size()) return std::nullopt;
        return script_[script_pos_++];
    }
    const GameSpec& spec = s.spec();
    const bool partial = spec.partial();
    auto combos = combinations(spec, uncaught_leaves(s), kind_ != Kind::LpLeafCatch);

    if (kind_ == Kind::Random) {
        std::shuffle(combos.begin(), combos.end(), rng_);
        auto weights = random_weights(rng_, spec.k, (std::size_t{2} << spec.n) - 1);
        const bool drop = (rng_() & 1) != 0;
        for (const auto& combo : combos) {
            auto pol = partial ? lazy_policies(s, s.policies(), combo, drop) : s.policies();
            if (auto sol = solve_weighted(s, pol, combo, weights)) return BabyReply{sol->gales, pol};
        }
        return std::nullopt;
    }

    std::optional<ResponseSolution> best;
    std::vector<BitString> best_combo;
    std::vector<SidePolicy> best_pol;
    for (const auto& combo : combos) {
        auto pol = partial ? lazy_policies(s, s.policies(), combo, false) : s.policies();
        auto sol = solve_catches(s, pol, combo);
        if (sol && (!best || sol->objective < best->objective)) {
            best = std::move(sol);
            best_combo = combo;
            best_pol = std::move(pol);
        }
    }
    if (!best) return std::nullopt;
    if (kind_ == Kind::LazyMinimal && partial) {
        best_pol = lazy_policies(s, s.policies(), best_combo, true);
        best = solve_catches(s, best_pol, best_combo);
        if (!best) throw std::logic_error("lazy policy lost feasibility");
    }
    return BabyReply{best->gales, best_pol};
}

// ---- exhaustive verdict ------------------------------------------------------------------

std::string verdict_name(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::AliceAlwaysWins: return "ALICE_ALWAYS_WINS";
        case Verdict::Kind::Counterexample: return "COUNTEREXAMPLE";
        case Verdict::Kind::BudgetExhausted: return "BUDGET_EXHAUSTED";
    }
    return "?";
}

std::vector<BabyReply> exhaustive_options(const GameState& s) {
    const GameSpec& spec = s.spec();
    auto combos = combinations(spec, uncaught_leaves(s), true);

    // Root policy menu per component: keep waiting, or commit to 0 or 1 now.
    std::vector<std::vector<SidePolicy>> menus{s.policies()};
    if (spec.partial()) {
        const BitString root;
        for (int j = 0; j < spec.k; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            if (s.policies()[ju].defined(root)) continue;
            std::vector<std::vector<SidePolicy>> next;
            for (const auto& m : menus) {
                next.push_back(m);
                for (int b : {0, 1}) {
                    auto c = m;
                    c[ju].set(root, b);
                    next.push_back(std::move(c));
                }
            }
            menus = std::move(next);
        }
    }

    std::vector<BabyReply> out;
    std::set<std::string> seen;
    for (const auto& combo : combos) {
        for (const auto& menu : menus) {
            auto pol = spec.partial() ? lazy_policies(s, menu, combo, true, {BitString()}) : menu;
            auto sol = solve_catches(s, pol, combo);
            if (!sol) continue;
            if (!seen.insert(digest(sol->gales, pol)).second) continue;
            out.push_back(BabyReply{sol->gales, pol});
        }
    }
    return out;
}

namespace {

struct Search {
    const GameSpec& spec;
    std::string alice_id;
    Rational bound;
    std::size_t budget;
    Verdict verdict;
    std::vector<std::string> path;
    bool stop = false;

    void fail(const std::string& why) {
        verdict.kind = Verdict::Kind::Counterexample;
        verdict.reason = why;
        verdict.trace = {trace_header(spec, alice_id, "exhaustive", 0)};
        verdict.trace.insert(verdict.trace.end(), path.begin(), path.end());
        stop = true;
    }

    void alice_turn(const GameState& s, StrategyBox strat) {
        AliceMove mv = strat->next_move(s);
        if (mv.is_pass()) {
            path.push_back(pass_record(s));
            fail("strategy passed while the game was still open");
            path.pop_back();
            return;
        }
        GameState after = alice_move(s, *mv.leaf);
        path.push_back(alice_record(after, *mv.leaf));
        baby_turn(after, std::move(strat));
        path.pop_back();
    }

    void baby_turn(const GameState& s, StrategyBox strat) {
        if (++verdict.nodes > budget) {
            verdict.kind = Verdict::Kind::BudgetExhausted;
            verdict.reason = "node budget " + std::to_string(budget) + " exhausted";
            stop = true;
            return;
        }
        auto options = exhaustive_options(s);
        if (options.empty()) {
            ++verdict.leaves;  // Baby has no legal move on this branch
            return;
        }
        for (std::size_t i = 0; i < options.size() && !stop; ++i) {
            const auto& opt = options[i];
            auto out = baby_move(s, opt.gales, spec.partial() ? std::optional(opt.policies) : std::nullopt);
            if (!out.accepted())
                throw std::logic_error("exhaustive option rejected: " + rule_name(*out.rejection) + " " + out.detail);
            path.push_back(baby_record(out.state, opt));
            const GameState& next = out.state;
            if (next.status() == Status::AliceWon) {
                Rational c = cost(next);
                if (c > verdict.max_cost) verdict.max_cost = c;
                if (!(c < bound)) fail("win at cost " + to_string(c) + " not below " + to_string(bound));
                ++verdict.leaves;
            } else if (next.status() == Status::Exhausted) {
                fail("every leaf enumerated without a win");
            } else {
                alice_turn(next, i + 1 < options.size() ? StrategyBox(strat) : std::move(strat));
            }
            path.pop_back();
        }
    }
};

}  // namespace

Verdict exhaustive_verdict(const GameSpec& spec, const Strategy& alice, const Rational& cost_bound, std::size_t budget) {
    Search search{spec, alice.id(), cost_bound, budget, {}, {}, false};
    search.alice_turn(new_game(spec), StrategyBox(alice.clone()));
    return search.verdict;
}

}  // namespace betgames
