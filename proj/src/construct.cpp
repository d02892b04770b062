#include "betgames/construct.hpp"

#include "betgames/response.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace betgames {

std::string RosterMember::name() const {
    switch (kind) {
        case Kind::Zero: return "zero";
        case Kind::Scripted: return "scripted";
        case Kind::Greedy: return "greedy";
    }
    return "?";
}

int ConstructionConfig::total_depth() const { return depth_through(levels() - 1); }

int ConstructionConfig::depth_through(int k) const {
    int n = 0;
    for (int i = 0; i <= k; ++i) n += depths[static_cast<std::size_t>(i)];
    return n;
}

ConstructionConfig ConstructionConfig::with_ladder(const std::string& ladder, std::vector<int> depths) {
    if (depths.empty()) throw std::invalid_argument("construction needs at least one level");
    ConstructionConfig cfg;
    cfg.depths = std::move(depths);
    cfg.ladder = ladder;
    const int K = cfg.levels();
    if (ladder == "half") {
        Rational c0 = Rational(1, 2);
        for (int k = 1; k < K; ++k) c0 *= Rational(2, 5);
        cfg.c.push_back(c0);
        for (int k = 1; k < K; ++k) cfg.c.push_back(cfg.c.back() * Rational(5, 2));
        for (const auto& ck : cfg.c) cfg.d.push_back(2 * ck);
        cfg.delta.push_back(c0 / 2);
        for (int k = 1; k < K; ++k)
            cfg.delta.push_back((cfg.c[static_cast<std::size_t>(k)] - cfg.d[static_cast<std::size_t>(k - 1)]) *
                                pow2(-cfg.depth_through(k - 1) - 1));
    } else if (ladder == "unit") {
        for (int k = 0; k <= K; ++k) cfg.c.push_back(1 - pow2(-k - 2));
        for (int k = 0; k < K; ++k)
            cfg.d.push_back((cfg.c[static_cast<std::size_t>(k)] + cfg.c[static_cast<std::size_t>(k + 1)]) / 2);
        for (int k = 0; k < K; ++k)
            cfg.delta.push_back((cfg.c[static_cast<std::size_t>(k + 1)] - cfg.d[static_cast<std::size_t>(k)]) / 2);
        cfg.c.pop_back();
    } else {
        throw std::invalid_argument("unknown ladder '" + ladder + "'");
    }
    cfg.roster.assign(static_cast<std::size_t>(K), RosterMember::zero());
    return cfg;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        auto b = cur.find_first_not_of(" \t");
        auto e = cur.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    return out;
}

std::vector<Rational> rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& x : split(s, ',')) out.push_back(parse_rational(x));
    return out;
}

}  // namespace

ConstructionConfig ConstructionConfig::parse(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        auto key = split(line.substr(0, eq), '\n').front();
        auto val = split(line.substr(eq + 1), '\n').front();
        if (!val.empty() && val.back() == '\r') val.pop_back();
        kv[key] = val;
    }
    auto get = [&kv](const std::string& k, const std::string& fallback) {
        auto it = kv.find(k);
        return it == kv.end() ? fallback : it->second;
    };

    std::vector<int> depths;
    for (const auto& x : split(get("depths", "4"), ',')) depths.push_back(std::stoi(x));
    const int K = std::stoi(get("levels", std::to_string(depths.size())));
    if (K < 1) throw std::invalid_argument("levels must be positive");
    if (depths.size() == 1) depths.assign(static_cast<std::size_t>(K), depths.front());
    if (static_cast<int>(depths.size()) != K) throw std::invalid_argument("depths must list one value per level");

    const std::string ladder = get("ladder", "half");
    ConstructionConfig cfg;
    if (ladder == "custom") {
        cfg.depths = depths;
        cfg.ladder = ladder;
        cfg.c = rationals(get("c", ""));
        cfg.d = rationals(get("d", ""));
        cfg.delta = rationals(get("delta", ""));
        cfg.roster.assign(static_cast<std::size_t>(K), RosterMember::zero());
        if (static_cast<int>(cfg.c.size()) != K || static_cast<int>(cfg.d.size()) != K ||
            static_cast<int>(cfg.delta.size()) != K)
            throw std::invalid_argument("custom ladder needs c, d and delta with one value per level");
    } else {
        cfg = with_ladder(ladder, depths);
    }
    if (kv.count("delta") && ladder != "custom") cfg.delta = rationals(kv["delta"]);
    if (kv.count("roster")) {
        cfg.roster.clear();
        for (const auto& name : split(kv["roster"], ',')) {
            if (name == "zero") cfg.roster.push_back(RosterMember::zero());
            else if (name == "greedy") cfg.roster.push_back(RosterMember::greedy());
            else throw std::invalid_argument("unknown roster member '" + name + "'");
        }
    }
    cfg.strategy = get("strategy", "half-block");
    return cfg;
}

ConstructionConfig ConstructionConfig::backtrack_fixture() {
    ConstructionConfig cfg = with_ladder("half", {4, 4});
    const int N = cfg.total_depth();
    // A 0-sided gale worth d_0 on [0000] and nothing elsewhere.
    GaleTree m0(N);
    const BitString target = BitString::zeros(4);
    for (std::size_t i = 0; i < m0.node_count(); ++i) {
        BitString s = BitString::from_heap_index(i);
        if (target.is_prefix_of(s)) m0.mutable_at_index(i) = cfg.d[0];
        else if (s.is_prefix_of(target)) m0.mutable_at_index(i) = cfg.d[0] * pow2(s.size() - target.size());
    }
    GaleVector zero = GaleVector::zero(2, N);
    GaleVector catcher(std::vector<GaleTree>{m0, GaleTree(N)});
    cfg.roster = {RosterMember::scripted({zero, zero, zero, catcher}), RosterMember::zero()};
    return cfg;
}

std::vector<std::string> ConstructionConfig::violations() const {
    std::vector<std::string> out;
    const int K = levels();
    auto at = [](const std::vector<Rational>& v, int k) -> const Rational& { return v[static_cast<std::size_t>(k)]; };
    if (K < 1) return {"no levels"};
    if (static_cast<int>(c.size()) != K || static_cast<int>(d.size()) != K || static_cast<int>(delta.size()) != K)
        return {"ladder lengths do not match the level count"};
    for (int k = 0; k < K; ++k) {
        if (depths[static_cast<std::size_t>(k)] < 1) out.push_back("n_" + std::to_string(k) + " must be positive");
        if (!(at(c, k) > 0 && at(c, k) < at(d, k)))
            out.push_back("need 0 < c_" + std::to_string(k) + " < d_" + std::to_string(k));
        if (at(delta, k) < 0) out.push_back("delta_" + std::to_string(k) + " must be nonnegative");
        if (strategy == "half-block" && at(c, k) * 2 > at(d, k))
            out.push_back("half-block only wins (d/2, d, n): c_" + std::to_string(k) + " > d_" + std::to_string(k) + "/2");
    }
    if (!(at(delta, 0) < at(c, 0))) out.push_back("delta_0 must stay below c_0");
    for (int k = 0; k + 1 < K; ++k) {
        Rational tail = 0;
        for (int j = k + 1; j < K; ++j) tail += at(delta, j);
        Rational margin = at(d, k) + tail * pow2(depth_through(k));
        if (!(at(c, k + 1) > margin))
            out.push_back("margin: c_" + std::to_string(k + 1) + " = " + to_string(at(c, k + 1)) +
                          " must exceed d_" + std::to_string(k) + " + tail*2^N_" + std::to_string(k) + " = " +
                          to_string(margin));
    }
    if (!(at(d, K - 1) < 2)) out.push_back("d_{K-1} must stay below 2");
    if (total_depth() > 20) out.push_back("total depth above 20");
    return out;
}

Json ConstructionConfig::to_json() const {
    auto qs = [](const std::vector<Rational>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(to_string(x));
        return a;
    };
    Json roster_names = Json::array();
    for (const auto& m : roster) roster_names.push_back(m.name());
    return Json{{"depths", depths}, {"ladder", ladder}, {"c", qs(c)},           {"d", qs(d)},
                {"delta", qs(delta)}, {"roster", roster_names}, {"strategy", strategy}};
}

// ---- driver ----------------------------------------------------------------------------

Construction::Construction(ConstructionConfig cfg) : cfg_(std::move(cfg)) {
    auto bad = cfg_.violations();
    if (!bad.empty()) throw ConstructionError("threshold violation: " + bad.front());
    const int N = cfg_.total_depth();
    for (const auto& m : cfg_.roster) {
        if (m.kind == RosterMember::Kind::Scripted) {
            if (m.script.empty()) throw ConstructionError("scripted roster member without snapshots");
            for (std::size_t t = 0; t < m.script.size(); ++t) {
                const auto& g = m.script[t];
                if (g.k() != 2 || g.depth() != N) throw ConstructionError("scripted snapshot has the wrong shape");
                if (!is_supermartingale(g[0]) || !is_supermartingale(g[1]) || !is_sided(g[0], 0) || !is_sided(g[1], 1))
                    throw ConstructionError("scripted snapshot is not a sided supermartingale pair");
                if (t > 0 && (!dominates(g[0], m.script[t - 1][0]) || !dominates(g[1], m.script[t - 1][1])))
                    throw ConstructionError("scripted snapshots must be nondecreasing");
            }
            members_.push_back(m.script.front());
        } else {
            members_.push_back(GaleVector::zero(2, N));
        }
    }
    V_.resize(static_cast<std::size_t>(cfg_.levels()));
    levels_.push_back(Level{BitString(), {}, {}, std::nullopt});
    const std::string& fam = cfg_.strategy;
    levels_.back().strategy =
        make_strategy(fam.find(':') != std::string::npos ? fam : fam + ":n=" + std::to_string(cfg_.depths[0]));
}

Rational Construction::sum_l1(int upto, const BitString& node) const {
    Rational s = 0;
    for (int j = 0; j <= upto && j < static_cast<int>(members_.size()); ++j)
        s += l1_at(members_[static_cast<std::size_t>(j)], node);
    return s;
}

bool Construction::caught(int k) const {
    const Level& L = levels_[static_cast<std::size_t>(k)];
    if (!L.candidate) return false;
    const Rational& dk = cfg_.d[static_cast<std::size_t>(k)];
    for (int len = L.root.size(); len <= L.candidate->size(); ++len)
        if (sum_l1(k, L.candidate->prefix(len)) >= dk) return true;
    return false;
}

GaleVector Construction::level_gales(int k) const {
    const Level& L = levels_[static_cast<std::size_t>(k)];
    const int n = cfg_.depths[static_cast<std::size_t>(k)];
    GaleVector g = GaleVector::zero(2, n);
    for (int j = 0; j <= k && j < static_cast<int>(members_.size()); ++j)
        for (std::size_t i = 0; i < 2; ++i) g[i] += members_[static_cast<std::size_t>(j)][i].shifted(L.root, n);
    return g;
}

void Construction::respond(int k, const BitString& sigma) {
    const int N = cfg_.total_depth();
    const BitString& root = levels_[static_cast<std::size_t>(k)].root;
    const Rational& dk = cfg_.d[static_cast<std::size_t>(k)];
    for (int j = 0; j <= k && j < static_cast<int>(members_.size()); ++j) {
        if (cfg_.roster[static_cast<std::size_t>(j)].kind != RosterMember::Kind::Greedy) continue;
        auto& mine = members_[static_cast<std::size_t>(j)];
        std::optional<ResponseSolution> best;
        bool already = false;
        for (int len = sigma.size(); len >= root.size() && !already; --len) {
            BitString rho = sigma.prefix(len);
            Rational own = l1_at(mine, rho);
            Rational need = dk - (sum_l1(k, rho) - own);
            if (need <= own) {
                already = true;
                break;
            }
            ResponseProblem p;
            for (int i = 0; i < 2; ++i) {
                auto sh = ComponentShape::sided(N, i);
                sh.floor = mine[static_cast<std::size_t>(i)];
                p.components.push_back(std::move(sh));
            }
            p.catches.push_back({rho, need});
            auto sol = solve_response(p);
            if (!sol.feasible || sol.objective > cfg_.delta[static_cast<std::size_t>(j)]) continue;
            if (!best || sol.objective < best->objective) best = std::move(sol);
        }
        if (already) return;
        if (best) {
            mine = best->gales;
            log("roster-catch", j, sigma);
            return;
        }
    }
}

void Construction::log(const std::string& event, int level, const std::optional<BitString>& s) {
    Json e{{"step", step_}, {"event", event}, {"level", level}};
    if (s) e["string"] = s->str();
    events_.push_back(e.dump());
}

bool Construction::complete() const {
    if (static_cast<int>(levels_.size()) != cfg_.levels() || !levels_.back().candidate) return false;
    for (int k = 0; k < static_cast<int>(levels_.size()); ++k)
        if (caught(k)) return false;
    for (const auto& m : cfg_.roster)
        if (m.kind == RosterMember::Kind::Scripted && step_ < static_cast<int>(m.script.size())) return false;
    return true;
}

void Construction::step() {
    for (std::size_t j = 0; j < members_.size(); ++j) {
        const auto& m = cfg_.roster[j];
        if (m.kind == RosterMember::Kind::Scripted)
            members_[j] = m.script[std::min(static_cast<std::size_t>(step_), m.script.size() - 1)];
    }

    for (int k = 0; k < static_cast<int>(levels_.size()); ++k) {
        if (caught(k)) {
            log("backtrack", k, levels_[static_cast<std::size_t>(k)].candidate);
            ++backtracks_;
            levels_.resize(static_cast<std::size_t>(k) + 1);
            levels_.back().candidate.reset();
            break;
        }
    }

    const int k = static_cast<int>(levels_.size()) - 1;
    Level& L = levels_.back();
    if (L.candidate) {
        if (k + 1 < cfg_.levels()) {
            const int n = cfg_.depths[static_cast<std::size_t>(k + 1)];
            const std::string& fam = cfg_.strategy;
            Level next{*L.candidate, make_strategy(fam.find(':') != std::string::npos ? fam : fam + ":n=" + std::to_string(n)),
                       {}, std::nullopt};
            levels_.push_back(std::move(next));
            log("open", k + 1, levels_.back().root);
        }
        ++step_;
        return;
    }

    GaleVector g = level_gales(k);
    const int n = cfg_.depths[static_cast<std::size_t>(k)];
    AliceMove mv = L.strategy->next_move(GameView::detached(&g, n, cfg_.d[static_cast<std::size_t>(k)], L.local));
    if (mv.is_pass())
        throw ConstructionError("level " + std::to_string(k) + " strategy ran out of moves under '" + L.root.str() +
                                "' without a surviving candidate");
    BitString abs = L.root.concat(*mv.leaf);
    L.local.push_back(*mv.leaf);
    L.candidate = abs;
    V_[static_cast<std::size_t>(k)].push_back(abs);
    log("enumerate", k, abs);
    respond(k, abs);
    ++step_;
}

ConstructionResult Construction::run(int max_steps) {
    while (!complete() && step_ < max_steps) step();
    ConstructionResult r;
    r.steps = step_;
    r.backtracks = backtracks_;
    r.V = V_;
    r.roster_final = members_;
    r.events = events_;
    if (!complete()) {
        r.failures.push_back("construction did not settle within " + std::to_string(max_steps) + " steps");
        return r;
    }
    r.prefix = *levels_.back().candidate;
    const int K = cfg_.levels();
    for (int k = 0; k < K; ++k) {
        const int lo = k == 0 ? 0 : cfg_.depth_through(k - 1);
        const int hi = cfg_.depth_through(k);
        Rational best = 0;
        for (int len = lo; len <= hi; ++len) best = std::max(best, sum_l1(k, r.prefix.prefix(len)));
        r.level_certificate.push_back(best);
        if (!(best < cfg_.d[static_cast<std::size_t>(k)]))
            r.failures.push_back("level " + std::to_string(k) + " certificate reaches d_k");
        Rational mv = measure(r.V[static_cast<std::size_t>(k)]);
        if (mv > pow2(-k)) r.failures.push_back("m(V_" + std::to_string(k) + ") = " + to_string(mv) + " exceeds 2^-k");
        const auto& Vk = r.V[static_cast<std::size_t>(k)];
        if (std::find(Vk.begin(), Vk.end(), r.prefix.prefix(hi)) == Vk.end())
            r.failures.push_back("prefix is not in [V_" + std::to_string(k) + "]");
    }
    for (int m = 0; m <= r.prefix.size(); ++m) {
        Rational total = 0;
        for (const auto& g : members_) total += l1_at(g, r.prefix.prefix(m));
        r.prefix_certificate.push_back(total);
        if (!(total < 2)) r.failures.push_back("certificate at length " + std::to_string(m) + " reaches 2");
    }
    return r;
}

Json ConstructionResult::bundle(const ConstructionConfig& cfg) const {
    Json V_json = Json::array();
    Json measures = Json::array();
    for (const auto& Vk : V) {
        Json list = Json::array();
        for (const auto& s : Vk) list.push_back(s.str());
        V_json.push_back(list);
        measures.push_back(to_string(measure(Vk)));
    }
    auto qs = [](const std::vector<Rational>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(to_string(x));
        return a;
    };
    Json ev = Json::array();
    for (const auto& e : events) ev.push_back(Json::parse(e));
    Json roster = Json::array();
    for (const auto& g : roster_final) roster.push_back(betgames::to_json(g));
    return Json{{"config", cfg.to_json()},
                {"prefix", prefix.str()},
                {"V", V_json},
                {"V_measures", measures},
                {"level_certificates", qs(level_certificate)},
                {"prefix_certificates", qs(prefix_certificate)},
                {"backtracks", backtracks},
                {"steps", steps},
                {"ok", ok()},
                {"failures", failures},
                {"events", ev},
                {"roster_final", roster}};
}

ConstructionResult run_construction(const ConstructionConfig& cfg, int max_steps) {
    Construction c(cfg);
    return c.run(max_steps);
}

}  // namespace betgames
