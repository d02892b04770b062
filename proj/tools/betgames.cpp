// Command-line driver. Exit codes: 0 success, 1 verdict failure, 2 usage or invalid input.
#include "betgames/claims.hpp"
#include "betgames/construct.hpp"
#include "betgames/match.hpp"
#include "betgames/params.hpp"
#include "betgames/simplex.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace betgames;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Failure {
    int code;
    Json body;
};

Failure usage(const std::string& why) { return {kUsage, Json{{"error", why}}}; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure(usage("cannot read " + path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) lines.push_back(line);
    return lines;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure(usage("cannot write " + path));
    for (const auto& l : lines) out << l << '\n';
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure(usage("cannot write " + path));
    out << j.dump(2) << '\n';
}

Rational rational_arg(const std::string& text, const std::string& what) {
    try {
        return parse_rational(text);
    } catch (const std::exception& e) {
        throw Failure(usage(what + ": " + e.what()));
    }
}

struct PlayArgs {
    std::string game, alice, baby = "lp", trace, cost_bound;
    std::uint64_t seed = 0;
    int depth_budget = 14;
};

int cmd_play(const PlayArgs& a) {
    GameSpec spec;
    Rational bound(1);
    bool strict = true;  // the default contract is m(A) < 1
    std::optional<Pipeline> pipeline;
    if (a.alice.rfind("pipeline", 0) == 0) {
        auto pl = ParamList::parse(a.alice);
        pipeline = build_pipeline(pl.rational("c"), pl.rational("eps"), pl.integer("budget", a.depth_budget));
    }
    if (!a.game.empty()) {
        spec = GameSpec::parse(a.game);
    } else if (pipeline) {
        spec = pipeline->params.game();
    } else {
        throw Failure(usage("--game is required unless Alice is a pipeline"));
    }
    if (spec.n > a.depth_budget)
        throw Failure(usage("game depth " + std::to_string(spec.n) + " exceeds the depth budget"));
    if (pipeline) {
        bound = pipeline->params.cost_bound();
        strict = false;
    }
    if (!a.cost_bound.empty()) {
        bound = rational_arg(a.cost_bound, "--cost-bound");
        strict = false;
    }
    auto within = [&](const Rational& c) { return strict ? c < bound : c <= bound; };

    StrategyPtr alice = pipeline ? std::move(pipeline->strategy) : make_strategy(a.alice);
    Json out;
    out["game"] = spec.id();
    out["alice"] = alice->id();
    out["baby"] = a.baby;
    out["seed"] = a.seed;
    out["cost_bound"] = to_string(bound);

    if (a.baby == "exhaustive") {
        Verdict v = exhaustive_verdict(spec, *alice, bound);
        out["verdict"] = verdict_name(v.kind);
        out["leaves"] = v.leaves;
        out["nodes"] = v.nodes;
        out["max_cost"] = to_string(v.max_cost);
        if (!v.reason.empty()) out["reason"] = v.reason;
        if (!a.trace.empty() && !v.trace.empty()) write_lines(a.trace, v.trace);
        std::cout << out.dump() << '\n';
        return v.kind == Verdict::Kind::AliceAlwaysWins ? kOk : kFail;
    }

    Adversary baby = Adversary::parse(a.baby);
    MatchResult m;
    try {
        m = play_match(spec, *alice, baby, a.seed);
    } catch (const CompositionFailure& e) {
        out["verdict"] = "COMPOSITION_FAILURE";
        out["reason"] = e.what();
        std::cout << out.dump() << '\n';
        return kFail;
    }
    if (!a.trace.empty()) write_lines(a.trace, m.trace);
    out.update(m.summary());
    bool ok = m.alice_won() && within(m.cost());
    out["verdict"] = ok ? "WIN" : "LOSS";
    std::cout << out.dump() << '\n';
    return ok ? kOk : kFail;
}

int cmd_verify(const std::string& which, long samples, std::uint64_t seed, const std::string& c,
               const std::string& per_k, const std::string& constant) {
    if (samples <= 0) throw Failure(usage("--samples must be positive"));
    ClaimReport r;
    if (which == "sqrtvar") {
        r = verify_sqrtvar(samples, seed, rational_arg(c, "--C"));
    } else if (which == "budget") {
        std::optional<Rational> whole;
        if (!constant.empty()) whole = rational_arg(constant, "--constant");
        r = verify_budget(samples, seed, rational_arg(per_k, "--per-k"), whole);
    } else if (which == "total-variance") {
        r = verify_total_variance(samples, seed);
    } else {
        throw Failure(usage("unknown claim " + which));
    }
    std::cout << r.to_json().dump() << '\n';
    return r.pass() ? kOk : kFail;
}

int cmd_construct(const std::string& config, bool fixture, const std::vector<int>& depths, const std::string& ladder,
                  int max_steps, const std::string& out_path) {
    ConstructionConfig cfg;
    try {
        if (fixture) {
            cfg = ConstructionConfig::backtrack_fixture();
        } else if (!config.empty()) {
            cfg = ConstructionConfig::parse(read_file(config));
        } else {
            cfg = ConstructionConfig::with_ladder(ladder, depths);
            cfg.roster = {RosterMember::greedy(), RosterMember::greedy()};
        }
    } catch (const std::invalid_argument& e) {
        throw Failure(usage(std::string("config: ") + e.what()));
    }
    if (auto bad = cfg.violations(); !bad.empty())
        throw Failure({kUsage, Json{{"error", "margin check failed"}, {"violations", bad}}});
    ConstructionResult r = run_construction(cfg, max_steps);
    Json bundle = r.bundle(cfg);
    if (!out_path.empty()) write_json(out_path, bundle);
    std::cout << bundle.dump() << '\n';
    return r.ok() ? kOk : kFail;
}

int cmd_lp(const std::string& path) {
    LinearProgram lp;
    try {
        lp = lp_from_json(Json::parse(read_file(path)));
        lp.validate();
    } catch (const Failure&) {
        throw;
    } catch (const std::exception& e) {
        throw Failure(usage(std::string("lp: ") + e.what()));
    }
    LpResult r = solve(lp);
    std::cout << to_json(r).dump() << '\n';
    return r.status == LpStatus::Optimal ? kOk : kFail;
}

int cmd_replay(const std::string& path) {
    ReplayResult r = replay_trace(read_lines(path));
    Json out;
    out["identical"] = r.identical;
    if (!r.identical) {
        out["mismatch_line"] = r.mismatch_line;
        out["detail"] = r.detail;
    }
    if (r.state) {
        out["status"] = status_name(r.state->status());
        out["cost"] = to_string(cost(*r.state));
    }
    std::cout << out.dump() << '\n';
    return r.identical ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator for Alice/Baby betting games"};
    app.require_subcommand(1);

    PlayArgs play;
    auto* p = app.add_subcommand("play", "Play one game and write its trace");
    p->add_option("--game", play.game, "Game id, e.g. sided:c=1/2,d=1,n=3");
    p->add_option("--alice", play.alice, "Alice strategy id")->required();
    p->add_option("--baby", play.baby, "lp, lp-leaf, lazy, random:seed=N or exhaustive");
    p->add_option("--seed", play.seed, "Seed recorded in the trace");
    p->add_option("--trace", play.trace, "Write the JSON-lines trace here");
    p->add_option("--cost-bound", play.cost_bound, "Contract cost as p/q (default: cost < 1)");
    p->add_option("--depth-budget", play.depth_budget, "Largest admissible leaf depth");

    std::string which, c = "4", per_k = "8", constant;
    long samples = 1000;
    std::uint64_t seed = 1;
    auto* v = app.add_subcommand("verify-claims", "Sample valid instances and check a claim exactly");
    v->add_option("which", which, "sqrtvar, budget or total-variance")->required();
    v->add_option("--samples", samples, "Number of sampled instances");
    v->add_option("--seed", seed, "Sampler seed");
    v->add_option("--C", c, "Constant of the square-root claim");
    v->add_option("--per-k", per_k, "Budget constant per component, C(k) = per_k * k");
    v->add_option("--constant", constant, "Use this C(k) for every k instead of per_k * k");

    std::string config, out_path, ladder = "half";
    bool fixture = false;
    std::vector<int> depths{4, 4};
    int max_steps = 100000;
    auto* cs = app.add_subcommand("construct", "Run the construction driver and print its bundle");
    cs->add_option("--config", config, "key=value configuration file");
    cs->add_flag("--fixture", fixture, "Use the forced-backtrack fixture");
    cs->add_option("--depths", depths, "Level depths when no config is given");
    cs->add_option("--ladder", ladder, "half or unit");
    cs->add_option("--max-steps", max_steps, "Step limit");
    cs->add_option("--out", out_path, "Also write the bundle here");

    std::string lp_path;
    auto* lp = app.add_subcommand("lp-solve", "Solve an LP given as JSON");
    lp->add_option("file", lp_path, "LP file")->required();

    std::string trace_path;
    auto* rp = app.add_subcommand("replay", "Re-validate a trace and compare it byte for byte");
    rp->add_option("trace", trace_path, "Trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (p->parsed()) return cmd_play(play);
        if (v->parsed()) return cmd_verify(which, samples, seed, c, per_k, constant);
        if (cs->parsed()) return cmd_construct(config, fixture, depths, ladder, max_steps, out_path);
        if (lp->parsed()) return cmd_lp(lp_path);
        if (rp->parsed()) return cmd_replay(trace_path);
    } catch (const Failure& f) {
        std::cout << f.body.dump() << '\n';
        return f.code;
    } catch (const PipelineInfeasible& e) {
        std::cout << Json{{"error", "pipeline infeasible"}, {"reason", e.what()}}.dump() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cout << Json{{"error", e.what()}}.dump() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cout << Json{{"error", e.what()}}.dump() << '\n';
        return kFail;
    }
    return kUsage;
}
