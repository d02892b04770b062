#include "betgames/claims.hpp"
#include "betgames/construct.hpp"
#include "betgames/match.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace betgames;

// Structured results cross the boundary as JSON text; the package decodes them.
namespace {

std::string play(const std::string& game, const std::string& alice, const std::string& baby, std::uint64_t seed) {
    auto spec = GameSpec::parse(game);
    auto strategy = make_strategy(alice);
    Json out;
    if (baby == "exhaustive") {
        Verdict v = exhaustive_verdict(spec, *strategy, Rational(1));
        out["verdict"] = verdict_name(v.kind);
        out["leaves"] = v.leaves;
        out["max_cost"] = to_string(v.max_cost);
        out["trace"] = v.trace;
        return out.dump();
    }
    auto adv = Adversary::parse(baby);
    auto m = play_match(spec, *strategy, adv, seed);
    out = m.summary();
    out["enumerated"] = Json::array();
    for (const auto& s : m.state.enumerated()) out["enumerated"].push_back(s.str());
    out["trace"] = m.trace;
    return out.dump();
}

std::string replay(const std::vector<std::string>& lines) {
    auto r = replay_trace(lines);
    Json out{{"identical", r.identical}, {"mismatch_line", r.mismatch_line}, {"detail", r.detail}};
    return out.dump();
}

std::string verify_claim(const std::string& which, long samples, std::uint64_t seed) {
    if (which == "sqrtvar") return verify_sqrtvar(samples, seed).to_json().dump();
    if (which == "budget") return verify_budget(samples, seed).to_json().dump();
    if (which == "total-variance") return verify_total_variance(samples, seed).to_json().dump();
    throw std::invalid_argument("unknown claim " + which);
}

std::string construct(const std::string& config, bool fixture) {
    auto cfg = fixture ? ConstructionConfig::backtrack_fixture() : ConstructionConfig::parse(config);
    return run_construction(cfg).bundle(cfg).dump();
}

std::string lp_solve(const std::string& program) { return to_json(solve(lp_from_json(Json::parse(program)))).dump(); }

std::vector<std::string> block_roots(int n) {
    std::vector<std::string> out;
    for (const auto& r : lex_block_roots(n)) out.push_back(r.str());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact simulator for Alice/Baby betting games";
    m.def("play", &play, py::arg("game"), py::arg("alice"), py::arg("baby") = "lp", py::arg("seed") = 0);
    m.def("replay", &replay, py::arg("lines"));
    m.def("verify_claim", &verify_claim, py::arg("which"), py::arg("samples"), py::arg("seed") = 1);
    m.def("construct", &construct, py::arg("config") = "", py::arg("fixture") = false);
    m.def("lp_solve", &lp_solve, py::arg("program"));
    m.def("lex_block_roots", &block_roots, py::arg("n"));
    py::register_exception<GameError>(m, "GameError", PyExc_ValueError);
}
