#include "betgames/match.hpp"

namespace betgames {

namespace {

Json base_record(const GameState& s, const char* mover) {
    Json r;
    r["round"] = s.round() + 1;
    r["mover"] = mover;
    return r;
}

void add_status(Json& r, const GameState& s) {
    r["cost"] = to_string(cost(s));
    r["root_l1"] = to_string(s.latest() ? l1_at(*s.latest(), BitString()) : Rational(0));
    r["status"] = status_name(s.status());
}

}  // namespace

std::string trace_header(const GameSpec& spec, const std::string& alice, const std::string& baby, std::uint64_t seed) {
    Json h;
    h["spec"] = spec.id();
    h["alice"] = alice;
    h["baby"] = baby;
    h["seed"] = seed;
    return h.dump();
}

std::string alice_record(const GameState& after, const BitString& leaf) {
    Json r = base_record(after, "alice");
    r["move"] = leaf.str();
    add_status(r, after);
    return r.dump();
}

std::string pass_record(const GameState& s) {
    Json r = base_record(s, "alice");
    r["move"] = "PASS";
    add_status(r, s);
    return r.dump();
}

std::string baby_record(const GameState& after, const BabyReply& reply) {
    Json r;
    r["round"] = after.round();
    r["mover"] = "baby";
    r["move"] = digest(reply.gales, reply.policies);
    add_status(r, after);
    if (after.status() == Status::AliceWon) r["criterion"] = criterion_name(after.criterion());
    r["gales"] = to_json(reply.gales);
    if (!reply.policies.empty()) r["policies"] = to_json(reply.policies);
    return r.dump();
}

std::string rejection_record(const GameState& s, Rule rule) {
    Json r = base_record(s, "baby");
    r["move"] = "REJECTED";
    r["rule"] = rule_name(rule);
    add_status(r, s);
    return r.dump();
}

std::string forfeit_record(const GameState& after) {
    Json r = base_record(after, "baby");
    r["move"] = "NO_VALID_MOVE";
    add_status(r, after);
    return r.dump();
}

Json MatchResult::summary() const {
    Json j;
    j["status"] = status_name(state.status());
    j["criterion"] = criterion_name(state.criterion());
    j["cost"] = to_string(cost());
    j["root_l1"] = to_string(state.latest() ? l1_at(*state.latest(), BitString()) : Rational(0));
    j["rounds"] = state.round();
    j["alice_passed"] = alice_passed;
    j["pass_consistent"] = pass_consistent;
    if (baby_rejection) j["baby_rejection"] = rule_name(*baby_rejection);
    if (!state.forfeit_reason().empty()) j["forfeit"] = state.forfeit_reason();
    return j;
}

MatchResult play_match(const GameSpec& spec, Strategy& alice, Adversary& baby, std::uint64_t seed) {
    MatchResult m{new_game(spec), false, true, std::nullopt, {}};
    m.trace.push_back(trace_header(spec, alice.id(), baby.id(), seed));
    while (m.state.status() == Status::Ongoing) {
        AliceMove mv = alice.next_move(m.state);
        if (mv.is_pass()) {
            m.alice_passed = true;
            m.pass_consistent = check_win(m.state).first == Status::AliceWon;
            m.trace.push_back(pass_record(m.state));
            break;
        }
        m.state = alice_move(m.state, *mv.leaf);
        m.trace.push_back(alice_record(m.state, *mv.leaf));

        auto reply = baby.respond(m.state);
        if (!reply) {
            m.state = forfeit(m.state, "NO_VALID_MOVE");
            m.trace.push_back(forfeit_record(m.state));
            break;
        }
        auto out = baby_move(m.state, reply->gales,
                             spec.partial() ? std::optional(reply->policies) : std::nullopt);
        if (!out.accepted()) {
            m.baby_rejection = out.rejection;
            m.trace.push_back(rejection_record(m.state, *out.rejection));
            m.state = forfeit(m.state, rule_name(*out.rejection) + ": " + out.detail);
            break;
        }
        m.state = std::move(out.state);
        m.trace.push_back(baby_record(m.state, *reply));
    }
    return m;
}

std::vector<BabyReply> scripted_replies(const std::vector<std::string>& lines) {
    std::vector<BabyReply> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        Json r = Json::parse(lines[i]);
        if (r.at("mover") != "baby" || !r.contains("gales")) continue;
        BabyReply reply{gale_vector_from_json(r.at("gales")), {}};
        if (r.contains("policies")) reply.policies = policies_from_json(r.at("policies"));
        out.push_back(std::move(reply));
    }
    return out;
}

ReplayResult replay_trace(const std::vector<std::string>& lines) {
    ReplayResult res;
    if (lines.empty()) {
        res.detail = "empty trace";
        return res;
    }
    auto mismatch = [&res](std::size_t line, std::string why) {
        res.identical = false;
        res.mismatch_line = line;
        res.detail = std::move(why);
        return res;
    };
    Json header = Json::parse(lines[0]);
    GameSpec spec = GameSpec::parse(header.at("spec").get<std::string>());
    GameState s = new_game(spec);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        Json r = Json::parse(lines[i]);
        const std::string mover = r.at("mover");
        const std::string move = r.at("move");
        std::string rendered;
        if (mover == "alice" && move == "PASS") {
            rendered = pass_record(s);
        } else if (mover == "alice") {
            BitString leaf = BitString::parse(move);
            s = alice_move(s, leaf);
            rendered = alice_record(s, leaf);
        } else if (move == "NO_VALID_MOVE") {
            s = forfeit(s, "NO_VALID_MOVE");
            rendered = forfeit_record(s);
        } else if (move == "REJECTED") {
            rendered = lines[i];
        } else {
            BabyReply reply{gale_vector_from_json(r.at("gales")), {}};
            if (r.contains("policies")) reply.policies = policies_from_json(r.at("policies"));
            auto out = baby_move(s, reply.gales, spec.partial() ? std::optional(reply.policies) : std::nullopt);
            if (!out.accepted()) return mismatch(i + 1, "referee rejects recorded move: " + rule_name(*out.rejection));
            s = std::move(out.state);
            rendered = baby_record(s, reply);
        }
        if (rendered != lines[i]) return mismatch(i + 1, "re-rendered record differs");
    }
    res.identical = true;
    res.state = s;
    return res;
}

}  // namespace betgames
