#include "betgames/referee.hpp"

#include "betgames/params.hpp"
#include "betgames/stats.hpp"

#include <stdexcept>

namespace betgames {

// ---- GameSpec ---------------------------------------------------------------

GameSpec GameSpec::sided(Rational c, Rational d, int n) {
    GameSpec s;
    s.kind = GameKind::Sided;
    s.c = std::move(c);
    s.d = std::move(d);
    s.n = n;
    s.k = 2;
    s.validate();
    return s;
}

GameSpec GameSpec::dynamic_sided(Rational a, int n) {
    GameSpec s;
    s.kind = GameKind::DynamicSided;
    s.a = std::move(a);
    s.n = n;
    s.k = 2;
    s.validate();
    return s;
}

GameSpec GameSpec::restricted(Rational a, Rational delta, int n) {
    GameSpec s;
    s.kind = GameKind::RestrictedDynamicSided;
    s.a = std::move(a);
    s.delta = std::move(delta);
    s.n = n;
    s.k = 2;
    s.validate();
    return s;
}

GameSpec GameSpec::partial_sided(Rational c, int n, int k) {
    GameSpec s;
    s.kind = GameKind::PartialSided;
    s.c = std::move(c);
    s.n = n;
    s.k = k;
    s.validate();
    return s;
}

GameSpec GameSpec::dynamic_partial(Rational a, int n, int k) {
    GameSpec s;
    s.kind = GameKind::DynamicPartial;
    s.a = std::move(a);
    s.n = n;
    s.k = k;
    s.validate();
    return s;
}

GameSpec GameSpec::restricted_partial(Rational a, Rational delta, int n, int k) {
    GameSpec s;
    s.kind = GameKind::RestrictedDynamicPartial;
    s.a = std::move(a);
    s.delta = std::move(delta);
    s.n = n;
    s.k = k;
    s.validate();
    return s;
}

GameSpec GameSpec::variance_partial(Rational a, Rational variance, int m, int k) {
    GameSpec s;
    s.kind = GameKind::VariancePartial;
    s.a = std::move(a);
    s.variance = std::move(variance);
    s.n = m;
    s.k = k;
    s.validate();
    return s;
}

GameSpec GameSpec::class_game(GaleClass cls, Rational c, int n, int k) {
    GameSpec s;
    s.kind = GameKind::ClassGame;
    s.cls = cls;
    s.c = std::move(c);
    s.n = n;
    s.k = k;
    s.validate();
    return s;
}

GameSpec GameSpec::variance_class(GaleClass cls, Rational a, Rational variance, int m, int k) {
    GameSpec s;
    s.kind = GameKind::VarianceClassGame;
    s.cls = cls;
    s.a = std::move(a);
    s.variance = std::move(variance);
    s.n = m;
    s.k = k;
    s.validate();
    return s;
}

GameSpec GameSpec::with_scale(Rational s) const {
    GameSpec out = *this;
    out.scale = std::move(s);
    out.validate();
    return out;
}

bool GameSpec::partial() const {
    return kind == GameKind::PartialSided || kind == GameKind::DynamicPartial ||
           kind == GameKind::RestrictedDynamicPartial || kind == GameKind::VariancePartial;
}

bool GameSpec::sided_layout() const {
    return kind == GameKind::Sided || kind == GameKind::DynamicSided || kind == GameKind::RestrictedDynamicSided;
}

bool GameSpec::class_kind() const { return kind == GameKind::ClassGame || kind == GameKind::VarianceClassGame; }

bool GameSpec::has_a() const {
    return kind != GameKind::Sided && kind != GameKind::PartialSided && kind != GameKind::ClassGame;
}

bool GameSpec::restricted_kind() const {
    return kind == GameKind::RestrictedDynamicSided || kind == GameKind::RestrictedDynamicPartial;
}

bool GameSpec::variance_kind() const {
    return kind == GameKind::VariancePartial || kind == GameKind::VarianceClassGame;
}

bool GameSpec::catch_at_leaf() const { return restricted_kind() || variance_kind(); }

Rational GameSpec::catch_threshold() const { return kind == GameKind::Sided ? scale * d : scale; }

void GameSpec::validate() const {
    auto fail = [](const std::string& why) { throw std::invalid_argument("invalid game spec: " + why); };
    if (n < 1) fail("depth must be at least 1");
    if (n > 20) fail("depth above 20 is not representable");
    if (k < 1) fail("k must be at least 1");
    if (sided_layout() && k != 2) fail("sided games use exactly two components");
    if (scale <= 0) fail("scale must be positive");
    if (kind == GameKind::Sided) {
        if (c < 0) fail("c must be nonnegative");
        if (c > d) fail("c must not exceed d");
        if (d <= 0) fail("d must be positive");
    }
    if ((kind == GameKind::PartialSided || kind == GameKind::ClassGame) && c < 0) fail("c must be nonnegative");
    if (has_a() && a <= 0) fail("a must be positive");
    if (restricted_kind() && delta <= 0) fail("delta must be positive");
    if (variance_kind() && variance <= 0) fail("Delta must be positive");
    if (class_kind() && !cls) fail("class games need a class");
}

namespace {

const char* kind_name(GameKind k) {
    switch (k) {
        case GameKind::Sided: return "sided";
        case GameKind::DynamicSided: return "dynamic";
        case GameKind::RestrictedDynamicSided: return "restricted";
        case GameKind::PartialSided: return "partial";
        case GameKind::DynamicPartial: return "dynamic-partial";
        case GameKind::RestrictedDynamicPartial: return "restricted-partial";
        case GameKind::VariancePartial: return "variance-partial";
        case GameKind::ClassGame: return "class";
        case GameKind::VarianceClassGame: return "variance-class";
    }
    return "?";
}

}  // namespace

std::string GameSpec::id() const {
    std::string out = kind_name(kind);
    out += ":";
    auto add = [&out](const std::string& key, const std::string& val) {
        if (out.back() != ':') out += ",";
        out += key + "=" + val;
    };
    if (cls) add("cls", cls->id());
    switch (kind) {
        case GameKind::Sided:
            add("c", to_string(c));
            add("d", to_string(d));
            break;
        case GameKind::PartialSided:
        case GameKind::ClassGame:
            add("c", to_string(c));
            break;
        default:
            add("a", to_string(a));
            break;
    }
    if (restricted_kind()) add("delta", to_string(delta));
    if (variance_kind()) add("Delta", to_string(variance));
    add(variance_kind() ? "m" : "n", std::to_string(n));
    if (!sided_layout()) add("k", std::to_string(k));
    if (scale != 1) add("scale", to_string(scale));
    return out;
}

GameSpec GameSpec::parse(const std::string& id) {
    auto p = ParamList::parse(id);
    const auto& name = p.name();
    GameSpec s;
    if (name == "sided") {
        s = sided(p.rational("c"), p.rational("d", Rational(1)), p.integer("n"));
    } else if (name == "dynamic") {
        s = dynamic_sided(p.rational("a"), p.integer("n"));
    } else if (name == "restricted") {
        s = restricted(p.rational("a"), p.rational("delta"), p.integer("n"));
    } else if (name == "partial") {
        s = partial_sided(p.rational("c"), p.integer("n"), p.integer("k"));
    } else if (name == "dynamic-partial") {
        s = dynamic_partial(p.rational("a"), p.integer("n"), p.integer("k"));
    } else if (name == "restricted-partial") {
        s = restricted_partial(p.rational("a"), p.rational("delta"), p.integer("n"), p.integer("k"));
    } else if (name == "variance-partial") {
        s = variance_partial(p.rational("a"), p.rational("Delta"), p.integer("m"), p.integer("k"));
    } else if (name == "class") {
        s = class_game(GaleClass::parse(p.str("cls")), p.rational("c"), p.integer("n"), p.integer("k", 1));
    } else if (name == "variance-class") {
        s = variance_class(GaleClass::parse(p.str("cls")), p.rational("a"), p.rational("Delta"), p.integer("m"),
                           p.integer("k", 1));
    } else {
        throw std::invalid_argument("unknown game kind: " + name);
    }
    if (p.has("scale")) s = s.with_scale(p.rational("scale"));
    return s;
}

Json to_json(const GameSpec& spec) { return Json(spec.id()); }

// ---- names ------------------------------------------------------------------

std::string status_name(Status s) {
    switch (s) {
        case Status::Ongoing: return "ONGOING";
        case Status::AliceWon: return "ALICE_WON";
        case Status::InvalidBaby: return "INVALID_BABY";
        case Status::Exhausted: return "EXHAUSTED";
    }
    return "?";
}

std::string criterion_name(WinCriterion c) {
    switch (c) {
        case WinCriterion::None: return "none";
        case WinCriterion::Threshold: return "threshold";
        case WinCriterion::TypeA: return "type-a";
        case WinCriterion::TypeB: return "type-b";
    }
    return "?";
}

std::string rule_name(Rule r) {
    switch (r) {
        case Rule::Supermartingale: return "SUPERMARTINGALE";
        case Rule::Sidedness: return "SIDEDNESS";
        case Rule::PolicyRetraction: return "POLICY_RETRACTION";
        case Rule::Class: return "CLASS";
        case Rule::Domination: return "DOMINATION";
        case Rule::Catching: return "CATCHING";
        case Rule::RestrictionI: return "RESTRICTION_I";
        case Rule::RestrictionII: return "RESTRICTION_II";
    }
    return "?";
}

// ---- state machine ----------------------------------------------------------

bool GameState::is_enumerated(const BitString& s) const {
    if (s.size() != spec_.n) return false;
    return (*membership_)[static_cast<std::size_t>(s.value())] != 0;
}

GameState new_game(const GameSpec& spec) {
    spec.validate();
    GameState s;
    s.spec_ = spec;
    s.membership_ = std::make_shared<std::vector<char>>(std::size_t{1} << spec.n, 0);
    s.policies_.assign(spec.partial() ? static_cast<std::size_t>(spec.k) : 0, SidePolicy());
    if (spec.class_kind() && spec.cls->kind() == GaleClass::Kind::Kaster) {
        auto blank = std::make_shared<const std::vector<char>>((std::size_t{1} << spec.n) - 1, 0);
        s.orientation_.assign(static_cast<std::size_t>(spec.k), blank);
    }
    return s;
}

GameState alice_move(const GameState& s, const BitString& sigma) {
    if (s.status_ != Status::Ongoing) throw GameError("GAME_OVER", "the game has ended (" + status_name(s.status_) + ")");
    if (s.turn_ != Turn::Alice) throw GameError("OUT_OF_TURN", "it is Baby's turn");
    if (sigma.size() != s.spec_.n)
        throw GameError("WRONG_LENGTH", "leaf " + sigma.str() + " must have length " + std::to_string(s.spec_.n));
    if (s.is_enumerated(sigma)) throw GameError("DUPLICATE", "leaf " + sigma.str() + " was already enumerated");
    GameState next = s;
    next.membership_ = std::make_shared<std::vector<char>>(*s.membership_);
    (*next.membership_)[static_cast<std::size_t>(sigma.value())] = 1;
    next.enumerated_.push_back(sigma);
    next.turn_ = Turn::Baby;
    return next;
}

namespace {

std::vector<Rational> l1_all(const GaleVector& v) {
    std::vector<Rational> out(v[0].node_count(), Rational(0));
    for (const auto& m : v.components)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += m.at_index(i);
    return out;
}

// caught[leaf] for every leaf of 2^n.
std::vector<char> caught_leaves(const GameSpec& spec, const std::vector<Rational>& l1) {
    const Rational thr = spec.catch_threshold();
    const std::size_t internal = (std::size_t{1} << spec.n) - 1;
    std::vector<char> node(l1.size(), 0);
    for (std::size_t i = 0; i < l1.size(); ++i) {
        bool here = l1[i] >= thr;
        if (spec.catch_at_leaf()) node[i] = here;
        else node[i] = here || (i > 0 && node[(i - 1) / 2]);
    }
    return std::vector<char>(node.begin() + static_cast<std::ptrdiff_t>(internal), node.end());
}

BabyOutcome reject(const GameState& s, Rule r, std::string detail) { return BabyOutcome{s, r, std::move(detail)}; }

}  // namespace

bool attention_holds(const Rational& scale, const Rational& a, const Rational& l1, const Rational& cond_measure) {
    return cond_measure < 1 && scale - l1 <= scale * (1 - cond_measure) / a;
}

bool is_caught(const GameState& s, const GaleVector& v, const BitString& sigma) {
    const Rational thr = s.spec().catch_threshold();
    if (s.spec().catch_at_leaf()) return l1_at(v, sigma) >= thr;
    for (int len = 0; len <= sigma.size(); ++len)
        if (l1_at(v, sigma.prefix(len)) >= thr) return true;
    return false;
}

BabyOutcome baby_move(const GameState& s, const GaleVector& v, const std::optional<std::vector<SidePolicy>>& p) {
    const GameSpec& spec = s.spec_;
    if (s.status_ != Status::Ongoing) throw GameError("GAME_OVER", "the game has ended (" + status_name(s.status_) + ")");
    if (s.turn_ != Turn::Baby) throw GameError("OUT_OF_TURN", "it is Alice's turn");
    if (v.k() != spec.k || v.depth() != spec.n)
        throw GameError("BAD_MOVE", "expected " + std::to_string(spec.k) + " gales of depth " + std::to_string(spec.n));

    std::vector<SidePolicy> policies = s.policies_;
    if (p) {
        if (!spec.partial()) {
            for (const auto& q : *p)
                if (q.size() != 0) throw GameError("BAD_MOVE", "policies are only meaningful in partial games");
        } else {
            if (static_cast<int>(p->size()) != spec.k) throw GameError("BAD_MOVE", "one policy per component expected");
            for (const auto& q : *p)
                for (const auto& [node, bit] : q.assignments())
                    if (node.size() >= spec.n) throw GameError("BAD_MOVE", "policy node " + node.str() + " is not internal");
            policies = *p;
        }
    }

    // (1) supermartingale
    for (int j = 0; j < spec.k; ++j) {
        auto chk = is_supermartingale(v[static_cast<std::size_t>(j)]);
        if (!chk) return reject(s, Rule::Supermartingale, "component " + std::to_string(j) + " at '" + chk.violation->str() + "'");
    }

    // (2) sidedness, policies or class shape
    std::vector<std::shared_ptr<const std::vector<char>>> orientation = s.orientation_;
    if (spec.sided_layout()) {
        for (int j = 0; j < 2; ++j)
            if (!is_sided(v[static_cast<std::size_t>(j)], j))
                return reject(s, Rule::Sidedness, "component " + std::to_string(j) + " is not " + std::to_string(j) + "-sided");
    } else if (spec.partial()) {
        for (int j = 0; j < spec.k; ++j) {
            const auto& pj = policies[static_cast<std::size_t>(j)];
            if (!pj.extends(s.policies_[static_cast<std::size_t>(j)]))
                return reject(s, Rule::PolicyRetraction, "policy " + std::to_string(j) + " drops or flips an assignment");
            if (!is_p_sided(v[static_cast<std::size_t>(j)], pj))
                return reject(s, Rule::Sidedness, "component " + std::to_string(j) + " is not p-sided");
        }
    } else if (spec.class_kind()) {
        const GaleClass& cls = *spec.cls;
        for (int j = 0; j < spec.k; ++j) {
            const auto& m = v[static_cast<std::size_t>(j)];
            if (cls.kind() == GaleClass::Kind::Muchgale) {
                if (!is_li_betting(m, cls.l(), cls.i()))
                    return reject(s, Rule::Class, "component " + std::to_string(j) + " increases at a restricted level");
                continue;
            }
            auto seen = std::make_shared<std::vector<char>>(*orientation[static_cast<std::size_t>(j)]);
            for (std::size_t n = 0; n < seen->size(); ++n) {
                const Rational& c0 = m.at_index(2 * n + 1);
                const Rational& c1 = m.at_index(2 * n + 2);
                if (c0 > c1) (*seen)[n] |= 1;
                if (c1 > c0) (*seen)[n] |= 2;
                if ((*seen)[n] == 3)
                    return reject(s, Rule::Class, "component " + std::to_string(j) + " flips its favored side at '" +
                                                      BitString::from_heap_index(n).str() + "'");
            }
            orientation[static_cast<std::size_t>(j)] = std::move(seen);
        }
    }

    // (3) domination
    const GaleVector* prev = s.latest();
    if (prev) {
        for (int j = 0; j < spec.k; ++j)
            if (!dominates(v[static_cast<std::size_t>(j)], (*prev)[static_cast<std::size_t>(j)]))
                return reject(s, Rule::Domination, "component " + std::to_string(j) + " decreased somewhere");
    }

    // (4) catching
    auto l1 = l1_all(v);
    auto caught = caught_leaves(spec, l1);
    for (const auto& sigma : s.enumerated_) {
        if (!caught[static_cast<std::size_t>(sigma.value())])
            return reject(s, spec.restricted_kind() ? Rule::RestrictionI : Rule::Catching, "leaf " + sigma.str() + " is not caught");
    }

    // (5) restriction II
    if (spec.restricted_kind()) {
        const Rational cap = spec.scale * (1 + spec.delta);
        for (std::size_t i = 0; i < l1.size(); ++i)
            if (l1[i] > cap)
                return reject(s, Rule::RestrictionII, "capital above 1+δ at '" + BitString::from_heap_index(i).str() + "'");
    }

    if (prev) {
        auto before = caught_leaves(spec, l1_all(*prev));
        for (std::size_t i = 0; i < before.size(); ++i)
            if (before[i] && !caught[i]) throw std::logic_error("a caught leaf became uncaught despite domination");
    }

    BabyOutcome out{s, std::nullopt, ""};
    GameState& next = out.state;
    next.history_.push_back(std::make_shared<const GaleVector>(v));
    next.policies_ = std::move(policies);
    next.orientation_ = std::move(orientation);
    next.turn_ = Turn::Alice;
    auto [status, crit] = check_win(next);
    next.status_ = status;
    next.criterion_ = crit;
    return out;
}

GameState forfeit(const GameState& s, const std::string& reason) {
    GameState next = s;
    next.status_ = Status::InvalidBaby;
    next.forfeit_reason_ = reason;
    return next;
}

std::pair<Status, WinCriterion> check_win(const GameState& s) {
    const GameSpec& spec = s.spec();
    const GaleVector* v = s.latest();
    if (v) {
        Rational root = l1_at(*v, BitString());
        if (!spec.has_a()) {
            if (root >= spec.scale * spec.c) return {Status::AliceWon, WinCriterion::Threshold};
        } else {
            if (spec.scale - root <= spec.scale * (1 - cost(s)) / spec.a) return {Status::AliceWon, WinCriterion::TypeA};
            if (spec.variance_kind() && !s.enumerated().empty()) {
                Rational var = cond_variance(*v, PrefixFreeSet(s.enumerated()));
                if (var >= spec.scale * spec.scale * spec.variance) return {Status::AliceWon, WinCriterion::TypeB};
            }
        }
    }
    if (s.enumerated().size() == (std::size_t{1} << spec.n)) return {Status::Exhausted, WinCriterion::None};
    return {Status::Ongoing, WinCriterion::None};
}

bool winning_attention(const GameState& s, const BitString& rho) {
    const GameSpec& spec = s.spec();
    if (!spec.has_a()) throw std::invalid_argument("winning attention needs a dynamic-family game");
    if (rho.size() > spec.n) throw std::invalid_argument("winning attention: rho deeper than the game");
    Rational l1 = s.latest() ? l1_at(*s.latest(), rho) : Rational(0);
    std::size_t under = 0;
    for (const auto& sigma : s.enumerated())
        if (rho.is_prefix_of(sigma)) ++under;
    Rational cm = Rational(static_cast<long>(under)) * pow2(rho.size() - spec.n);
    return attention_holds(spec.scale, spec.a, l1, cm);
}

Rational cost(const GameState& s) {
    return Rational(static_cast<long>(s.enumerated().size())) * pow2(-s.spec().n);
}

}  // namespace betgames
