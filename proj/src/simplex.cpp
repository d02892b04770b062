#include "betgames/simplex.hpp"

#include <optional>
#include <stdexcept>

namespace betgames {

void LinearProgram::add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    if (static_cast<int>(coeffs.size()) != num_vars)
        throw std::invalid_argument("constraint width differs from num_vars");
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

void LinearProgram::validate() const {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
    if (static_cast<int>(objective.size()) != num_vars)
        throw std::invalid_argument("objective width differs from num_vars");
    for (const auto& c : constraints)
        if (static_cast<int>(c.coeffs.size()) != num_vars)
            throw std::invalid_argument("constraint width differs from num_vars");
}

namespace {

struct Tableau {
    std::vector<std::vector<Rational>> rows;  // last entry is the right-hand side
    std::vector<int> basis;
    std::vector<Rational> reduced;  // reduced costs; last entry is −objective
    int cols = 0;
    int pivots = 0;

    int rhs() const { return cols; }

    void pivot(std::size_t r, int c) {
        ++pivots;
        auto& prow = rows[r];
        Rational inv = 1 / prow[static_cast<std::size_t>(c)];
        std::vector<int> nz;
        for (int j = 0; j <= cols; ++j) {
            auto& x = prow[static_cast<std::size_t>(j)];
            if (x == 0) continue;
            x *= inv;
            nz.push_back(j);
        }
        auto eliminate = [&](std::vector<Rational>& row) {
            Rational f = row[static_cast<std::size_t>(c)];
            if (f == 0) return;
            for (int j : nz) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
        };
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r) eliminate(rows[i]);
        eliminate(reduced);
        basis[r] = c;
    }

    // Bland's rule. Returns false when unbounded.
    bool run(int allowed_cols) {
        while (true) {
            int enter = -1;
            for (int j = 0; j < allowed_cols; ++j)
                if (reduced[static_cast<std::size_t>(j)] < 0) { enter = j; break; }
            if (enter < 0) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const Rational& a = rows[i][static_cast<std::size_t>(enter)];
                if (a <= 0) continue;
                Rational ratio = rows[i][static_cast<std::size_t>(rhs())] / a;
                if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, enter);
        }
    }

    void price(const std::vector<Rational>& cost) {
        reduced.assign(static_cast<std::size_t>(cols) + 1, Rational(0));
        for (int j = 0; j < cols; ++j) reduced[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational& cb = cost[static_cast<std::size_t>(basis[i])];
            if (cb == 0) continue;
            for (int j = 0; j <= cols; ++j) {
                const Rational& a = rows[i][static_cast<std::size_t>(j)];
                if (a != 0) reduced[static_cast<std::size_t>(j)] -= cb * a;
            }
        }
    }
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += a[i] * x[i];
    return s;
}

}  // namespace

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != lp.num_vars) return false;
    for (const auto& v : x)
        if (v < 0) return false;
    for (const auto& c : lp.constraints) {
        Rational lhs = dot(c.coeffs, x);
        bool ok = c.rel == Relation::LessEq ? lhs <= c.rhs : c.rel == Relation::GreaterEq ? lhs >= c.rhs : lhs == c.rhs;
        if (!ok) return false;
    }
    return true;
}

LpResult solve(const LinearProgram& lp) {
    lp.validate();
    const int n = lp.num_vars;
    const std::size_t m = lp.constraints.size();

    // Normalize to nonnegative right-hand sides.
    std::vector<LinearConstraint> cons = lp.constraints;
    for (auto& c : cons) {
        if (c.rhs >= 0) continue;
        for (auto& a : c.coeffs) a = -a;
        c.rhs = -c.rhs;
        if (c.rel == Relation::LessEq) c.rel = Relation::GreaterEq;
        else if (c.rel == Relation::GreaterEq) c.rel = Relation::LessEq;
    }

    int slack_count = 0, art_count = 0;
    for (const auto& c : cons) {
        if (c.rel != Relation::Equal) ++slack_count;
        if (c.rel != Relation::LessEq) ++art_count;
    }
    const int first_slack = n;
    const int first_art = n + slack_count;

    Tableau t;
    t.cols = n + slack_count + art_count;
    t.rows.assign(m, std::vector<Rational>(static_cast<std::size_t>(t.cols) + 1, Rational(0)));
    t.basis.assign(m, -1);
    int s = first_slack, a = first_art;
    for (std::size_t i = 0; i < m; ++i) {
        auto& row = t.rows[i];
        for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = cons[i].coeffs[static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(t.cols)] = cons[i].rhs;
        switch (cons[i].rel) {
            case Relation::LessEq:
                row[static_cast<std::size_t>(s)] = 1;
                t.basis[i] = s++;
                break;
            case Relation::GreaterEq:
                row[static_cast<std::size_t>(s++)] = -1;
                row[static_cast<std::size_t>(a)] = 1;
                t.basis[i] = a++;
                break;
            case Relation::Equal:
                row[static_cast<std::size_t>(a)] = 1;
                t.basis[i] = a++;
                break;
        }
    }

    LpResult result;
    if (art_count > 0) {
        std::vector<Rational> phase1(static_cast<std::size_t>(t.cols), Rational(0));
        for (int j = first_art; j < t.cols; ++j) phase1[static_cast<std::size_t>(j)] = 1;
        t.price(phase1);
        t.run(t.cols);
        if (t.reduced[static_cast<std::size_t>(t.cols)] != 0) {
            result.status = LpStatus::Infeasible;
            result.pivots = t.pivots;
            return result;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < t.rows.size();) {
            if (t.basis[i] < first_art) { ++i; continue; }
            int col = -1;
            for (int j = 0; j < first_art; ++j)
                if (t.rows[i][static_cast<std::size_t>(j)] != 0) { col = j; break; }
            if (col >= 0) {
                t.pivot(i, col);
                ++i;
            } else {
                t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::vector<Rational> phase2(static_cast<std::size_t>(t.cols), Rational(0));
    for (int j = 0; j < n; ++j) phase2[static_cast<std::size_t>(j)] = lp.objective[static_cast<std::size_t>(j)];
    t.price(phase2);
    bool bounded = t.run(first_art);
    result.pivots = t.pivots;
    if (!bounded) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    result.status = LpStatus::Optimal;
    result.x.assign(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < n) result.x[static_cast<std::size_t>(t.basis[i])] = t.rows[i][static_cast<std::size_t>(t.cols)];
    result.value = dot(lp.objective, result.x);

    if (!satisfies(lp, result.x)) throw std::logic_error("simplex produced an infeasible assignment");
    for (int j = 0; j < first_art; ++j)
        if (t.reduced[static_cast<std::size_t>(j)] < 0) throw std::logic_error("final basis is not dual feasible");
    if (-t.reduced[static_cast<std::size_t>(t.cols)] != result.value)
        throw std::logic_error("tableau objective disagrees with the assignment");
    return result;
}

std::string status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "OPTIMAL";
        case LpStatus::Infeasible: return "INFEASIBLE";
        case LpStatus::Unbounded: return "UNBOUNDED";
    }
    return "?";
}

namespace {

std::string relation_name(Relation r) {
    switch (r) {
        case Relation::LessEq: return "<=";
        case Relation::GreaterEq: return ">=";
        case Relation::Equal: return "=";
    }
    return "?";
}

Relation parse_relation(const std::string& s) {
    if (s == "<=") return Relation::LessEq;
    if (s == ">=") return Relation::GreaterEq;
    if (s == "=" || s == "==") return Relation::Equal;
    throw std::invalid_argument("unknown relation: " + s);
}

Json rationals(const std::vector<Rational>& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(to_string(x));
    return arr;
}

std::vector<Rational> parse_rationals(const Json& j) {
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long long>()));
    return out;
}

}  // namespace

Json to_json(const LinearProgram& lp) {
    Json cons = Json::array();
    for (const auto& c : lp.constraints)
        cons.push_back(Json{{"coeffs", rationals(c.coeffs)}, {"rel", relation_name(c.rel)}, {"rhs", to_string(c.rhs)}});
    return Json{{"num_vars", lp.num_vars}, {"objective", rationals(lp.objective)}, {"constraints", std::move(cons)}};
}

LinearProgram lp_from_json(const Json& j) {
    LinearProgram lp(j.at("num_vars").get<int>());
    lp.objective = parse_rationals(j.at("objective"));
    for (const auto& c : j.at("constraints")) {
        const auto& rhs = c.at("rhs");
        lp.constraints.push_back({parse_rationals(c.at("coeffs")), parse_relation(c.at("rel").get<std::string>()),
                                  rhs.is_string() ? parse_rational(rhs.get<std::string>()) : Rational(rhs.get<long long>())});
    }
    lp.validate();
    return lp;
}

Json to_json(const LpResult& r) {
    Json j{{"status", status_name(r.status)}};
    if (r.status == LpStatus::Optimal) {
        j["value"] = to_string(r.value);
        j["x"] = rationals(r.x);
    }
    j["pivots"] = r.pivots;
    return j;
}

}  // namespace betgames
