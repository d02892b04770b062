#pragma once

#include "betgames/rational.hpp"
#include "betgames/serialize.hpp"

#include <string>
#include <vector>

namespace betgames {

enum class Relation { LessEq, GreaterEq, Equal };

struct LinearConstraint {
    std::vector<Rational> coeffs;
    Relation rel = Relation::GreaterEq;
    Rational rhs;
};

// minimize objective·x subject to the constraints and x ≥ 0.
struct LinearProgram {
    int num_vars = 0;
    std::vector<LinearConstraint> constraints;
    std::vector<Rational> objective;

    explicit LinearProgram(int n = 0) : num_vars(n), objective(static_cast<std::size_t>(n)) {}
    void add(std::vector<Rational> coeffs, Relation rel, Rational rhs);
    // Throws std::invalid_argument on length mismatches.
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;
    int pivots = 0;
};

// Two-phase primal simplex with Bland's rule over exact rationals. Optimal
// results are re-checked against every constraint and for dual feasibility;
// a failed check throws std::logic_error.
LpResult solve(const LinearProgram& lp);

std::string status_name(LpStatus s);
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x);

Json to_json(const LinearProgram& lp);
LinearProgram lp_from_json(const Json& j);
Json to_json(const LpResult& r);

}  // namespace betgames
