#pragma once

#include "betgames/gales.hpp"
#include "betgames/simplex.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace betgames {

// Constraint between the two children of an internal node.
enum class NodeRule : std::uint8_t { Free, Equal, Side0, Side1 };

// Feasible set of one component: a supermartingale on 2^{≤depth} with the
// per-node child rules, optional no-increase nodes, and a domination floor.
struct ComponentShape {
    int depth = 0;
    std::vector<NodeRule> rule;       // internal nodes, heap order
    std::vector<char> no_increase;    // internal nodes, heap order
    GaleTree floor;

    explicit ComponentShape(int depth);
    static ComponentShape sided(int depth, int i);
    // Side p(σ) where defined, equal children elsewhere.
    static ComponentShape policy(int depth, const SidePolicy& p);
    static ComponentShape li_betting(int depth, int l, int i);

    std::size_t internal_count() const { return rule.size(); }
};

struct CatchRequirement {
    BitString node;
    Rational threshold;  // Σ_j M_j(node) ≥ threshold
};

struct ResponseProblem {
    std::vector<ComponentShape> components;
    std::vector<CatchRequirement> catches;
    std::optional<Rational> upper;              // Σ_j M_j(ρ) ≤ upper at every ρ
    std::vector<std::vector<Rational>> weights;  // objective per component and node; empty = roots

    int depth() const { return components.empty() ? 0 : components.front().depth; }
    Rational weight(std::size_t j, std::size_t node) const;
};

struct ResponseSolution {
    bool feasible = false;
    Rational objective;
    GaleVector gales;
};

// The least feasible gale of one component given extra node lower bounds.
GaleTree minimal_closure(const ComponentShape& shape,
                         const std::vector<std::pair<BitString, Rational>>& lower_bounds = {});

// Exact when there is no upper bound and, for k ≥ 2, at most one catch is not
// already met by the plain closures.
bool closure_applicable(const ResponseProblem& p);
ResponseSolution solve_closure(const ResponseProblem& p);
ResponseSolution solve_lp(const ResponseProblem& p);
ResponseSolution solve_response(const ResponseProblem& p);

// Variables are offsets above the floors, one per component and node (heap order, component-major).
LinearProgram to_linear_program(const ResponseProblem& p);

}  // namespace betgames
