#include "betgames/response.hpp"

#include <algorithm>
#include <stdexcept>

namespace betgames {

ComponentShape::ComponentShape(int d)
    : depth(d),
      rule((std::size_t{1} << d) - 1, NodeRule::Free),
      no_increase((std::size_t{1} << d) - 1, 0),
      floor(d) {}

ComponentShape ComponentShape::sided(int d, int i) {
    ComponentShape s(d);
    std::fill(s.rule.begin(), s.rule.end(), i == 0 ? NodeRule::Side0 : NodeRule::Side1);
    return s;
}

ComponentShape ComponentShape::policy(int d, const SidePolicy& p) {
    ComponentShape s(d);
    std::fill(s.rule.begin(), s.rule.end(), NodeRule::Equal);
    for (const auto& [node, bit] : p.assignments()) {
        if (node.size() >= d) throw std::invalid_argument("policy node " + node.str() + " is not internal");
        s.rule[node.heap_index()] = bit == 0 ? NodeRule::Side0 : NodeRule::Side1;
    }
    return s;
}

ComponentShape ComponentShape::li_betting(int d, int l, int i) {
    ComponentShape s(d);
    for (std::size_t n = 0; n < s.no_increase.size(); ++n)
        if (BitString::from_heap_index(n).size() % l == i) s.no_increase[n] = 1;
    return s;
}

Rational ResponseProblem::weight(std::size_t j, std::size_t node) const {
    if (weights.empty()) return node == 0 ? Rational(1) : Rational(0);
    return weights[j][node];
}

namespace {

// Pre-raise values u (before the parent's child rule lifts a node) and final values v.
struct Closure {
    std::vector<Rational> u;
    std::vector<Rational> v;
};

void raise_children(NodeRule r, Rational& a, Rational& b) {
    switch (r) {
        case NodeRule::Free: break;
        case NodeRule::Equal:
            if (a < b) a = b; else b = a;
            break;
        case NodeRule::Side0:
            if (a < b) a = b;
            break;
        case NodeRule::Side1:
            if (b < a) b = a;
            break;
    }
}

Closure closure_of(const ComponentShape& shape, const std::vector<Rational>& lb) {
    Closure c;
    c.v = lb;
    std::size_t internal = shape.internal_count();
    std::size_t total = lb.size();
    c.u.resize(total);
    for (std::size_t i = total; i-- > 0;) {
        if (i >= internal) {
            c.u[i] = c.v[i];
            continue;
        }
        Rational& a = c.v[2 * i + 1];
        Rational& b = c.v[2 * i + 2];
        raise_children(shape.rule[i], a, b);
        Rational need = (a + b) / 2;
        if (shape.no_increase[i]) need = std::max(need, std::max(a, b));
        if (c.v[i] < need) c.v[i] = need;
        c.u[i] = c.v[i];
    }
    return c;
}

std::vector<Rational> floor_values(const ComponentShape& shape) {
    if (shape.floor.depth() != shape.depth) throw std::invalid_argument("floor depth differs from shape depth");
    return shape.floor.values();
}

// Convex piecewise-linear function on [0, hi] as the maximum of affine pieces.
class ConvexPL {
public:
    struct Piece {
        Rational slope;
        Rational icept;
    };

    static ConvexPL constant(const Rational& c) { return ConvexPL({{Rational(0), c}}); }
    static ConvexPL identity() { return ConvexPL({{Rational(1), Rational(0)}}); }

    ConvexPL max_with(const ConvexPL& o, const Rational& hi) const {
        std::vector<Piece> all = pieces_;
        all.insert(all.end(), o.pieces_.begin(), o.pieces_.end());
        return ConvexPL(std::move(all)).pruned(hi);
    }
    ConvexPL plus(const ConvexPL& o, const Rational& hi) const {
        std::vector<Piece> all;
        for (const auto& a : pieces_)
            for (const auto& b : o.pieces_) all.push_back({a.slope + b.slope, a.icept + b.icept});
        return ConvexPL(std::move(all)).pruned(hi);
    }
    ConvexPL times(const Rational& c) const {
        std::vector<Piece> all;
        for (const auto& a : pieces_) all.push_back({a.slope * c, a.icept * c});
        return ConvexPL(std::move(all));
    }

    // Upper envelope restricted to [0, hi], pieces in increasing slope order.
    ConvexPL pruned(const Rational& hi) const {
        std::vector<Piece> ps = pieces_;
        std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) {
            return a.slope < b.slope || (a.slope == b.slope && a.icept > b.icept);
        });
        std::vector<Piece> uniq;
        for (const auto& p : ps)
            if (uniq.empty() || uniq.back().slope != p.slope) uniq.push_back(p);
        std::vector<Piece> hull;
        for (const auto& p : uniq) {
            while (hull.size() >= 2 && meet(hull[hull.size() - 2], p) <= meet(hull[hull.size() - 2], hull.back()))
                hull.pop_back();
            hull.push_back(p);
        }
        while (hull.size() >= 2 && meet(hull[0], hull[1]) <= 0) hull.erase(hull.begin());
        while (hull.size() >= 2 && meet(hull[hull.size() - 2], hull.back()) >= hi) hull.pop_back();
        return ConvexPL(std::move(hull));
    }

    // Segments (length, slope) covering [0, hi] in order; requires a pruned function.
    std::vector<std::pair<Rational, Rational>> segments(const Rational& hi) const {
        std::vector<std::pair<Rational, Rational>> out;
        Rational start = 0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            Rational end = i + 1 < pieces_.size() ? meet(pieces_[i], pieces_[i + 1]) : hi;
            if (end > hi) end = hi;
            if (end > start) out.push_back({end - start, pieces_[i].slope});
            start = std::max(start, end);
        }
        return out;
    }

private:
    explicit ConvexPL(std::vector<Piece> p) : pieces_(std::move(p)) {}
    static Rational meet(const Piece& a, const Piece& b) { return (a.icept - b.icept) / (b.slope - a.slope); }

    std::vector<Piece> pieces_;
};

// Objective of one component's closure as a function of the lower bound x at node c.
ConvexPL cost_curve(const ResponseProblem& p, std::size_t j, const Closure& base, const BitString& c,
                    const Rational& hi) {
    const auto& shape = p.components[j];
    std::vector<char> moving(base.v.size(), 0);
    for (BitString s = c;; s = s.parent()) {
        moving[s.heap_index()] = 1;
        if (!s.empty()) moving[s.sibling().heap_index()] = 1;
        if (s.empty()) break;
    }
    Rational fixed = 0;
    for (std::size_t i = 0; i < base.v.size(); ++i)
        if (!moving[i]) fixed += p.weight(j, i) * base.v[i];

    ConvexPL cur = ConvexPL::constant(base.u[c.heap_index()]).max_with(ConvexPL::identity(), hi);
    ConvexPL total = ConvexPL::constant(fixed);
    for (BitString s = c; !s.empty(); s = s.parent()) {
        BitString par = s.parent();
        std::size_t pi = par.heap_index();
        ConvexPL sib = ConvexPL::constant(base.u[s.sibling().heap_index()]);
        ConvexPL vs = cur, vt = sib;  // this node, sibling
        NodeRule r = shape.rule[pi];
        int b = s.last();
        bool favored = (r == NodeRule::Side0 && b == 0) || (r == NodeRule::Side1 && b == 1);
        bool disfavored = (r == NodeRule::Side0 && b == 1) || (r == NodeRule::Side1 && b == 0);
        if (r == NodeRule::Equal) {
            vs = cur.max_with(sib, hi);
            vt = vs;
        } else if (favored) {
            vs = cur.max_with(sib, hi);
        } else if (disfavored) {
            vt = sib.max_with(cur, hi);
        }
        total = total.plus(vs.times(p.weight(j, s.heap_index())), hi)
                    .plus(vt.times(p.weight(j, s.sibling().heap_index())), hi);
        ConvexPL up = vs.plus(vt, hi).times(Rational(1, 2));
        up = up.max_with(ConvexPL::constant(shape.floor.at_index(pi)), hi);
        if (shape.no_increase[pi]) up = up.max_with(vs, hi).max_with(vt, hi);
        cur = up;
    }
    total = total.plus(cur.times(p.weight(j, 0)), hi);
    return total;
}

ResponseSolution assemble(const ResponseProblem& p, const std::vector<std::vector<Rational>>& lbs) {
    ResponseSolution sol;
    std::vector<GaleTree> comps;
    sol.objective = 0;
    for (std::size_t j = 0; j < p.components.size(); ++j) {
        Closure c = closure_of(p.components[j], lbs[j]);
        GaleTree m(p.components[j].depth);
        for (std::size_t i = 0; i < c.v.size(); ++i) {
            sol.objective += p.weight(j, i) * c.v[i];
            m.mutable_at_index(i) = std::move(c.v[i]);
        }
        comps.push_back(std::move(m));
    }
    sol.gales = GaleVector(std::move(comps));
    sol.feasible = true;
    return sol;
}

void check_problem(const ResponseProblem& p) {
    if (p.components.empty()) throw std::invalid_argument("response problem without components");
    for (const auto& c : p.components)
        if (c.depth != p.depth()) throw std::invalid_argument("components differ in depth");
    for (const auto& c : p.catches)
        if (c.node.size() > p.depth()) throw std::invalid_argument("catch node deeper than the game");
}

std::vector<CatchRequirement> unmet_catches(const ResponseProblem& p, const std::vector<Closure>& base) {
    std::vector<CatchRequirement> out;
    for (const auto& c : p.catches) {
        Rational sum = 0;
        for (const auto& b : base) sum += b.v[c.node.heap_index()];
        if (sum < c.threshold) out.push_back(c);
    }
    return out;
}

}  // namespace

GaleTree minimal_closure(const ComponentShape& shape, const std::vector<std::pair<BitString, Rational>>& lower_bounds) {
    auto lb = floor_values(shape);
    for (const auto& [node, val] : lower_bounds) {
        auto& x = lb[node.heap_index()];
        if (x < val) x = val;
    }
    Closure c = closure_of(shape, lb);
    GaleTree m(shape.depth);
    for (std::size_t i = 0; i < c.v.size(); ++i) m.mutable_at_index(i) = std::move(c.v[i]);
    return m;
}

bool closure_applicable(const ResponseProblem& p) {
    if (p.upper) return false;
    if (p.components.size() == 1) return true;
    std::vector<Closure> base;
    for (const auto& c : p.components) base.push_back(closure_of(c, floor_values(c)));
    return unmet_catches(p, base).size() <= 1;
}

ResponseSolution solve_closure(const ResponseProblem& p) {
    check_problem(p);
    if (p.upper) throw std::invalid_argument("closure solver cannot honor upper bounds");
    const std::size_t k = p.components.size();
    std::vector<std::vector<Rational>> lbs;
    for (const auto& c : p.components) lbs.push_back(floor_values(c));

    if (k == 1) {
        for (const auto& c : p.catches) {
            auto& x = lbs[0][c.node.heap_index()];
            if (x < c.threshold) x = c.threshold;
        }
        return assemble(p, lbs);
    }

    std::vector<Closure> base;
    for (std::size_t j = 0; j < k; ++j) base.push_back(closure_of(p.components[j], lbs[j]));
    auto unmet = unmet_catches(p, base);
    if (unmet.size() > 1) throw std::invalid_argument("closure solver handles one coupled catch");
    if (unmet.empty()) return assemble(p, lbs);

    const BitString& node = unmet.front().node;
    const Rational& need = unmet.front().threshold;
    struct Seg {
        Rational slope;
        std::size_t comp;
        std::size_t order;
        Rational length;
    };
    std::vector<Seg> segs;
    for (std::size_t j = 0; j < k; ++j) {
        auto curve = cost_curve(p, j, base[j], node, need);
        std::size_t order = 0;
        for (auto& [len, slope] : curve.segments(need)) segs.push_back({slope, j, order++, len});
    }
    // Each curve is convex, so taking segments by increasing slope keeps every
    // component's allocation a prefix of its own segments.
    std::stable_sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) {
        if (a.slope != b.slope) return a.slope < b.slope;
        if (a.comp != b.comp) return a.comp < b.comp;
        return a.order < b.order;
    });
    std::vector<Rational> alloc(k, Rational(0));
    Rational left = need;
    for (const auto& s : segs) {
        if (left <= 0) break;
        Rational take = std::min(left, s.length);
        alloc[s.comp] += take;
        left -= take;
    }
    if (left > 0) throw std::logic_error("cost curves do not cover the catch threshold");
    for (std::size_t j = 0; j < k; ++j) {
        auto& x = lbs[j][node.heap_index()];
        if (x < alloc[j]) x = alloc[j];
    }
    return assemble(p, lbs);
}

LinearProgram to_linear_program(const ResponseProblem& p) {
    check_problem(p);
    const std::size_t k = p.components.size();
    const std::size_t nodes = p.components.front().floor.node_count();
    const std::size_t internal = p.components.front().internal_count();
    LinearProgram lp(static_cast<int>(k * nodes));
    auto var = [nodes](std::size_t j, std::size_t i) { return j * nodes + i; };
    auto row = [&lp]() { return std::vector<Rational>(static_cast<std::size_t>(lp.num_vars), Rational(0)); };

    for (std::size_t j = 0; j < k; ++j) {
        const auto& sh = p.components[j];
        const auto& f = sh.floor;
        for (std::size_t i = 0; i < internal; ++i) {
            std::size_t a = 2 * i + 1, b = 2 * i + 2;
            auto r = row();
            r[var(j, i)] = 2;
            r[var(j, a)] = -1;
            r[var(j, b)] = -1;
            lp.add(std::move(r), Relation::GreaterEq, -(2 * f.at_index(i) - f.at_index(a) - f.at_index(b)));
            if (sh.rule[i] != NodeRule::Free) {
                auto q = row();
                std::size_t hi = sh.rule[i] == NodeRule::Side1 ? b : a;
                std::size_t lo = hi == a ? b : a;
                q[var(j, hi)] = 1;
                q[var(j, lo)] = -1;
                lp.add(std::move(q), sh.rule[i] == NodeRule::Equal ? Relation::Equal : Relation::GreaterEq,
                       f.at_index(lo) - f.at_index(hi));
            }
            if (sh.no_increase[i]) {
                for (std::size_t ch : {a, b}) {
                    auto q = row();
                    q[var(j, i)] = 1;
                    q[var(j, ch)] = -1;
                    lp.add(std::move(q), Relation::GreaterEq, f.at_index(ch) - f.at_index(i));
                }
            }
        }
    }
    for (const auto& c : p.catches) {
        auto r = row();
        Rational base = 0;
        for (std::size_t j = 0; j < k; ++j) {
            r[var(j, c.node.heap_index())] = 1;
            base += p.components[j].floor(c.node);
        }
        lp.add(std::move(r), Relation::GreaterEq, c.threshold - base);
    }
    if (p.upper) {
        for (std::size_t i = 0; i < nodes; ++i) {
            auto r = row();
            Rational base = 0;
            for (std::size_t j = 0; j < k; ++j) {
                r[var(j, i)] = 1;
                base += p.components[j].floor.at_index(i);
            }
            lp.add(std::move(r), Relation::LessEq, *p.upper - base);
        }
    }
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < nodes; ++i) lp.objective[var(j, i)] = p.weight(j, i);
    return lp;
}

ResponseSolution solve_lp(const ResponseProblem& p) {
    LinearProgram lp = to_linear_program(p);
    LpResult r = solve(lp);
    ResponseSolution sol;
    if (r.status != LpStatus::Optimal) return sol;
    const std::size_t nodes = p.components.front().floor.node_count();
    std::vector<GaleTree> comps;
    sol.objective = 0;
    for (std::size_t j = 0; j < p.components.size(); ++j) {
        GaleTree m(p.depth());
        for (std::size_t i = 0; i < nodes; ++i) {
            m.mutable_at_index(i) = p.components[j].floor.at_index(i) + r.x[j * nodes + i];
            sol.objective += p.weight(j, i) * m.at_index(i);
        }
        comps.push_back(std::move(m));
    }
    sol.gales = GaleVector(std::move(comps));
    sol.feasible = true;
    return sol;
}

ResponseSolution solve_response(const ResponseProblem& p) {
    return closure_applicable(p) ? solve_closure(p) : solve_lp(p);
}

}  // namespace betgames
