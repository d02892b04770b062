#include "betgames/gales.hpp"

#include <regex>
#include <stdexcept>

namespace betgames {

namespace {

std::size_t tree_size(int depth) { return (std::size_t{1} << (depth + 1)) - 1; }

}  // namespace

GaleTree::GaleTree(int depth) : GaleTree(depth, Rational(0)) {}

GaleTree::GaleTree(int depth, const Rational& constant) : depth_(depth) {
    if (depth < 0 || depth > 20) throw std::invalid_argument("GaleTree depth out of range");
    if (constant < 0) throw std::invalid_argument("GaleTree values must be nonnegative");
    values_.assign(tree_size(depth), constant);
}

std::size_t GaleTree::checked_index(const BitString& s) const {
    if (s.size() > depth_)
        throw std::out_of_range("string " + s.str() + " deeper than gale depth " + std::to_string(depth_));
    return s.heap_index();
}

void GaleTree::set(const BitString& s, Rational v) {
    if (v < 0) throw std::invalid_argument("negative capital at " + s.str());
    values_[checked_index(s)] = std::move(v);
}

GaleTree GaleTree::scaled(const Rational& c) const {
    if (c < 0) throw std::invalid_argument("negative scaling");
    GaleTree out(*this);
    for (auto& v : out.values_) v *= c;
    return out;
}

GaleTree GaleTree::shifted(const BitString& rho, int depth) const {
    if (rho.size() + depth > depth_) throw std::invalid_argument("shifted: window exceeds gale depth");
    GaleTree out(depth);
    for (int len = 0; len <= depth; ++len) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
            BitString local(v, len);
            out.values_[local.heap_index()] = values_[rho.concat(local).heap_index()];
        }
    }
    return out;
}

GaleTree& GaleTree::operator+=(const GaleTree& other) {
    if (other.depth_ != depth_) throw std::invalid_argument("adding gales of different depth");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

GaleTree operator+(GaleTree a, const GaleTree& b) { return a += b; }

std::optional<int> SidePolicy::get(const BitString& s) const {
    auto it = assignments_.find(s);
    if (it == assignments_.end()) return std::nullopt;
    return it->second;
}

void SidePolicy::set(const BitString& s, int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("policy bit must be 0 or 1");
    assignments_[s] = bit;
}

bool SidePolicy::extends(const SidePolicy& prev) const {
    for (const auto& [s, b] : prev.assignments_) {
        auto mine = get(s);
        if (!mine || *mine != b) return false;
    }
    return true;
}

SidePolicy SidePolicy::shifted(const BitString& rho) const {
    SidePolicy out;
    for (const auto& [s, b] : assignments_)
        if (rho.is_prefix_of(s)) out.assignments_[s.suffix_from(rho.size())] = b;
    return out;
}

GaleVector::GaleVector(std::vector<GaleTree> comps) : components(std::move(comps)) {
    if (components.empty()) throw std::invalid_argument("GaleVector needs at least one component");
    for (const auto& c : components)
        if (c.depth() != components.front().depth())
            throw std::invalid_argument("GaleVector components differ in depth");
}

GaleVector GaleVector::zero(int k, int depth) {
    return GaleVector(std::vector<GaleTree>(static_cast<std::size_t>(k), GaleTree(depth)));
}

GaleVector GaleVector::scaled(const Rational& c) const {
    GaleVector out(*this);
    for (auto& m : out.components) m = m.scaled(c);
    return out;
}

SupermartingaleCheck is_supermartingale(const GaleTree& m) {
    SupermartingaleCheck r;
    std::size_t internal = (std::size_t{1} << m.depth()) - 1;
    for (std::size_t i = 0; i < internal; ++i) {
        const Rational& a = m.at_index(2 * i + 1);
        const Rational& b = m.at_index(2 * i + 2);
        Rational twice = 2 * m.at_index(i);
        Rational kids = a + b;
        if (twice < kids) {
            if (r.ok) r.violation = BitString::from_heap_index(i);
            r.ok = false;
            r.martingale = false;
            return r;
        }
        if (twice != kids) r.martingale = false;
    }
    return r;
}

bool is_sided_at(const GaleTree& m, const BitString& sigma, int i) {
    if (sigma.size() >= m.depth()) throw std::invalid_argument("is_sided_at: sigma must be internal");
    return m(sigma.child(i)) >= m(sigma.child(1 - i));
}

bool is_sided(const GaleTree& m, int i) {
    std::size_t internal = (std::size_t{1} << m.depth()) - 1;
    for (std::size_t n = 0; n < internal; ++n) {
        const Rational& favored = m.at_index(2 * n + 1 + static_cast<std::size_t>(i));
        const Rational& other = m.at_index(2 * n + 2 - static_cast<std::size_t>(i));
        if (favored < other) return false;
    }
    return true;
}

bool is_p_sided(const GaleTree& m, const SidePolicy& p) {
    std::size_t internal = (std::size_t{1} << m.depth()) - 1;
    for (std::size_t n = 0; n < internal; ++n) {
        const Rational& c0 = m.at_index(2 * n + 1);
        const Rational& c1 = m.at_index(2 * n + 2);
        auto side = p.get(BitString::from_heap_index(n));
        if (!side) {
            if (c0 != c1) return false;
        } else if (*side == 0 ? c0 < c1 : c1 < c0) {
            return false;
        }
    }
    return true;
}

bool is_li_betting(const GaleTree& m, int l, int i) {
    if (l < 1 || i < 0 || i >= l) throw std::invalid_argument("is_li_betting: need 0 ≤ i < l");
    for (int len = i; len < m.depth(); len += l) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
            BitString s(v, len);
            const Rational& here = m(s);
            if (m(s.child(0)) > here || m(s.child(1)) > here) return false;
        }
    }
    return true;
}

bool dominates(const GaleTree& m, const GaleTree& m0) {
    if (m.depth() != m0.depth()) throw std::invalid_argument("dominates: depth mismatch");
    for (std::size_t i = 0; i < m.node_count(); ++i)
        if (m.at_index(i) < m0.at_index(i)) return false;
    return true;
}

Rational l1_at(const GaleVector& v, const BitString& sigma) {
    Rational sum = 0;
    for (const auto& m : v.components) sum += m(sigma);
    return sum;
}

bool kaster_consistent(const ApproxSequence& s) {
    if (s.empty()) return true;
    for (std::size_t t = 0; t < s.size(); ++t) {
        if (!is_supermartingale(s[t])) return false;
        if (t > 0 && !dominates(s[t], s[t - 1])) return false;
    }
    std::size_t internal = (std::size_t{1} << s.front().depth()) - 1;
    for (std::size_t n = 0; n < internal; ++n) {
        bool left = false, right = false;
        for (const auto& m : s) {
            const Rational& c0 = m.at_index(2 * n + 1);
            const Rational& c1 = m.at_index(2 * n + 2);
            if (c0 > c1) left = true;
            if (c1 > c0) right = true;
        }
        if (left && right) return false;
    }
    return true;
}

GaleClass GaleClass::muchgale(int l, int i) {
    if (l < 1 || i < 0 || i >= l) throw std::invalid_argument("muchgale class needs 0 ≤ i < l");
    return GaleClass(Kind::Muchgale, l, i);
}

GaleClass GaleClass::parse(const std::string& id) {
    if (id == "kaster") return kaster();
    static const std::regex re(R"(muchgale\((\d+),(\d+)\))");
    std::smatch m;
    if (std::regex_match(id, m, re)) return muchgale(std::stoi(m[1]), std::stoi(m[2]));
    throw std::invalid_argument("unknown gale class: " + id);
}

std::string GaleClass::id() const {
    if (kind_ == Kind::Kaster) return "kaster";
    return "muchgale(" + std::to_string(l_) + "," + std::to_string(i_) + ")";
}

bool GaleClass::shape_ok(const ApproxSequence& s) const {
    if (kind_ == Kind::Muchgale) {
        for (const auto& m : s)
            if (!is_li_betting(m, l_, i_)) return false;
        return true;
    }
    // Kaster shape: no node strictly favored in both directions.
    if (s.empty()) return true;
    std::size_t internal = (std::size_t{1} << s.front().depth()) - 1;
    for (std::size_t n = 0; n < internal; ++n) {
        bool left = false, right = false;
        for (const auto& m : s) {
            if (m.at_index(2 * n + 1) > m.at_index(2 * n + 2)) left = true;
            if (m.at_index(2 * n + 2) > m.at_index(2 * n + 1)) right = true;
        }
        if (left && right) return false;
    }
    return true;
}

bool GaleClass::contains(const ApproxSequence& s) const {
    for (std::size_t t = 0; t < s.size(); ++t) {
        if (!is_supermartingale(s[t])) return false;
        if (t > 0 && !dominates(s[t], s[t - 1])) return false;
    }
    return shape_ok(s);
}

GaleClass GaleClass::shifted(int prefix_length) const {
    if (kind_ == Kind::Kaster) return *this;
    int r = ((i_ - prefix_length) % l_ + l_) % l_;
    return GaleClass(Kind::Muchgale, l_, r);
}

ClassReport class_meta_checks(const ApproxSequence& s, const GaleClass& cls) {
    ClassReport rep;
    rep.member = cls.contains(s);
    if (!rep.member) rep.failures.push_back("sequence is not a member of " + cls.id());

    for (std::size_t t = 1; t < s.size(); ++t) {
        if (!dominates(s[t], s[t - 1])) {
            rep.nondecreasing = false;
            rep.failures.push_back("snapshot " + std::to_string(t) + " does not dominate its predecessor");
        }
    }

    // Subsequences: exhaustive for short sequences, single deletions otherwise.
    std::vector<std::vector<std::size_t>> picks;
    if (s.size() <= 10) {
        for (std::uint32_t mask = 1; mask < (1u << s.size()); ++mask) {
            std::vector<std::size_t> pick;
            for (std::size_t t = 0; t < s.size(); ++t)
                if (mask & (1u << t)) pick.push_back(t);
            picks.push_back(std::move(pick));
        }
    } else {
        for (std::size_t skip = 0; skip < s.size(); ++skip) {
            std::vector<std::size_t> pick;
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != skip) pick.push_back(t);
            picks.push_back(std::move(pick));
        }
    }
    if (rep.member) {
        for (const auto& pick : picks) {
            ApproxSequence sub;
            for (auto t : pick) sub.push_back(s[t]);
            if (!cls.contains(sub)) {
                rep.subsequence_closed = false;
                rep.failures.push_back("a subsequence of length " + std::to_string(sub.size()) + " left the class");
                break;
            }
        }
        for (const Rational& c : {Rational(1, 2), Rational(2), Rational(3)}) {
            ApproxSequence scaled;
            for (const auto& m : s) scaled.push_back(m.scaled(c));
            if (!cls.contains(scaled)) {
                rep.scale_closed = false;
                rep.failures.push_back("scaling by " + to_string(c) + " left the class");
            }
        }
    }
    return rep;
}

}  // namespace betgames
