#pragma once

#include "betgames/rational.hpp"
#include "betgames/strings.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace betgames {

// Capital on every string of length ≤ depth, stored breadth-first (heap order).
class GaleTree {
public:
    GaleTree() : GaleTree(0) {}
    explicit GaleTree(int depth);
    GaleTree(int depth, const Rational& constant);

    int depth() const { return depth_; }
    std::size_t node_count() const { return values_.size(); }

    const Rational& operator()(const BitString& s) const { return values_[checked_index(s)]; }
    const Rational& at(const BitString& s) const { return (*this)(s); }
    void set(const BitString& s, Rational v);

    // Unchecked heap-indexed access; callers keep values nonnegative.
    const Rational& at_index(std::size_t i) const { return values_[i]; }
    Rational& mutable_at_index(std::size_t i) { return values_[i]; }
    const std::vector<Rational>& values() const { return values_; }

    GaleTree scaled(const Rational& c) const;
    // (M∘h_rho) restricted to 2^{≤depth}: value at s is M(rho·s).
    GaleTree shifted(const BitString& rho, int depth) const;
    GaleTree truncated(int depth) const { return shifted(BitString(), depth); }

    GaleTree& operator+=(const GaleTree& other);
    bool operator==(const GaleTree& other) const = default;

private:
    std::size_t checked_index(const BitString& s) const;

    int depth_;
    std::vector<Rational> values_;
};

GaleTree operator+(GaleTree a, const GaleTree& b);

class SidePolicy {
public:
    std::optional<int> get(const BitString& s) const;
    void set(const BitString& s, int bit);
    bool defined(const BitString& s) const { return assignments_.count(s) != 0; }
    // Every assignment of prev appears here unchanged.
    bool extends(const SidePolicy& prev) const;
    SidePolicy shifted(const BitString& rho) const;
    const std::map<BitString, int>& assignments() const { return assignments_; }
    std::size_t size() const { return assignments_.size(); }
    bool operator==(const SidePolicy& other) const = default;

private:
    std::map<BitString, int> assignments_;
};

struct GaleVector {
    std::vector<GaleTree> components;

    GaleVector() = default;
    explicit GaleVector(std::vector<GaleTree> comps);
    static GaleVector zero(int k, int depth);

    int k() const { return static_cast<int>(components.size()); }
    int depth() const { return components.empty() ? 0 : components.front().depth(); }
    const GaleTree& operator[](std::size_t j) const { return components[j]; }
    GaleTree& operator[](std::size_t j) { return components[j]; }
    GaleVector scaled(const Rational& c) const;
    bool operator==(const GaleVector& other) const = default;
};

using ApproxSequence = std::vector<GaleTree>;

struct SupermartingaleCheck {
    bool ok = true;
    bool martingale = true;
    std::optional<BitString> violation;
    explicit operator bool() const { return ok; }
};

SupermartingaleCheck is_supermartingale(const GaleTree& m);
bool is_sided_at(const GaleTree& m, const BitString& sigma, int i);
// Single-sided: i-sided at every internal node.
bool is_sided(const GaleTree& m, int i);
bool is_p_sided(const GaleTree& m, const SidePolicy& p);
bool is_li_betting(const GaleTree& m, int l, int i);
bool dominates(const GaleTree& m, const GaleTree& m0);
Rational l1_at(const GaleVector& v, const BitString& sigma);
bool kaster_consistent(const ApproxSequence& s);

class GaleClass {
public:
    enum class Kind { Kaster, Muchgale };

    static GaleClass kaster() { return GaleClass(Kind::Kaster, 1, 0); }
    static GaleClass muchgale(int l, int i);
    // "kaster" or "muchgale(l,i)".
    static GaleClass parse(const std::string& id);

    Kind kind() const { return kind_; }
    int l() const { return l_; }
    int i() const { return i_; }
    std::string id() const;

    // Full membership: supermartingales, nondecreasing, plus the class shape.
    bool contains(const ApproxSequence& s) const;
    // The class shape alone, without the nondecreasing requirement.
    bool shape_ok(const ApproxSequence& s) const;
    // Shape after homogeneous shift by a prefix of the given length.
    GaleClass shifted(int prefix_length) const;

private:
    GaleClass(Kind kind, int l, int i) : kind_(kind), l_(l), i_(i) {}
    Kind kind_;
    int l_;
    int i_;
};

struct ClassReport {
    bool member = false;
    bool subsequence_closed = true;
    bool scale_closed = true;
    bool nondecreasing = true;
    std::vector<std::string> failures;
    bool all_pass() const { return member && subsequence_closed && scale_closed && nondecreasing; }
};

ClassReport class_meta_checks(const ApproxSequence& s, const GaleClass& cls);

}  // namespace betgames
