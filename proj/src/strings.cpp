#include "betgames/strings.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace betgames {

BitString::BitString(std::uint64_t value, int length) : value_(value), length_(length) {
    if (length < 0 || length > kMaxLength)
        throw std::invalid_argument("BitString length out of range: " + std::to_string(length));
    if (length < 64 && (value >> length) != 0)
        throw std::invalid_argument("BitString value wider than its length");
}

BitString BitString::parse(std::string_view digits) {
    if (static_cast<int>(digits.size()) > kMaxLength)
        throw std::invalid_argument("BitString too long: " + std::string(digits));
    std::uint64_t v = 0;
    for (char c : digits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("not a binary string: '" + std::string(digits) + "'");
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return BitString(v, static_cast<int>(digits.size()));
}

BitString BitString::ones(int length) {
    return BitString((std::uint64_t{1} << length) - 1, length);
}

BitString BitString::from_heap_index(std::size_t index) {
    int len = 0;
    while (((std::size_t{1} << (len + 1)) - 1) <= index) ++len;
    return BitString(index - ((std::size_t{1} << len) - 1), len);
}

BitString BitString::child(int bit) const {
    return BitString((value_ << 1) | static_cast<std::uint64_t>(bit & 1), length_ + 1);
}

BitString BitString::parent() const {
    if (length_ == 0) throw std::logic_error("parent of the empty string");
    return BitString(value_ >> 1, length_ - 1);
}

BitString BitString::prefix(int n) const {
    if (n < 0 || n > length_) throw std::invalid_argument("prefix length out of range");
    return BitString(value_ >> (length_ - n), n);
}

BitString BitString::suffix_from(int start) const {
    if (start < 0 || start > length_) throw std::invalid_argument("suffix start out of range");
    int len = length_ - start;
    std::uint64_t mask = (std::uint64_t{1} << len) - 1;
    return BitString(value_ & mask, len);
}

BitString BitString::concat(const BitString& tail) const {
    return BitString((value_ << tail.length_) | tail.value_, length_ + tail.length_);
}

BitString BitString::sibling() const {
    if (length_ == 0) throw std::logic_error("sibling of the empty string");
    return BitString(value_ ^ 1u, length_);
}

bool BitString::is_prefix_of(const BitString& other) const {
    return length_ <= other.length_ && (other.value_ >> (other.length_ - length_)) == value_;
}

std::string BitString::str() const {
    std::string s(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i) s[static_cast<std::size_t>(i)] = static_cast<char>('0' + (*this)[i]);
    return s;
}

std::strong_ordering BitString::operator<=>(const BitString& o) const {
    int common = std::min(length_, o.length_);
    auto a = value_ >> (length_ - common);
    auto b = o.value_ >> (o.length_ - common);
    if (a != b) return a <=> b;
    return length_ <=> o.length_;
}

std::string ternary_str(const TernaryString& a) {
    std::string s;
    for (auto d : a) s.push_back(static_cast<char>('0' + d));
    return s;
}

TernaryString parse_ternary(std::string_view digits) {
    TernaryString t;
    for (char c : digits) {
        if (c < '0' || c > '2') throw std::invalid_argument("not a ternary string: " + std::string(digits));
        t.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return t;
}

PrefixFreeSet::PrefixFreeSet(std::vector<BitString> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    for (std::size_t i = 1; i < members_.size(); ++i) {
        if (members_[i - 1].is_prefix_of(members_[i]))
            throw std::invalid_argument("not prefix-free: " + members_[i - 1].str() + " ⪯ " +
                                        members_[i].str());
    }
}

std::vector<BitString> antichain(std::span<const BitString> strings) {
    std::vector<BitString> sorted(strings.begin(), strings.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<BitString> out;
    // In lexicographic order every extension of s follows s contiguously.
    for (const auto& s : sorted) {
        if (!out.empty() && out.back().is_prefix_of(s)) continue;
        out.push_back(s);
    }
    return out;
}

bool is_prefix_free(std::span<const BitString> strings) {
    std::vector<BitString> sorted(strings.begin(), strings.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i - 1].is_prefix_of(sorted[i])) return false;
    return true;
}

Rational measure(std::span<const BitString> strings) {
    Rational total = 0;
    for (const auto& s : antichain(strings)) total += pow2(-s.size());
    return total;
}

Rational conditional_measure(std::span<const BitString> strings, const BitString& rho) {
    Rational inside = 0;
    for (const auto& s : antichain(strings)) {
        if (s.is_prefix_of(rho)) return Rational(1);
        if (rho.is_prefix_of(s)) inside += pow2(-s.size());
    }
    return inside * pow2(rho.size());
}

std::vector<BitString> cylinder_leaves(const BitString& rho, int n) {
    if (rho.size() > n)
        throw std::invalid_argument("cylinder_leaves: |rho| = " + std::to_string(rho.size()) +
                                    " exceeds depth " + std::to_string(n));
    int free = n - rho.size();
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << free);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << free); ++v)
        out.push_back(rho.concat(BitString(v, free)));
    return out;
}

std::vector<BitString> complement_leaves(const BitString& rho, int n,
                                         std::span<const BitString> already) {
    if (rho.size() > n) throw std::invalid_argument("complement_leaves: |rho| exceeds depth");
    std::unordered_set<BitString> skip(already.begin(), already.end());
    std::vector<BitString> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitString s(v, n);
        if (rho.is_prefix_of(s) || skip.count(s)) continue;
        out.push_back(s);
    }
    return out;
}

std::vector<BitString> all_strings(int n) { return cylinder_leaves(BitString(), n); }

BitString ternary_embed(const TernaryString& alpha) {
    BitString out;
    for (auto d : alpha) {
        switch (d) {
            case 0: out = out.child(0); break;
            case 1: out = out.child(1).child(1); break;
            case 2: out = out.child(1).child(0); break;
            default: throw std::invalid_argument("ternary digit out of range");
        }
    }
    return out;
}

std::vector<TernaryString> ternary_lex_iter(int depth) {
    std::vector<TernaryString> out;
    if (depth < 0) return out;
    TernaryString cur(static_cast<std::size_t>(depth), 0);
    while (true) {
        out.push_back(cur);
        int i = depth - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == 2) cur[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace betgames
