#pragma once

#include "betgames/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace betgames {

// Binary string of length at most kMaxLength, stored MSB-first in one word:
// bit i (0-based from the left) is (value >> (length-1-i)) & 1.
class BitString {
public:
    static constexpr int kMaxLength = 30;

    BitString() = default;
    BitString(std::uint64_t value, int length);

    static BitString parse(std::string_view digits);
    static BitString zeros(int length) { return BitString(0, length); }
    static BitString ones(int length);
    // Inverse of heap_index().
    static BitString from_heap_index(std::size_t index);

    int size() const { return length_; }
    bool empty() const { return length_ == 0; }
    std::uint64_t value() const { return value_; }
    int operator[](int i) const { return static_cast<int>((value_ >> (length_ - 1 - i)) & 1u); }

    BitString child(int bit) const;
    BitString parent() const;
    BitString prefix(int n) const;
    BitString suffix_from(int start) const;
    BitString concat(const BitString& tail) const;
    BitString sibling() const;
    int last() const { return static_cast<int>(value_ & 1u); }

    // rho.is_prefix_of(sigma): rho ⪯ sigma.
    bool is_prefix_of(const BitString& other) const;

    // Position in the breadth-first layout of 2^{≤n}: (2^len − 1) + value.
    std::size_t heap_index() const { return ((std::size_t{1} << length_) - 1) + value_; }

    std::string str() const;

    bool operator==(const BitString& o) const = default;
    // Lexicographic order; a proper prefix sorts before its extensions.
    std::strong_ordering operator<=>(const BitString& o) const;

private:
    std::uint64_t value_ = 0;
    int length_ = 0;
};

using TernaryString = std::vector<std::uint8_t>;

std::string ternary_str(const TernaryString& a);
TernaryString parse_ternary(std::string_view digits);

// Prefix-free set, validated on construction and kept in lexicographic order.
class PrefixFreeSet {
public:
    PrefixFreeSet() = default;
    explicit PrefixFreeSet(std::vector<BitString> members);

    const std::vector<BitString>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

private:
    std::vector<BitString> members_;
};

// Drops duplicates and strings with a proper prefix in the set; sorted.
std::vector<BitString> antichain(std::span<const BitString> strings);
bool is_prefix_free(std::span<const BitString> strings);

Rational measure(std::span<const BitString> strings);
Rational conditional_measure(std::span<const BitString> strings, const BitString& rho);

std::vector<BitString> cylinder_leaves(const BitString& rho, int n);
std::vector<BitString> complement_leaves(const BitString& rho, int n,
                                         std::span<const BitString> already);
// All strings of length exactly n, lexicographic.
std::vector<BitString> all_strings(int n);

BitString ternary_embed(const TernaryString& alpha);
std::vector<TernaryString> ternary_lex_iter(int depth);

}  // namespace betgames

template <>
struct std::hash<betgames::BitString> {
    std::size_t operator()(const betgames::BitString& s) const noexcept { return s.heap_index(); }
};
