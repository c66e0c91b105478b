#pragma once

// Hereditarily finite sets.
//
// An HFSet is an immutable, canonical pure set: its members are kept sorted
// under hf_cmp with duplicates removed, so structural equality of the
// representation coincides with extensional equality. Members are shared
// through reference counting; no operation mutates an existing value.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fol/error.hpp"

namespace fol {

class HFSet;

std::strong_ordering hf_cmp(const HFSet& a, const HFSet& b);

class HFSet {
  public:
    /// The empty set.
    HFSet() = default;

    std::span<const HFSet> elements() const noexcept {
        if (!children_) return {};
        return {children_->data(), children_->size()};
    }
    std::size_t size() const noexcept { return children_ ? children_->size() : 0; }
    bool empty() const noexcept { return size() == 0; }

    friend bool operator==(const HFSet& a, const HFSet& b) { return hf_cmp(a, b) == 0; }
    friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) { return hf_cmp(a, b); }

    // Takes members that are already sorted and deduplicated.
    static HFSet from_canonical(std::vector<HFSet> sorted_unique) {
        HFSet s;
        if (!sorted_unique.empty())
            s.children_ = std::make_shared<const std::vector<HFSet>>(std::move(sorted_unique));
        return s;
    }

    bool same_node(const HFSet& other) const noexcept { return children_ == other.children_; }

  private:
    std::shared_ptr<const std::vector<HFSet>> children_;
};

/// Lexicographic comparison of the canonical member sequences, with a proper
/// prefix ordered first.
inline std::strong_ordering hf_cmp(const HFSet& a, const HFSet& b) {
    if (a.same_node(b)) return std::strong_ordering::equal;
    auto ea = a.elements();
    auto eb = b.elements();
    const std::size_t n = std::min(ea.size(), eb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = hf_cmp(ea[i], eb[i]); c != 0) return c;
    }
    return ea.size() <=> eb.size();
}

inline HFSet make_set(std::vector<HFSet> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return HFSet::from_canonical(std::move(elems));
}

inline HFSet make_set(std::span<const HFSet> elems) {
    return make_set(std::vector<HFSet>(elems.begin(), elems.end()));
}

inline HFSet make_set(std::initializer_list<HFSet> elems) {
    return make_set(std::vector<HFSet>(elems));
}

inline HFSet singleton(const HFSet& a) { return HFSet::from_canonical({a}); }

/// a ∈ b
inline bool member(const HFSet& a, const HFSet& b) {
    auto e = b.elements();
    return std::binary_search(e.begin(), e.end(), a);
}

inline bool subset(const HFSet& a, const HFSet& b) {
    auto ea = a.elements();
    auto eb = b.elements();
    return std::includes(eb.begin(), eb.end(), ea.begin(), ea.end());
}

inline HFSet set_union(const HFSet& a, const HFSet& b) {
    auto ea = a.elements();
    auto eb = b.elements();
    std::vector<HFSet> out;
    out.reserve(ea.size() + eb.size());
    std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
    return HFSet::from_canonical(std::move(out));
}

inline HFSet set_intersection(const HFSet& a, const HFSet& b) {
    auto ea = a.elements();
    auto eb = b.elements();
    std::vector<HFSet> out;
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
    return HFSet::from_canonical(std::move(out));
}

/// Members of `a` that are not members of `b`.
inline HFSet set_difference(const HFSet& a, const HFSet& b) {
    auto ea = a.elements();
    auto eb = b.elements();
    std::vector<HFSet> out;
    std::set_difference(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
    return HFSet::from_canonical(std::move(out));
}

// ---------------------------------------------------------------------------
// Pairs, products, functions

/// Kuratowski pair {{a},{a,b}}; collapses to {{a}} when a == b.
inline HFSet kpair(const HFSet& a, const HFSet& b) {
    return make_set({singleton(a), make_set({a, b})});
}

/// Inverse of kpair, or nullopt when `p` is not an ordered pair.
inline std::optional<std::pair<HFSet, HFSet>> unpair(const HFSet& p) {
    auto e = p.elements();
    if (e.size() == 1 && e[0].size() == 1) {
        const HFSet& a = e[0].elements()[0];
        return std::pair{a, a};
    }
    if (e.size() != 2) return std::nullopt;
    // Exactly one member is the singleton {a}; the other is {a,b} with b != a.
    for (int i = 0; i < 2; ++i) {
        const HFSet& single = e[i];
        const HFSet& dbl = e[1 - i];
        if (single.size() != 1 || dbl.size() != 2) continue;
        const HFSet& a = single.elements()[0];
        if (!member(a, dbl)) continue;
        const HFSet& b = dbl.elements()[0] == a ? dbl.elements()[1] : dbl.elements()[0];
        return std::pair{a, b};
    }
    return std::nullopt;
}

/// A × B as a set of Kuratowski pairs.
inline HFSet product(const HFSet& A, const HFSet& B) {
    std::vector<HFSet> out;
    out.reserve(A.size() * B.size());
    for (const HFSet& a : A.elements())
        for (const HFSet& b : B.elements()) out.push_back(kpair(a, b));
    return make_set(std::move(out));
}

/// Set of first coordinates of the pairs in `f`; non-pairs are ignored.
inline HFSet domain(const HFSet& f) {
    std::vector<HFSet> out;
    for (const HFSet& p : f.elements())
        if (auto ab = unpair(p)) out.push_back(ab->first);
    return make_set(std::move(out));
}

inline HFSet range(const HFSet& f) {
    std::vector<HFSet> out;
    for (const HFSet& p : f.elements())
        if (auto ab = unpair(p)) out.push_back(ab->second);
    return make_set(std::move(out));
}

/// f is a function from A into B: f ⊆ A×B, single-valued, and total on A.
inline bool is_function(const HFSet& f, const HFSet& A, const HFSet& B) {
    if (!subset(f, product(A, B))) return false;
    for (const HFSet& a : A.elements()) {
        std::size_t images = 0;
        for (const HFSet& p : f.elements())
            if (unpair(p)->first == a) ++images;
        if (images != 1) return false;
    }
    return true;
}

/// The unique b with (a,b) ∈ f. Throws PreconditionError when `a` is not in
/// the domain of `f` or `f` is not single-valued at `a`.
inline HFSet func_apply(const HFSet& f, const HFSet& a) {
    std::optional<HFSet> image;
    for (const HFSet& p : f.elements()) {
        auto ab = unpair(p);
        if (!ab || ab->first != a) continue;
        if (image && *image != ab->second)
            throw PreconditionError("func_apply: relation is not single-valued at the argument");
        image = ab->second;
    }
    if (!image) throw PreconditionError("func_apply: argument is not in the domain");
    return *image;
}

/// {(a,b) ∈ f : a ∈ C}
inline HFSet func_restrict(const HFSet& f, const HFSet& C) {
    std::vector<HFSet> out;
    for (const HFSet& p : f.elements()) {
        auto ab = unpair(p);
        if (ab && member(ab->first, C)) out.push_back(p);
    }
    return HFSet::from_canonical(std::move(out));
}

// ---------------------------------------------------------------------------
// Von Neumann naturals and sequences

inline HFSet nat_to_hf(std::uint64_t n) {
    HFSet k;
    for (std::uint64_t i = 0; i < n; ++i) k = set_union(k, singleton(k));
    return k;
}

inline std::optional<std::uint64_t> hf_to_nat(const HFSet& s) {
    // A natural's members are 0..n-1, which hf_cmp already orders ascending.
    auto e = s.elements();
    HFSet k;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != k) return std::nullopt;
        k = set_union(k, singleton(k));
    }
    return e.size();
}

/// {(0,e0), (1,e1), ...}
inline HFSet seq_from_list(std::span<const HFSet> elems) {
    std::vector<HFSet> out;
    out.reserve(elems.size());
    HFSet index;
    for (const HFSet& e : elems) {
        out.push_back(kpair(index, e));
        index = set_union(index, singleton(index));
    }
    return make_set(std::move(out));
}

inline HFSet seq_from_list(std::initializer_list<HFSet> elems) {
    return seq_from_list(std::span<const HFSet>(elems.begin(), elems.size()));
}

/// Length of `s` when it is a sequence (a function whose domain is a natural).
inline std::optional<std::uint64_t> seq_length(const HFSet& s) {
    HFSet dom = domain(s);
    auto n = hf_to_nat(dom);
    if (!n || dom.size() != s.size()) return std::nullopt;  // non-pairs or multi-valued
    return n;
}

inline HFSet seq_restrict(const HFSet& s, std::uint64_t k) {
    auto n = seq_length(s);
    if (!n) throw PreconditionError("seq_restrict: argument is not a sequence");
    if (k > *n)
        throw PreconditionError("seq_restrict: k = " + std::to_string(k) +
                                " exceeds sequence length " + std::to_string(*n));
    return func_restrict(s, nat_to_hf(k));
}

// ---------------------------------------------------------------------------
// Ackermann coding: code(s) = sum over e in s of 2^code(e)

struct HfIndex {
    std::uint64_t value = 0;
    friend auto operator<=>(const HfIndex&, const HfIndex&) = default;
};

inline constexpr std::uint64_t kHfIndexLimit = std::uint64_t{1} << 63;

inline HfIndex hf_index(const HFSet& s) {
    std::uint64_t code = 0;
    for (const HFSet& e : s.elements()) {
        const std::uint64_t bit = hf_index(e).value;
        if (bit >= 63) throw RangeError("hf_index: set code is not below 2^63");
        code |= std::uint64_t{1} << bit;
    }
    return {code};
}

inline HFSet hf_from_index(HfIndex i) {
    if (i.value >= kHfIndexLimit) throw RangeError("hf_from_index: index is not below 2^63");
    std::vector<HFSet> elems;
    for (std::uint64_t bit = 0; bit < 63; ++bit)
        if (i.value & (std::uint64_t{1} << bit)) elems.push_back(hf_from_index({bit}));
    return make_set(std::move(elems));
}

/// Members of `s` listed by ascending Ackermann code.
inline std::vector<HFSet> elements_by_index(const HFSet& s) {
    std::vector<std::pair<std::uint64_t, HFSet>> keyed;
    for (const HFSet& e : s.elements()) keyed.emplace_back(hf_index(e).value, e);
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<HFSet> out;
    out.reserve(keyed.size());
    for (auto& [code, e] : keyed) out.push_back(std::move(e));
    return out;
}

// ---------------------------------------------------------------------------
// Literals
//
//   lit ::= '{' '}' | '{' lit (',' lit)* '}' | natural | '(' lit ',' lit ')'
//
// Whitespace is insignificant. Naturals expand through nat_to_hf and
// parenthesised pairs through kpair.

inline constexpr std::uint64_t kMaxNaturalLiteral = 1024;

namespace detail {

class HfLiteralParser {
  public:
    explicit HfLiteralParser(std::string_view text) : text_(text) {}

    HFSet parse_all() {
        HFSet s = parse_lit();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing characters after set literal", pos_);
        return s;
    }

    HFSet parse_lit() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of set literal", pos_, {"'{'", "'('", "natural"});
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            std::vector<HFSet> elems;
            skip_ws();
            if (peek() == '}') {
                ++pos_;
                return HFSet{};
            }
            for (;;) {
                elems.push_back(parse_lit());
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                } else if (peek() == '}') {
                    ++pos_;
                    return make_set(std::move(elems));
                } else {
                    throw ParseError("malformed set literal", pos_, {"','", "'}'"});
                }
            }
        }
        if (c == '(') {
            ++pos_;
            HFSet a = parse_lit();
            expect(',');
            HFSet b = parse_lit();
            expect(')');
            return kpair(a, b);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            std::uint64_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                n = n * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
                if (n > kMaxNaturalLiteral) throw ParseError("natural literal too large", start);
                ++pos_;
            }
            return nat_to_hf(n);
        }
        throw ParseError(std::string("unexpected character '") + c + "' in set literal", pos_,
                         {"'{'", "'('", "natural"});
    }

    std::size_t position() const noexcept { return pos_; }

  private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError("malformed pair literal", pos_, {std::string("'") + c + "'"});
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline void print_hf_to(std::string& out, const HFSet& s, bool sugar) {
    if (sugar) {
        if (auto n = hf_to_nat(s)) {
            out += std::to_string(*n);
            return;
        }
        if (auto ab = unpair(s)) {
            out += '(';
            print_hf_to(out, ab->first, sugar);
            out += ',';
            print_hf_to(out, ab->second, sugar);
            out += ')';
            return;
        }
    }
    out += '{';
    bool first = true;
    for (const HFSet& e : s.elements()) {
        if (!first) out += ',';
        first = false;
        print_hf_to(out, e, sugar);
    }
    out += '}';
}

}  // namespace detail

inline HFSet parse_hf_literal(std::string_view text) {
    return detail::HfLiteralParser(text).parse_all();
}

/// Canonical `{}`-form; with `sugar`, naturals print as decimals and
/// ordered pairs as `(a,b)` (naturals take precedence).
inline std::string print_hf(const HFSet& s, bool sugar = false) {
    std::string out;
    detail::print_hf_to(out, s, sugar);
    return out;
}

}  // namespace fol
