#pragma once

// Formulas of the first-order language {=, ∈}.
//
// Grammar over tokens (strict form, every compound is parenthesised):
//
//   F ::= V '=' V | V 'in' V | 'not' '(' F ')' | '(' F ')' 'or' '(' F ')'
//       | 'forall' V '(' F ')'
//
// The sugar grammar adds '(' F ')' ('and' | 'implies' | 'iff') '(' F ')' and
// 'exists' V '(' F ')'; these are expanded into the core connectives while
// parsing, so every Formula value is a core tree.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fol/error.hpp"
#include "fol/hfset.hpp"

namespace fol {

/// The variable x_n, n >= 1.
class Var {
  public:
    constexpr explicit Var(std::uint32_t index) : index_(index) {
        if (index == 0) throw PreconditionError("variable index must be >= 1");
    }
    constexpr std::uint32_t index() const noexcept { return index_; }
    friend constexpr auto operator<=>(const Var&, const Var&) = default;

  private:
    std::uint32_t index_;
};

inline std::string to_string(Var v) { return "x" + std::to_string(v.index()); }

class Formula;

struct EqAtom {
    Var lhs, rhs;
};
struct InAtom {
    Var lhs, rhs;
};
struct Negation;
struct Disjunction;
struct Forall;

class Formula {
  public:
    struct Node;

    static Formula eq(Var x, Var y);
    static Formula in(Var x, Var y);
    static Formula negation(Formula body);
    static Formula disjunction(Formula left, Formula right);
    static Formula forall(Var x, Formula body);

    const Node& node() const noexcept { return *node_; }

    template <class T>
    const T* as() const noexcept;

    bool is_atomic() const noexcept;
    bool is_basic() const noexcept;

    friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) { return compare(a, b); }

  private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static std::strong_ordering compare(const Formula& a, const Formula& b);

    std::shared_ptr<const Node> node_;
};

struct Negation {
    Formula body;
};
struct Disjunction {
    Formula left, right;
};
struct Forall {
    Var var;
    Formula body;
};

struct Formula::Node {
    std::variant<EqAtom, InAtom, Negation, Disjunction, Forall> v;
};

inline Formula Formula::eq(Var x, Var y) { return Formula(std::make_shared<const Node>(Node{EqAtom{x, y}})); }
inline Formula Formula::in(Var x, Var y) { return Formula(std::make_shared<const Node>(Node{InAtom{x, y}})); }
inline Formula Formula::negation(Formula body) {
    return Formula(std::make_shared<const Node>(Node{Negation{std::move(body)}}));
}
inline Formula Formula::disjunction(Formula left, Formula right) {
    return Formula(std::make_shared<const Node>(Node{Disjunction{std::move(left), std::move(right)}}));
}
inline Formula Formula::forall(Var x, Formula body) {
    return Formula(std::make_shared<const Node>(Node{Forall{x, std::move(body)}}));
}

template <class T>
const T* Formula::as() const noexcept {
    return std::get_if<T>(&node_->v);
}

inline bool Formula::is_atomic() const noexcept { return as<EqAtom>() || as<InAtom>(); }

/// Basic formulas are the propositional atoms: neither ¬ψ nor (ψ)∨(χ).
inline bool Formula::is_basic() const noexcept { return !as<Negation>() && !as<Disjunction>(); }

inline std::strong_ordering Formula::compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    const auto& va = a.node_->v;
    const auto& vb = b.node_->v;
    if (va.index() != vb.index()) return va.index() <=> vb.index();
    if (auto* x = std::get_if<EqAtom>(&va)) {
        auto* y = std::get_if<EqAtom>(&vb);
        if (auto c = x->lhs <=> y->lhs; c != 0) return c;
        return x->rhs <=> y->rhs;
    }
    if (auto* x = std::get_if<InAtom>(&va)) {
        auto* y = std::get_if<InAtom>(&vb);
        if (auto c = x->lhs <=> y->lhs; c != 0) return c;
        return x->rhs <=> y->rhs;
    }
    if (auto* x = std::get_if<Negation>(&va)) return compare(x->body, std::get<Negation>(vb).body);
    if (auto* x = std::get_if<Disjunction>(&va)) {
        const auto& y = std::get<Disjunction>(vb);
        if (auto c = compare(x->left, y.left); c != 0) return c;
        return compare(x->right, y.right);
    }
    const auto& x = std::get<Forall>(va);
    const auto& y = std::get<Forall>(vb);
    if (auto c = x.var <=> y.var; c != 0) return c;
    return compare(x.body, y.body);
}

// ---------------------------------------------------------------------------
// Abbreviations
//
//   (φ) ∧ (ψ)  :=  ¬((¬(φ)) ∨ (¬(ψ)))
//   (φ) ⇒ (ψ)  :=  (¬(φ)) ∨ (ψ)
//   (φ) ⇔ (ψ)  :=  ((φ) ⇒ (ψ)) ∧ ((ψ) ⇒ (φ))
//   ∃x (φ)     :=  ¬(∀x (¬(φ)))

inline Formula conj(const Formula& a, const Formula& b) {
    return Formula::negation(Formula::disjunction(Formula::negation(a), Formula::negation(b)));
}
inline Formula implies(const Formula& a, const Formula& b) {
    return Formula::disjunction(Formula::negation(a), b);
}
inline Formula iff(const Formula& a, const Formula& b) { return conj(implies(a, b), implies(b, a)); }
inline Formula exists(Var x, const Formula& body) {
    return Formula::negation(Formula::forall(x, Formula::negation(body)));
}

using FormulaPair = std::pair<Formula, Formula>;

inline std::optional<FormulaPair> match_implies(const Formula& f) {
    auto* d = f.as<Disjunction>();
    if (!d) return std::nullopt;
    auto* n = d->left.as<Negation>();
    if (!n) return std::nullopt;
    return FormulaPair{n->body, d->right};
}

inline std::optional<FormulaPair> match_conj(const Formula& f) {
    auto* n = f.as<Negation>();
    if (!n) return std::nullopt;
    auto* d = n->body.as<Disjunction>();
    if (!d) return std::nullopt;
    auto* l = d->left.as<Negation>();
    auto* r = d->right.as<Negation>();
    if (!l || !r) return std::nullopt;
    return FormulaPair{l->body, r->body};
}

inline std::optional<FormulaPair> match_iff(const Formula& f) {
    auto c = match_conj(f);
    if (!c) return std::nullopt;
    auto ab = match_implies(c->first);
    auto ba = match_implies(c->second);
    if (!ab || !ba || ab->first != ba->second || ab->second != ba->first) return std::nullopt;
    return *ab;
}

inline std::optional<std::pair<Var, Formula>> match_exists(const Formula& f) {
    auto* n = f.as<Negation>();
    if (!n) return std::nullopt;
    auto* q = n->body.as<Forall>();
    if (!q) return std::nullopt;
    auto* inner = q->body.as<Negation>();
    if (!inner) return std::nullopt;
    return std::pair{q->var, inner->body};
}

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind {
    Variable,
    Equals,
    Member,
    Not,
    Or,
    Forall,
    LParen,
    RParen,
    // Sugar only; not logical symbols.
    And,
    Implies,
    Iff,
    Exists,
    End,
};

struct Token {
    TokenKind kind;
    std::uint32_t var_index = 0;  // for Variable
    std::size_t offset = 0;       // byte offset in the source text

    friend bool operator==(const Token& a, const Token& b) {
        return a.kind == b.kind && a.var_index == b.var_index;
    }
};

inline std::string_view token_spelling(TokenKind k) {
    switch (k) {
        case TokenKind::Variable: return "variable";
        case TokenKind::Equals: return "'='";
        case TokenKind::Member: return "'in'";
        case TokenKind::Not: return "'not'";
        case TokenKind::Or: return "'or'";
        case TokenKind::Forall: return "'forall'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::And: return "'and'";
        case TokenKind::Implies: return "'implies'";
        case TokenKind::Iff: return "'iff'";
        case TokenKind::Exists: return "'exists'";
        case TokenKind::End: return "end of input";
    }
    return "?";
}

inline std::string describe(const Token& t) {
    if (t.kind == TokenKind::Variable) return "variable x" + std::to_string(t.var_index);
    return std::string(token_spelling(t.kind));
}

/// Lexes ASCII keywords and their UTF-8 aliases (¬ ∨ ∀ ∈ ∧ ⇒ ⇔ ∃).
/// Variables are 'x' followed by a decimal index >= 1 without leading zeros.
inline std::vector<Token> tokenize(std::string_view text) {
    static constexpr std::pair<std::string_view, TokenKind> kWords[] = {
        // Longest first where prefixes overlap ("iff" before "in").
        {"forall", TokenKind::Forall}, {"exists", TokenKind::Exists}, {"implies", TokenKind::Implies},
        {"iff", TokenKind::Iff},       {"not", TokenKind::Not},       {"and", TokenKind::And},
        {"in", TokenKind::Member},     {"or", TokenKind::Or},
        {"\xC2\xAC", TokenKind::Not},          // ¬
        {"\xE2\x88\xA8", TokenKind::Or},       // ∨
        {"\xE2\x88\x80", TokenKind::Forall},   // ∀
        {"\xE2\x88\x88", TokenKind::Member},   // ∈
        {"\xE2\x88\xA7", TokenKind::And},      // ∧
        {"\xE2\x87\x92", TokenKind::Implies},  // ⇒
        {"\xE2\x87\x94", TokenKind::Iff},      // ⇔
        {"\xE2\x88\x83", TokenKind::Exists},   // ∃
    };
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };

    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '(' || c == ')' || c == '=') {
            out.push_back({c == '(' ? TokenKind::LParen : c == ')' ? TokenKind::RParen : TokenKind::Equals, 0, i});
            ++i;
            continue;
        }
        if (c == 'x') {
            std::size_t j = i + 1;
            while (j < text.size() && is_digit(text[j])) ++j;
            if (j == i + 1) throw ParseError("malformed variable: 'x' must be followed by an index", i);
            if (text[i + 1] == '0') throw ParseError("malformed variable: index must be >= 1 without leading zeros", i);
            if (j - i - 1 > 9) throw ParseError("malformed variable: index too large", i);
            std::uint32_t n = 0;
            for (std::size_t k = i + 1; k < j; ++k) n = n * 10 + static_cast<std::uint32_t>(text[k] - '0');
            out.push_back({TokenKind::Variable, n, i});
            i = j;
            continue;
        }
        bool matched = false;
        for (const auto& [word, kind] : kWords) {
            if (text.substr(i, word.size()) == word) {
                out.push_back({kind, 0, i});
                i += word.size();
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError("unknown character", i);
    }
    return out;
}

/// (number of '(') - (number of ')')
inline long count(std::span<const Token> toks) {
    long n = 0;
    for (const Token& t : toks) {
        if (t.kind == TokenKind::LParen) ++n;
        if (t.kind == TokenKind::RParen) --n;
    }
    return n;
}

/// s is empty, or s = ( s' ) with s' a p-sequence.
inline bool is_p_sequence(std::span<const TokenKind> toks) {
    while (!toks.empty()) {
        if (toks.size() < 2 || toks.front() != TokenKind::LParen || toks.back() != TokenKind::RParen) return false;
        toks = toks.subspan(1, toks.size() - 2);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class FormulaParser {
  public:
    FormulaParser(std::span<const Token> toks, bool sugar, std::size_t end_offset)
        : toks_(toks), sugar_(sugar), end_offset_(end_offset) {}

    Formula parse_all() {
        Formula f = formula();
        if (pos_ != toks_.size())
            fail("unexpected " + describe(toks_[pos_]) + " after a complete formula", {"end of input"});
        return f;
    }

  private:
    Formula formula() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::Variable: {
                Var x = variable();
                const Token& op = peek();
                if (op.kind != TokenKind::Equals && op.kind != TokenKind::Member)
                    fail("expected a relation symbol", {"'='", "'in'"});
                ++pos_;
                Var y = variable();
                return op.kind == TokenKind::Equals ? Formula::eq(x, y) : Formula::in(x, y);
            }
            case TokenKind::Not: {
                ++pos_;
                return Formula::negation(parenthesised());
            }
            case TokenKind::LParen: {
                Formula left = parenthesised();
                const Token& op = peek();
                if (op.kind == TokenKind::Or ||
                    (sugar_ && (op.kind == TokenKind::And || op.kind == TokenKind::Implies ||
                                op.kind == TokenKind::Iff))) {
                    ++pos_;
                    Formula right = parenthesised();
                    switch (op.kind) {
                        case TokenKind::And: return conj(left, right);
                        case TokenKind::Implies: return implies(left, right);
                        case TokenKind::Iff: return iff(left, right);
                        default: return Formula::disjunction(std::move(left), std::move(right));
                    }
                }
                if (sugar_) fail("expected a binary connective", {"'or'", "'and'", "'implies'", "'iff'"});
                fail("expected 'or'", {"'or'"});
            }
            case TokenKind::Forall:
            case TokenKind::Exists: {
                if (t.kind == TokenKind::Exists && !sugar_) break;
                const bool universal = t.kind == TokenKind::Forall;
                ++pos_;
                Var x = variable();
                Formula body = parenthesised();
                return universal ? Formula::forall(x, std::move(body)) : exists(x, body);
            }
            default: break;
        }
        std::vector<std::string> expected{"variable", "'not'", "'('", "'forall'"};
        if (sugar_) expected.emplace_back("'exists'");
        fail("expected the start of a formula", std::move(expected));
    }

    Formula parenthesised() {
        expect(TokenKind::LParen);
        Formula f = formula();
        expect(TokenKind::RParen);
        return f;
    }

    Var variable() {
        const Token& t = peek();
        if (t.kind != TokenKind::Variable) fail("expected a variable", {"variable"});
        ++pos_;
        return Var(t.var_index);
    }

    void expect(TokenKind k) {
        if (peek().kind != k) fail("expected " + std::string(token_spelling(k)), {std::string(token_spelling(k))});
        ++pos_;
    }

    const Token& peek() const { return pos_ < toks_.size() ? toks_[pos_] : end_; }

    [[noreturn]] void fail(std::string msg, std::vector<std::string> expected) const {
        const std::size_t offset = pos_ < toks_.size() ? toks_[pos_].offset : end_offset_;
        if (pos_ < toks_.size() && msg.find("unexpected") == std::string::npos)
            msg += ", found " + describe(toks_[pos_]);
        else if (pos_ >= toks_.size())
            msg += ", found end of input";
        throw ParseError(msg + " at token " + std::to_string(pos_), offset, std::move(expected));
    }

    std::span<const Token> toks_;
    bool sugar_;
    std::size_t end_offset_;
    std::size_t pos_ = 0;
    Token end_{TokenKind::End, 0, 0};
};

inline std::size_t end_offset_of(std::span<const Token> toks) {
    return toks.empty() ? 0 : toks.back().offset + 1;
}

}  // namespace detail

/// Parses exactly the strict grammar; sugar tokens are rejected.
inline Formula parse(std::span<const Token> toks) {
    return detail::FormulaParser(toks, false, detail::end_offset_of(toks)).parse_all();
}

inline Formula parse(std::string_view text) {
    auto toks = tokenize(text);
    return detail::FormulaParser(toks, false, text.size()).parse_all();
}

/// Parses the sugar grammar and expands abbreviations into core connectives.
inline Formula parse_sugar(std::string_view text) {
    auto toks = tokenize(text);
    return detail::FormulaParser(toks, true, text.size()).parse_all();
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline void print_strict_to(std::string& out, const Formula& f) {
    if (auto* a = f.as<EqAtom>()) {
        out += to_string(a->lhs) + " = " + to_string(a->rhs);
    } else if (auto* a = f.as<InAtom>()) {
        out += to_string(a->lhs) + " in " + to_string(a->rhs);
    } else if (auto* n = f.as<Negation>()) {
        out += "not ( ";
        print_strict_to(out, n->body);
        out += " )";
    } else if (auto* d = f.as<Disjunction>()) {
        out += "( ";
        print_strict_to(out, d->left);
        out += " ) or ( ";
        print_strict_to(out, d->right);
        out += " )";
    } else {
        const auto& q = *f.as<Forall>();
        out += "forall " + to_string(q.var) + " ( ";
        print_strict_to(out, q.body);
        out += " )";
    }
}

inline void print_sugar_to(std::string& out, const Formula& f) {
    auto binary = [&](const Formula& l, std::string_view op, const Formula& r) {
        out += "( ";
        print_sugar_to(out, l);
        out += " ) ";
        out += op;
        out += " ( ";
        print_sugar_to(out, r);
        out += " )";
    };
    if (auto m = match_iff(f)) return binary(m->first, "iff", m->second);
    if (auto m = match_conj(f)) return binary(m->first, "and", m->second);
    if (auto m = match_exists(f)) {
        out += "exists " + to_string(m->first) + " ( ";
        print_sugar_to(out, m->second);
        out += " )";
        return;
    }
    if (auto m = match_implies(f)) return binary(m->first, "implies", m->second);
    if (auto* n = f.as<Negation>()) {
        out += "not ( ";
        print_sugar_to(out, n->body);
        out += " )";
    } else if (auto* d = f.as<Disjunction>()) {
        binary(d->left, "or", d->right);
    } else if (auto* q = f.as<Forall>()) {
        out += "forall " + to_string(q->var) + " ( ";
        print_sugar_to(out, q->body);
        out += " )";
    } else {
        print_strict_to(out, f);
    }
}

}  // namespace detail

/// Fully parenthesised core form, tokens separated by single spaces.
inline std::string print_strict(const Formula& f) {
    std::string out;
    detail::print_strict_to(out, f);
    return out;
}

/// Folds abbreviation patterns back into `and`/`implies`/`iff`/`exists`.
/// parse_sugar(print_sugar(f)) == f.
inline std::string print_sugar(const Formula& f) {
    std::string out;
    detail::print_sugar_to(out, f);
    return out;
}

// ---------------------------------------------------------------------------
// Free and bound variables

struct Occurrence {
    Var var;
    bool bound;
};

namespace detail {

inline void collect_occurrences(const Formula& f, std::multiset<Var>& binders, std::vector<Occurrence>& out) {
    auto occ = [&](Var v) { out.push_back({v, binders.contains(v)}); };
    if (auto* a = f.as<EqAtom>()) {
        occ(a->lhs);
        occ(a->rhs);
    } else if (auto* a = f.as<InAtom>()) {
        occ(a->lhs);
        occ(a->rhs);
    } else if (auto* n = f.as<Negation>()) {
        collect_occurrences(n->body, binders, out);
    } else if (auto* d = f.as<Disjunction>()) {
        collect_occurrences(d->left, binders, out);
        collect_occurrences(d->right, binders, out);
    } else {
        const auto& q = *f.as<Forall>();
        auto it = binders.insert(q.var);
        out.push_back({q.var, true});  // the binder itself appears inside ∀x(ψ)
        collect_occurrences(q.body, binders, out);
        binders.erase(it);
    }
}

inline void collect_free(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
    if (auto* a = f.as<EqAtom>()) {
        if (!bound.contains(a->lhs)) out.insert(a->lhs);
        if (!bound.contains(a->rhs)) out.insert(a->rhs);
    } else if (auto* a = f.as<InAtom>()) {
        if (!bound.contains(a->lhs)) out.insert(a->lhs);
        if (!bound.contains(a->rhs)) out.insert(a->rhs);
    } else if (auto* n = f.as<Negation>()) {
        collect_free(n->body, bound, out);
    } else if (auto* d = f.as<Disjunction>()) {
        collect_free(d->left, bound, out);
        collect_free(d->right, bound, out);
    } else {
        const auto& q = *f.as<Forall>();
        const bool inserted = bound.insert(q.var).second;
        collect_free(q.body, bound, out);
        if (inserted) bound.erase(q.var);
    }
}

}  // namespace detail

/// Every variable occurrence, in the order it is printed, classified as
/// bound or free. A quantifier's own variable counts as bound.
inline std::vector<Occurrence> occurrences(const Formula& f) {
    std::multiset<Var> binders;
    std::vector<Occurrence> out;
    detail::collect_occurrences(f, binders, out);
    return out;
}

/// V(φ)
inline std::set<Var> free_vars(const Formula& f) {
    std::set<Var> bound, out;
    detail::collect_free(f, bound, out);
    return out;
}

inline bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

/// Variables with any occurrence, free or bound.
inline std::set<Var> all_vars(const Formula& f) {
    std::set<Var> out;
    for (const Occurrence& o : occurrences(f)) out.insert(o.var);
    return out;
}

// ---------------------------------------------------------------------------
// Substitution

/// φ(x⇝y): replace the free occurrences of x by y.
inline Formula substitute(const Formula& f, Var x, Var y) {
    auto sub = [&](Var v) { return v == x ? y : v; };
    if (auto* a = f.as<EqAtom>()) {
        if (a->lhs != x && a->rhs != x) return f;
        return Formula::eq(sub(a->lhs), sub(a->rhs));
    }
    if (auto* a = f.as<InAtom>()) {
        if (a->lhs != x && a->rhs != x) return f;
        return Formula::in(sub(a->lhs), sub(a->rhs));
    }
    if (auto* n = f.as<Negation>()) return Formula::negation(substitute(n->body, x, y));
    if (auto* d = f.as<Disjunction>()) return Formula::disjunction(substitute(d->left, x, y), substitute(d->right, x, y));
    const auto& q = *f.as<Forall>();
    if (q.var == x) return f;
    return Formula::forall(q.var, substitute(q.body, x, y));
}

/// No free occurrence of x lies inside a subformula ∀y(ψ).
inline bool is_free_for(Var y, Var x, const Formula& f) {
    if (f.is_atomic()) return true;
    if (auto* n = f.as<Negation>()) return is_free_for(y, x, n->body);
    if (auto* d = f.as<Disjunction>()) return is_free_for(y, x, d->left) && is_free_for(y, x, d->right);
    const auto& q = *f.as<Forall>();
    if (q.var == x) return true;  // x has no free occurrence below
    if (q.var == y) return !free_vars(q.body).contains(x);
    return is_free_for(y, x, q.body);
}

// ---------------------------------------------------------------------------
// Universal closures

inline Formula universal_closure(const Formula& f, std::span<const Var> vars) {
    Formula out = f;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = Formula::forall(*it, out);
    return out;
}

inline Formula universal_closure(const Formula& f, std::initializer_list<Var> vars) {
    return universal_closure(f, std::span<const Var>(vars.begin(), vars.size()));
}

/// Closure over V(φ) in ascending variable order.
inline Formula universal_closure(const Formula& f) {
    auto fv = free_vars(f);
    std::vector<Var> vars(fv.begin(), fv.end());
    return universal_closure(f, vars);
}

/// Removes the maximal leading ∀-spine.
inline std::pair<std::vector<Var>, Formula> strip_closure(const Formula& f) {
    std::vector<Var> vars;
    Formula cur = f;
    while (auto* q = cur.as<Forall>()) {
        vars.push_back(q->var);
        Formula next = q->body;
        cur = std::move(next);
    }
    return {std::move(vars), cur};
}

// ---------------------------------------------------------------------------
// Subformulas

namespace detail {
inline void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
    out.push_back(f);
    if (auto* n = f.as<Negation>()) {
        collect_subformulas(n->body, out);
    } else if (auto* d = f.as<Disjunction>()) {
        collect_subformulas(d->left, out);
        collect_subformulas(d->right, out);
    } else if (auto* q = f.as<Forall>()) {
        collect_subformulas(q->body, out);
    }
}

inline void collect_basic(const Formula& f, std::set<Formula>& out) {
    if (auto* n = f.as<Negation>()) {
        collect_basic(n->body, out);
    } else if (auto* d = f.as<Disjunction>()) {
        collect_basic(d->left, out);
        collect_basic(d->right, out);
    } else {
        out.insert(f);  // atomic or ∀-rooted: its interior is opaque
    }
}
}  // namespace detail

/// φ and all its descendants in preorder (with repetitions).
inline std::vector<Formula> subformulas(const Formula& f) {
    std::vector<Formula> out;
    detail::collect_subformulas(f, out);
    return out;
}

/// The maximal basic subformulas reached through ¬ and ∨, deduplicated.
inline std::set<Formula> basic_subformulas(const Formula& f) {
    std::set<Formula> out;
    detail::collect_basic(f, out);
    return out;
}

inline std::size_t formula_depth(const Formula& f) {
    if (auto* n = f.as<Negation>()) return 1 + formula_depth(n->body);
    if (auto* d = f.as<Disjunction>()) return 1 + std::max(formula_depth(d->left), formula_depth(d->right));
    if (auto* q = f.as<Forall>()) return 1 + formula_depth(q->body);
    return 0;
}

/// The strict-form token sequence of φ (offsets are zero).
inline std::vector<Token> to_tokens(const Formula& f) {
    std::vector<Token> out;
    auto emit = [&](TokenKind k, std::uint32_t v = 0) { out.push_back({k, v, 0}); };
    auto rec = [&](auto& self, const Formula& g) -> void {
        if (auto* a = g.as<EqAtom>()) {
            emit(TokenKind::Variable, a->lhs.index());
            emit(TokenKind::Equals);
            emit(TokenKind::Variable, a->rhs.index());
        } else if (auto* a = g.as<InAtom>()) {
            emit(TokenKind::Variable, a->lhs.index());
            emit(TokenKind::Member);
            emit(TokenKind::Variable, a->rhs.index());
        } else if (auto* n = g.as<Negation>()) {
            emit(TokenKind::Not);
            emit(TokenKind::LParen);
            self(self, n->body);
            emit(TokenKind::RParen);
        } else if (auto* d = g.as<Disjunction>()) {
            emit(TokenKind::LParen);
            self(self, d->left);
            emit(TokenKind::RParen);
            emit(TokenKind::Or);
            emit(TokenKind::LParen);
            self(self, d->right);
            emit(TokenKind::RParen);
        } else {
            const auto& q = *g.as<Forall>();
            emit(TokenKind::Forall);
            emit(TokenKind::Variable, q.var.index());
            emit(TokenKind::LParen);
            self(self, q.body);
            emit(TokenKind::RParen);
        }
    };
    rec(rec, f);
    return out;
}

// ---------------------------------------------------------------------------
// Symbols as sets
//
//   x_n -> (1,n)   = -> (2,1)   ∈ -> (3,1)   ¬ -> (4,1)
//   ∨   -> (5,1)   ) -> (6,1)   ( -> (7,1)   ∀ -> (8,1)

inline HFSet symbol_code(const Token& t) {
    auto code = [](std::uint64_t tag, std::uint64_t k) { return kpair(nat_to_hf(tag), nat_to_hf(k)); };
    switch (t.kind) {
        case TokenKind::Variable: return code(1, t.var_index);
        case TokenKind::Equals: return code(2, 1);
        case TokenKind::Member: return code(3, 1);
        case TokenKind::Not: return code(4, 1);
        case TokenKind::Or: return code(5, 1);
        case TokenKind::RParen: return code(6, 1);
        case TokenKind::LParen: return code(7, 1);
        case TokenKind::Forall: return code(8, 1);
        default: break;
    }
    throw PreconditionError("symbol_code: " + describe(t) + " is an abbreviation, not a logical symbol");
}

}  // namespace fol
