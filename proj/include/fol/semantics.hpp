#pragma once

// Tarskian semantics over hereditarily finite models.
//
// A model is a non-empty HFSet A; its members form the domain and ∈ is
// interpreted as true membership. Truth values are bools (1 = true).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fol/error.hpp"
#include "fol/hfset.hpp"
#include "fol/syntax.hpp"

namespace fol {

/// A finite map from variables to sets.
class Assignment {
  public:
    using Map = std::map<Var, HFSet>;

    Assignment() = default;
    explicit Assignment(Map bindings) : bindings_(std::move(bindings)) {}
    Assignment(std::initializer_list<std::pair<const Var, HFSet>> init) : bindings_(init) {}

    bool contains(Var x) const { return bindings_.contains(x); }
    std::optional<HFSet> get(Var x) const {
        auto it = bindings_.find(x);
        if (it == bindings_.end()) return std::nullopt;
        return it->second;
    }
    const HFSet& at(Var x) const {
        auto it = bindings_.find(x);
        if (it == bindings_.end()) throw PreconditionError("assignment has no value for " + to_string(x));
        return it->second;
    }
    const Map& bindings() const noexcept { return bindings_; }
    std::size_t size() const noexcept { return bindings_.size(); }

    /// σ + (x/a): maps x to a and agrees with σ elsewhere.
    [[nodiscard]] Assignment update(Var x, HFSet a) const {
        Assignment out = *this;
        out.bindings_.insert_or_assign(x, std::move(a));
        return out;
    }

    /// σ restricted to `vars`.
    [[nodiscard]] Assignment restrict(const std::set<Var>& vars) const {
        Map m;
        for (const auto& [x, a] : bindings_)
            if (vars.contains(x)) m.emplace(x, a);
        return Assignment(std::move(m));
    }

    friend bool operator==(const Assignment&, const Assignment&) = default;

  private:
    Map bindings_;
};

inline Assignment assign_update(const Assignment& sigma, Var x, HFSet a) { return sigma.update(x, std::move(a)); }

using TruthAssignment = std::map<Formula, bool>;

struct Counterexample {
    HFSet model;
    Assignment assignment;
};

/// Instrumentation for eval.
struct EvalStats {
    std::uint64_t forall_body_evals = 0;
};

namespace detail {

/// A model's domain with membership precomputed over element positions.
class ModelTable {
  public:
    explicit ModelTable(const HFSet& A) : elems_(A.elements().begin(), A.elements().end()) {
        const std::size_t n = elems_.size();
        member_.assign(n * n, false);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) member_[i * n + j] = member(elems_[i], elems_[j]);
    }

    std::size_t size() const noexcept { return elems_.size(); }
    const HFSet& element(std::size_t i) const { return elems_[i]; }
    bool in(std::size_t i, std::size_t j) const { return member_[i * elems_.size() + j]; }

    std::size_t position(const HFSet& a) const {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), a);
        if (it == elems_.end() || *it != a) throw PreconditionError("value " + print_hf(a) + " is not in the model");
        return static_cast<std::size_t>(it - elems_.begin());
    }

  private:
    std::vector<HFSet> elems_;  // canonical order
    std::vector<bool> member_;
};

/// Environment indexed by variable number; -1 means unbound.
using Env = std::vector<long>;

inline bool eval_table(const ModelTable& m, const Formula& f, Env& env, EvalStats* stats) {
    auto pos = [&](Var v) -> std::size_t {
        const long p = v.index() < env.size() ? env[v.index()] : -1;
        if (p < 0) throw PreconditionError("no value for free variable " + to_string(v));
        return static_cast<std::size_t>(p);
    };
    if (auto* a = f.as<EqAtom>()) return pos(a->lhs) == pos(a->rhs);
    if (auto* a = f.as<InAtom>()) return m.in(pos(a->lhs), pos(a->rhs));
    if (auto* n = f.as<Negation>()) return !eval_table(m, n->body, env, stats);
    if (auto* d = f.as<Disjunction>()) {
        const bool l = eval_table(m, d->left, env, stats);
        const bool r = eval_table(m, d->right, env, stats);
        return l || r;
    }
    const auto& q = *f.as<Forall>();
    const std::size_t x = q.var.index();
    if (env.size() <= x) env.resize(x + 1, -1);
    const long saved = env[x];
    bool all = true;
    for (std::size_t a = 0; a < m.size(); ++a) {
        env[x] = static_cast<long>(a);
        if (stats) ++stats->forall_body_evals;
        all = eval_table(m, q.body, env, stats) && all;
    }
    env[x] = saved;
    return all;
}

inline void check_model(const HFSet& A) {
    if (A.empty()) throw PreconditionError("model must be a non-empty set");
}

/// Validates σ as an assignment for φ in A and converts it to positions.
inline Env make_env(const ModelTable& m, const Formula& f, const Assignment& sigma) {
    Env env;
    for (const auto& [x, a] : sigma.bindings()) {
        if (env.size() <= x.index()) env.resize(x.index() + 1, -1);
        env[x.index()] = static_cast<long>(m.position(a));
    }
    for (Var v : free_vars(f))
        if (!sigma.contains(v)) throw PreconditionError("assignment has no value for free variable " + to_string(v));
    return env;
}

}  // namespace detail

/// val_A(φ)[σ]. Requires A non-empty, V(φ) ⊆ dom(σ) and ran(σ) ⊆ A.
inline bool eval(const HFSet& A, const Formula& f, const Assignment& sigma, EvalStats* stats = nullptr) {
    detail::check_model(A);
    detail::ModelTable m(A);
    detail::Env env = detail::make_env(m, f, sigma);
    return detail::eval_table(m, f, env, stats);
}

inline bool eval(const HFSet& A, const Formula& f) { return eval(A, f, Assignment{}); }

/// Both assignments must be valid for φ in A and agree on V(φ); returns
/// whether they give φ the same value (always true).
inline bool value_only_check(const HFSet& A, const Formula& f, const Assignment& sigma, const Assignment& tau) {
    const auto fv = free_vars(f);
    if (sigma.restrict(fv) != tau.restrict(fv))
        throw PreconditionError("value_only_check: assignments disagree on the free variables");
    return eval(A, f, sigma) == eval(A, f, tau);
}

// ---------------------------------------------------------------------------
// Propositional layer

/// v̄(φ): ¬ flips, ∨ is max, basic formulas are read from v.
inline bool extend_truth(const TruthAssignment& v, const Formula& f) {
    if (auto* n = f.as<Negation>()) return !extend_truth(v, n->body);
    if (auto* d = f.as<Disjunction>()) {
        const bool l = extend_truth(v, d->left);
        const bool r = extend_truth(v, d->right);
        return l || r;
    }
    auto it = v.find(f);
    if (it == v.end()) throw PreconditionError("truth assignment has no value for basic formula " + print_strict(f));
    return it->second;
}

inline constexpr std::size_t kMaxTautologyAtoms = 20;

namespace detail {

/// φ compiled over the indices of its basic subformulas.
class PropositionalSkeleton {
  public:
    explicit PropositionalSkeleton(const Formula& f) {
        auto basics = basic_subformulas(f);
        atoms_.assign(basics.begin(), basics.end());
        root_ = compile(f);
    }

    std::size_t atom_count() const noexcept { return atoms_.size(); }

    bool value(std::uint64_t row) const {
        std::vector<bool> val(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            switch (n.op) {
                case Op::Atom: val[i] = (row >> n.a) & 1u; break;
                case Op::Not: val[i] = !val[n.a]; break;
                case Op::Or: val[i] = val[n.a] || val[n.b]; break;
            }
        }
        return val[root_];
    }

  private:
    enum class Op { Atom, Not, Or };
    struct Node {
        Op op;
        std::size_t a = 0, b = 0;
    };

    std::size_t compile(const Formula& f) {
        if (auto* n = f.as<Negation>()) {
            const std::size_t c = compile(n->body);
            nodes_.push_back({Op::Not, c});
        } else if (auto* d = f.as<Disjunction>()) {
            const std::size_t l = compile(d->left);
            const std::size_t r = compile(d->right);
            nodes_.push_back({Op::Or, l, r});
        } else {
            auto it = std::lower_bound(atoms_.begin(), atoms_.end(), f);
            nodes_.push_back({Op::Atom, static_cast<std::size_t>(it - atoms_.begin())});
        }
        return nodes_.size() - 1;
    }

    std::vector<Formula> atoms_;  // sorted
    std::vector<Node> nodes_;     // children precede parents
    std::size_t root_ = 0;
};

}  // namespace detail

/// True iff every truth assignment to the basic subformulas extends to 1.
/// Throws CapacityError beyond kMaxTautologyAtoms basic subformulas.
inline bool is_tautology(const Formula& f) {
    detail::PropositionalSkeleton sk(f);
    if (sk.atom_count() > kMaxTautologyAtoms)
        throw CapacityError("is_tautology: " + std::to_string(sk.atom_count()) + " basic subformulas exceed the limit of " +
                            std::to_string(kMaxTautologyAtoms));
    const std::uint64_t rows = std::uint64_t{1} << sk.atom_count();
    for (std::uint64_t row = 0; row < rows; ++row)
        if (!sk.value(row)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Model search

/// Visits every assignment V(φ) -> A in canonical order (variables by index,
/// first variable slowest; values by ascending Ackermann code). Stops when
/// `visit` returns false.
template <class Visit>
void for_each_assignment(const HFSet& A, const std::set<Var>& vars, Visit&& visit) {
    const std::vector<HFSet> values = elements_by_index(A);
    const std::vector<Var> order(vars.begin(), vars.end());
    if (values.empty() && !order.empty()) return;
    std::vector<std::size_t> digit(order.size(), 0);
    for (;;) {
        Assignment::Map m;
        for (std::size_t i = 0; i < order.size(); ++i) m.emplace(order[i], values[digit[i]]);
        if (!visit(Assignment(std::move(m)))) return;
        std::size_t i = order.size();
        while (i > 0) {
            --i;
            if (++digit[i] < values.size()) break;
            digit[i] = 0;
            if (i == 0) return;
        }
        if (order.empty()) return;
    }
}

/// First (A, σ) with val_A(φ)[σ] = 0 over the models hf_from_index(1..max_index).
/// nullopt means no counterexample up to the bound, not validity.
inline std::optional<Counterexample> search_counterexample(const Formula& f, std::uint64_t max_index) {
    const auto vars = free_vars(f);
    for (std::uint64_t i = 1; i <= max_index; ++i) {
        const HFSet A = hf_from_index({i});
        const detail::ModelTable m(A);
        std::optional<Counterexample> found;
        for_each_assignment(A, vars, [&](const Assignment& sigma) {
            detail::Env env = detail::make_env(m, f, sigma);
            if (!detail::eval_table(m, f, env, nullptr)) {
                found = Counterexample{A, sigma};
                return false;
            }
            return true;
        });
        if (found) return found;
    }
    return std::nullopt;
}

/// val_A(φ(x⇝y))[σ] == val_A(φ)[σ + (x/σ(y))], given y free for x in φ and
/// y ∈ dom(σ). Always true when the preconditions hold.
inline bool substitution_lemma_check(const HFSet& A, const Formula& f, Var x, Var y, const Assignment& sigma) {
    if (!is_free_for(y, x, f)) throw PreconditionError("substitution_lemma_check: y is not free for x");
    if (!sigma.contains(y)) throw PreconditionError("substitution_lemma_check: y is not in the assignment's domain");
    const bool lhs = eval(A, substitute(f, x, y), sigma);
    const bool rhs = eval(A, f, sigma.update(x, sigma.at(y)));
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Assignment literals: "x1 := {}; x2 := {{}}"

inline Assignment parse_assignment(std::string_view text) {
    Assignment::Map m;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos == text.size()) return {};
    for (;;) {
        skip_ws();
        const std::size_t start = pos;
        if (pos >= text.size() || text[pos] != 'x') throw ParseError("expected a variable", pos, {"variable"});
        std::size_t j = pos + 1;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        auto toks = tokenize(text.substr(pos, j - pos));
        pos = j;
        const Var x(toks.at(0).var_index);
        skip_ws();
        if (text.substr(pos, 2) != ":=") throw ParseError("expected ':='", pos, {"':='"});
        pos += 2;
        const std::size_t end = text.find(';', pos);
        const std::string_view lit = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        HFSet a;
        try {
            a = parse_hf_literal(lit);
        } catch (const ParseError& e) {
            throw ParseError(e.message(), pos + e.offset(), e.expected());
        }
        if (!m.emplace(x, a).second) throw ParseError("variable " + to_string(x) + " bound twice", start);
        if (end == std::string_view::npos) break;
        pos = end + 1;
        skip_ws();
        if (pos == text.size()) break;  // trailing ';'
    }
    return Assignment(std::move(m));
}

inline std::string print_assignment(const Assignment& sigma, bool sugar = false) {
    std::string out;
    for (const auto& [x, a] : sigma.bindings()) {
        if (!out.empty()) out += "; ";
        out += to_string(x) + " := " + print_hf(a, sugar);
    }
    return out;
}

}  // namespace fol
