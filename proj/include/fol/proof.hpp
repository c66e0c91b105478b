#pragma once

// Hilbert-style proofs: logical axioms, Modus Ponens, proof checking and an
// exhaustive finite-model soundness harness.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fol/error.hpp"
#include "fol/hfset.hpp"
#include "fol/semantics.hpp"
#include "fol/syntax.hpp"

namespace fol {

struct Theory {
    std::vector<Formula> sentences;

    bool contains(const Formula& f) const {
        return std::find(sentences.begin(), sentences.end(), f) != sentences.end();
    }
};

struct ProofScript {
    Theory sigma;
    std::vector<Formula> lines;
};

namespace just {
struct InSigma {};
struct Axiom {
    int schema;  // 1..8
};
/// φ_i from φ_minor and φ_major = (φ_minor) ⇒ (φ_i); indices are 0-based.
struct ModusPonens {
    std::size_t minor;
    std::size_t major;
};
}  // namespace just

using Justification = std::variant<just::InSigma, just::Axiom, just::ModusPonens>;

inline std::string describe(const Justification& j) {
    if (std::holds_alternative<just::InSigma>(j)) return "sigma";
    if (auto* a = std::get_if<just::Axiom>(&j)) return "axiom " + std::to_string(a->schema);
    const auto& mp = std::get<just::ModusPonens>(j);
    return "mp " + std::to_string(mp.minor + 1) + " " + std::to_string(mp.major + 1);
}

struct LineReport {
    std::optional<Justification> justification;
    std::string failure;  // empty when justified
};

struct ProofReport {
    bool accepted = false;
    std::string error;  // script-level rejection (empty proof, non-sentence hypothesis)
    std::vector<LineReport> lines;
};

// ---------------------------------------------------------------------------
// Logical axioms

namespace detail {

inline bool is_eq(const Formula& f, Var& x, Var& y) {
    auto* a = f.as<EqAtom>();
    if (!a) return false;
    x = a->lhs;
    y = a->rhs;
    return true;
}

inline bool is_in(const Formula& f, Var& x, Var& y) {
    auto* a = f.as<InAtom>();
    if (!a) return false;
    x = a->lhs;
    y = a->rhs;
    return true;
}

// ψ ⇒ ∀x(ψ), x ∉ V(ψ)
inline bool schema2(const Formula& m) {
    auto imp = match_implies(m);
    if (!imp) return false;
    auto* q = imp->second.as<Forall>();
    return q && q->body == imp->first && !free_vars(imp->first).contains(q->var);
}

// ∀x(ψ ⇒ χ) ⇒ (∀x(ψ) ⇒ ∀x(χ))
inline bool schema3(const Formula& m) {
    auto outer = match_implies(m);
    if (!outer) return false;
    auto* q = outer->first.as<Forall>();
    if (!q) return false;
    auto inner = match_implies(q->body);
    auto rhs = match_implies(outer->second);
    if (!inner || !rhs) return false;
    auto* q1 = rhs->first.as<Forall>();
    auto* q2 = rhs->second.as<Forall>();
    return q1 && q2 && q1->var == q->var && q2->var == q->var && q1->body == inner->first &&
           q2->body == inner->second;
}

// ∀x(ψ) ⇒ ψ(x⇝y), y free for x in ψ
inline bool schema4(const Formula& m) {
    auto imp = match_implies(m);
    if (!imp) return false;
    auto* q = imp->first.as<Forall>();
    if (!q) return false;
    const Formula& target = imp->second;
    if (target == q->body) return true;  // y = x
    for (Var y : all_vars(target))
        if (is_free_for(y, q->var, q->body) && substitute(q->body, q->var, y) == target) return true;
    return false;
}

// x = y ⇔ y = x
inline bool schema6(const Formula& m) {
    auto e = match_iff(m);
    Var a{1}, b{1}, c{1}, d{1};
    return e && is_eq(e->first, a, b) && is_eq(e->second, c, d) && a == d && b == c;
}

// (x = y ∧ y = z) ⇒ x = z
inline bool schema7(const Formula& m) {
    auto imp = match_implies(m);
    if (!imp) return false;
    auto c = match_conj(imp->first);
    Var x1{1}, y1{1}, y2{1}, z1{1}, x2{1}, z2{1};
    return c && is_eq(c->first, x1, y1) && is_eq(c->second, y2, z1) && is_eq(imp->second, x2, z2) && y1 == y2 &&
           x1 == x2 && z1 == z2;
}

// (w = x ∧ y = z) ⇒ (w ∈ y ⇔ x ∈ z)
inline bool schema8(const Formula& m) {
    auto imp = match_implies(m);
    if (!imp) return false;
    auto c = match_conj(imp->first);
    auto e = match_iff(imp->second);
    if (!c || !e) return false;
    Var w{1}, x{1}, y{1}, z{1}, w2{1}, y2{1}, x2{1}, z2{1};
    return is_eq(c->first, w, x) && is_eq(c->second, y, z) && is_in(e->first, w2, y2) && is_in(e->second, x2, z2) &&
           w == w2 && y == y2 && x == x2 && z == z2;
}

}  // namespace detail

/// Lowest schema id (1..8) of which `f` is a universal closure, or nullopt.
/// Only sentences qualify. Schema 1 reuses is_tautology and so may throw
/// CapacityError.
inline std::optional<int> is_logical_axiom(const Formula& f) {
    if (!is_sentence(f)) return std::nullopt;
    const Formula m = strip_closure(f).second;
    if (is_tautology(m)) return 1;
    if (detail::schema2(m)) return 2;
    if (detail::schema3(m)) return 3;
    if (detail::schema4(m)) return 4;
    if (auto* a = m.as<EqAtom>(); a && a->lhs == a->rhs) return 5;
    if (detail::schema6(m)) return 6;
    if (detail::schema7(m)) return 7;
    if (detail::schema8(m)) return 8;
    return std::nullopt;
}

/// ψ when `major` is (minor) ⇒ (ψ).
inline std::optional<Formula> modus_ponens(const Formula& major, const Formula& minor) {
    auto imp = match_implies(major);
    if (!imp || imp->first != minor) return std::nullopt;
    return imp->second;
}

// ---------------------------------------------------------------------------
// Proof checking

inline ProofReport check_proof(const ProofScript& ps) {
    ProofReport report;
    for (std::size_t i = 0; i < ps.sigma.sentences.size(); ++i) {
        if (!is_sentence(ps.sigma.sentences[i])) {
            report.error = "hypothesis " + std::to_string(i + 1) + " is not a sentence";
            return report;
        }
    }
    if (ps.lines.empty()) {
        report.error = "a proof must contain at least one line";
        return report;
    }

    report.accepted = true;
    for (std::size_t i = 0; i < ps.lines.size(); ++i) {
        const Formula& line = ps.lines[i];
        LineReport lr;
        if (!is_sentence(line)) {
            lr.failure = "line " + std::to_string(i + 1) + " is not a sentence";
        } else if (ps.sigma.contains(line)) {
            lr.justification = just::InSigma{};
        } else {
            std::string capacity;
            try {
                if (auto id = is_logical_axiom(line)) lr.justification = just::Axiom{*id};
            } catch (const CapacityError& e) {
                capacity = e.what();
            }
            for (std::size_t j = 0; j < i && !lr.justification; ++j)
                for (std::size_t k = 0; k < i && !lr.justification; ++k)
                    if (auto c = modus_ponens(ps.lines[k], ps.lines[j]); c && *c == line)
                        lr.justification = just::ModusPonens{j, k};
            if (!lr.justification) {
                lr.failure = "line " + std::to_string(i + 1) +
                             " is neither a hypothesis, a logical axiom, nor a Modus Ponens consequence";
                if (!capacity.empty()) lr.failure += " (" + capacity + ")";
            }
        }
        if (!lr.justification) report.accepted = false;
        report.lines.push_back(std::move(lr));
    }
    return report;
}

/// A ⊨ Σ
inline bool models_theory(const HFSet& A, const Theory& sigma) {
    detail::check_model(A);
    for (const Formula& s : sigma.sentences)
        if (!eval(A, s)) return false;
    return true;
}

struct SoundnessReport {
    std::uint64_t models_examined = 0;
    std::uint64_t models_of_sigma = 0;
    std::vector<std::uint64_t> violations;  // model indices where Σ holds but the conclusion fails
};

/// Checks A ⊨ φ_n for every model A = hf_from_index(1..max_index) with A ⊨ Σ.
/// Stops at the first violation, which would be a kernel bug.
inline SoundnessReport soundness_check(const ProofScript& ps, std::uint64_t max_index) {
    const ProofReport pr = check_proof(ps);
    if (!pr.accepted) throw PreconditionError("soundness_check: the proof script is not accepted");
    const Formula& conclusion = ps.lines.back();
    SoundnessReport report;
    for (std::uint64_t i = 1; i <= max_index; ++i) {
        const HFSet A = hf_from_index({i});
        ++report.models_examined;
        if (!models_theory(A, ps.sigma)) continue;
        ++report.models_of_sigma;
        if (!eval(A, conclusion)) {
            report.violations.push_back(i);
            break;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Proof files
//
//   sigma:
//   <formula>*
//   proof:
//   <formula>+
//
// Formulas use the sugar grammar, one per line. Blank lines and lines
// starting with '#' are ignored, as is any trailing "# ..." comment.

struct SourceLine {
    std::size_t number;  // 1-based
    std::string text;
};

/// Strips comments and blank lines.
inline std::vector<SourceLine> formula_lines(std::string_view text) {
    std::vector<SourceLine> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++number;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos) {
            const auto last = line.find_last_not_of(" \t\r");
            out.push_back({number, std::string(line.substr(first, last - first + 1))});
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

/// Parse failure tied to a line of a multi-line file.
class SourceError : public Error {
  public:
    SourceError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_, column_;
};

inline Formula parse_source_line(const SourceLine& l) {
    try {
        return parse_sugar(l.text);
    } catch (const ParseError& e) {
        throw SourceError(l.number, e.offset() + 1, e.what());
    }
}

inline ProofScript parse_proof_script(std::string_view text) {
    ProofScript ps;
    enum class Section { None, Sigma, Proof } section = Section::None;
    for (const SourceLine& l : formula_lines(text)) {
        if (l.text == "sigma:") {
            if (section != Section::None) throw SourceError(l.number, 1, "'sigma:' must be the first header");
            section = Section::Sigma;
        } else if (l.text == "proof:") {
            if (section != Section::Sigma) throw SourceError(l.number, 1, "'proof:' must follow 'sigma:'");
            section = Section::Proof;
        } else if (section == Section::None) {
            throw SourceError(l.number, 1, "expected 'sigma:' header");
        } else {
            Formula f = parse_source_line(l);
            (section == Section::Sigma ? ps.sigma.sentences : ps.lines).push_back(std::move(f));
        }
    }
    if (section != Section::Proof) throw SourceError(1, 1, "missing 'proof:' header");
    return ps;
}

}  // namespace fol
