#pragma once

// A named sample of ZFC axioms written in the {=, ∈} language.
//
// The sentences live as sugar-syntax files under corpus/zfc/ and are compiled
// into fol/zfc_corpus_data.hpp by the build; they are parsed on first use.

#include <string>
#include <string_view>
#include <vector>

#include "fol/proof.hpp"
#include "fol/syntax.hpp"
#include "fol/zfc_corpus_data.hpp"

namespace fol {

struct NamedSentence {
    std::string name;
    Formula sentence;
};

/// Parses one corpus file: exactly one formula, comments allowed.
inline Formula parse_corpus_file(std::string_view text) {
    auto lines = formula_lines(text);
    if (lines.size() != 1)
        throw SourceError(lines.empty() ? 1 : lines[1].number, 1, "a corpus file holds exactly one formula");
    Formula f = parse_source_line(lines.front());
    if (!is_sentence(f)) throw SourceError(lines.front().number, 1, "corpus formula is not a sentence");
    return f;
}

inline const std::vector<NamedSentence>& corpus() {
    static const std::vector<NamedSentence> sentences = [] {
        std::vector<NamedSentence> out;
        for (const auto& [name, text] : corpus_data::kSources) out.push_back({std::string(name), parse_corpus_file(text)});
        return out;
    }();
    return sentences;
}

/// Throws PreconditionError for an unknown name.
inline const Formula& corpus_sentence(std::string_view name) {
    for (const NamedSentence& s : corpus())
        if (s.name == name) return s.sentence;
    throw PreconditionError("no corpus sentence named '" + std::string(name) + "'");
}

}  // namespace fol
