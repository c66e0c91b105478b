#include <gtest/gtest.h>

#include "fol/zfc_corpus.hpp"
#include "support/generators.hpp"

namespace fol {
namespace {

TEST(Corpus, EverySentenceIsWellFormed) {
    ASSERT_GE(corpus().size(), 8u);
    for (const NamedSentence& s : corpus()) {
        EXPECT_TRUE(is_sentence(s.sentence)) << s.name;
        EXPECT_EQ(parse(print_strict(s.sentence)), s.sentence) << s.name;
        EXPECT_EQ(parse_sugar(print_sugar(s.sentence)), s.sentence) << s.name;
    }
}

TEST(Corpus, LookupByName) {
    EXPECT_EQ(corpus_sentence("extensionality"),
              parse_sugar("forall x1 (forall x2 ((forall x3 ((x3 in x1) iff (x3 in x2))) implies (x1 = x2)))"));
    EXPECT_THROW(corpus_sentence("choice"), PreconditionError);
}

TEST(Corpus, ExtensionalityFailsInANonTransitiveModel) {
    const HFSet A = hf_from_index({5});
    EXPECT_EQ(A, make_set({HFSet{}, make_set({make_set({HFSet{}})})}));
    EXPECT_FALSE(eval(A, corpus_sentence("extensionality")));
}

TEST(Corpus, ExtensionalityHoldsInEveryTransitiveModel) {
    const Formula ext = corpus_sentence("extensionality");
    int transitive = 0;
    for (std::uint64_t i = 1; i <= 64; ++i) {
        const HFSet A = hf_from_index({i});
        if (!testing::is_transitive(A)) continue;
        ++transitive;
        EXPECT_TRUE(eval(A, ext)) << print_hf(A);
    }
    EXPECT_GE(transitive, 4);
}

TEST(Corpus, SelectedFactsInSmallModels) {
    // {∅} satisfies the empty-set axiom but not pairing.
    const HFSet one = nat_to_hf(1);
    EXPECT_TRUE(eval(one, corpus_sentence("empty_set")));
    EXPECT_TRUE(eval(one, corpus_sentence("foundation")));
    for (std::uint64_t i = 1; i <= 64; ++i) {
        const HFSet A = hf_from_index({i});
        EXPECT_EQ(eval(A, corpus_sentence("foundation")), testing::naive_eval(A, corpus_sentence("foundation"), {}));
    }
}

TEST(CorpusFile, Errors) {
    EXPECT_THROW(parse_corpus_file("# only a comment\n"), Error);
    EXPECT_THROW(parse_corpus_file("forall x1 (x1 = x1)\nforall x1 (x1 = x1)\n"), Error);
    EXPECT_THROW(parse_corpus_file("x1 = x1\n"), Error);
    EXPECT_EQ(parse_corpus_file("# c\nforall x1 (x1 = x1)\n"), parse("forall x1 (x1 = x1)"));
}

}  // namespace
}  // namespace fol
