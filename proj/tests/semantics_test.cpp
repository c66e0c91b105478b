#include <gtest/gtest.h>

#include "fol/semantics.hpp"
#include "fol/zfc_corpus.hpp"
#include "support/generators.hpp"

namespace fol {
namespace {

const Var x1{1}, x2{2}, x3{3}, x4{4};
const HFSet kEmpty{};
const HFSet kOne = make_set({kEmpty});
const HFSet kSingletonOne = make_set({kOne});

/// An assignment of random model elements to `vars`.
Assignment random_assignment(testing::Rng& rng, const HFSet& A, const std::set<Var>& vars) {
    Assignment::Map m;
    for (Var v : vars) m.emplace(v, testing::random_element(rng, A));
    return Assignment(std::move(m));
}

TEST(AssignUpdate, Examples) {
    // σ = {y↦a_y, w↦a_w} with y = x2, w = x3 and a_y, a_w, a, b distinct sets.
    const HFSet ay = nat_to_hf(1), aw = nat_to_hf(2), a = nat_to_hf(3), b = nat_to_hf(4);
    const Assignment sigma{{x2, ay}, {x3, aw}};
    const Assignment s1 = assign_update(sigma, x2, a);
    EXPECT_EQ(s1, (Assignment{{x2, a}, {x3, aw}}));
    EXPECT_EQ(assign_update(s1, x3, b), (Assignment{{x2, a}, {x3, b}}));
    EXPECT_EQ(sigma, (Assignment{{x2, ay}, {x3, aw}}));  // unchanged
    EXPECT_EQ(assign_update(Assignment{}, x1, kEmpty), (Assignment{{x1, kEmpty}}));
}

TEST(Eval, Examples) {
    const Formula refl = parse("forall x1 (x1 = x1)");
    for (std::uint64_t i = 1; i < 64; ++i) EXPECT_TRUE(eval(hf_from_index({i}), refl));

    const HFSet A = make_set({kEmpty, kOne});
    EXPECT_TRUE(eval(A, parse("x1 in x2"), Assignment{{x1, kEmpty}, {x2, kOne}}));
    EXPECT_FALSE(eval(A, parse("x1 in x2"), Assignment{{x1, kOne}, {x2, kEmpty}}));

    // Neither ∅ nor {{∅}} has a member inside A, yet they differ.
    const HFSet B = make_set({kEmpty, kSingletonOne});
    EXPECT_FALSE(eval(B, corpus_sentence("extensionality")));
}

TEST(Eval, PreconditionViolations) {
    const Formula f = parse("x1 = x2");
    EXPECT_THROW(eval(kEmpty, parse("forall x1 (x1 = x1)")), PreconditionError);
    EXPECT_THROW(eval(kOne, f, Assignment{{x1, kEmpty}}), PreconditionError);
    EXPECT_THROW(eval(kOne, f, Assignment{{x1, kEmpty}, {x2, kOne}}), PreconditionError);
    // Bindings outside V(φ) must still lie in A.
    EXPECT_THROW(eval(kOne, parse("x1 = x1"), Assignment{{x1, kEmpty}, {x3, kOne}}), PreconditionError);
}

TEST(Eval, AgreesWithNaiveTruthDefinition) {
    testing::Rng rng(21);
    for (int t = 0; t < 3000; ++t) {
        const Formula f = testing::random_formula(rng, 5);
        const HFSet A = testing::random_model(rng, 40);
        const Assignment sigma = random_assignment(rng, A, free_vars(f));
        ASSERT_EQ(eval(A, f, sigma), testing::naive_eval(A, f, sigma.bindings())) << print_strict(f) << " in "
                                                                                   << print_hf(A);
    }
}

TEST(Eval, Deterministic) {
    testing::Rng rng(22);
    for (int t = 0; t < 500; ++t) {
        const Formula f = testing::random_formula(rng, 5);
        const HFSet A = testing::random_model(rng, 30);
        const Assignment sigma = random_assignment(rng, A, free_vars(f));
        EXPECT_EQ(eval(A, f, sigma), eval(A, f, sigma));
    }
}

TEST(Eval, ForallEvaluatesTheBodyOncePerElement) {
    for (std::uint64_t i = 1; i < 64; ++i) {
        const HFSet A = hf_from_index({i});
        EvalStats stats;
        eval(A, parse("forall x1 (x1 = x1)"), Assignment{}, &stats);
        EXPECT_EQ(stats.forall_body_evals, A.size());
        EvalStats nested;
        eval(A, parse("forall x1 (forall x2 (x1 in x2))"), Assignment{}, &nested);
        EXPECT_EQ(nested.forall_body_evals, A.size() + A.size() * A.size());
    }
}

TEST(ValueOnly, Examples) {
    // φ = ∀x(x=y)∨(w=y) with x, y, w, z = x1, x2, x3, x4.
    const Formula phi = parse("(forall x1 (x1 = x2)) or (x3 = x2)");
    const HFSet A = hf_from_index({15});
    const auto el = A.elements();
    const Assignment sigma{{x2, el[0]}, {x3, el[1]}};
    const Assignment tau{{x1, el[2]}, {x2, el[0]}, {x4, el[3]}, {x3, el[1]}};
    EXPECT_TRUE(value_only_check(A, phi, sigma, tau));
    EXPECT_TRUE(value_only_check(A, phi, sigma, sigma));
    EXPECT_THROW(value_only_check(A, phi, sigma, Assignment{{x2, el[1]}, {x3, el[1]}}), PreconditionError);
}

TEST(ValueOnly, Randomized) {
    testing::Rng rng(23);
    for (int t = 0; t < 1000; ++t) {
        const Formula f = testing::random_formula(rng, 5);
        const HFSet A = testing::random_model(rng, 12);
        const auto fv = free_vars(f);
        Assignment sigma = random_assignment(rng, A, fv);
        Assignment tau = sigma;
        for (std::uint32_t v = 1; v <= 6; ++v) {
            if (fv.contains(Var(v))) continue;
            if (rng() % 2) sigma = sigma.update(Var(v), testing::random_element(rng, A));
            if (rng() % 2) tau = tau.update(Var(v), testing::random_element(rng, A));
        }
        ASSERT_TRUE(value_only_check(A, f, sigma, tau));
    }
}

TEST(ExtendTruth, Examples) {
    const Formula e = parse("x1 = x2");
    EXPECT_TRUE(extend_truth({{e, false}}, Formula::disjunction(e, Formula::negation(e))));
    EXPECT_FALSE(extend_truth({{e, true}}, Formula::negation(e)));
    EXPECT_THROW(extend_truth({}, Formula::negation(e)), PreconditionError);
}

TEST(ExtendTruth, MatchesEvalWhenAtomsTakeTheirTruthValues) {
    testing::Rng rng(24);
    for (int t = 0; t < 1000; ++t) {
        const Formula f = testing::random_formula(rng, 6);
        const HFSet A = testing::random_model(rng, 20);
        const Assignment sigma = random_assignment(rng, A, free_vars(f));
        TruthAssignment v;
        for (const Formula& b : basic_subformulas(f)) v[b] = eval(A, b, sigma);
        ASSERT_EQ(extend_truth(v, f), eval(A, f, sigma));
    }
}

TEST(Tautology, Examples) {
    EXPECT_TRUE(is_tautology(parse("(x1=x2) or (not(x1=x2))")));
    EXPECT_FALSE(is_tautology(parse("x1=x2")));
    EXPECT_FALSE(is_tautology(parse("forall x1 (x1=x1)")));
    // φ ∨ ¬φ is a tautology; φ ∧ ¬φ is a contradiction.
    EXPECT_TRUE(is_tautology(parse_sugar("(x1 in x2) or (not (x1 in x2))")));
    EXPECT_FALSE(is_tautology(parse_sugar("(x1 in x2) and (not (x1 in x2))")));
}

TEST(Tautology, AgreesWithNaiveTruthTable) {
    testing::Rng rng(25);
    int positives = 0;
    for (int t = 0; t < 3000; ++t) {
        std::vector<Formula> atoms{testing::random_formula(rng, 1, 2), testing::random_formula(rng, 1, 2),
                                   testing::random_formula(rng, 1, 2)};
        const Formula f = testing::random_combination(rng, atoms, 4);
        const bool expected = testing::naive_tautology(f);
        positives += expected;
        ASSERT_EQ(is_tautology(f), expected) << print_strict(f);
    }
    EXPECT_GT(positives, 20);
}

TEST(Tautology, CapacityError) {
    Formula f = Formula::eq(Var(1), Var(1));
    for (std::uint32_t i = 2; i <= 21; ++i) f = Formula::disjunction(f, Formula::eq(Var(i), Var(i)));
    EXPECT_THROW(is_tautology(f), CapacityError);
    Formula g = Formula::eq(Var(1), Var(1));
    for (std::uint32_t i = 2; i <= 20; ++i) g = Formula::disjunction(g, Formula::eq(Var(i), Var(i)));
    EXPECT_FALSE(is_tautology(g));
}

TEST(Search, Examples) {
    EXPECT_FALSE(search_counterexample(parse("forall x1 (x1 = x1)"), 10));
    auto cx = search_counterexample(parse("x1 in x2"), 3);
    ASSERT_TRUE(cx);
    EXPECT_EQ(cx->model, kOne);
    EXPECT_EQ(cx->assignment, (Assignment{{x1, kEmpty}, {x2, kEmpty}}));
    EXPECT_FALSE(eval(cx->model, parse("x1 in x2"), cx->assignment));
}

TEST(Search, FindsExhaustiveOracleWitnessFirst) {
    // x1 = x2 first fails in hf(3) = {∅,{∅}} at σ = {x1↦∅, x2↦{∅}}.
    auto cx = search_counterexample(parse("x1 = x2"), 8);
    ASSERT_TRUE(cx);
    EXPECT_EQ(hf_index(cx->model).value, 3u);
    EXPECT_EQ(cx->assignment, (Assignment{{x1, kEmpty}, {x2, kOne}}));
    EXPECT_FALSE(search_counterexample(parse("x1 = x2"), 2));
}

TEST(Search, TautologiesHaveNoCounterexample) {
    testing::Rng rng(26);
    for (int t = 0; t < 60; ++t) {
        const Formula f = testing::random_tautology(rng);
        ASSERT_TRUE(is_tautology(f));
        ASSERT_FALSE(search_counterexample(f, 8)) << print_strict(f);
    }
    // Every tautology over two basic formulas.
    const Formula p = parse("x1 in x2"), q = parse("forall x3 (x3 = x1)");
    for (const char* shape : {"(P) or (not (P))", "(P) implies ((Q) implies (P))", "((P) and (Q)) implies (Q)",
                              "((P) iff (Q)) iff ((Q) iff (P))"}) {
        std::string text = shape;
        for (auto [from, to] : {std::pair{"P", print_strict(p)}, std::pair{"Q", print_strict(q)}}) {
            for (std::size_t at; (at = text.find(from)) != std::string::npos;) text.replace(at, 1, to);
        }
        const Formula f = parse_sugar(text);
        ASSERT_TRUE(is_tautology(f)) << text;
        EXPECT_FALSE(search_counterexample(f, 8)) << text;
    }
}

TEST(SubstitutionLemma, Examples) {
    // φ = ∀x((x∈y)∨(y∈x)), y ⇝ z with x, y, z = x1, x2, x3.
    const Formula phi = parse("forall x1 ((x1 in x2) or (x2 in x1))");
    testing::Rng rng(27);
    for (std::uint64_t i = 1; i <= 6; ++i) {
        const HFSet A = hf_from_index({i});
        for (int t = 0; t < 10; ++t) {
            const Assignment sigma = random_assignment(rng, A, {x2, x3});
            EXPECT_TRUE(substitution_lemma_check(A, phi, x2, x3, sigma));
            EXPECT_TRUE(substitution_lemma_check(A, phi, x1, x3, sigma));  // x ∉ V(φ)
        }
    }
    EXPECT_THROW(substitution_lemma_check(kOne, parse("forall x1 (x1 in x2)"), x2, x1, Assignment{{x1, kEmpty}, {x2, kEmpty}}),
                 PreconditionError);
    EXPECT_THROW(substitution_lemma_check(kOne, phi, x2, x3, Assignment{{x2, kEmpty}}), PreconditionError);
}

TEST(SubstitutionLemma, Randomized) {
    testing::Rng rng(28);
    int done = 0;
    while (done < 1000) {
        const Formula f = testing::random_formula(rng, 5);
        const Var x = testing::random_var(rng, 4), y = testing::random_var(rng, 4);
        if (!is_free_for(y, x, f)) continue;
        const HFSet A = testing::random_model(rng, 12);
        auto vars = free_vars(f);
        vars.insert(y);
        ASSERT_TRUE(substitution_lemma_check(A, f, x, y, random_assignment(rng, A, vars)));
        ++done;
    }
}

TEST(Abbreviations, MatchTheirIntendedTruthTables) {
    const Formula p = parse("x1 in x2"), q = parse("x2 = x3");
    for (std::uint64_t i = 1; i <= 6; ++i) {
        const HFSet A = hf_from_index({i});
        for_each_assignment(A, {x1, x2, x3}, [&](const Assignment& s) {
            const bool a = eval(A, p, s), b = eval(A, q, s);
            EXPECT_EQ(eval(A, conj(p, q), s), a && b);
            EXPECT_EQ(eval(A, implies(p, q), s), !a || b);
            EXPECT_EQ(eval(A, iff(p, q), s), a == b);
            bool some = false;
            for (const HFSet& e : A.elements()) some = some || eval(A, p, s.update(x1, e));
            EXPECT_EQ(eval(A, exists(x1, p), s), some);
            return true;
        });
    }
}

TEST(AssignmentLiteral, ParseAndPrint) {
    EXPECT_EQ(parse_assignment(""), Assignment{});
    EXPECT_EQ(parse_assignment("x1 := {}; x2 := {{}}"), (Assignment{{x1, kEmpty}, {x2, kOne}}));
    EXPECT_EQ(parse_assignment("x3:=2;"), (Assignment{{x3, nat_to_hf(2)}}));
    EXPECT_EQ(print_assignment(Assignment{{x1, kEmpty}, {x2, kOne}}), "x1 := {}; x2 := {{}}");
    EXPECT_THROW(parse_assignment("x1 = {}"), ParseError);
    EXPECT_THROW(parse_assignment("x1 := {}; x1 := {}"), ParseError);
    EXPECT_THROW(parse_assignment("x1 := {"), ParseError);
}

}  // namespace
}  // namespace fol
