#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pathlearn/errors.hpp"
#include "pathlearn/reduction.hpp"
#include "pathlearn/scoring.hpp"
#include "pathlearn/structures.hpp"
#include "test_support.hpp"

using namespace pathlearn;

namespace {

SufficientStats table(std::size_t parent_count, int target_card, std::map<std::vector<int>, std::vector<Count>> joint) {
    SufficientStats s;
    s.target = 0;
    for (std::size_t p = 0; p < parent_count; ++p) s.parents.push_back(p + 1);
    s.target_cardinality = target_card;
    for (const auto& [c, counts] : joint)
        for (auto k : counts) s.total += k;
    s.joint = std::move(joint);
    return s;
}

}  // namespace

TEST(Criterion, TokensRoundTrip) {
    for (auto c : all_criteria) EXPECT_EQ(parse_criterion(to_string(c)), c);
    EXPECT_FALSE(parse_criterion("bic").has_value());
    EXPECT_EQ(to_string(Criterion::bayes), "bayes");
}

TEST(LocalScoreMl, ConstantTargetScoresZero) {
    DiscreteDataset d({"A", "B"}, {2, 3}, {{1, 0}, {1, 2}, {1, 1}, {1, 2}});
    const std::size_t parent[] = {1};
    EXPECT_EQ(local_score_ml(compute_stats(d, 0, {})).value, 0.0);
    EXPECT_EQ(local_score_ml(compute_stats(d, 0, parent)).value, 0.0);
}

TEST(LocalScoreMl, TriangleMarginal) {
    auto d = generate_reduction(HpInstance::complete(3));
    // 24 ln(1/3)
    EXPECT_NEAR(local_score_ml(compute_stats(d, 0, {})).value, -26.366694928034633, 1e-12);
}

TEST(LocalScoreMl, EdgeBlockConditionalRows) {
    // rows (3,1) and (1,3) of the edge table: 3 ln(3/4) + ln(1/4) + ln(1/4) + 3 ln(3/4)
    auto s = table(1, 3, {{{1}, {0, 3, 1}}, {{2}, {0, 1, 3}}});
    EXPECT_NEAR(local_score_ml(s).value, -4.498681156950466, 1e-12);
}

TEST(LocalScoreMdl, Penalties) {
    auto d = generate_reduction(HpInstance::complete(3));
    auto marginal = compute_stats(d, 0, {});
    // 1 * 2 * ln 24 / 2
    EXPECT_NEAR(local_score_ml(marginal).value - local_score_mdl(marginal, d.cardinalities()).value,
                3.1780538303479458, 1e-12);

    // binary target, one ternary parent, N = 10
    auto s = table(1, 2, {{{0}, {3, 1}}, {{1}, {2, 2}}, {{2}, {1, 1}}});
    const std::vector<int> cards{2, 3};
    EXPECT_NEAR(local_score_ml(s).value - local_score_mdl(s, cards).value, 3.4538776394910684, 1e-12);
    EXPECT_DOUBLE_EQ(family_dimension(s, cards), 3.0);
}

TEST(LocalScoreMdl, SingletonCardinalityHasNoPenalty) {
    DiscreteDataset d({"A", "B"}, {1, 2}, {{0, 0}, {0, 1}, {0, 1}});
    const std::size_t parent[] = {1};
    auto s = compute_stats(d, 0, parent);
    EXPECT_EQ(local_score_mdl(s, d.cardinalities()).value, local_score_ml(s).value);
}

TEST(LocalScoreMdl, SingleCaseHasNoPenalty) {
    DiscreteDataset d({"A", "B"}, {3, 3}, {{2, 1}});
    const std::size_t parent[] = {1};
    auto s = compute_stats(d, 0, parent);
    EXPECT_EQ(local_score(Criterion::mdl, s, d.cardinalities()).value, local_score_ml(s).value);
}

TEST(LocalScoreMdl, EmptyDatasetIsAnError) {
    DiscreteDataset d({"A"}, {2}, {});
    EXPECT_THROW(local_score_mdl(compute_stats(d, 0, {}), d.cardinalities()), DomainError);
}

TEST(LocalScoreBayes, EmptyDatasetScoresZero) {
    DiscreteDataset d({"A", "B"}, {3, 2}, {});
    const std::size_t parent[] = {1};
    EXPECT_EQ(local_score_bayes(compute_stats(d, 0, {}), d.cardinalities()).value, 0.0);
    EXPECT_EQ(local_score_bayes(compute_stats(d, 0, parent), d.cardinalities()).value, 0.0);
}

TEST(LocalScoreBayes, TriangleMarginalMatchesRationalOracle) {
    auto d = generate_reduction(HpInstance::complete(3));
    const double oracle = oracle::bayes_rational_oracle({{8, 8, 8}}, 3);
    // ln(2! 8! 8! 8! / 26!), frozen from the rational oracle
    EXPECT_NEAR(oracle, -28.754745872206307, 1e-12);
    EXPECT_NEAR(local_score_bayes(compute_stats(d, 0, {}), d.cardinalities()).value, oracle, 1e-9);
}

TEST(LocalScoreBayes, EmptyConfigurationContributesNothing) {
    auto s = table(1, 2, {{{0}, {1, 1}}, {{1}, {0, 0}}});
    const std::vector<int> cards{2, 2};
    EXPECT_NEAR(local_score_bayes(s, cards).value, -std::log(6.0), 1e-12);
}

TEST(LocalScoreBayes, MatchesRationalOracleOnSmallTables) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        const int r = 1 + static_cast<int>(rng() % 4);
        const int configs = 1 + static_cast<int>(rng() % 4);
        const long budget = static_cast<long>(rng() % 21);
        std::map<std::vector<int>, std::vector<Count>> joint;
        std::vector<std::vector<long>> oracle_counts(static_cast<std::size_t>(configs), std::vector<long>(r, 0));
        for (long k = 0; k < budget; ++k) {
            const auto c = static_cast<std::size_t>(rng() % static_cast<unsigned>(configs));
            const auto v = static_cast<std::size_t>(rng() % static_cast<unsigned>(r));
            ++oracle_counts[c][v];
        }
        for (int c = 0; c < configs; ++c) {
            std::vector<Count> counts(oracle_counts[static_cast<std::size_t>(c)].begin(),
                                      oracle_counts[static_cast<std::size_t>(c)].end());
            joint.emplace(std::vector<int>{c}, counts);
        }
        auto s = table(1, r, joint);
        const std::vector<int> cards{r, configs};
        EXPECT_NEAR(local_score(Criterion::bayes, s, cards).value, oracle::bayes_rational_oracle(oracle_counts, r), 1e-9)
            << "trial " << trial;
    }
}

TEST(LocalScore, DispatchIsBitIdentical) {
    std::mt19937_64 rng(4);
    auto d = oracle::random_dataset(rng, 4, 50);
    const std::size_t parents[] = {2, 3};
    auto s = compute_stats(d, 1, parents);
    EXPECT_EQ(local_score(Criterion::ml, s, d.cardinalities()).value, local_score_ml(s).value);
    EXPECT_EQ(local_score(Criterion::mdl, s, d.cardinalities()).value, local_score_mdl(s, d.cardinalities()).value);
    EXPECT_EQ(local_score(Criterion::bayes, s, d.cardinalities()).value, local_score_bayes(s, d.cardinalities()).value);
}

TEST(LocalScore, MlMonotoneUnderParentInclusion) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
        auto d = oracle::random_dataset(rng, n, 1 + rng() % 100);
        const std::size_t target = rng() % n;
        std::vector<std::size_t> small, large;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == target) continue;
            const auto pick = rng() % 3;
            if (pick >= 1) large.push_back(v);
            if (pick == 2) small.push_back(v);
        }
        const double lo = local_score_ml(compute_stats(d, target, small)).value;
        const double hi = local_score_ml(compute_stats(d, target, large)).value;
        EXPECT_GE(hi, lo - 1e-9 * std::max(1.0, std::abs(lo)));
        EXPECT_LE(hi, 0.0);
    }
}

TEST(LocalScore, InvariantUnderParentOrderAndRowOrder) {
    std::mt19937_64 rng(8);
    auto d = oracle::random_dataset(rng, 5, 90);
    std::vector<std::vector<int>> rows;
    for (std::size_t r = 0; r < d.case_count(); ++r) rows.emplace_back(d.row(r).begin(), d.row(r).end());
    std::reverse(rows.begin(), rows.end());
    DiscreteDataset reversed(d.names(), d.cardinalities(), rows);
    const std::size_t forward[] = {1, 2, 4};
    const std::size_t shuffled[] = {4, 1, 2};
    for (auto c : all_criteria) {
        const double base = local_score(c, compute_stats(d, 0, forward), d.cardinalities()).value;
        EXPECT_NEAR(local_score(c, compute_stats(d, 0, shuffled), d.cardinalities()).value, base, 1e-9);
        EXPECT_NEAR(local_score(c, compute_stats(reversed, 0, forward), d.cardinalities()).value, base, 1e-9);
    }
}

TEST(ScoreStructure, EmptyStructureIsSumOfMarginals) {
    std::mt19937_64 rng(2);
    auto d = oracle::random_dataset(rng, 4, 40);
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) sum += local_score_ml(compute_stats(d, i, {})).value;
    EXPECT_NEAR(score_structure(Criterion::ml, d, ParentMap(4)).value, sum, 1e-12);
}

TEST(ScoreStructure, DecomposesOnRandomStructures) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
        auto d = oracle::random_dataset(rng, n, 10 + rng() % 60);
        ParentMap structure(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && rng() % 3 == 0) structure[i].push_back(j);
        for (auto c : all_criteria) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                sum += local_score(c, compute_stats(d, i, structure[i]), d.cardinalities()).value;
            EXPECT_NEAR(score_structure(c, d, structure).value, sum, 1e-9 * std::max(1.0, std::abs(sum)));
        }
    }
}

TEST(ScoreStructure, MdlIsMlMinusDimensionPenalty) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
        auto d = oracle::random_dataset(rng, n, 1 + rng() % 150);
        ParentMap structure(n);
        double dimension = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double configs = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && rng() % 3 == 0) {
                    structure[i].push_back(j);
                    configs *= d.cardinality(j);
                }
            }
            dimension += configs * (d.cardinality(i) - 1);
        }
        const double ml = score_structure(Criterion::ml, d, structure).value;
        const double mdl = score_structure(Criterion::mdl, d, structure).value;
        const double expected = ml - dimension * std::log(static_cast<double>(d.case_count())) / 2.0;
        EXPECT_NEAR(mdl, expected, 1e-9 * std::max(1.0, std::abs(expected)));
    }
}

TEST(ScoreStructure, RejectsInvalidStructures) {
    auto d = generate_reduction(HpInstance::complete(3));
    EXPECT_THROW(score_structure(Criterion::ml, d, ParentMap{{0}, {}, {}}), InvalidStructure);
    EXPECT_THROW(score_structure(Criterion::ml, d, ParentMap{{}, {}}), InvalidStructure);
    EXPECT_THROW(score_structure(Criterion::ml, d, ParentMap{{9}, {}, {}}), InvalidStructure);
}

TEST(ScoreStructure, TrianglePathScoresGammaPlusTwoBeta) {
    auto g = HpInstance::complete(3);
    auto d = generate_reduction(g);
    for (auto c : all_criteria) {
        auto report = verify_reduction(d, g, c);
        const double expected = report.constants.gamma + 2.0 * *report.constants.beta;
        const double got = score_structure(c, d, path_to_parent_map(PathStructure({0, 1, 2}))).value;
        EXPECT_NEAR(got, expected, 1e-9 * std::abs(expected)) << to_string(c);
    }
}
