#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pathlearn/dataset.hpp"
#include "pathlearn/path_learn.hpp"
#include "pathlearn/scoring.hpp"
#include "pathlearn/structures.hpp"

namespace pathlearn {

/// Builds the ternary dataset whose optimal path model encodes Hamiltonian
/// path existence in `g`: for every pair i < j (lexicographic), eight cases
/// with all other variables 0. Edge pairs get (1,1)x3 (1,2) (2,1) (2,2)x3,
/// non-edge pairs get two of each. Throws DomainError when n < 2.
DiscreteDataset generate_reduction(const HpInstance& g);

/// Expected 3x3 joint count table (rows X_i value, columns X_j value) for a
/// pair of the reduction dataset.
std::array<std::array<Count, 3>, 3> expected_pair_table(std::size_t n, bool edge);

/// Observed 3x3 joint count table of variables i and j.
std::array<std::array<Count, 3>, 3> observed_pair_table(const DiscreteDataset& data, std::size_t i, std::size_t j);

struct ReductionConstants {
    Criterion criterion = Criterion::ml;
    double gamma = 0.0;
    /// Non-edge pairwise score; absent when every pair is an edge.
    std::optional<double> alpha;
    /// Edge pairwise score; absent when the graph has no edges.
    std::optional<double> beta;
    /// gamma + (n - 1) beta; absent with beta.
    std::optional<double> k;
};

struct ConditionResult {
    bool passed = false;
    /// True when the condition held only because one pair type is missing.
    bool vacuous = false;
    std::string detail;
};

struct ReductionReport {
    ReductionConstants constants;
    /// Conditions (i) through (v), in order.
    std::array<ConditionResult, 5> conditions;
    bool count_tables_match = false;
    /// beta - alpha when both exist.
    std::optional<double> separation;

    bool all_conditions_pass() const;
};

/// Relative tolerance used when comparing measured scores for equality.
inline constexpr double score_tolerance = 1e-9;

/// Measures every marginal and pairwise local score of `data` and checks the
/// five reduction conditions against `g`. Failures are reported, not thrown.
/// Throws InvalidQuery only when the dataset dimension differs from g.
ReductionReport verify_reduction(const DiscreteDataset& data, const HpInstance& g, Criterion criterion);

struct HpDecision {
    bool yes = false;
    /// Optimal path order; a Hamiltonian path of g when `yes`.
    std::optional<Order> witness;
    std::optional<double> best_score;
    /// yes <=> best_score >= k - tol, and best_score ~ k when yes.
    bool threshold_consistent = true;
    ReductionReport report;
};

/// Reduces g, verifies the dataset, solves the optimal path exactly and reads
/// the answer off the optimal order: yes iff every consecutive pair is an edge.
HpDecision decide_hp(const HpInstance& g, Criterion criterion, std::size_t exact_limit = default_exact_limit);

}  // namespace pathlearn
