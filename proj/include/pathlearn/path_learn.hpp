#pragma once

#include <cstddef>
#include <cstdint>

#include "pathlearn/structures.hpp"
#include "pathlearn/tree_learn.hpp"

namespace pathlearn {

struct PathSearchResult {
    PathStructure best_path{Order{}};
    ScoreValue best_score;
    /// Optimal branching score; no path can exceed it.
    ScoreValue upper_bound;
    /// upper_bound - best_score, floored at 0 against rounding.
    double gap = 0.0;
    bool exact = false;
};

inline constexpr std::size_t default_exact_limit = 20;
inline constexpr std::size_t default_brute_limit = 9;

/// Subset dynamic program over (visited set, last vertex). Memory is
/// 2^n * n cells; throws LimitExceeded when n > limit. Ties resolve to the
/// smaller vertex index.
PathSearchResult solve_path_exact(const WeightMatrix& weights, std::size_t limit = default_exact_limit);

/// Scores every one of the n! orders. Throws LimitExceeded when n > limit.
PathSearchResult solve_path_brute(const WeightMatrix& weights, std::size_t limit = default_brute_limit);

struct HeuristicOptions {
    /// Random-order restarts in addition to the n greedy starts.
    std::size_t restarts = 8;
    std::uint64_t seed = 0;
};

/// Greedy two-ended extension from every start vertex plus seeded random
/// orders, each improved by segment reversal and single-vertex relocation
/// until no move helps. Deterministic for a fixed seed.
PathSearchResult solve_path_heuristic(const WeightMatrix& weights, const HeuristicOptions& options = {});

}  // namespace pathlearn
