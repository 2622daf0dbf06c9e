#pragma once

#include <cstddef>
#include <vector>

#include "pathlearn/dataset.hpp"
#include "pathlearn/scoring.hpp"
#include "pathlearn/structures.hpp"

namespace pathlearn {

/// Local scores of every in-degree <= 1 family: root(i) = LocalScore(X_i, {}),
/// arc(j, i) = LocalScore(X_i, {X_j}) for j != i.
class WeightMatrix {
public:
    WeightMatrix() = default;
    WeightMatrix(std::size_t n, Criterion criterion)
        : n_(n), criterion_(criterion), root_(n, 0.0), arc_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    Criterion criterion() const noexcept { return criterion_; }

    double root(std::size_t child) const { return root_[child]; }
    double& root(std::size_t child) { return root_[child]; }
    double arc(std::size_t parent, std::size_t child) const { return arc_[parent * n_ + child]; }
    double& arc(std::size_t parent, std::size_t child) { return arc_[parent * n_ + child]; }

    /// Gain of giving `child` the parent `parent` instead of no parent.
    double delta(std::size_t parent, std::size_t child) const { return arc(parent, child) - root(child); }

    /// root(order[0]) + sum of arc(order[t-1], order[t]), accumulated left to right.
    double path_score(const Order& order) const;
    double branching_score(const Branching& b) const;

private:
    std::size_t n_ = 0;
    Criterion criterion_ = Criterion::ml;
    std::vector<double> root_;
    std::vector<double> arc_;
};

/// Evaluates all n + n(n-1) local scores.
WeightMatrix build_weights(Criterion criterion, const DiscreteDataset& data);

struct BranchingResult {
    Branching branching;
    ScoreValue score;
};

/// Maximum-weight branching (Edmonds). An arc is used only if it strictly
/// improves on leaving the child as a root.
BranchingResult learn_optimal_branching(const WeightMatrix& weights);

/// Best structure with exactly one root and every other vertex having one
/// parent: the maximum arborescence over every choice of root.
BranchingResult learn_optimal_spanning_tree(const WeightMatrix& weights);

}  // namespace pathlearn
