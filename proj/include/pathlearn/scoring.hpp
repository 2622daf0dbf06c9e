#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathlearn/dataset.hpp"

namespace pathlearn {

enum class Criterion { ml, mdl, bayes };

inline constexpr std::array<Criterion, 3> all_criteria{Criterion::ml, Criterion::mdl, Criterion::bayes};

/// "ml", "mdl" or "bayes".
std::string_view to_string(Criterion c);
std::optional<Criterion> parse_criterion(std::string_view token);

/// A local or total score in natural-log units. Larger is better for every criterion.
struct ScoreValue {
    double value = 0.0;
    Criterion criterion = Criterion::ml;
};

/// Per-variable parent sets. Entry i lists the parents of variable i.
using ParentMap = std::vector<std::vector<std::size_t>>;

/// Maximized log-likelihood sum N(x,c) ln(N(x,c)/N(c)), i.e. -N H_D(X | pa).
/// Always <= 0; empty cells contribute 0.
ScoreValue local_score_ml(const SufficientStats& stats);

/// Number of free parameters of the family: #(pa) * (#(X) - 1).
double family_dimension(const SufficientStats& stats, std::span<const int> cardinalities);

/// ML minus #(pa) (#(X) - 1) ln(N) / 2. Throws DomainError when N = 0.
ScoreValue local_score_mdl(const SufficientStats& stats, std::span<const int> cardinalities);

/// Cooper-Herskovits marginal likelihood with uniform Dirichlet parameters:
/// sum over configurations c of lnG(r) - lnG(r + N(c)) + sum_v lnG(N(v,c) + 1),
/// r = #(X). The uniform structure prior is dropped.
ScoreValue local_score_bayes(const SufficientStats& stats, std::span<const int> cardinalities);

ScoreValue local_score(Criterion criterion, const SufficientStats& stats, std::span<const int> cardinalities);

/// One local score per variable, in variable order. Throws InvalidStructure
/// when the map has the wrong size or a parent set contains its own variable
/// or an out-of-range index.
std::vector<ScoreValue> local_scores(Criterion criterion, const DiscreteDataset& data, const ParentMap& structure);

/// Sum of the local scores of `structure`. No acyclicity requirement.
ScoreValue score_structure(Criterion criterion, const DiscreteDataset& data, const ParentMap& structure);

}  // namespace pathlearn
