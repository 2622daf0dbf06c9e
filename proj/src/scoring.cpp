#include "pathlearn/scoring.hpp"

#include <cmath>
#include <set>

#include "pathlearn/errors.hpp"

namespace pathlearn {

std::string_view to_string(Criterion c) {
    switch (c) {
        case Criterion::ml: return "ml";
        case Criterion::mdl: return "mdl";
        case Criterion::bayes: return "bayes";
    }
    return "unknown";
}

std::optional<Criterion> parse_criterion(std::string_view token) {
    for (auto c : all_criteria) {
        if (to_string(c) == token) return c;
    }
    return std::nullopt;
}

ScoreValue local_score_ml(const SufficientStats& stats) {
    double sum = 0.0;
    for (const auto& [config, counts] : stats.joint) {
        Count parent_total = 0;
        for (auto c : counts) parent_total += c;
        if (parent_total == 0) continue;
        const double denom = static_cast<double>(parent_total);
        for (auto c : counts) {
            if (c == 0) continue;
            const double k = static_cast<double>(c);
            sum += k * std::log(k / denom);
        }
    }
    return {sum, Criterion::ml};
}

double family_dimension(const SufficientStats& stats, std::span<const int> cardinalities) {
    double configs = 1.0;
    for (auto p : stats.parents) configs *= static_cast<double>(cardinalities[p]);
    return configs * static_cast<double>(cardinalities[stats.target] - 1);
}

ScoreValue local_score_mdl(const SufficientStats& stats, std::span<const int> cardinalities) {
    if (stats.total <= 0) throw DomainError("MDL penalty undefined for an empty dataset (ln 0)");
    const double penalty = family_dimension(stats, cardinalities) * std::log(static_cast<double>(stats.total)) / 2.0;
    return {local_score_ml(stats).value - penalty, Criterion::mdl};
}

ScoreValue local_score_bayes(const SufficientStats& stats, std::span<const int> cardinalities) {
    const double r = static_cast<double>(cardinalities[stats.target]);
    const double lg_r = std::lgamma(r);
    double sum = 0.0;
    for (const auto& [config, counts] : stats.joint) {
        Count parent_total = 0;
        double cells = 0.0;
        for (auto c : counts) {
            parent_total += c;
            cells += std::lgamma(static_cast<double>(c) + 1.0);
        }
        if (parent_total == 0) continue;
        sum += lg_r - std::lgamma(r + static_cast<double>(parent_total)) + cells;
    }
    return {sum, Criterion::bayes};
}

ScoreValue local_score(Criterion criterion, const SufficientStats& stats, std::span<const int> cardinalities) {
    switch (criterion) {
        case Criterion::ml: return local_score_ml(stats);
        case Criterion::mdl: return local_score_mdl(stats, cardinalities);
        case Criterion::bayes: return local_score_bayes(stats, cardinalities);
    }
    throw std::logic_error("unhandled criterion");
}

std::vector<ScoreValue> local_scores(Criterion criterion, const DiscreteDataset& data, const ParentMap& structure) {
    const std::size_t n = data.variable_count();
    if (structure.size() != n)
        throw InvalidStructure("structure lists " + std::to_string(structure.size()) + " variables, dataset has " +
                               std::to_string(n));
    std::vector<ScoreValue> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::set<std::size_t> distinct;
        for (auto p : structure[i]) {
            if (p == i) throw InvalidStructure("variable " + std::to_string(i) + " is its own parent");
            if (p >= n) throw InvalidStructure("parent index " + std::to_string(p) + " out of range");
            if (!distinct.insert(p).second) throw InvalidStructure("duplicate parent " + std::to_string(p));
        }
        out.push_back(local_score(criterion, compute_stats(data, i, structure[i]), data.cardinalities()));
    }
    return out;
}

ScoreValue score_structure(Criterion criterion, const DiscreteDataset& data, const ParentMap& structure) {
    double total = 0.0;
    for (const auto& s : local_scores(criterion, data, structure)) total += s.value;
    return {total, criterion};
}

}  // namespace pathlearn
