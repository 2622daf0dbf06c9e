#include "pathlearn/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pathlearn/errors.hpp"
#include "pathlearn/tree_learn.hpp"

namespace pathlearn {

namespace {

// (X_i, X_j) values of the eight cases added for one pair.
constexpr std::array<std::array<int, 2>, 8> edge_block{{{1, 1}, {1, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 2}, {2, 2}}};
constexpr std::array<std::array<int, 2>, 8> non_edge_block{
    {{1, 1}, {1, 1}, {1, 2}, {1, 2}, {2, 1}, {2, 1}, {2, 2}, {2, 2}}};

bool close(double a, double b) {
    return std::abs(a - b) <= score_tolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

}  // namespace

DiscreteDataset generate_reduction(const HpInstance& g) {
    const std::size_t n = g.vertex_count();
    if (n < 2) throw DomainError("reduction needs at least 2 vertices, got " + std::to_string(n));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
    std::vector<std::vector<int>> cases;
    cases.reserve(4 * n * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& block = g.has_edge(i, j) ? edge_block : non_edge_block;
            for (const auto& [xi, xj] : block) {
                std::vector<int> row(n, 0);
                row[i] = xi;
                row[j] = xj;
                cases.push_back(std::move(row));
            }
        }
    }
    return DiscreteDataset(std::move(names), std::vector<int>(n, 3), std::move(cases));
}

std::array<std::array<Count, 3>, 3> expected_pair_table(std::size_t n, bool edge) {
    const auto m = static_cast<Count>(n);
    const Count corner = 4 * (m * m - 5 * m + 6);
    const Count border = 4 * (m - 2);
    const Count same = edge ? 3 : 2;
    const Count differ = edge ? 1 : 2;
    return {{{corner, border, border}, {border, same, differ}, {border, differ, same}}};
}

std::array<std::array<Count, 3>, 3> observed_pair_table(const DiscreteDataset& data, std::size_t i, std::size_t j) {
    std::array<std::array<Count, 3>, 3> table{};
    for (std::size_t r = 0; r < data.case_count(); ++r) {
        const int a = data.value(r, i);
        const int b = data.value(r, j);
        if (a < 3 && b < 3) ++table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    return table;
}

bool ReductionReport::all_conditions_pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.passed; });
}

ReductionReport verify_reduction(const DiscreteDataset& data, const HpInstance& g, Criterion criterion) {
    const std::size_t n = g.vertex_count();
    if (data.variable_count() != n)
        throw InvalidQuery("dataset has " + std::to_string(data.variable_count()) + " variables, graph has " +
                           std::to_string(n) + " vertices");

    ReductionReport report;
    report.constants.criterion = criterion;
    auto& [card, marginal, two_values, symmetry, edge_iff] = report.conditions;

    const auto& cards = data.cardinalities();
    card.passed = std::all_of(cards.begin(), cards.end(), [&](int c) { return c == cards.front(); });
    card.detail = card.passed ? "all cardinalities equal " + std::to_string(cards.empty() ? 0 : cards.front())
                              : "cardinalities differ";

    if (n == 0) {
        for (auto& c : report.conditions) c = {true, true, "empty instance"};
        return report;
    }

    const auto weights = build_weights(criterion, data);

    report.constants.gamma = weights.root(0);
    marginal.passed = true;
    for (std::size_t i = 1; i < n; ++i) {
        if (!close(weights.root(i), weights.root(0))) {
            marginal.passed = false;
            marginal.detail = "LocalScore(X" + std::to_string(i + 1) + ", {}) = " + fmt(weights.root(i)) +
                              " differs from " + fmt(weights.root(0));
            break;
        }
    }
    if (marginal.passed) marginal.detail = "gamma = " + fmt(report.constants.gamma);

    // symmetry
    symmetry.passed = true;
    for (std::size_t i = 0; i < n && symmetry.passed; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!close(weights.arc(j, i), weights.arc(i, j))) {
                symmetry.passed = false;
                symmetry.detail = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " +
                                  fmt(weights.arc(j, i)) + " vs " + fmt(weights.arc(i, j));
                break;
            }
        }
    }
    if (symmetry.passed) symmetry.detail = "all pairwise scores symmetric";

    // distinct pairwise values over ordered pairs, split by pair type
    std::vector<double> distinct;
    std::optional<double> edge_lo, edge_hi, non_lo, non_hi;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double s = weights.arc(j, i);
            if (std::none_of(distinct.begin(), distinct.end(), [&](double d) { return close(d, s); }))
                distinct.push_back(s);
            auto& lo = g.has_edge(i, j) ? edge_lo : non_lo;
            auto& hi = g.has_edge(i, j) ? edge_hi : non_hi;
            lo = lo ? std::min(*lo, s) : s;
            hi = hi ? std::max(*hi, s) : s;
        }
    }
    if (edge_lo) report.constants.beta = *edge_lo;
    if (non_lo) report.constants.alpha = *non_lo;
    if (report.constants.beta) report.constants.k = report.constants.gamma + static_cast<double>(n - 1) * *report.constants.beta;
    if (report.constants.alpha && report.constants.beta)
        report.separation = *report.constants.beta - *report.constants.alpha;

    const bool both_types = edge_lo.has_value() && non_lo.has_value();
    if (n < 2) {
        two_values = {true, true, "no pairs"};
    } else if (distinct.size() > 2) {
        two_values = {false, false, std::to_string(distinct.size()) + " distinct pairwise scores"};
    } else if (!both_types) {
        two_values = {true, true, std::string("only ") + (edge_lo ? "edge" : "non-edge") + " pairs present"};
    } else if (*non_hi < *edge_lo) {
        two_values = {true, false, "alpha = " + fmt(*report.constants.alpha) + " < beta = " + fmt(*report.constants.beta)};
    } else {
        two_values = {false, false, "non-edge score " + fmt(*non_hi) + " not below edge score " + fmt(*edge_lo)};
    }

    if (n < 2 || !both_types) {
        edge_iff = {true, true, "only one pair type present"};
    } else {
        edge_iff.passed = true;
        const double beta = *report.constants.beta;
        for (std::size_t i = 0; i < n && edge_iff.passed; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const bool is_beta = close(weights.arc(j, i), beta);
                if (is_beta != g.has_edge(i, j)) {
                    edge_iff.passed = false;
                    edge_iff.detail = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") " +
                                      (g.has_edge(i, j) ? "is an edge but scores " : "is not an edge but scores beta ") +
                                      fmt(weights.arc(j, i));
                    break;
                }
            }
        }
        if (edge_iff.passed) edge_iff.detail = "beta exactly on edge pairs";
    }

    report.count_tables_match = data.case_count() == 4 * n * (n - 1);
    for (std::size_t i = 0; i < n && report.count_tables_match; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (observed_pair_table(data, i, j) != expected_pair_table(n, g.has_edge(i, j))) {
                report.count_tables_match = false;
                break;
            }
        }
    }
    return report;
}

HpDecision decide_hp(const HpInstance& g, Criterion criterion, std::size_t exact_limit) {
    const std::size_t n = g.vertex_count();
    const auto data = generate_reduction(g);
    HpDecision decision;
    decision.report = verify_reduction(data, g, criterion);
    if (g.edge_count() == 0) return decision;
    if (n > exact_limit)
        throw LimitExceeded("exact path solver refused: " + std::to_string(n) + " vertices exceeds limit " +
                                std::to_string(exact_limit),
                            n, exact_limit);

    const auto result = solve_path_exact(build_weights(criterion, data), exact_limit);
    decision.best_score = result.best_score.value;
    decision.witness = result.best_path.order();
    decision.yes = is_hamiltonian_path(g, result.best_path.order());

    const double k = *decision.report.constants.k;
    const double tol = score_tolerance * std::max(1.0, std::abs(k));
    const bool reaches_k = result.best_score.value >= k - tol;
    decision.threshold_consistent = decision.yes == reaches_k && (!decision.yes || std::abs(result.best_score.value - k) <= tol);
    return decision;
}

}  // namespace pathlearn
