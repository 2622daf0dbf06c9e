#include "pathlearn/path_learn.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>

#include "pathlearn/errors.hpp"

namespace pathlearn {

namespace {

PathSearchResult finish(const WeightMatrix& weights, Order order, double score, bool exact) {
    const auto bound = learn_optimal_branching(weights).score;
    PathSearchResult result;
    result.best_path = PathStructure(std::move(order));
    result.best_score = {score, weights.criterion()};
    result.upper_bound = bound;
    result.gap = std::max(0.0, bound.value - score);
    result.exact = exact;
    return result;
}

}  // namespace

PathSearchResult solve_path_exact(const WeightMatrix& weights, std::size_t limit) {
    const std::size_t n = weights.size();
    if (n > limit || n >= 63)
        throw LimitExceeded("exact path solver refused: " + std::to_string(n) + " variables exceeds limit " +
                                std::to_string(limit) + "; use the heuristic solver",
                            n, limit);
    if (n == 0) return finish(weights, {}, 0.0, true);

    constexpr double unset = -std::numeric_limits<double>::infinity();
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<double> best(subsets * n, unset);
    std::vector<std::uint8_t> prev(subsets * n, 0);
    auto cell = [n](std::size_t set, std::size_t v) { return set * n + v; };

    for (std::size_t v = 0; v < n; ++v) best[cell(std::size_t{1} << v, v)] = weights.root(v);

    for (std::size_t set = 1; set < subsets; ++set) {
        if ((set & (set - 1)) == 0) continue;
        for (std::size_t v = 0; v < n; ++v) {
            if (!(set >> v & 1)) continue;
            const std::size_t rest = set & ~(std::size_t{1} << v);
            double top = unset;
            std::size_t arg = 0;
            for (std::size_t u = 0; u < n; ++u) {
                if (!(rest >> u & 1)) continue;
                const double candidate = best[cell(rest, u)] + weights.arc(u, v);
                if (candidate > top) {
                    top = candidate;
                    arg = u;
                }
            }
            best[cell(set, v)] = top;
            prev[cell(set, v)] = static_cast<std::uint8_t>(arg);
        }
    }

    const std::size_t full = subsets - 1;
    std::size_t last = 0;
    for (std::size_t v = 1; v < n; ++v) {
        if (best[cell(full, v)] > best[cell(full, last)]) last = v;
    }
    const double score = best[cell(full, last)];

    Order order(n);
    std::size_t set = full;
    std::size_t v = last;
    for (std::size_t t = n; t-- > 0;) {
        order[t] = v;
        const std::size_t u = prev[cell(set, v)];
        set &= ~(std::size_t{1} << v);
        v = u;
    }
    return finish(weights, std::move(order), score, true);
}

PathSearchResult solve_path_brute(const WeightMatrix& weights, std::size_t limit) {
    const std::size_t n = weights.size();
    if (n > limit)
        throw LimitExceeded("brute-force path search refused: " + std::to_string(n) + " variables exceeds limit " +
                                std::to_string(limit),
                            n, limit);
    Order order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Order best_order = order;
    double best = weights.path_score(order);
    while (std::next_permutation(order.begin(), order.end())) {
        const double s = weights.path_score(order);
        if (s > best) {
            best = s;
            best_order = order;
        }
    }
    return finish(weights, std::move(best_order), best, true);
}

namespace {

Order greedy_from(const WeightMatrix& w, std::size_t start) {
    const std::size_t n = w.size();
    std::vector<bool> used(n, false);
    used[start] = true;
    std::vector<std::size_t> front{start};  // reversed prefix: front.back() is the current root
    Order back;                              // suffix after start
    for (std::size_t step = 1; step < n; ++step) {
        const std::size_t head = front.back();
        const std::size_t tail = back.empty() ? start : back.back();
        double top = -std::numeric_limits<double>::infinity();
        std::size_t pick = 0;
        bool prepend = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            const double append_gain = w.arc(tail, v);
            if (append_gain > top) {
                top = append_gain;
                pick = v;
                prepend = false;
            }
            const double prepend_gain = w.root(v) + w.arc(v, head) - w.root(head);
            if (prepend_gain > top) {
                top = prepend_gain;
                pick = v;
                prepend = true;
            }
        }
        used[pick] = true;
        (prepend ? front : back).push_back(pick);
    }
    Order order(front.rbegin(), front.rend());
    order.insert(order.end(), back.begin(), back.end());
    return order;
}

// Best-improvement descent over segment reversals and single-vertex moves.
double improve(const WeightMatrix& w, Order& order) {
    const std::size_t n = order.size();
    double current = w.path_score(order);
    Order candidate;
    while (true) {
        double top = current;
        Order best_move;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                candidate = order;
                std::reverse(candidate.begin() + static_cast<std::ptrdiff_t>(i),
                             candidate.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                double s = w.path_score(candidate);
                if (s > top) {
                    top = s;
                    best_move = candidate;
                }
            }
        }
        for (std::size_t from = 0; from < n; ++from) {
            for (std::size_t to = 0; to < n; ++to) {
                if (from == to) continue;
                candidate = order;
                const std::size_t v = candidate[from];
                candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(from));
                candidate.insert(candidate.begin() + static_cast<std::ptrdiff_t>(to), v);
                double s = w.path_score(candidate);
                if (s > top) {
                    top = s;
                    best_move = candidate;
                }
            }
        }
        if (best_move.empty()) return current;
        order = std::move(best_move);
        current = top;
    }
}

}  // namespace

PathSearchResult solve_path_heuristic(const WeightMatrix& weights, const HeuristicOptions& options) {
    const std::size_t n = weights.size();
    if (n == 0) return finish(weights, {}, 0.0, false);

    Order best_order;
    double best = -std::numeric_limits<double>::infinity();
    auto consider = [&](Order order) {
        const double s = improve(weights, order);
        if (s > best) {
            best = s;
            best_order = std::move(order);
        }
    };
    for (std::size_t start = 0; start < n; ++start) consider(greedy_from(weights, start));

    std::mt19937_64 rng(options.seed);
    Order shuffled(n);
    for (std::size_t r = 0; r < options.restarts; ++r) {
        std::iota(shuffled.begin(), shuffled.end(), std::size_t{0});
        // Fisher-Yates with explicit draws; std::shuffle is not portable across standard libraries
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(shuffled[i - 1], shuffled[j]);
        }
        consider(shuffled);
    }
    return finish(weights, std::move(best_order), best, false);
}

}  // namespace pathlearn
