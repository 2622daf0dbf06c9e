#include "pathlearn/tree_learn.hpp"

#include <algorithm>
#include <optional>

namespace pathlearn {

double WeightMatrix::path_score(const Order& order) const {
    if (order.empty()) return 0.0;
    double total = root(order[0]);
    for (std::size_t t = 1; t < order.size(); ++t) total += arc(order[t - 1], order[t]);
    return total;
}

double WeightMatrix::branching_score(const Branching& b) const {
    double total = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) total += b.parent()[i] ? arc(*b.parent()[i], i) : root(i);
    return total;
}

WeightMatrix build_weights(Criterion criterion, const DiscreteDataset& data) {
    const std::size_t n = data.variable_count();
    WeightMatrix w(n, criterion);
    const auto& cards = data.cardinalities();
    for (std::size_t i = 0; i < n; ++i) {
        w.root(i) = local_score(criterion, compute_stats(data, i, {}), cards).value;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const std::size_t parent[] = {j};
            w.arc(j, i) = local_score(criterion, compute_stats(data, i, parent), cards).value;
        }
    }
    return w;
}

namespace {

struct Arc {
    std::size_t from;
    std::size_t to;
    double weight;
    std::size_t id;  // index into the caller's arc list
};

// Chu-Liu/Edmonds maximum spanning arborescence rooted at `root` over
// vertices 0..n-1. Every non-root vertex must have an incoming arc.
// Returns, per vertex, the id of its chosen incoming arc. Among equal-weight
// candidates the arc listed first wins.
std::vector<std::optional<std::size_t>> max_arborescence(std::size_t n, std::size_t root, const std::vector<Arc>& arcs) {
    std::vector<std::optional<std::size_t>> best(n);  // position in `arcs`
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto& a = arcs[k];
        if (a.to == root || a.from == a.to) continue;
        if (!best[a.to] || a.weight > arcs[*best[a.to]].weight) best[a.to] = k;
    }

    // find cycles in the best-incoming graph
    std::vector<std::size_t> component(n, n);
    std::vector<int> mark(n, -1);
    std::size_t components = 0;
    std::vector<std::vector<std::size_t>> cycles;
    for (std::size_t start = 0; start < n; ++start) {
        std::size_t v = start;
        while (mark[v] == -1 && v != root) {
            mark[v] = static_cast<int>(start);
            v = arcs[*best[v]].from;
        }
        if (v != root && mark[v] == static_cast<int>(start) && component[v] == n) {
            std::vector<std::size_t> cycle;
            std::size_t u = v;
            do {
                cycle.push_back(u);
                component[u] = components;
                u = arcs[*best[u]].from;
            } while (u != v);
            cycles.push_back(std::move(cycle));
            ++components;
        }
    }

    std::vector<std::optional<std::size_t>> chosen(n);
    if (cycles.empty()) {
        for (std::size_t v = 0; v < n; ++v)
            if (best[v]) chosen[v] = arcs[*best[v]].id;
        return chosen;
    }

    for (std::size_t v = 0; v < n; ++v) {
        if (component[v] == n) component[v] = components++;
    }

    // contracted graph: arcs entering a cycle are reweighted by the cycle arc they displace
    std::vector<Arc> contracted;
    std::vector<std::size_t> origin;  // contracted arc -> position in `arcs`
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto& a = arcs[k];
        const auto cu = component[a.from];
        const auto cv = component[a.to];
        if (cu == cv || a.to == root) continue;
        double w = a.weight;
        if (cv < cycles.size()) w -= arcs[*best[a.to]].weight;
        contracted.push_back({cu, cv, w, contracted.size()});
        origin.push_back(k);
    }
    auto sub = max_arborescence(components, component[root], contracted);

    std::vector<std::optional<std::size_t>> entering(n);  // position in `arcs`
    for (std::size_t c = 0; c < components; ++c) {
        if (sub[c]) {
            const auto k = origin[*sub[c]];
            entering[arcs[k].to] = k;
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (v == root) continue;
        if (component[v] < cycles.size()) {
            chosen[v] = entering[v] ? arcs[*entering[v]].id : arcs[*best[v]].id;
        } else {
            chosen[v] = arcs[*entering[v]].id;
        }
    }
    return chosen;
}

}  // namespace

BranchingResult learn_optimal_branching(const WeightMatrix& weights) {
    const std::size_t n = weights.size();
    // Virtual root n; its arcs carry weight 0 (child stays a root) and are
    // listed first so a zero-gain arc never displaces them.
    std::vector<Arc> arcs;
    std::vector<std::optional<std::size_t>> parent_of_arc;
    for (std::size_t i = 0; i < n; ++i) {
        arcs.push_back({n, i, 0.0, arcs.size()});
        parent_of_arc.push_back(std::nullopt);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            arcs.push_back({j, i, weights.delta(j, i), arcs.size()});
            parent_of_arc.push_back(j);
        }
    }
    auto chosen = max_arborescence(n + 1, n, arcs);
    std::vector<Branching::Parent> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = parent_of_arc[*chosen[i]];
    Branching b(std::move(parent));
    const double score = weights.branching_score(b);
    return {std::move(b), {score, weights.criterion()}};
}

BranchingResult learn_optimal_spanning_tree(const WeightMatrix& weights) {
    const std::size_t n = weights.size();
    std::vector<Arc> arcs;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i != j) arcs.push_back({j, i, weights.delta(j, i), arcs.size()});
        }
    }
    std::optional<BranchingResult> best;
    for (std::size_t root = 0; root < n; ++root) {
        auto chosen = max_arborescence(n, root, arcs);
        std::vector<Branching::Parent> parent(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (chosen[i]) parent[i] = arcs[*chosen[i]].from;
        }
        Branching b(std::move(parent));
        const double score = weights.branching_score(b);
        if (!best || score > best->score.value) best = BranchingResult{std::move(b), {score, weights.criterion()}};
    }
    if (!best) return {Branching({}), {0.0, weights.criterion()}};
    return std::move(*best);
}

}  // namespace pathlearn
