#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pathlearn/scoring.hpp"

namespace pathlearn {

using Order = std::vector<std::size_t>;

/// A path model stored as its vertex order; order[0] is the root and every
/// later vertex has the preceding one as its sole parent.
class PathStructure {
public:
    /// Throws InvalidStructure unless `order` is a permutation of 0..n-1.
    explicit PathStructure(Order order);

    const Order& order() const noexcept { return order_; }
    std::size_t size() const noexcept { return order_.size(); }
    std::size_t root() const { return order_.front(); }

    friend bool operator==(const PathStructure&, const PathStructure&) = default;

private:
    Order order_;
};

/// In-degree <= 1 acyclic structure; may be a forest.
class Branching {
public:
    using Parent = std::optional<std::size_t>;

    /// Throws InvalidStructure on self-parents, out-of-range parents or cycles.
    explicit Branching(std::vector<Parent> parent);

    const std::vector<Parent>& parent() const noexcept { return parent_; }
    std::size_t size() const noexcept { return parent_.size(); }
    std::size_t root_count() const;
    bool is_spanning_tree() const { return !parent_.empty() && root_count() == 1; }

    ParentMap to_parent_map() const;

    friend bool operator==(const Branching&, const Branching&) = default;

private:
    std::vector<Parent> parent_;
};

/// Undirected graph on vertices 0..n-1 for the Hamiltonian-path side of the reduction.
class HpInstance {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    explicit HpInstance(std::size_t vertex_count) : n_(vertex_count) {}
    /// Throws InvalidStructure on self-loops, duplicates or out-of-range endpoints.
    HpInstance(std::size_t vertex_count, const std::vector<Edge>& edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    /// Edges normalized to (min, max), in lexicographic order.
    const std::set<Edge>& edges() const noexcept { return edges_; }

    /// Returns false if the edge already exists.
    bool add_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const;

    friend bool operator==(const HpInstance&, const HpInstance&) = default;

    static HpInstance complete(std::size_t n);
    static HpInstance cycle(std::size_t n);
    static HpInstance star(std::size_t n);
    static HpInstance path(std::size_t n);

private:
    std::size_t n_;
    std::set<Edge> edges_;
};

ParentMap path_to_parent_map(const PathStructure& path);

/// True iff exactly one vertex has no parent, every other vertex has exactly
/// one, and following parents from the unique leaf visits every vertex.
bool is_path(const ParentMap& parents);

/// Recovers the order of a parent map accepted by is_path.
std::optional<PathStructure> parent_map_to_path(const ParentMap& parents);

bool is_hamiltonian_path(const HpInstance& g, const Order& order);

inline constexpr std::size_t default_brute_force_limit = 10;

/// Exhaustive permutation search. Throws LimitExceeded when n > limit.
std::optional<Order> brute_force_hp(const HpInstance& g, std::size_t limit = default_brute_force_limit);

/// Edge-list text: "n m" then m lines "u v", 0-based.
HpInstance load_graph(std::istream& in);
HpInstance load_graph_file(const std::string& path);
void write_graph(const HpInstance& g, std::ostream& out);

}  // namespace pathlearn
