#include "pathlearn/structures.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "pathlearn/errors.hpp"

namespace pathlearn {

PathStructure::PathStructure(Order order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (auto v : order_) {
        if (v >= order_.size() || seen[v]) throw InvalidStructure("path order is not a permutation");
        seen[v] = true;
    }
}

Branching::Branching(std::vector<Parent> parent) : parent_(std::move(parent)) {
    const std::size_t n = parent_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!parent_[i]) continue;
        if (*parent_[i] >= n) throw InvalidStructure("parent index out of range");
        if (*parent_[i] == i) throw InvalidStructure("vertex is its own parent");
    }
    // 0 = unvisited, 1 = on the current walk, 2 = reaches a root
    std::vector<int> state(n, 0);
    std::vector<std::size_t> walk;
    for (std::size_t start = 0; start < n; ++start) {
        walk.clear();
        std::size_t v = start;
        while (state[v] != 2) {
            if (state[v] == 1) throw InvalidStructure("branching contains a directed cycle");
            state[v] = 1;
            walk.push_back(v);
            if (!parent_[v]) break;
            v = *parent_[v];
        }
        for (auto w : walk) state[w] = 2;
    }
}

std::size_t Branching::root_count() const {
    return static_cast<std::size_t>(std::count(parent_.begin(), parent_.end(), std::nullopt));
}

ParentMap Branching::to_parent_map() const {
    ParentMap map(parent_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i) {
        if (parent_[i]) map[i].push_back(*parent_[i]);
    }
    return map;
}

HpInstance::HpInstance(std::size_t vertex_count, const std::vector<Edge>& edges) : n_(vertex_count) {
    for (auto [u, v] : edges) {
        if (!add_edge(u, v)) throw InvalidStructure("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
}

bool HpInstance::add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw InvalidStructure("self-loop on vertex " + std::to_string(u));
    if (u >= n_ || v >= n_) throw InvalidStructure("edge endpoint out of range");
    return edges_.emplace(std::min(u, v), std::max(u, v)).second;
}

bool HpInstance::has_edge(std::size_t u, std::size_t v) const {
    return edges_.count({std::min(u, v), std::max(u, v)}) != 0;
}

HpInstance HpInstance::complete(std::size_t n) {
    HpInstance g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

HpInstance HpInstance::cycle(std::size_t n) {
    HpInstance g = path(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

HpInstance HpInstance::star(std::size_t n) {
    HpInstance g(n);
    for (std::size_t i = 1; i < n; ++i) g.add_edge(0, i);
    return g;
}

HpInstance HpInstance::path(std::size_t n) {
    HpInstance g(n);
    for (std::size_t i = 1; i < n; ++i) g.add_edge(i - 1, i);
    return g;
}

ParentMap path_to_parent_map(const PathStructure& path) {
    ParentMap map(path.size());
    const auto& order = path.order();
    for (std::size_t t = 1; t < order.size(); ++t) map[order[t]].push_back(order[t - 1]);
    return map;
}

std::optional<PathStructure> parent_map_to_path(const ParentMap& parents) {
    const std::size_t n = parents.size();
    if (n == 0) return std::nullopt;
    std::optional<std::size_t> root;
    std::vector<std::optional<std::size_t>> child(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (parents[i].empty()) {
            if (root) return std::nullopt;
            root = i;
        } else if (parents[i].size() == 1) {
            auto p = parents[i][0];
            if (p >= n || p == i || child[p]) return std::nullopt;
            child[p] = i;
        } else {
            return std::nullopt;
        }
    }
    if (!root) return std::nullopt;
    Order order{*root};
    while (child[order.back()]) {
        order.push_back(*child[order.back()]);
        if (order.size() > n) return std::nullopt;
    }
    if (order.size() != n) return std::nullopt;
    return PathStructure(std::move(order));
}

bool is_path(const ParentMap& parents) { return parent_map_to_path(parents).has_value(); }

bool is_hamiltonian_path(const HpInstance& g, const Order& order) {
    if (order.size() != g.vertex_count()) return false;
    std::vector<bool> seen(order.size(), false);
    for (auto v : order) {
        if (v >= order.size() || seen[v]) return false;
        seen[v] = true;
    }
    for (std::size_t t = 1; t < order.size(); ++t) {
        if (!g.has_edge(order[t - 1], order[t])) return false;
    }
    return true;
}

std::optional<Order> brute_force_hp(const HpInstance& g, std::size_t limit) {
    const std::size_t n = g.vertex_count();
    if (n > limit)
        throw LimitExceeded("brute-force Hamiltonian path search refused: " + std::to_string(n) +
                                " vertices exceeds limit " + std::to_string(limit),
                            n, limit);
    Order order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    do {
        if (is_hamiltonian_path(g, order)) return order;
    } while (std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
}

std::vector<long long> parse_numbers(const std::string& line, std::size_t line_no, std::size_t expected) {
    std::istringstream fields(line);
    std::vector<long long> out;
    std::string token;
    while (fields >> token) {
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) throw ParseError("not an integer: '" + token + "'", line_no, out.size() + 1);
        if (value < 0) throw ParseError("negative value " + token, line_no, out.size() + 1);
        out.push_back(value);
    }
    if (out.size() != expected)
        throw ParseError("expected " + std::to_string(expected) + " integers, found " + std::to_string(out.size()),
                         line_no);
    return out;
}

}  // namespace

HpInstance load_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(in, line, line_no)) throw ParseError("empty graph file", 1);
    auto header = parse_numbers(line, line_no, 2);
    const auto n = static_cast<std::size_t>(header[0]);
    const auto m = static_cast<std::size_t>(header[1]);
    HpInstance g(n);
    for (std::size_t e = 0; e < m; ++e) {
        if (!next_content_line(in, line, line_no))
            throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(e), line_no + 1);
        auto uv = parse_numbers(line, line_no, 2);
        auto u = static_cast<std::size_t>(uv[0]);
        auto v = static_cast<std::size_t>(uv[1]);
        if (u >= n || v >= n) throw ParseError("vertex out of range 0.." + std::to_string(n - 1), line_no);
        if (u == v) throw ParseError("self-loop on vertex " + std::to_string(u), line_no);
        if (!g.add_edge(u, v)) throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v), line_no);
    }
    if (next_content_line(in, line, line_no)) throw ParseError("trailing content after edge list", line_no);
    return g;
}

HpInstance load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
    return load_graph(in);
}

void write_graph(const HpInstance& g, std::ostream& out) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (!out) throw std::runtime_error("write failure");
}

}  // namespace pathlearn
