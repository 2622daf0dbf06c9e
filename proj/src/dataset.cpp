#include "pathlearn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "pathlearn/errors.hpp"

namespace pathlearn {

DiscreteDataset::DiscreteDataset(std::vector<std::string> names, std::vector<int> cardinalities,
                                 std::vector<std::vector<int>> cases)
    : names_(std::move(names)), cardinalities_(std::move(cardinalities)), case_count_(cases.size()) {
    if (cardinalities_.size() != names_.size())
        throw std::invalid_argument("cardinality count does not match variable count");
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (!seen.insert(name).second) throw std::invalid_argument("duplicate variable name '" + name + "'");
    }
    for (int card : cardinalities_) {
        if (card < 1) throw std::invalid_argument("cardinality must be positive");
    }
    values_.reserve(cases.size() * names_.size());
    for (std::size_t r = 0; r < cases.size(); ++r) {
        if (cases[r].size() != names_.size())
            throw std::invalid_argument("case " + std::to_string(r) + " has wrong width");
        for (std::size_t v = 0; v < names_.size(); ++v) {
            int x = cases[r][v];
            if (x < 0 || x >= cardinalities_[v])
                throw std::invalid_argument("case " + std::to_string(r) + ": value " + std::to_string(x) +
                                            " out of range for variable '" + names_[v] + "'");
            values_.push_back(x);
        }
    }
}

Count SufficientStats::joint_count(int target_value, const Config& config) const {
    auto it = joint.find(config);
    if (it == joint.end() || target_value < 0 || target_value >= static_cast<int>(it->second.size())) return 0;
    return it->second[static_cast<std::size_t>(target_value)];
}

Count SufficientStats::parent_count(const Config& config) const {
    auto it = joint.find(config);
    if (it == joint.end()) return 0;
    return std::accumulate(it->second.begin(), it->second.end(), Count{0});
}

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

int parse_int_cell(std::string_view cell, std::size_t row, std::size_t column) {
    cell = trim(cell);
    int value = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError("not an integer: '" + std::string(cell) + "'", row, column);
    if (value < 0) throw ParseError("negative value " + std::string(cell), row, column);
    return value;
}

bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

constexpr std::string_view card_prefix = "#card:";

}  // namespace

DiscreteDataset load_dataset(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!next_line(in, line) || trim(line).empty()) throw ParseError("empty file: missing header", 1);

    std::vector<std::string> names;
    auto header = split_line(line);
    for (std::size_t c = 0; c < header.size(); ++c) {
        auto name = trim(header[c]);
        if (name.empty()) throw ParseError("empty variable name", line_no, c + 1);
        names.emplace_back(name);
    }
    {
        std::set<std::string> unique;
        for (std::size_t c = 0; c < names.size(); ++c) {
            if (!unique.insert(names[c]).second)
                throw ParseError("duplicate variable name '" + names[c] + "'", line_no, c + 1);
        }
    }

    const std::size_t width = names.size();
    std::vector<int> declared;
    std::vector<std::vector<int>> cases;

    while (next_line(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (trim(view).empty()) continue;
        const bool is_card = view.substr(0, card_prefix.size()) == card_prefix;
        if (is_card) {
            if (!declared.empty() || !cases.empty())
                throw ParseError("'#card:' must directly follow the header", line_no, 1);
            view.remove_prefix(card_prefix.size());
        }
        auto cells = split_line(view);
        if (cells.size() != width)
            throw ParseError("expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()),
                             line_no);
        std::vector<int> values(width);
        for (std::size_t c = 0; c < width; ++c) values[c] = parse_int_cell(cells[c], line_no, c + 1);
        if (is_card) {
            for (std::size_t c = 0; c < width; ++c) {
                if (values[c] < 1) throw ParseError("cardinality must be positive", line_no, c + 1);
            }
            declared = std::move(values);
        } else {
            if (!declared.empty()) {
                for (std::size_t c = 0; c < width; ++c) {
                    if (values[c] >= declared[c])
                        throw ParseError("value " + std::to_string(values[c]) + " exceeds declared cardinality " +
                                             std::to_string(declared[c]),
                                         line_no, c + 1);
                }
            }
            cases.push_back(std::move(values));
        }
    }
    if (in.bad()) throw std::runtime_error("read failure");

    std::vector<int> cardinalities = declared;
    if (cardinalities.empty()) {
        cardinalities.assign(width, 1);
        for (const auto& row : cases) {
            for (std::size_t c = 0; c < width; ++c) cardinalities[c] = std::max(cardinalities[c], row[c] + 1);
        }
    }
    return DiscreteDataset(std::move(names), std::move(cardinalities), std::move(cases));
}

DiscreteDataset load_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
    return load_dataset(in);
}

void write_dataset(const DiscreteDataset& data, std::ostream& out) {
    const std::size_t width = data.variable_count();
    for (std::size_t v = 0; v < width; ++v) out << (v ? "," : "") << data.names()[v];
    out << '\n';

    std::vector<int> inferred(width, 1);
    for (std::size_t r = 0; r < data.case_count(); ++r) {
        for (std::size_t v = 0; v < width; ++v) inferred[v] = std::max(inferred[v], data.value(r, v) + 1);
    }
    if (inferred != data.cardinalities()) {
        out << card_prefix;
        for (std::size_t v = 0; v < width; ++v) out << (v ? "," : "") << data.cardinality(v);
        out << '\n';
    }
    for (std::size_t r = 0; r < data.case_count(); ++r) {
        auto row = data.row(r);
        for (std::size_t v = 0; v < width; ++v) out << (v ? "," : "") << row[v];
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failure");
}

SufficientStats compute_stats(const DiscreteDataset& data, std::size_t target,
                              std::span<const std::size_t> parents) {
    const std::size_t n = data.variable_count();
    if (target >= n) throw InvalidQuery("target index " + std::to_string(target) + " out of range");
    std::set<std::size_t> distinct;
    for (auto p : parents) {
        if (p >= n) throw InvalidQuery("parent index " + std::to_string(p) + " out of range");
        if (p == target) throw InvalidQuery("target " + std::to_string(target) + " listed among its parents");
        if (!distinct.insert(p).second) throw InvalidQuery("parent " + std::to_string(p) + " listed twice");
    }

    SufficientStats stats;
    stats.target = target;
    stats.parents.assign(parents.begin(), parents.end());
    stats.target_cardinality = data.cardinality(target);
    stats.total = static_cast<Count>(data.case_count());

    SufficientStats::Config config(parents.size());
    for (std::size_t r = 0; r < data.case_count(); ++r) {
        for (std::size_t k = 0; k < parents.size(); ++k) config[k] = data.value(r, parents[k]);
        auto [it, inserted] = stats.joint.try_emplace(config);
        if (inserted) it->second.assign(static_cast<std::size_t>(stats.target_cardinality), 0);
        ++it->second[static_cast<std::size_t>(data.value(r, target))];
    }
    return stats;
}

SufficientStats StatsCache::get(std::size_t target, std::span<const std::size_t> parents) {
    std::vector<std::size_t> sorted(parents.begin(), parents.end());
    std::sort(sorted.begin(), sorted.end());
    auto key = std::make_pair(target, sorted);

    std::shared_ptr<const SufficientStats> canonical;
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            canonical = it->second;
            ++hits_;
        }
    }
    if (!canonical) {
        auto fresh = std::make_shared<const SufficientStats>(compute_stats(*data_, target, sorted));
        std::lock_guard lock(mutex_);
        canonical = entries_.try_emplace(std::move(key), std::move(fresh)).first->second;
    }

    if (std::equal(parents.begin(), parents.end(), sorted.begin(), sorted.end())) return *canonical;

    // position of each requested parent inside the sorted order
    std::vector<std::size_t> where(parents.size());
    for (std::size_t k = 0; k < parents.size(); ++k)
        where[k] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), parents[k]) - sorted.begin());

    SufficientStats out;
    out.target = canonical->target;
    out.parents.assign(parents.begin(), parents.end());
    out.target_cardinality = canonical->target_cardinality;
    out.total = canonical->total;
    SufficientStats::Config remapped(parents.size());
    for (const auto& [config, counts] : canonical->joint) {
        for (std::size_t k = 0; k < parents.size(); ++k) remapped[k] = config[where[k]];
        out.joint.emplace(remapped, counts);
    }
    return out;
}

std::size_t StatsCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::size_t StatsCache::hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
}

}  // namespace pathlearn
