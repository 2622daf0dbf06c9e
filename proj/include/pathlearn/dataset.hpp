#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace pathlearn {

using Count = std::int64_t;

/// N cases over n discrete variables. Values of variable i lie in
/// [0, cardinality(i)). Immutable once constructed.
class DiscreteDataset {
public:
    DiscreteDataset() = default;

    /// Throws std::invalid_argument when a value is out of range, a row has the
    /// wrong width, names repeat, or a cardinality is not positive.
    DiscreteDataset(std::vector<std::string> names, std::vector<int> cardinalities,
                    std::vector<std::vector<int>> cases);

    std::size_t variable_count() const noexcept { return names_.size(); }
    std::size_t case_count() const noexcept { return case_count_; }

    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<int>& cardinalities() const noexcept { return cardinalities_; }
    int cardinality(std::size_t var) const { return cardinalities_.at(var); }

    /// Row-major case values.
    std::span<const int> row(std::size_t index) const {
        return {values_.data() + index * names_.size(), names_.size()};
    }
    int value(std::size_t row_index, std::size_t var) const {
        return values_[row_index * names_.size() + var];
    }

    friend bool operator==(const DiscreteDataset&, const DiscreteDataset&) = default;

private:
    std::vector<std::string> names_;
    std::vector<int> cardinalities_;
    std::vector<int> values_;
    std::size_t case_count_ = 0;
};

/// Counts N(x_i, pa(x_i)) and N(pa(x_i)) for one (target, parents) query.
///
/// Parent configurations are keyed by the tuple of parent values, in the
/// order `parents` lists them. Configurations that never occur are absent;
/// callers treat a missing key as count 0. The empty parent set has a single
/// configuration, the empty tuple.
struct SufficientStats {
    using Config = std::vector<int>;

    std::size_t target = 0;
    std::vector<std::size_t> parents;
    int target_cardinality = 1;
    Count total = 0;
    /// config -> counts indexed by target value (size target_cardinality)
    std::map<Config, std::vector<Count>> joint;

    Count joint_count(int target_value, const Config& config) const;
    Count parent_count(const Config& config) const;

    friend bool operator==(const SufficientStats&, const SufficientStats&) = default;
};

/// Loads a CSV dataset: header of names, optional "#card:" line declaring
/// cardinalities, then integer rows. Accepts LF and CRLF line endings.
DiscreteDataset load_dataset(std::istream& in);
DiscreteDataset load_dataset_file(const std::string& path);

/// Writes CSV accepted by load_dataset. The "#card:" line is emitted only when
/// the declared cardinalities differ from what load_dataset would infer.
void write_dataset(const DiscreteDataset& data, std::ostream& out);

/// Exact tallies over all cases. Throws InvalidQuery when indices are out of
/// range, repeated, or the target is listed among the parents.
SufficientStats compute_stats(const DiscreteDataset& data, std::size_t target,
                              std::span<const std::size_t> parents);

/// Thread-safe memo over compute_stats for one dataset. Entries are stored
/// under the sorted parent set; lookups with any parent order are answered
/// from the same entry with configurations re-keyed to the requested order.
class StatsCache {
public:
    explicit StatsCache(const DiscreteDataset& data) : data_(&data) {}

    SufficientStats get(std::size_t target, std::span<const std::size_t> parents);

    std::size_t size() const;
    std::size_t hits() const;

private:
    const DiscreteDataset* data_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::size_t, std::vector<std::size_t>>,
             std::shared_ptr<const SufficientStats>> entries_;
    std::size_t hits_ = 0;
};

}  // namespace pathlearn
