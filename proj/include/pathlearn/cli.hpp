#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathlearn/path_learn.hpp"
#include "pathlearn/scoring.hpp"

namespace pathlearn::cli {

inline constexpr std::string_view tool_name = "pathlearn";
inline constexpr std::string_view tool_version = "0.1.0";

enum class Command { score, learn_tree, learn_path, reduce, verify, decide_hp };

std::string_view to_string(Command c);

struct RunConfig {
    Command command = Command::score;
    /// Empty means all three criteria.
    std::vector<Criterion> criteria;
    std::string data_path;
    std::string graph_path;
    /// "path:<order>", "empty", or a JSON file holding {"order":[...]} / {"parent":[...]}.
    std::string structure;
    std::string data_out;
    std::string output_path;
    std::size_t exact_limit = default_exact_limit;
    bool heuristic = false;
    std::uint64_t seed = 0;
    std::size_t restarts = 8;
};

enum ExitCode : int { exit_ok = 0, exit_domain_error = 1, exit_io_error = 2 };

/// Executes one command. The JSON report goes to `out` (or the configured
/// output file); diagnostics go to `err` only.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches to run().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace pathlearn::cli
