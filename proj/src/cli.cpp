#include "pathlearn/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "pathlearn/dataset.hpp"
#include "pathlearn/errors.hpp"
#include "pathlearn/reduction.hpp"
#include "pathlearn/structures.hpp"
#include "pathlearn/tree_learn.hpp"

namespace pathlearn::cli {

using json = nlohmann::ordered_json;

std::string_view to_string(Command c) {
    switch (c) {
        case Command::score: return "score";
        case Command::learn_tree: return "learn-tree";
        case Command::learn_path: return "learn-path";
        case Command::reduce: return "reduce";
        case Command::verify: return "verify";
        case Command::decide_hp: return "decide-hp";
    }
    return "unknown";
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json input_entry(const std::string& path, const std::string& bytes) {
    return {{"path", path}, {"fnv1a64", fnv1a64_hex(bytes)}};
}

json order_json(const Order& order) { return {{"order", order}}; }

json branching_json(const Branching& b) {
    json parents = json::array();
    for (const auto& p : b.parent()) parents.push_back(p ? json(*p) : json(nullptr));
    return {{"parent", parents}};
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json reduction_json(const ReductionReport& report) {
    static constexpr const char* labels[] = {"i", "ii", "iii", "iv", "v"};
    json conditions = json::object();
    json details = json::object();
    for (std::size_t c = 0; c < report.conditions.size(); ++c) {
        conditions[labels[c]] = report.conditions[c].passed;
        details[labels[c]] = {{"vacuous", report.conditions[c].vacuous}, {"detail", report.conditions[c].detail}};
    }
    const auto& k = report.constants;
    return {{"criterion", to_string(k.criterion)},
            {"gamma", k.gamma},
            {"alpha", optional_number(k.alpha)},
            {"beta", optional_number(k.beta)},
            {"k", optional_number(k.k)},
            {"separation", optional_number(report.separation)},
            {"conditions", conditions},
            {"condition_details", details},
            {"count_tables_match", report.count_tables_match}};
}

ParentMap parse_structure(const std::string& spec, std::size_t n, json& described) {
    if (spec.empty() || spec == "empty") {
        described = {{"parent", std::vector<std::nullptr_t>(n, nullptr)}};
        return ParentMap(n);
    }
    constexpr std::string_view path_prefix = "path:";
    if (spec.rfind(path_prefix, 0) == 0) {
        Order order;
        std::stringstream fields(spec.substr(path_prefix.size()));
        std::string token;
        while (std::getline(fields, token, ',')) {
            std::size_t used = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != token.size() || token.front() == '-')
                throw ParseError("bad vertex '" + token + "' in structure '" + spec + "'");
            order.push_back(v);
        }
        if (order.size() != n)
            throw InvalidStructure("path lists " + std::to_string(order.size()) + " vertices, dataset has " +
                                   std::to_string(n));
        PathStructure path(order);
        described = order_json(order);
        return path_to_parent_map(path);
    }

    json doc;
    try {
        doc = json::parse(read_file(spec));
    } catch (const json::exception& e) {
        throw ParseError(std::string("structure file '") + spec + "': " + e.what());
    }
    if (doc.contains("order")) {
        Order order;
        try {
            order = doc.at("order").get<Order>();
        } catch (const json::exception& e) {
            throw ParseError(std::string("structure 'order': ") + e.what());
        }
        if (order.size() != n) throw InvalidStructure("path length does not match dataset");
        described = order_json(order);
        return path_to_parent_map(PathStructure(order));
    }
    if (doc.contains("parent")) {
        std::vector<Branching::Parent> parent;
        try {
            for (const auto& p : doc.at("parent"))
                parent.push_back(p.is_null() ? Branching::Parent{} : Branching::Parent{p.get<std::size_t>()});
        } catch (const json::exception& e) {
            throw ParseError(std::string("structure 'parent': ") + e.what());
        }
        if (parent.size() != n) throw InvalidStructure("parent list length does not match dataset");
        Branching b(std::move(parent));
        described = branching_json(b);
        return b.to_parent_map();
    }
    throw ParseError("structure file '" + spec + "' has neither 'order' nor 'parent'");
}

std::vector<Criterion> criteria_of(const RunConfig& config) {
    if (config.criteria.empty()) return {all_criteria.begin(), all_criteria.end()};
    return config.criteria;
}

json run_command(const RunConfig& config) {
    json report;
    report["tool"] = tool_name;
    report["version"] = tool_version;
    report["command"] = to_string(config.command);
    json inputs = json::object();
    json results = json::array();
    const auto criteria = criteria_of(config);

    auto load_data = [&]() {
        if (config.data_path.empty()) throw ParseError("--data is required for " + std::string(to_string(config.command)));
        const auto bytes = read_file(config.data_path);
        inputs["data"] = input_entry(config.data_path, bytes);
        std::istringstream in(bytes);
        return load_dataset(in);
    };
    auto load_g = [&]() {
        if (config.graph_path.empty()) throw ParseError("--graph is required for " + std::string(to_string(config.command)));
        const auto bytes = read_file(config.graph_path);
        inputs["graph"] = input_entry(config.graph_path, bytes);
        std::istringstream in(bytes);
        return load_graph(in);
    };

    switch (config.command) {
        case Command::score: {
            const auto data = load_data();
            json described;
            const auto structure = parse_structure(config.structure, data.variable_count(), described);
            report["structure"] = described;
            for (auto c : criteria) {
                const auto locals = local_scores(c, data, structure);
                json entries = json::array();
                double total = 0.0;
                for (std::size_t i = 0; i < locals.size(); ++i) {
                    json parents = json::array();
                    for (auto p : structure[i]) parents.push_back(data.names()[p]);
                    entries.push_back({{"variable", data.names()[i]}, {"parents", parents}, {"score", locals[i].value}});
                    total += locals[i].value;
                }
                results.push_back({{"criterion", to_string(c)}, {"local_scores", entries}, {"total", total}});
            }
            break;
        }
        case Command::learn_tree: {
            const auto data = load_data();
            for (auto c : criteria) {
                const auto w = build_weights(c, data);
                const auto branching = learn_optimal_branching(w);
                const auto tree = learn_optimal_spanning_tree(w);
                results.push_back({{"criterion", to_string(c)},
                                   {"branching", branching_json(branching.branching)},
                                   {"branching_score", branching.score.value},
                                   {"spanning_tree", branching_json(tree.branching)},
                                   {"spanning_tree_score", tree.score.value}});
            }
            break;
        }
        case Command::learn_path: {
            const auto data = load_data();
            report["method"] = config.heuristic ? "heuristic" : "exact";
            if (config.heuristic) report["heuristic"] = {{"seed", config.seed}, {"restarts", config.restarts}};
            for (auto c : criteria) {
                const auto w = build_weights(c, data);
                const auto r = config.heuristic ? solve_path_heuristic(w, {config.restarts, config.seed})
                                                : solve_path_exact(w, config.exact_limit);
                results.push_back({{"criterion", to_string(c)},
                                   {"path", order_json(r.best_path.order())},
                                   {"score", r.best_score.value},
                                   {"upper_bound", r.upper_bound.value},
                                   {"gap", r.gap},
                                   {"exact", r.exact}});
            }
            break;
        }
        case Command::reduce: {
            const auto g = load_g();
            if (config.data_out.empty()) throw ParseError("--data-out is required for reduce");
            const auto data = generate_reduction(g);
            std::ostringstream csv;
            write_dataset(data, csv);
            std::ofstream file(config.data_out, std::ios::binary);
            if (!(file << csv.str())) throw std::runtime_error("cannot write '" + config.data_out + "'");
            report["dataset"] = {{"path", config.data_out},
                                 {"variables", data.variable_count()},
                                 {"cases", data.case_count()},
                                 {"fnv1a64", fnv1a64_hex(csv.str())}};
            break;
        }
        case Command::verify: {
            const auto g = load_g();
            const auto data = config.data_path.empty() ? generate_reduction(g) : load_data();
            for (auto c : criteria) {
                const auto r = verify_reduction(data, g, c);
                auto entry = reduction_json(r);
                entry["all_pass"] = r.all_conditions_pass();
                results.push_back(entry);
            }
            break;
        }
        case Command::decide_hp: {
            const auto g = load_g();
            for (auto c : criteria) {
                const auto d = decide_hp(g, c, config.exact_limit);
                auto entry = reduction_json(d.report);
                entry["decision"] = d.yes ? "yes" : "no";
                entry["witness"] = d.witness && d.yes ? json(*d.witness) : json(nullptr);
                entry["best_score"] = optional_number(d.best_score);
                entry["threshold_consistent"] = d.threshold_consistent;
                results.push_back(entry);
            }
            break;
        }
    }
    report["inputs"] = inputs;
    if (config.command != Command::reduce) report["results"] = results;
    return report;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    json report;
    try {
        report = run_command(config);
    } catch (const DomainError& e) {
        err << tool_name << ": " << e.what() << '\n';
        return exit_domain_error;
    } catch (const ParseError& e) {
        err << tool_name << ": " << e.what() << '\n';
        return exit_io_error;
    } catch (const std::invalid_argument& e) {
        err << tool_name << ": " << e.what() << '\n';
        return exit_io_error;
    } catch (const std::runtime_error& e) {
        err << tool_name << ": " << e.what() << '\n';
        return exit_io_error;
    }
    const std::string text = report.dump(2) + "\n";
    if (config.output_path.empty()) {
        out << text;
        out.flush();
    } else {
        std::ofstream file(config.output_path, std::ios::binary);
        if (!(file << text)) {
            err << tool_name << ": cannot write '" << config.output_path << "'\n";
            return exit_io_error;
        }
    }
    return exit_ok;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learn tree and path graphical models; build and solve Hamiltonian-path reductions",
                 std::string(tool_name)};
    app.require_subcommand(1);

    RunConfig config;
    std::string criterion = "all";

    const std::map<std::string, Command> commands{{"score", Command::score},     {"learn-tree", Command::learn_tree},
                                                  {"learn-path", Command::learn_path}, {"reduce", Command::reduce},
                                                  {"verify", Command::verify},   {"decide-hp", Command::decide_hp}};
    const std::map<std::string, std::string> help{
        {"score", "score a structure on a dataset"},
        {"learn-tree", "learn the optimal branching and spanning tree"},
        {"learn-path", "learn the optimal path model"},
        {"reduce", "write the reduction dataset of a graph"},
        {"verify", "check the reduction conditions on a dataset"},
        {"decide-hp", "decide Hamiltonian path existence via optimal path learning"}};

    auto criterion_check = CLI::IsMember({"ml", "mdl", "bayes", "all"});
    for (const auto& [name, command] : commands) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("-c,--criterion", criterion, "ml, mdl, bayes or all")->check(criterion_check);
        sub->add_option("-o,--output", config.output_path, "write the JSON report here instead of stdout");
        const bool needs_data = command == Command::score || command == Command::learn_tree ||
                                command == Command::learn_path;
        const bool needs_graph = command == Command::reduce || command == Command::verify ||
                                 command == Command::decide_hp;
        if (needs_data) sub->add_option("-d,--data", config.data_path, "CSV dataset")->required()->check(CLI::ExistingFile);
        if (command == Command::verify)
            sub->add_option("-d,--data", config.data_path, "CSV dataset (default: generated from the graph)")
                ->check(CLI::ExistingFile);
        if (needs_graph) sub->add_option("-g,--graph", config.graph_path, "edge-list graph")->required()->check(CLI::ExistingFile);
        if (command == Command::score)
            sub->add_option("-s,--structure", config.structure, "path:<order>, empty, or a JSON structure file")
                ->required();
        if (command == Command::reduce)
            sub->add_option("--data-out", config.data_out, "where to write the generated CSV")->required();
        if (command == Command::learn_path || command == Command::decide_hp)
            sub->add_option("--exact-limit", config.exact_limit, "largest n handed to the exact solver")
                ->check(CLI::Range(1, 30));
        if (command == Command::learn_path) {
            sub->add_flag("--heuristic", config.heuristic, "use local search instead of the exact solver");
            sub->add_option("--seed", config.seed, "heuristic random seed");
            sub->add_option("--restarts", config.restarts, "heuristic random restarts");
        }
        sub->callback([&config, command = command] { config.command = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_io_error;
    }

    if (criterion != "all") config.criteria = {*parse_criterion(criterion)};
    return run(config, out, err);
}

}  // namespace pathlearn::cli
