#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pathlearn/cli.hpp"
#include "pathlearn/dataset.hpp"
#include "pathlearn/reduction.hpp"
#include "test_support.hpp"

using namespace pathlearn;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("pathlearn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        auto path = (dir_ / name).string();
        std::ofstream(path, std::ios::binary) << text;
        return path;
    }

    int invoke(std::vector<std::string> args) {
        args.insert(args.begin(), "pathlearn");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        out_.str("");
        err_.str("");
        return cli::run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
    }

    json report() const { return json::parse(out_.str()); }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

}  // namespace

TEST_F(CliTest, DecideHpOnTriangleSaysYesForAllCriteria) {
    auto graph = write("triangle.txt", "3 3\n0 1\n1 2\n0 2\n");
    ASSERT_EQ(invoke({"decide-hp", "--graph", graph}), 0) << err_.str();
    auto r = report();
    EXPECT_EQ(r["command"], "decide-hp");
    EXPECT_EQ(r["tool"], "pathlearn");
    EXPECT_EQ(r["version"], std::string(cli::tool_version));
    EXPECT_EQ(r["inputs"]["graph"]["fnv1a64"].get<std::string>().size(), 16u);
    ASSERT_EQ(r["results"].size(), 3u);
    std::vector<std::string> seen;
    for (const auto& entry : r["results"]) {
        seen.push_back(entry["criterion"]);
        EXPECT_EQ(entry["decision"], "yes");
        EXPECT_EQ(entry["witness"].size(), 3u);
        for (const char* c : {"i", "ii", "iii", "iv", "v"}) EXPECT_TRUE(entry["conditions"][c].get<bool>());
        EXPECT_TRUE(entry["alpha"].is_null());
        EXPECT_NEAR(entry["best_score"].get<double>(), entry["k"].get<double>(), 1e-9 * std::abs(entry["k"].get<double>()));
    }
    EXPECT_EQ(seen, (std::vector<std::string>{"ml", "mdl", "bayes"}));
    EXPECT_TRUE(err_.str().empty());
}

TEST_F(CliTest, LearnPathRefusesAboveExactLimit) {
    std::mt19937_64 rng(1);
    std::ostringstream csv;
    write_dataset(oracle::random_dataset(rng, 25, 30), csv);
    auto data = write("wide.csv", csv.str());
    EXPECT_EQ(invoke({"learn-path", "--data", data, "--criterion", "ml", "--exact-limit", "8"}), 1);
    EXPECT_TRUE(out_.str().empty());
    EXPECT_NE(err_.str().find("heuristic"), std::string::npos);

    ASSERT_EQ(invoke({"learn-path", "--data", data, "--criterion", "ml", "--heuristic", "--seed", "5"}), 0) << err_.str();
    auto r = report();
    EXPECT_EQ(r["method"], "heuristic");
    EXPECT_FALSE(r["results"][0]["exact"].get<bool>());
    EXPECT_GE(r["results"][0]["gap"].get<double>(), 0.0);
}

TEST_F(CliTest, ScoreReportsLocalScoresSummingToTotal) {
    auto graph = HpInstance::path(3);
    auto d = generate_reduction(graph);
    std::ostringstream csv;
    write_dataset(d, csv);
    auto data = write("d.csv", csv.str());
    ASSERT_EQ(invoke({"score", "--data", data, "--structure", "path:2,0,1", "--criterion", "mdl"}), 0) << err_.str();
    auto r = report();
    EXPECT_EQ(r["structure"]["order"], json::array({2, 0, 1}));
    ASSERT_EQ(r["results"].size(), 1u);
    const auto& entry = r["results"][0];
    EXPECT_EQ(entry["criterion"], "mdl");
    const ParentMap structure{{2}, {0}, {}};
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double expected = local_score(Criterion::mdl, compute_stats(d, i, structure[i]), d.cardinalities()).value;
        EXPECT_NEAR(entry["local_scores"][i]["score"].get<double>(), expected, 1e-12);
        sum += entry["local_scores"][i]["score"].get<double>();
    }
    EXPECT_NEAR(entry["total"].get<double>(), sum, 1e-9);
    EXPECT_EQ(entry["local_scores"][0]["parents"], json::array({"X3"}));
}

TEST_F(CliTest, ScoreAcceptsJsonStructureFiles) {
    auto data = write("d.csv", "A,B,C\n0,1,1\n1,0,1\n1,1,0\n");
    auto parent = write("s.json", R"({"parent":[null,0,0]})");
    ASSERT_EQ(invoke({"score", "-d", data, "-s", parent, "-c", "ml"}), 0) << err_.str();
    EXPECT_EQ(report()["structure"]["parent"], json::parse("[null,0,0]"));
    auto order = write("o.json", R"({"order":[1,2,0]})");
    ASSERT_EQ(invoke({"score", "-d", data, "-s", order, "-c", "bayes"}), 0) << err_.str();
    auto cyclic = write("bad.json", R"({"parent":[1,0,null]})");
    EXPECT_EQ(invoke({"score", "-d", data, "-s", cyclic}), 1);
    EXPECT_EQ(invoke({"score", "-d", data, "-s", "path:0,1"}), 1);
    EXPECT_EQ(invoke({"score", "-d", data, "-s", "path:0,x,1"}), 2);
}

TEST_F(CliTest, ReportsAreByteIdenticalAcrossRuns) {
    auto graph = write("c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    ASSERT_EQ(invoke({"decide-hp", "-g", graph}), 0);
    const auto first = out_.str();
    ASSERT_EQ(invoke({"decide-hp", "-g", graph}), 0);
    EXPECT_EQ(out_.str(), first);
}

TEST_F(CliTest, ReduceThenVerifyAndLearn) {
    auto graph = write("star.txt", "4 3\n0 1\n0 2\n0 3\n");
    auto csv = (dir_ / "star.csv").string();
    ASSERT_EQ(invoke({"reduce", "-g", graph, "--data-out", csv}), 0) << err_.str();
    EXPECT_EQ(report()["dataset"]["cases"], 48);
    auto loaded = load_dataset_file(csv);
    EXPECT_EQ(loaded, generate_reduction(HpInstance::star(4)));

    ASSERT_EQ(invoke({"verify", "-g", graph, "-d", csv}), 0) << err_.str();
    for (const auto& entry : report()["results"]) {
        EXPECT_TRUE(entry["all_pass"].get<bool>());
        EXPECT_TRUE(entry["count_tables_match"].get<bool>());
        EXPECT_LT(entry["alpha"].get<double>(), entry["beta"].get<double>());
    }

    ASSERT_EQ(invoke({"learn-tree", "-d", csv, "-c", "bayes"}), 0) << err_.str();
    auto tree = report()["results"][0];
    EXPECT_GE(tree["branching_score"].get<double>(), tree["spanning_tree_score"].get<double>() - 1e-9);

    ASSERT_EQ(invoke({"learn-path", "-d", csv, "-c", "bayes"}), 0) << err_.str();
    auto path = report()["results"][0];
    EXPECT_TRUE(path["exact"].get<bool>());
    EXPECT_LE(path["score"].get<double>(), tree["spanning_tree_score"].get<double>() + 1e-9);

    ASSERT_EQ(invoke({"decide-hp", "-g", graph, "-c", "ml"}), 0);
    EXPECT_EQ(report()["results"][0]["decision"], "no");
    EXPECT_TRUE(report()["results"][0]["witness"].is_null());
}

TEST_F(CliTest, ErrorsMapToExitCodes) {
    EXPECT_EQ(invoke({}), 2);
    EXPECT_EQ(invoke({"decide-hp"}), 2);
    EXPECT_EQ(invoke({"decide-hp", "--graph", (dir_ / "missing.txt").string()}), 2);
    auto bad = write("bad.txt", "3 1\n0 0\n");
    EXPECT_EQ(invoke({"decide-hp", "--graph", bad}), 2);
    EXPECT_TRUE(out_.str().empty());
    EXPECT_FALSE(err_.str().empty());
    auto csv = write("bad.csv", "A,B\n0,2.5\n");
    EXPECT_EQ(invoke({"learn-tree", "--data", csv}), 2);
    auto big = write("p12.txt", "12 1\n0 1\n");
    EXPECT_EQ(invoke({"decide-hp", "--graph", big, "--exact-limit", "10"}), 1);
    auto data = write("ok.csv", "A,B\n0,1\n");
    EXPECT_EQ(invoke({"score", "-d", data, "-s", "path:0,1", "-c", "nope"}), 2);
}

TEST_F(CliTest, OutputFlagWritesFile) {
    auto graph = write("p3.txt", "3 2\n0 1\n1 2\n");
    auto out = (dir_ / "report.json").string();
    ASSERT_EQ(invoke({"verify", "-g", graph, "-o", out}), 0);
    EXPECT_TRUE(out_.str().empty());
    std::ifstream in(out);
    auto r = json::parse(in);
    EXPECT_EQ(r["results"].size(), 3u);
}

TEST(Fnv1a64, KnownVectors) {
    EXPECT_EQ(cli::fnv1a64_hex(""), "cbf29ce484222325");
    EXPECT_EQ(cli::fnv1a64_hex("a"), "af63dc4c8601ec8c");
}
