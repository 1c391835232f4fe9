#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("genvor_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    /// Runs the tool with `args`; stdout goes to `out` when given.
    int run(const std::string& args, const std::string& out = "", const std::string& env = "") const {
        std::string cmd = env + " " + GENVOR_CLI_PATH + " " + args + " > " + (out.empty() ? path("stdout.txt") : out) +
                          " 2> " + path("stderr.txt");
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string out() const { return slurp(path("stdout.txt")); }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, GenWritesInstance) {
    ASSERT_EQ(run("gen --model uniform --n 100 --weights geometric --seed 7 -o " + path("inst.json")), 0);
    auto j = nlohmann::json::parse(slurp(path("inst.json")));
    EXPECT_EQ(j["sites"].size(), 100u);
    EXPECT_EQ(j["weights"].size(), 100u);
    EXPECT_EQ(j["weights"][3], "8");
    EXPECT_EQ(j["seed"], 7);
    EXPECT_EQ(j["model"], "uniform");
    EXPECT_TRUE(j["sites"][0][0].is_string());
    EXPECT_EQ(j["meta"]["version"], "0.3.0");
    EXPECT_EQ(j["meta"]["config_hash"].get<std::string>().size(), 16u);
}

TEST_F(Cli, BuildWritesSvgAndCounts) {
    ASSERT_EQ(run("gen --model uniform --n 100 --weights geometric --seed 7 -o " + path("inst.json")), 0);
    ASSERT_EQ(run("build --diagram multiplicative -i " + path("inst.json") + " -o " + path("d.svg") + " --count " +
                  path("c.csv")),
              0);
    std::string csv = slurp(path("c.csv"));
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_EQ(header, "diagram,n,vertices,edges,faces,total,total_in_U");
    std::vector<std::string> cols;
    std::stringstream rs(row);
    for (std::string c; std::getline(rs, c, ',');) cols.push_back(c);
    ASSERT_EQ(cols.size(), 7u);
    EXPECT_GE(std::stol(cols[4]), 1);
    EXPECT_TRUE(fs::exists(path("c.csv.meta.json")));

    std::string svg = slurp(path("d.svg"));
    EXPECT_NE(svg.find("viewBox=\"0 0 1000 1000\""), std::string::npos);
    EXPECT_NE(svg.find(" A"), std::string::npos);  // native arc segments
    EXPECT_NE(svg.find("<!-- genvor 0.3.0 seed="), std::string::npos);
}

TEST_F(Cli, BuildJsonOutput) {
    ASSERT_EQ(run("gen --model randomside --n 12 --seed 3 -o " + path("inst.json")), 0);
    ASSERT_EQ(run("build --diagram semi -i " + path("inst.json") + " -o " + path("d.json") + " --validate 2000"), 0);
    auto j = nlohmann::json::parse(slurp(path("d.json")));
    EXPECT_EQ(j["kind"], "semi");
    EXPECT_TRUE(j["euler_ok"].get<bool>());
    long total = j["complexity"]["total"];
    EXPECT_EQ(total, j["complexity"]["finite_vertices"].get<long>() + j["complexity"]["infinity_vertex"].get<long>() +
                         j["complexity"]["edges"].get<long>() + j["complexity"]["faces"].get<long>());
}

TEST_F(Cli, CoverPrintsBound) {
    ASSERT_EQ(run("cover --k 3 --trials 100000 --seed 1"), 0);
    std::string o = out();
    EXPECT_NE(o.find("bound=0.875"), std::string::npos);
    EXPECT_NE(o.find("p_hat="), std::string::npos);
    EXPECT_NE(o.find("within_3se=yes"), std::string::npos);
}

TEST_F(Cli, OutputsAreByteIdentical) {
    ASSERT_EQ(run("gen --model uniform --n 40 --weights interval --seed 2 -o " + path("inst.json")), 0);
    for (int i = 0; i < 2; ++i) {
        std::string tag = std::to_string(i);
        ASSERT_EQ(run("build --diagram multiplicative -i " + path("inst.json") + " -o " + path("d" + tag + ".svg") +
                      " --count " + path("c" + tag + ".csv")),
                  0);
    }
    EXPECT_EQ(slurp(path("d0.svg")), slurp(path("d1.svg")));
    EXPECT_EQ(slurp(path("c0.csv")), slurp(path("c1.csv")));
    EXPECT_EQ(slurp(path("c0.csv.meta.json")), slurp(path("c1.csv.meta.json")));
}

TEST_F(Cli, ScaleOutputIndependentOfJobs) {
    const std::string common = "scale --model finite --schedule 8,16 --trials 3 --seed 4 --validate 500";
    ASSERT_EQ(run(common + " --jobs 1 -o " + path("a.csv") + " --summary " + path("as.csv")), 0);
    ASSERT_EQ(run(common + " --jobs 3 -o " + path("b.csv") + " --summary " + path("bs.csv")), 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    EXPECT_EQ(slurp(path("as.csv")), slurp(path("bs.csv")));
    std::string csv = slurp(path("a.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "model,n,trial,seed,vertices,edges,faces,total,total_in_U,wall_ms");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

TEST_F(Cli, EnvironmentSeedOverridesFlag) {
    ASSERT_EQ(run("gen --n 5 --seed 7 -o " + path("a.json"), "", "GENVOR_SEED=8"), 0);
    ASSERT_EQ(run("gen --n 5 --seed 8 -o " + path("b.json")), 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    ASSERT_EQ(run("gen --n 5 --seed 7 -o " + path("c.json")), 0);
    EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
}

TEST_F(Cli, ValidateReportsAndGatesOnMismatch) {
    ASSERT_EQ(run("gen --model uniform --n 20 --weights interval --seed 5 -o " + path("inst.json")), 0);
    ASSERT_EQ(run("validate --diagram multiplicative --probes 3000 -i " + path("inst.json") + " -o " + path("r.json")),
              0);
    auto rep = nlohmann::json::parse(slurp(path("r.json")));
    EXPECT_TRUE(rep["passed"].get<bool>());
    EXPECT_GT(rep["probes_tested"].get<long>(), 2900);
    // The unweighted diagram disagrees with the weighted oracle.
    EXPECT_EQ(run("validate --diagram standard --against multiplicative --probes 3000 -i " + path("inst.json")), 2);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("gen --bogus"), 1);
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("build -i " + path("missing.json")), 1);
    std::ofstream(path("bad.json")) << "{\"sites\": [[\"x\", \"1\"]]}";
    EXPECT_EQ(run("count -i " + path("bad.json")), 1);
    ASSERT_EQ(run("gen --n 4097 -o " + path("big.json")), 0);
    EXPECT_EQ(run("count -i " + path("big.json")), 3);
    EXPECT_EQ(run("scale --model standard --schedule 5000 --trials 1"), 3);
    ASSERT_EQ(run("gen --n 3 -o " + path("small.json")), 0);
    EXPECT_EQ(run("build --diagram orderk --k 9 -i " + path("small.json")), 1);
}

TEST_F(Cli, CountGridlocalPruneRender) {
    ASSERT_EQ(run("gen --model uniform --n 30 --weights geometric --seed 1 -o " + path("inst.json")), 0);
    ASSERT_EQ(run("count --diagram multiplicative -i " + path("inst.json")), 0);
    EXPECT_EQ(out().rfind("# genvor 0.3.0 seed=", 0), 0u);
    ASSERT_EQ(run("gridlocal --n 16,64 -o " + path("g.csv")), 0);
    std::string g = slurp(path("g.csv"));
    EXPECT_EQ(std::count(g.begin(), g.end(), '\n'), 3);
    ASSERT_EQ(run("prune --n 50 --probes 50 -o " + path("p.csv")), 0);
    EXPECT_NE(out().find("violations=0"), std::string::npos);
    ASSERT_EQ(run("render --diagram multiplicative -i " + path("inst.json") + " -o " + path("r.svg")), 0);
    EXPECT_NE(slurp(path("r.svg")).find("</svg>"), std::string::npos);
}
