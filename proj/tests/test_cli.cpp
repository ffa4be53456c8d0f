#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("bpbnu_cli_") + info->name() + "_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(const std::string& args, const std::string& env = "") const
    {
        const std::string cmd =
            env + " " + BPBNU_CLI_PATH + " " + args + " >" + path("stdout") + " 2>" + path("stderr");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const std::string& name) const
    {
        std::ifstream in(path(name), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path(name), std::ios::binary) << text;
    }

    fs::path dir_;
};

const char* two_atom = R"({"field":"real","weights":[1,1],"f0":{"values":[0.6,0.4]},"g0":{"values":[1,1]},
"kernel":{"columns":[[1,0],[0,0.999999999999]]},"eps":0.99,"eta_mode":"paper"})";

const char* one_atom = R"({"field":"complex","weights":[2.5],"f0":{"values":[[0.4,0]]},"g0":{"values":[[1,0]]},
"kernel":{"columns":[[[0.4,0]]]},"eps":0.5,"eta_mode":"paper"})";

} // namespace

TEST_F(Cli, CorrectTrivialInstance)
{
    write("one.json", one_atom);
    ASSERT_EQ(run("correct --input " + path("one.json") + " --output " + path("r.json")), 0) << slurp("stderr");
    const auto r = ordered_json::parse(slurp("r.json"));
    EXPECT_EQ(r["certificate"]["dist_T"], 0.0);
    EXPECT_EQ(r["certificate"]["dist_f"], 0.0);
    EXPECT_EQ(r["certificate"]["dist_g"], 0.0);
    EXPECT_TRUE(r["certificate"]["certified"].get<bool>());
}

TEST_F(Cli, CorrectDeltaDefect)
{
    write("two.json", two_atom);
    ASSERT_EQ(run("correct --input " + path("two.json") + " --output " + path("r.json")), 0) << slurp("stderr");
    const auto r = ordered_json::parse(slurp("r.json"));
    EXPECT_NEAR(r["certificate"]["dist_T"].get<double>(), 1e-12, 1e-15);
    EXPECT_EQ(r["result"]["T3"]["columns"], ordered_json::parse("[[1.0,0.0],[0.0,1.0]]"));
}

TEST_F(Cli, GenCorrectVerifyRoundTrip)
{
    for (const char* field : {"real", "complex"}) {
        ASSERT_EQ(run(std::string("gen --n 12 --structure clustered-blocks --eps 0.95 --seed 8 --field ") + field
                      + " --output " + path("in.json")),
                  0)
            << slurp("stderr");
        ASSERT_EQ(run("correct --input " + path("in.json") + " --output " + path("r.json")), 0) << slurp("stderr");
        ASSERT_EQ(run("verify --input " + path("in.json") + " --result " + path("r.json") + " --output "
                      + path("c.json")),
                  0)
            << slurp("stderr");
        EXPECT_TRUE(ordered_json::parse(slurp("c.json"))["verdict"].get<bool>());
    }
}

TEST_F(Cli, CorruptedResultFailsVerify)
{
    write("two.json", two_atom);
    ASSERT_EQ(run("correct --input " + path("two.json") + " --output " + path("r.json")), 0);
    auto r = ordered_json::parse(slurp("r.json"));
    r["result"]["T3"]["columns"][0] = ordered_json::parse("[2.98, 0.0]");
    write("bad.json", r.dump());
    EXPECT_EQ(run("verify --input " + path("two.json") + " --result " + path("bad.json")), 1);
    const auto err = slurp("stderr");
    EXPECT_NE(err.find("dist_T"), std::string::npos) << err;
    EXPECT_NE(err.find("nu_T3"), std::string::npos) << err;
}

TEST_F(Cli, ReportsAreByteIdentical)
{
    ASSERT_EQ(run("gen --n 9 --structure defected --eps 0.9 --seed 3 --field complex --output " + path("in.json")), 0);
    ASSERT_EQ(run("correct --input " + path("in.json") + " --output " + path("a.json")), 0);
    ASSERT_EQ(run("correct --input " + path("in.json") + " --output " + path("b.json")), 0);
    EXPECT_EQ(slurp("a.json"), slurp("b.json"));
    EXPECT_FALSE(slurp("a.json").empty());
}

TEST_F(Cli, MalformedInputExitsTwo)
{
    write("junk.json", "{not json");
    EXPECT_EQ(run("correct --input " + path("junk.json")), 2);
    EXPECT_EQ(run("correct --input " + path("missing.json")), 2);
    auto j = ordered_json::parse(two_atom);
    j["kernel"] = ordered_json::parse(R"({"rows":[[1,0],[0,1]]})");
    write("rows.json", j.dump());
    EXPECT_EQ(run("correct --input " + path("rows.json")), 2);
    j = ordered_json::parse(two_atom);
    j["kernel"]["columns"][1][1] = 0.5;
    write("far.json", j.dump());
    EXPECT_EQ(run("correct --input " + path("far.json")), 2);
    EXPECT_EQ(run("gen --n 3 --structure defected --gap 0.5"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("correct --input " + path("junk.json"), "BPBNU_TOL=abc"), 2);
}

TEST_F(Cli, EtaModeOverride)
{
    write("two.json", two_atom);
    ASSERT_EQ(run("correct --eta-mode custom:0.001 --input " + path("two.json") + " --output " + path("r.json")), 0);
    const auto r = ordered_json::parse(slurp("r.json"));
    EXPECT_EQ(r["eta_mode"], "custom:0.001");
    EXPECT_TRUE(r["certificate"]["verdict"].get<bool>());
    EXPECT_FALSE(r["certificate"]["certified"].get<bool>());
    EXPECT_EQ(run("correct --eta-mode custom:1 --input " + path("two.json")), 2);
}

TEST_F(Cli, ToleranceFromEnvironment)
{
    write("two.json", two_atom);
    ASSERT_EQ(run("correct --input " + path("two.json") + " --output " + path("r.json"), "BPBNU_TOL=1e-6"), 0);
    EXPECT_EQ(ordered_json::parse(slurp("r.json"))["certificate"]["tolerance"], 1e-6);
}

TEST_F(Cli, SweepCsv)
{
    ASSERT_EQ(run("sweep --eps 0.5,0.9 --n 3 --trials 2 --seed 4 --output " + path("s.csv")), 0) << slurp("stderr");
    std::istringstream csv(slurp("s.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "eps,eta_paper,eta_empirical,n,trials,seed");
    std::getline(csv, line);
    EXPECT_EQ(line.rfind("0.5,4.5474735088646412e-13,", 0), 0u) << line;
    EXPECT_NE(line.find(",3,2,4"), std::string::npos) << line;
}

TEST_F(Cli, LemmasJson)
{
    ASSERT_EQ(run("lemmas --seed 5 --trials 500"), 0) << slurp("stderr");
    const auto j = ordered_json::parse(slurp("stdout"));
    EXPECT_TRUE(j["all_pass"].get<bool>());
    EXPECT_EQ(j["suites"].size(), 7u);
    for (const auto& s : j["suites"])
        EXPECT_EQ(s["failed"], 0);
}
