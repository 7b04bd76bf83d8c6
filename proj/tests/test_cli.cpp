#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "dlogflow/cli.hpp"

using namespace dlogflow;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "dlogflow");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempFile {
public:
    TempFile(const std::string& name, const std::string& content)
        : path_(std::filesystem::temp_directory_path() / ("dlogflow_test_" + std::to_string(::getpid()) + "_" + name))
    {
        std::ofstream(path_) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

const char* z_plus_z2_json = R"({"nvars": 1, "trunc": 5, "components": [
    [{"exps": [1], "coeff": "1"}, {"exps": [2], "coeff": "1"}]]})";

} // namespace

TEST(Cli, TreesCount)
{
    const auto r = run_cli({"trees", "--count", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "9\n");
    const auto listed = run_cli({"trees", "--count", "3", "--list"});
    EXPECT_EQ(listed.out, "2\n((()))\n(()())\n");
    const auto j = json::parse(run_cli({"trees", "--count", "4", "--format", "json"}).out);
    EXPECT_EQ(j.at("count"), 4);
}

TEST(Cli, PhiTable)
{
    const auto r = run_cli({"--format", "csv", "phi-table", "--max-vertices", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "tree,v,alpha,phi\n()" ",1,1,1\n(()),2,1,-1/2\n((())),3,1,1/3\n(()()),3,2,1/6\n");
}

TEST(Cli, PsiTableJson)
{
    const auto r = run_cli({"psi-table", "--max-vertices", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[1].at("tree"), "(())");
    EXPECT_EQ(j[1].at("psi"), json({"0", "-1/2", "1/2"}));
}

TEST(Cli, VerifyOmegaPasses)
{
    const auto r = run_cli({"verify", "--suite", "omega", "--max-vertices", "6"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("omega: PASS (37/37)"), std::string::npos) << r.out;
}

TEST(Cli, VerifyIsReproducibleForASeed)
{
    const std::vector<std::string> args{"verify", "--suite", "keylemma", "--seed", "7", "--format", "json"};
    const auto a = run_cli(args), b = run_cli(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out)[0].at("seed"), 7);
}

TEST(Cli, VerifySeedFromEnvironment)
{
    ::setenv("DLOGFLOW_SEED", "12345", 1);
    const auto r = run_cli({"verify", "--suite", "dlog", "--format", "json"});
    ::unsetenv("DLOGFLOW_SEED");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)[0].at("seed"), 12345);
}

TEST(Cli, DlogBothRoutes)
{
    const TempFile map("map.json", z_plus_z2_json);
    const auto solver = run_cli({"dlog", "--map", map.path(), "--trunc", "4", "--format", "json"});
    const auto trees = run_cli({"dlog", "--map", map.path(), "--trunc", "4", "--route", "trees", "--format", "json"});
    ASSERT_EQ(solver.code, 0) << solver.err;
    EXPECT_EQ(solver.out, trees.out);
    const auto a = series_vector_from_json<Rational>(json::parse(solver.out));
    EXPECT_EQ(a[0].coeff({4}), Rational(3, 2));
    EXPECT_EQ(a.trunc(), 4u);
}

TEST(Cli, FlowAndInverse)
{
    const TempFile map("map.json", z_plus_z2_json);
    const auto two = run_cli({"flow", "--map", map.path(), "--t", "2", "--trunc", "4", "--format", "csv"});
    EXPECT_EQ(two.out, "component,exps,coeff\n1,1,1\n1,2,2\n1,3,2\n1,4,1\n");

    const auto sym = run_cli({"flow", "--map", map.path(), "--symbolic", "--format", "json"});
    ASSERT_EQ(sym.code, 0);
    const auto Ft = series_vector_from_json<RatPoly>(json::parse(sym.out));
    EXPECT_EQ(Ft[0].coeff({2}), RatPoly::t());

    const auto inv = run_cli({"invert", "--map", map.path()});
    EXPECT_EQ(inv.code, 0);
    const auto tree = run_cli({"invert", "--map", map.path(), "--format", "json"});
    const auto solver = run_cli({"invert", "--map", map.path(), "--method", "solver", "--format", "json"});
    EXPECT_EQ(tree.out, solver.out);
    EXPECT_EQ(series_vector_from_json<Rational>(json::parse(tree.out))[0].coeff({5}), Rational(14));
}

TEST(Cli, JsonRoundTrip)
{
    const TempFile map("map.json", z_plus_z2_json);
    const auto first = run_cli({"invert", "--map", map.path(), "--format", "json"});
    const TempFile again("again.json", first.out);
    // The inverse of the inverse is F again.
    const auto second = run_cli({"invert", "--map", again.path(), "--format", "json"});
    const auto F = series_vector_from_json<Rational>(json::parse(z_plus_z2_json));
    EXPECT_EQ(series_vector_from_json<Rational>(json::parse(second.out)), F);
    EXPECT_EQ(series_vector_from_json<Rational>(to_json(F)), F);
}

TEST(Cli, PTreeOrderPolyBernoulli)
{
    const TempFile H("h.json", R"({"nvars": 1, "trunc": 5, "components": [[{"exps": [2], "coeff": "1"}]]})");
    const auto p = run_cli({"ptree", "--tree", "(()())", "--system", H.path(), "--format", "csv"});
    EXPECT_EQ(p.out, "component,exps,coeff\n1,4,1\n");
    const auto o = run_cli({"order-poly", "--tree", "(())", "--format", "csv"});
    EXPECT_EQ(o.out, "tree,coeffs\n(()),0;-1/2;1/2\n");
    const auto b = run_cli({"bernoulli", "--n", "2", "--format", "json"});
    EXPECT_EQ(json::parse(b.out).at("b"), "1/6");
}

TEST(Cli, ConfigFileSuppliesDefaults)
{
    const TempFile cfg("cfg.toml", "format = \"csv\"\n");
    const auto r = run_cli({"--config", cfg.path(), "phi-table", "--max-vertices", "1"});
    EXPECT_EQ(r.out, "tree,v,alpha,phi\n(),1,1,1\n");
    const auto flag_wins = run_cli({"--config", cfg.path(), "--format", "text", "trees", "--count", "2"});
    EXPECT_EQ(flag_wins.out, "1\n");
}

TEST(Cli, ErrorsExitWithTwo)
{
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"bogus"}).code, 2);
    EXPECT_EQ(run_cli({"order-poly", "--tree", "(()"}).code, 2);
    EXPECT_EQ(run_cli({"verify", "--suite", "nope"}).code, 2);
    EXPECT_EQ(run_cli({"dlog", "--map", "/nonexistent/map.json"}).code, 2);

    const TempFile bad("bad.json", R"({"nvars": 1, "trunc": 3, "components": [[{"exps": [1], "coeff": "2"}]]})");
    const auto r = run_cli({"dlog", "--map", bad.path()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("identity"), std::string::npos) << r.err;

    const TempFile garbled("garbled.json", "{not json");
    EXPECT_EQ(run_cli({"invert", "--map", garbled.path()}).code, 2);
    const TempFile floats("floats.json", R"({"nvars": 1, "trunc": 3, "components": [[{"exps": [1], "coeff": 1.5}]]})");
    EXPECT_EQ(run_cli({"invert", "--map", floats.path()}).code, 2);
}

TEST(Cli, HelpExitsZero)
{
    const auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verify"), std::string::npos);
}
