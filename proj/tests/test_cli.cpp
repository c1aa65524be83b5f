#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;

    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "sumdiff-cli");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = sumdiff::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

}  // namespace

TEST(Cli, CountEmitsRecord) {
    const auto o = invoke({"count", "--m", "3", "--L", "2", "--B", "5"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto j = o.json();
    EXPECT_EQ(j["schemaVersion"], "1.0");
    EXPECT_EQ(j["command"], "count");
    EXPECT_EQ(j["results"]["result"], 10);
    EXPECT_EQ(j["parameters"]["m"], 3);
    EXPECT_TRUE(j["runtimeMillis"].is_number_integer());
}

TEST(Cli, CountBeyond64BitsIsAString) {
    const auto o = invoke({"count", "--m", "100", "--L", "1000", "--B", "9"});
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(o.json()["results"]["result"], "1" + std::string(100, '0'));
}

TEST(Cli, RateZeroBranch) {
    const auto o = invoke({"rate", "--c", "1", "--B", "2"});
    ASSERT_EQ(o.code, 0);
    const auto j = o.json();
    EXPECT_EQ(j["results"]["result"], 0.0);
    EXPECT_TRUE(j["results"]["tStar"].is_null());
}

TEST(Cli, RateInteriorAndZeroMean) {
    auto j = invoke({"rate", "--c", "0.25", "--B", "1"}).json();
    EXPECT_NEAR(j["results"]["result"].get<double>(), 0.13081203594113696, 1e-12);
    j = invoke({"rate", "--c", "0", "--B", "3"}).json();
    EXPECT_EQ(j["results"]["tStar"], "-inf");
    EXPECT_EQ(j["results"]["result"].get<double>(), std::log(4.0));
}

TEST(Cli, Enumerate) {
    const auto j = invoke({"enumerate", "--m", "2", "--L", "1", "--B", "1"}).json();
    EXPECT_EQ(j["results"]["count"], 3);
    EXPECT_EQ(j["results"]["vectors"], nlohmann::json::parse("[[0,0],[1,0],[0,1]]"));
}

TEST(Cli, EnumerationCapFromEnvironment) {
    ::setenv(sumdiff::cli::kCapEnvVar, "10", 1);
    const auto o = invoke({"enumerate", "--m", "3", "--L", "3", "--B", "3"});
    ::unsetenv(sumdiff::cli::kCapEnvVar);
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("cap"), std::string::npos);
}

TEST(Cli, BoundWritesSet) {
    const std::string path = ::testing::TempDir() + "sumdiff_bound_set.txt";
    const auto o = invoke({"bound", "--m", "2", "--L", "1", "--B", "2", "--set-out", path});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto j = o.json();
    EXPECT_EQ(j["results"]["d"], 7);
    EXPECT_EQ(j["results"]["s"], 6);
    EXPECT_EQ(j["results"]["q"], 11);
    EXPECT_NEAR(j["results"]["theta"].get<double>(), 1.0 + std::log(7.0 / 6.0) / std::log(11.0), 1e-15);
    std::ifstream in(path);
    std::stringstream body;
    body << in.rdbuf();
    EXPECT_EQ(body.str(), "0\n1\n5\n");
    std::remove(path.c_str());
}

TEST(Cli, BoundRejectsSingletonSet) {
    EXPECT_EQ(invoke({"bound", "--m", "2", "--L", "0", "--B", "2"}).code, 2);
}

TEST(Cli, VerifySmallGrid) {
    const auto o = invoke({"verify", "--max-m", "2", "--max-L", "3", "--max-B", "2", "--f-max-m", "2", "--f-max-L", "2"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto j = o.json();
    EXPECT_TRUE(j["results"]["allPassed"].get<bool>());
    EXPECT_EQ(j["results"]["checks"].size(), 3u * 4u * 2u);
    for (const auto& c : j["results"]["checks"]) {
        EXPECT_TRUE(c["sumsetIdentity"].get<bool>());
        EXPECT_TRUE(c["diffsetIdentity"].get<bool>());
    }
}

TEST(Cli, Optimize) {
    const auto o = invoke({"optimize", "--B", "3", "--eps", "1e-6"});
    ASSERT_EQ(o.code, 0);
    EXPECT_NEAR(o.json()["results"]["thetaMinus1"].get<double>(), 0.168700179627153, 1e-8);
}

TEST(Cli, Table1CsvAndJsonAgree) {
    const std::vector<std::string> common{"table1", "--eps-list", "1e-6,1e-10", "--b-range", "4..6"};
    auto csvArgs = common;
    csvArgs.insert(csvArgs.end(), {"--format", "csv"});
    const auto csv = invoke(csvArgs);
    const auto json = invoke(common);
    ASSERT_EQ(csv.code, 0);
    ASSERT_EQ(json.code, 0);

    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "B,eps=1e-06,eps=1e-10");
    const auto rows = json.json()["results"]["rows"];
    std::size_t row = 0;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string field;
        std::getline(fields, field, ',');
        EXPECT_EQ(std::stoll(field), rows[row]["B"].get<std::int64_t>());
        for (std::size_t col = 0; std::getline(fields, field, ','); ++col) {
            EXPECT_EQ(std::stod(field), rows[row]["cells"][col]["thetaMinus1"].get<double>());
        }
        ++row;
    }
    EXPECT_EQ(row, 3u);
}

TEST(Cli, Table1IsByteIdenticalAcrossRuns) {
    const std::vector<std::string> args{"table1", "--eps-list", "1e-8", "--b-range", "3..5"};
    EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"count", "--m", "3"}).code, 2);
    EXPECT_EQ(invoke({"count", "--m", "-1", "--L", "2", "--B", "5"}).code, 2);
    EXPECT_EQ(invoke({"rate", "--c", "-0.5", "--B", "2"}).code, 2);
    EXPECT_EQ(invoke({"table1", "--format", "xml"}).code, 2);
    EXPECT_EQ(invoke({"table1", "--b-range", "3-10"}).code, 2);
    EXPECT_EQ(invoke({"table1", "--eps-list", "1e-4,abc"}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
}

TEST(Cli, FormatDoubleRoundTrips) {
    for (const double v : {0.173077279785136, 1e-10, 0.5, -0.05360536964281384}) {
        EXPECT_EQ(std::stod(sumdiff::cli::format_double(v)), v);
    }
}
