#include <gtest/gtest.h>

#include <sstream>

#include "sumprod/cli.hpp"

using sumprod::cli::dispatch;
using sumprod::cli::Format;
using sumprod::cli::RunConfig;
using sumprod::io::Json;

namespace {

struct Outcome {
    int rc;
    std::string out, err;
};

Outcome run(RunConfig cfg) {
    std::ostringstream out, err;
    const int rc = dispatch(cfg, out, err);
    return {rc, out.str(), err.str()};
}

RunConfig make(std::string sc, std::map<std::string, std::string> params) {
    RunConfig c;
    c.subcommand = std::move(sc);
    c.params = std::move(params);
    return c;
}

}  // namespace

TEST(Cli, MasonCubePlusOne) {
    const Outcome r = run(make("mason", {{"A", "x^3"}, {"B", "1"}}));
    ASSERT_EQ(r.rc, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["subcommand"], "mason");
    EXPECT_EQ(j["report"]["holds"], true);
    EXPECT_EQ(j["report"]["k"], 4);
    EXPECT_EQ(j["report"]["witness"], Json::parse(R"(["0","0","1"])"));
    EXPECT_EQ(j["report"]["C"], Json::parse(R"(["1","0","0","1"])"));
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, EveryDefaultRunSucceeds) {
    const std::map<std::string, std::map<std::string, std::string>> required{
        {"mason", {{"A", "x^2"}, {"B", "2*x+1"}}},
        {"wronskian", {{"fs", "1,x,x^2"}}},
        {"matchings", {{"rows", "x,1,2;x,3,4;x,5,7"}}},
    };
    for (const auto& spec : sumprod::cli::subcommands()) {
        const auto it = required.find(spec.name);
        RunConfig c = make(spec.name, it == required.end() ? std::map<std::string, std::string>{} : it->second);
        const Outcome r = run(c);
        ASSERT_EQ(r.rc, 0) << spec.name << ": " << r.err;
        const Json j = Json::parse(r.out);
        EXPECT_EQ(j["subcommand"], spec.name);
        EXPECT_EQ(j["params"].size(), spec.params.size()) << spec.name;
        EXPECT_TRUE(j.contains("report"));
    }
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run(make("nonesuch", {})).rc, 2);
    EXPECT_EQ(run(make("mason", {{"A", "x"}})).rc, 2);                              // missing B
    EXPECT_EQ(run(make("mason", {{"A", "x"}, {"B", "1"}, {"Z", "1"}})).rc, 2);      // unknown key
    EXPECT_EQ(run(make("mason", {{"A", "x+"}, {"B", "1"}})).rc, 2);                 // parse error
    EXPECT_EQ(run(make("mason", {{"A", "x"}, {"B", "2*x"}})).rc, 2);                // not coprime
    EXPECT_EQ(run(make("fermat-int", {{"k", "three"}})).rc, 2);
    EXPECT_EQ(run(make("fermat-poly", {{"monic", "yes"}})).rc, 2);
    EXPECT_EQ(run(make("growth", {{"set", "zigzag"}})).rc, 2);
    RunConfig c = make("mason", {{"A", "x"}, {"B", "1"}});
    c.format = Format::csv;
    const Outcome r = run(c);
    EXPECT_EQ(r.rc, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("error[precondition]"), std::string::npos);
}

TEST(Cli, CapRefusalExitsThree) {
    Outcome r = run(make("fermat-int", {{"k", "6"}, {"signs", "+++---"}, {"H", "1000"}}));
    EXPECT_EQ(r.rc, 3);
    EXPECT_NE(r.err.find("error[resource_cap]"), std::string::npos);

    RunConfig c = make("growth", {{"n", "30"}, {"l-max", "3"}, {"set", "random"}});
    c.caps.max_set = 50;
    r = run(c);
    EXPECT_EQ(r.rc, 3) << r.err;
}

TEST(Cli, DeterministicPerSeed) {
    RunConfig c = make("growth", {{"set", "random"}, {"n", "6,9"}, {"l-max", "2"}});
    c.seed = 11;
    const Outcome a = run(c), b = run(c);
    ASSERT_EQ(a.rc, 0);
    EXPECT_EQ(a.out, b.out);
    c.params["set"] = "list";
    c.params["elems"] = "x,x+1";
    c.params["n"] = "2";
    EXPECT_EQ(run(c).rc, 0);

    RunConfig d = make("replay", {{"set", "random"}, {"n", "10"}, {"M", "1"}, {"gamma-limit", "4"}});
    d.seed = 3;
    EXPECT_EQ(run(d).out, run(d).out);
}

TEST(Cli, CsvHeaderOnce) {
    RunConfig c = make("growth", {{"set", "ap"}, {"n", "4,8,16"}, {"l-max", "2"}});
    c.format = Format::csv;
    const Outcome r = run(c);
    ASSERT_EQ(r.rc, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "label,n,sum_size,prod_size,pow_1,pow_2,sum_1,sum_2");
    EXPECT_EQ(lines[1].rfind("ap_4,4,7,", 0), 0u);
    for (std::size_t i = 1; i < lines.size(); ++i) EXPECT_EQ(lines[i].find("label"), std::string::npos);
}

TEST(Cli, FermatPolyNoNontrivialCubes) {
    const Outcome r = run(make("fermat-poly", {{"k", "3"}, {"m", "3"}, {"deg-max", "1"}, {"height", "2"}}));
    ASSERT_EQ(r.rc, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["report"]["nontrivial_count"], 0);
    EXPECT_FALSE(j["report"].contains("elapsed_ms"));
}

TEST(Cli, TimingOnlyWhenAsked) {
    RunConfig c = make("fermat-int", {{"H", "20"}});
    c.timing = true;
    Outcome r = run(c);
    ASSERT_EQ(r.rc, 0);
    EXPECT_TRUE(Json::parse(r.out)["report"].contains("elapsed_ms"));
    c.timing = false;
    c.format = Format::text;
    r = run(c);
    EXPECT_EQ(r.out.find("elapsed_ms"), std::string::npos);
    // 1729 and 4104 both have two representations with parts <= 20.
    EXPECT_NE(r.out.find("report.nontrivial_count: 2"), std::string::npos);
}

TEST(Cli, TextListsScalarsInline) {
    RunConfig c = make("wronskian", {{"fs", "x,x^2,2*x+x^2"}});
    c.format = Format::text;
    const Outcome r = run(c);
    ASSERT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find("report.certificate: [1, 1/2, -1/2]"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("report.certificate_verified: true"), std::string::npos);
}

TEST(Cli, MatchingsPlantedChain) {
    // Rows (f, g, h) with column 3 proportional to column 1 by (x+2).
    const Outcome r = run(make("matchings", {{"rows", "x,1,x^2+2*x;x+1,2,x^2+3*x+2;3,x,3*x+6"}, {"M", "1"}}));
    ASSERT_EQ(r.rc, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["report"]["det"], Json::array());
    EXPECT_EQ(j["report"]["matching"]["perfect"], true);
    ASSERT_FALSE(j["report"]["matching"]["chains"].empty());
    EXPECT_EQ(j["report"]["matching"]["chains"][0]["text"], "t3/t1 = u3/u1 = v3/v1 = x + 2");
}
