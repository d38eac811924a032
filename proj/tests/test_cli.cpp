#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <aufusion/cli.hpp>

using namespace aufusion;

namespace
{
struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("aufusion_test_" + name);
}
} // namespace

TEST(Cli, Mul)
{
    const auto r = run({"mul", "10", "01", "10"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"100110\":1}\n");
    EXPECT_EQ(run({"mul", "0", "1"}).out, "{\"e\":1,\"01\":1}\n");
    EXPECT_EQ(run({"mul", "e"}).out, "{\"e\":1}\n");
}

TEST(Cli, DualDegree)
{
    EXPECT_EQ(run({"dual", "001"}).out, "011\n");
    EXPECT_EQ(run({"degree", "0"}).out, "1\n");
    EXPECT_EQ(run({"degree", "e"}).out, "0\n");
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({"mul", "01x"}).code, 2);
    EXPECT_EQ(run({"mul", ""}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"mul", "01", "--bogus"}).code, 2);
    EXPECT_EQ(run({"closure", "--gens", "01", "--work-len", "4", "--report-len", "6"}).code, 2);
    EXPECT_EQ(run({"check-simple", "--ad-len", "14", "--work-len", "12"}).code, 2);
    EXPECT_EQ(run({"enumerate", "--max-len", "3"}).code, 2);
    EXPECT_EQ(run({"enumerate", "--all", "--balanced", "--max-len", "3"}).code, 2);
    EXPECT_EQ(run({"ad-closure", "--seeds", "01", "--ambient", "xyz"}).code, 2);
    EXPECT_EQ(run({"ad-closure", "--seeds", "001", "--ambient", "pu"}).code, 2);
    const auto r = run({"mul", "01x"});
    EXPECT_NE(r.err.find("invalid character"), std::string::npos);
}

TEST(Cli, Enumerate)
{
    EXPECT_EQ(run({"enumerate", "--balanced", "--max-len", "2"}).out, "e\n01\n10\n");
    const auto j = json::parse(run({"enumerate", "--balanced", "--max-len", "4", "--json"}).out);
    EXPECT_EQ(j["result"]["count"], 9);
}

TEST(Cli, ClosureMembership)
{
    const auto r = run({"closure", "--gens", "01,10", "--work-len", "12", "--member", "0011"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0011: absent-certified (run-bound)\n");
    const auto j = json::parse(
        run({"closure", "--gens", "01,10", "--member", "100110", "--member", "0", "--json"}).out);
    EXPECT_EQ(j["result"]["queries"][0]["status"], "present");
    EXPECT_EQ(j["result"]["queries"][1]["reason"], "degree");
    EXPECT_EQ(j["tool"], "aufusion");
    EXPECT_FALSE(j.contains("timing"));
}

TEST(Cli, EmptyGeneratorSet)
{
    const auto j = json::parse(run({"closure", "--gens", "", "--json", "--members"}).out);
    EXPECT_EQ(j["result"]["members"], json::array({"e"}));
}

TEST(Cli, WitnessRoundTripsThroughVerifyCert)
{
    const auto path = temp_file("witness.json");
    const auto r = run({"closure", "--gens", "01,10", "--witness", "100110", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    const auto v = run({"verify-cert", path.string()});
    EXPECT_EQ(v.code, 0) << v.out << v.err;
    EXPECT_EQ(v.out, "valid: 100110\n");

    std::ifstream in(path);
    auto doc = json::parse(in);
    in.close();
    doc["certificate"]["term"] = "1010";
    {
        std::ofstream out(path);
        out << doc.dump();
    }
    const auto bad = run({"verify-cert", path.string()});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("invalid"), std::string::npos);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    EXPECT_EQ(run({"verify-cert", path.string()}).code, 2);
    EXPECT_EQ(run({"verify-cert", (path.string() + ".missing")}).code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, AdClosureWitnessContainsAdStep)
{
    const auto r = run({"ad-closure", "--seeds", "01", "--ambient", "au", "--witness", "100110", "--json"});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    const auto &doc = j["result"]["witnesses"][0]["document"];
    EXPECT_EQ(doc["certificate"]["kind"], "ad");
    EXPECT_TRUE(verify_certificate_file(certificate_file_from_json(doc)));
}

TEST(Cli, CheckExitCodes)
{
    const auto pass = run({"check-simple", "--ambient", "pu", "--seed-len", "4", "--report-len", "4", "--ad-len",
                           "6", "--work-len", "10", "--json"});
    EXPECT_EQ(pass.code, 0);
    EXPECT_EQ(json::parse(pass.out)["result"]["verdict"], "pass");

    const auto fail = run({"check-simple", "--ambient", "au", "--seed-len", "2", "--report-len", "2", "--ad-len",
                           "4", "--work-len", "8"});
    EXPECT_EQ(fail.code, 1);

    const auto inconclusive = run({"check-simple", "--ambient", "pu", "--seed-len", "2", "--report-len", "6",
                                   "--ad-len", "8", "--work-len", "12"});
    EXPECT_EQ(inconclusive.code, 3);
    EXPECT_NE(inconclusive.out.find("verdict: inconclusive"), std::string::npos);

    const auto circle = run({"check-circle", "--seed-len", "2", "--report-len", "4", "--ad-len", "6",
                             "--work-len", "10"});
    EXPECT_EQ(circle.code, 0);
}

TEST(Cli, TextAndJsonReportSameFacts)
{
    const std::vector<std::string> base{"check-simple", "--ambient", "gen:01,10", "--seed-len", "4", "--report-len",
                                        "4",            "--ad-len",  "6",         "--work-len", "10"};
    const auto text = run(base);
    auto json_args = base;
    json_args.push_back("--json");
    const auto j = json::parse(run(json_args).out)["result"];
    EXPECT_EQ(text.code, 0);
    for (const auto &rec : j["records"]) {
        const auto line = "  " + rec["seed"].get<std::string>() + ": " + rec["verdict"].get<std::string>();
        EXPECT_NE(text.out.find(line), std::string::npos) << line;
    }
    EXPECT_NE(text.out.find("verdict: " + j["verdict"].get<std::string>()), std::string::npos);
}

TEST(Cli, ThreadsAndTimingDoNotLeakIntoReports)
{
    const std::vector<std::string> base{"check-circle", "--seed-len", "2", "--report-len", "4",
                                        "--ad-len",     "6",          "--work-len", "10", "--json"};
    auto a = base;
    a.insert(a.end(), {"--threads", "1"});
    auto b = base;
    b.insert(b.end(), {"--threads", "8"});
    EXPECT_EQ(run(a).out, run(b).out);
    auto timed = base;
    timed.push_back("--timing");
    EXPECT_TRUE(json::parse(run(timed).out).contains("timing"));
}

TEST(Cli, Invertibles)
{
    EXPECT_EQ(run({"invertibles", "--max-len", "8"}).out, "e\n");
}
