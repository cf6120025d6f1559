#include "starlab/scenario.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace starlab;
namespace fs = std::filesystem;

namespace {

const std::string dir = STARLAB_SCENARIO_DIR;

std::size_t error_line(const std::string &text)
{
    try {
        (void)parse_scenario(text, "t.toml");
    } catch (const ParseError &e) {
        return e.position();
    }
    return 0;
}

std::string error_text(const std::string &text)
{
    try {
        (void)parse_scenario(text, "t.toml");
    } catch (const ParseError &e) {
        return e.what();
    }
    return "";
}

const Json &result(const Json &body, const std::string &check)
{
    for (const auto &r : body["results"]) {
        if (r["check"] == check) {
            return r;
        }
    }
    throw std::runtime_error("no result for " + check);
}

fs::path temp_copy()
{
    const fs::path tmp = fs::temp_directory_path() / ("starlab-golden-" + std::to_string(::getpid()));
    fs::remove_all(tmp);
    fs::create_directories(tmp / "golden");
    for (const auto &name : {"wick_delta", "no_go"}) {
        fs::copy_file(fs::path(dir) / (std::string(name) + ".toml"), tmp / (std::string(name) + ".toml"));
        fs::copy_file(fs::path(dir) / "golden" / (std::string(name) + ".json"),
                      tmp / "golden" / (std::string(name) + ".json"));
    }
    return tmp;
}

} // namespace

TEST_SUITE("cli-runner")
{
    TEST_CASE("wick_delta golden scenario")
    {
        const ScenarioReport r = run_scenario(load_scenario(dir + "/wick_delta.toml"));
        CHECK(r.pass);
        const Json &gns = result(r.body, "gns");
        CHECK(gns["inner_products"]["zb"] == "2*l");
        CHECK(gns["inner_products"]["zb^2"] == "8*l^2");
        const Json &k = result(r.body, "kernel");
        CHECK(k["ideal_basis"] == Json::array({"z", "z^2", "z*zb"}));
        CHECK(k["quantum_kernel_order0_dim"] == 3);
        CHECK(k["classical_kernel_dim"] == 5);
        for (const auto &res : r.body["results"]) {
            CHECK(res["claim"].get<std::string>().find("up to degree 2 and order 2") != std::string::npos);
        }
    }

    TEST_CASE("weyl_delta_indefinite golden scenario")
    {
        const ScenarioReport r = run_scenario(load_scenario(dir + "/weyl_delta_indefinite.toml"));
        CHECK(r.pass);
        const Json &psd = result(r.body, "psd");
        CHECK(psd["verdict"]["status"] == "indefinite");
        CHECK(psd["verdict"]["witness"] == Json::array({"0", "1", "1i"}));
        CHECK(psd["verdict"]["witness_value"] == "-l");
    }

    TEST_CASE("failing checks are reported, not skipped")
    {
        const std::string text = R"(
name = "expect-wrong"
chart = "phase-space"
product = "weyl-moyal"
functional = { kind = "delta-origin" }
degree = 1
order = 1
checks = ["psd", "gns", "gram"]
)";
        const ScenarioReport r = run_scenario(parse_scenario(text, "t.toml"));
        CHECK_FALSE(r.pass);
        REQUIRE(r.body["results"].size() == 3);
        CHECK(r.body["results"][0]["pass"] == false);
        CHECK(r.body["results"][1]["pass"] == false);
        CHECK(r.body["results"][1].contains("error"));
        CHECK(r.body["results"][2]["pass"] == true);
    }

    TEST_CASE("validation errors carry line numbers")
    {
        CHECK(error_line("name = \"x\"\nchart = \"complex\"\ndegree = 9\norder = 1\nchecks = [\"no-go\"]\n") == 3);
        CHECK(error_line("name = \"x\"\nchart = \"complex\"\ndegree = 1\norder = 13\nchecks = [\"no-go\"]\n") == 4);
        CHECK(error_line("name = \"x\"\nchart = \"complex\"\nn = 5\ndegree = 1\norder = 1\nchecks = [\"no-go\"]\n") ==
              3);
        CHECK(error_line("name = \"x\"\nchart = \"complex\"\ndegree = 1\norder = 1\nchecks = [\"no-go\", \"magic\"]\n") ==
              5);
        CHECK(error_line("name = \"x\"\nchart = \"torus\"\ndegree = 1\norder = 1\nchecks = [\"no-go\"]\n") == 2);
        CHECK(error_line("name = \"x\"\nchart = \"complex\"\ndegree = 1\norder = 1\nbogus = 3\nchecks = [\"no-go\"]\n") ==
              5);
        CHECK(error_line("name = \"x\"\nchart = \"complex\"\ndegree = 1\norder = 1\nchecks = [\"gram\"]\n") == 5);
        CHECK(error_line("name = \"x\"\nchart = \"complex\"\ndegree = 1\norder = 1\nchecks = [\"no-go\"]\n"
                         "observables = [\"q\"]\n") == 6);
        CHECK(error_line("name = \"x\"\nchart = \"complex\"\nproduct = \"weyl-moyal\"\ndegree = 1\norder = 1\n"
                         "checks = [\"assoc\"]\n") == 3);
        CHECK(error_line("name = \"x\"\n[broken\n") == 2);
        CHECK(error_line("name = \"x\"\nchart = \"complex\"\ndegree = 1\norder = 1\nchecks = [\"no-go\"]\n\n"
                         "[deform]\ncap = 1\n") == 7);
    }

    TEST_CASE("malformed functional table names the missing monomial")
    {
        const std::string text = R"(name = "t"
chart = "complex"
product = "wick"
degree = 1
order = 1
checks = ["psd"]
functional = { kind = "table", entries = { "1" = "1", "z" = "0", "zb" = "0", "z^2" = "0", "zb^2" = "0" } }
)";
        const std::string msg = error_text(text);
        CHECK(msg.find("'z*zb'") != std::string::npos);
        CHECK(msg.find("t.toml:7") == 0);
    }

    TEST_CASE("custom products from config")
    {
        const std::string text = R"(name = "c"
chart = "complex"
product = "custom"
degree = 1
order = 2
checks = ["assoc", "gram"]
functional = { kind = "delta-origin" }

[generator]
terms = [ { left = "z", right = "zb", coeff = "2" } ]

[assoc]
samples = 30
)";
        const Scenario s = parse_scenario(text, "c.toml");
        CHECK(s.generator->terms().size() == 1);
        CHECK(run_scenario(s).pass);
    }

    TEST_CASE("verify-all: clean, corrupted, deterministic")
    {
        const fs::path tmp = temp_copy();
        const VerifySummary ok = verify_all(tmp);
        CHECK(ok.pass());
        CHECK(ok.summary().rfind("all scenarios pass", 0) == 0);

        // Different seeds only change the seed fields.
        CHECK(verify_all(tmp, 99).pass());

        const fs::path golden = tmp / "golden" / "wick_delta.json";
        std::ifstream in(golden);
        Json g = Json::parse(in);
        in.close();
        g["results"][0]["gram"]["entries"][2][2] = "3*l";
        std::ofstream(golden) << g.dump(2);
        const VerifySummary bad = verify_all(tmp);
        CHECK_FALSE(bad.pass());
        const auto &o = bad.outcomes[1];
        CHECK(o.scenario == "wick_delta");
        CHECK(o.mismatch.find("/results/0/gram/entries/2/2") != std::string::npos);
        CHECK(bad.summary().find("wick_delta") != std::string::npos);

        const VerifySummary a = verify_all(tmp, 5, false, tmp / "a");
        const VerifySummary b = verify_all(tmp, 5, false, tmp / "b");
        for (const auto &name : {"wick_delta.json", "no_go.json"}) {
            std::ifstream fa(tmp / "a" / name);
            std::ifstream fb(tmp / "b" / name);
            const std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
            const std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
            CHECK_FALSE(sa.empty());
            CHECK(sa == sb);
        }
        fs::remove_all(tmp);
    }

    TEST_CASE("timings stay out of the compared body")
    {
        const ScenarioReport r = run_scenario(load_scenario(dir + "/no_go.toml"));
        CHECK_FALSE(r.body.contains("timings"));
        CHECK(full_report(r).contains("timings"));
        CHECK(comparable(full_report(r)) == comparable(r.body));
    }
}
