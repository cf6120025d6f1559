#pragma once

#include "starlab/functional.hpp"
#include "starlab/report.hpp"
#include "starlab/star.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace starlab {

inline constexpr int max_scenario_degree = 8;
inline constexpr int max_scenario_order = 12;
inline constexpr int max_scenario_n = 4;

// Per-check settings from the optional [check-name] tables.
struct CheckOptions {
    std::optional<std::string> expect;               // psd: "psd" | "indefinite"
    std::optional<std::string> witness_value;        // psd
    std::optional<std::size_t> samples;              // assoc, hermitian, schrodinger-props, soundness
    std::optional<int> max_degree;                   // assoc, hermitian, schrodinger-props
    std::optional<std::size_t> expect_dim;           // kernel
    std::optional<std::size_t> expect_classical_dim; // kernel
    std::optional<Rational> cap;                     // deform
    std::optional<Rational> expect_c;                // deform
    std::optional<int> expect_order;                 // no-go
    std::vector<std::string> members;                // schrodinger-member
    std::vector<std::string> non_members;            // schrodinger-member
    std::map<std::string, std::string> operators;    // schrodinger-op: observable -> expected operator
};

struct Scenario {
    std::string source;
    std::string name;
    Space space;
    std::string product;
    std::optional<BidiffGenerator> generator;
    std::optional<Functional> functional;
    int degree = 0;
    int order = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> observable_text;
    std::vector<SeriesPoly> observables;
    std::vector<std::string> checks;
    std::map<std::string, CheckOptions> options;

    const CheckOptions &options_for(const std::string &check) const;
};

// Names accepted in `checks`.
const std::vector<std::string> &known_checks();

// Throws ParseError carrying the 1-based line of the offending entry.
Scenario parse_scenario(std::string_view text, const std::string &source);
Scenario load_scenario(const std::filesystem::path &path);

struct ScenarioReport {
    // Deterministic part: scenario echo, per-check results, overall verdict.
    Json body;
    // Wall-clock per check in microseconds; never compared.
    Json timings;
    bool pass = false;
};

// Runs every check in declared order. A check that throws is reported as a
// failure with the error text; nothing is skipped.
ScenarioReport run_scenario(const Scenario &s);

// body plus a top-level "timings" entry.
Json full_report(const ScenarioReport &r);

// Removes "seed" keys and the top-level "timings" before comparing.
Json comparable(const Json &report);

struct VerifyOutcome {
    std::string scenario;
    bool checks_pass = false;
    bool matches = false;
    // JSON pointer of the first difference, or the error text.
    std::string mismatch;
    Json body;
};

struct VerifySummary {
    std::vector<VerifyOutcome> outcomes;
    bool pass() const;
    std::string summary() const;
};

// Runs every *.toml in `dir` (sorted by name) and compares against
// dir/golden/<stem>.json. With `bless`, goldens are rewritten instead.
// Reports are also written to `out_dir` when given. Scenarios run
// concurrently; each one is sequential inside.
VerifySummary verify_all(const std::filesystem::path &dir, std::optional<std::uint64_t> seed_override = {},
                         bool bless = false, const std::optional<std::filesystem::path> &out_dir = {});

} // namespace starlab
