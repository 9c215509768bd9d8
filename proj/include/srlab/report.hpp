#pragma once

#include <nlohmann/json.hpp>

#include <srlab/bounds.hpp>

namespace srlab {

// object keys serialize in sorted order, which the golden files rely on
using Json = nlohmann::json;

struct RunConfig {
    std::string command;
    uint16_t q = 3;
    unsigned n = 2;
    unsigned t = 2;
    std::string family;
    std::string variant;
    std::string format = "json";
    unsigned tau = 0;
    uint64_t budget = 10000000;
    uint64_t seed = 0;
    unsigned threads = 1;

    Json to_json() const;
};

struct CheckResult {
    std::string name;
    bool verdict = false;
    Json details = Json::object();
};

struct Finding {
    std::string kind;
    std::string detail;
    bool expected = false; // documented discrepancies pass; claim violations do not
    Json data = Json::object();
};

struct Report {
    RunConfig config;
    std::vector<CheckResult> checks;
    std::vector<Finding> findings;
    Json result = Json::object(); // subcommand-specific payload
    double elapsed_seconds = 0;
    std::string version = "0.1.0";

    bool all_pass() const;
    Json to_json() const;
};

/// Serialization with volatile keys (timings) removed: byte-identical for
/// identical config and seed.
std::string canonical_json(const Json& report);

void golden_store(const Json& report, const std::string& path);
/// Byte equality against the stored canonical form.  IoError when the file
/// is unreadable; GoldenMismatch is NOT thrown — the verdict is returned.
bool golden_compare(const Json& report, const std::string& path);

/// Structural validator for the subset of JSON Schema the shipped schema
/// uses: type, required, properties, items, enum.
bool validate_schema(const Json& doc, const Json& schema, std::string* why = nullptr);

/// One rendered row of the bound-comparison table; every cell preformatted.
struct TableRow {
    std::string family;
    std::string params;
    std::string d;
    std::string tau;
    std::string paper_bound;
    std::string gamma_bound;
    std::string brute_force_L;
    std::string design_bound;
    std::string status;
};

std::vector<TableRow> table_rows(uint16_t q, unsigned n, unsigned t,
                                 uint64_t brute_budget = 0);
std::string render_table_csv(const std::vector<TableRow>& rows);
std::string render_table_md(const std::vector<TableRow>& rows);
Json table_json(const std::vector<TableRow>& rows);

} // namespace srlab
