#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <srlab/report.hpp>

using namespace srlab;

TEST_SUITE_BEGIN("report");

namespace {

Report sample_report() {
    Report rep;
    rep.config.command = "bounds";
    rep.config.family = "square2n";
    rep.checks.push_back({"precondition", true, Json{{"elapsed_ms", 12.5}}});
    rep.checks.push_back({"design-below-paper", true, Json::object()});
    rep.findings.push_back({"closed-form-discrepancy", "formula disagrees", true,
                            Json{{"family", "uniform8"}}});
    rep.result["design_bound"] = "27";
    rep.elapsed_seconds = 0.25;
    return rep;
}

std::string temp_path(const char* stem) {
    return std::string("report_test_") + stem + ".golden";
}

} // namespace

TEST_CASE("canonical form is sorted, stable and free of timing keys") {
    Report rep = sample_report();
    std::string a = canonical_json(rep.to_json());
    rep.elapsed_seconds = 99.0; // volatile keys must not affect the bytes
    rep.checks[0].details["elapsed_ms"] = 4711.0;
    std::string b = canonical_json(rep.to_json());
    CHECK(a == b);
    CHECK(a.find("elapsed") == std::string::npos);
    CHECK(a.back() == '\n');

    // keys come out sorted regardless of insertion order
    Json j;
    j["zeta"] = 1;
    j["alpha"] = 2;
    std::string dumped = canonical_json(j);
    CHECK(dumped.find("alpha") < dumped.find("zeta"));

    // the full serialization still carries the timing for human readers
    Json full = sample_report().to_json();
    CHECK(full["elapsed_seconds"] == 0.25);
    CHECK(full["passed"] == true);
}

TEST_CASE("all_pass distinguishes expected findings from failures") {
    Report rep = sample_report();
    CHECK(rep.all_pass()); // expected finding only

    Report failed = sample_report();
    failed.checks.push_back({"broken", false, Json::object()});
    CHECK_FALSE(failed.all_pass());

    Report surprising = sample_report();
    surprising.findings.push_back({"claim-violation", "unexpected", false, Json::object()});
    CHECK_FALSE(surprising.all_pass());
}

TEST_CASE("golden files round-trip by byte equality") {
    const std::string path = temp_path("roundtrip");
    Json doc = sample_report().to_json();
    golden_store(doc, path);
    CHECK(golden_compare(doc, path));

    // volatile keys may differ without breaking the comparison
    Json later = doc;
    later["elapsed_seconds"] = 123.0;
    CHECK(golden_compare(later, path));

    Json mutated = doc;
    mutated["result"]["design_bound"] = "28";
    CHECK_FALSE(golden_compare(mutated, path));

    CHECK_THROWS_AS(golden_compare(doc, "no_such_dir/nope.golden"), IoError);
    std::remove(path.c_str());
}

TEST_CASE("reports validate against the shipped schema") {
    std::ifstream in(std::string(SRLAB_SOURCE_DIR) + "/report.schema.json");
    REQUIRE(in.good());
    Json schema = Json::parse(in);

    std::string why;
    CHECK(validate_schema(sample_report().to_json(), schema, &why));
    CHECK(why.empty());

    Json missing = sample_report().to_json();
    missing.erase("checks");
    CHECK_FALSE(validate_schema(missing, schema, &why));
    CHECK(why.find("checks") != std::string::npos);

    Json bad_type = sample_report().to_json();
    bad_type["checks"] = "not an array";
    CHECK_FALSE(validate_schema(bad_type, schema, nullptr));

    Json bad_enum = sample_report().to_json();
    bad_enum["config"]["command"] = "frobnicate";
    CHECK_FALSE(validate_schema(bad_enum, schema, &why));
}

TEST_CASE("bound table rows at the worked example") {
    std::vector<TableRow> rows = table_rows(3, 2, 2, 10000000);
    REQUIRE(rows.size() == 4);

    CHECK(rows[0].family == "uniform4");
    CHECK(rows[0].params == "q=3,n=2,t=2");
    CHECK(rows[0].d == "2");
    CHECK(rows[0].tau == "2");
    CHECK(rows[0].paper_bound == "9565939");
    CHECK(rows[0].gamma_bound == "30489900");
    CHECK(rows[0].brute_force_L == ""); // 3^16 words, past the scan budget
    CHECK(rows[0].design_bound == "729");
    CHECK(rows[0].status == "ok");

    CHECK(rows[1].family == "uniform8");
    CHECK(rows[1].paper_bound == "62762119219");
    CHECK(rows[1].design_bound == "4782969");
    CHECK(rows[1].status.substr(0, 20) == "closed-form mismatch");
    CHECK(rows[1].status.find("9565939") != std::string::npos);

    CHECK(rows[2].family == "square2n");
    CHECK(rows[2].d == "3");
    CHECK(rows[2].paper_bound == "4782970");
    CHECK(rows[2].gamma_bound == "15244951");
    CHECK(rows[2].brute_force_L == "5");
    CHECK(rows[2].design_bound == "27");
    CHECK(rows[2].status == "ok");

    CHECK(rows[3].family == "square4n");
    CHECK(rows[3].d == "");
    CHECK(rows[3].paper_bound == "");
    CHECK(rows[3].status.find("n >= 4") != std::string::npos);

    // without a brute budget the exact column stays empty everywhere
    std::vector<TableRow> dry = table_rows(3, 2, 2);
    CHECK(dry[2].brute_force_L == "");
}

TEST_CASE("table renderers emit the fixed column set") {
    std::vector<TableRow> rows = table_rows(3, 2, 2, 10000000);

    std::string csv = render_table_csv(rows);
    std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header ==
          "family,params,d,tau,paper_bound,gamma_bound,brute_force_L,design_bound,status");
    CHECK(csv.find("\"q=3,n=2,t=2\"") != std::string::npos); // commas force quotes
    CHECK(csv.find("square2n") != std::string::npos);

    std::string md = render_table_md(rows);
    CHECK(md.find("| family |") != std::string::npos);
    CHECK(md.find("paper_bound") != std::string::npos);
    CHECK(md.find("| 27 |") != std::string::npos);

    Json arr = table_json(rows);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 4);
    CHECK(arr[2]["brute_force_L"] == "5");
    CHECK(arr[2]["paper_bound"] == "4782970");

    // renders are pure functions of the rows
    CHECK(render_table_csv(rows) == csv);
    CHECK(render_table_md(rows) == md);
}

TEST_SUITE_END();
