#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>

#include <json.hpp>

#include "biphoton/cli/report.hpp"
#include "biphoton/correlate.hpp"
#include "biphoton/grid.hpp"
#include "support.hpp"

using namespace biphoton;
using namespace biphoton::cli;
using testutil::near;
using testutil::parse_csv;
using testutil::run_cli;

namespace {

constexpr double kPi = std::numbers::pi;

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("format_double uses 15 significant digits and a dot separator") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(kPi) == "3.14159265358979");
    CHECK(format_double(2.0 * std::sqrt(2.0)) == "2.82842712474619");
    CHECK(format_double(1e-17) == "1e-17");
    CHECK(format_double(-0.25) == "-0.25");
}

TEST_CASE("render is byte-stable and checksums the rows") {
    Table t{{"x", "flag", "name"}, {{1.5, true, std::string("abc")},
                                    {std::uint64_t{7}, false, std::string("d/e")}}};
    RunManifest m1{.command = "demo",
                   .parameters = {{"alpha", "1"}, {"beta", "2"}},
                   .version = "0.1.0",
                   .checksum = {}};
    RunManifest m2 = m1;
    const std::string a = render(t, m1, OutputFormat::csv);
    const std::string b = render(t, m2, OutputFormat::csv);
    CHECK(a == b);
    CHECK(m1.checksum == m2.checksum);
    CHECK(m1.checksum.rfind("fnv1a64:", 0) == 0);

    Table t2 = t;
    t2.rows[0][0] = 1.5000001;
    RunManifest m3 = m1;
    render(t2, m3, OutputFormat::csv);
    CHECK(m3.checksum != m1.checksum);
}

TEST_CASE("the emitted checksum matches a recomputation over the rows") {
    const auto res = run_cli("sweep --points 4 --format csv");
    REQUIRE(res.exit_code == 0);
    const auto csv = parse_csv(res.out);
    std::string rows_bytes;
    for (const auto& row : csv.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) rows_bytes += ',';
            rows_bytes += row[i];
        }
        rows_bytes += '\n';
    }
    const std::string expected = "# checksum=" + fnv1a64(rows_bytes);
    bool found = false;
    for (const auto& comment : csv.comments) found = found || comment == expected;
    CHECK(found);
}

TEST_CASE("csv layout carries the manifest as comments") {
    Table t{{"x", "y"}, {{1.0, 2.0}}};
    RunManifest m{.command = "demo", .parameters = {{"k", "v"}}, .version = {}, .checksum = {}};
    const auto csv = parse_csv(render(t, m, OutputFormat::csv));
    REQUIRE(csv.comments.size() == 4);
    CHECK(csv.comments[0] == "# command=demo");
    CHECK(csv.comments[1] == "# k=v");
    CHECK(csv.comments[2] == "# version=0.1.0");
    CHECK(csv.comments[3].rfind("# checksum=fnv1a64:", 0) == 0);
    REQUIRE(csv.header.size() == 2);
    CHECK(csv.header[0] == "x");
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.rows[0][1] == "2");
}

TEST_CASE("json output holds exactly the manifest and rows keys") {
    Table t{{"x"}, {{0.25}}};
    RunManifest m{.command = "demo", .parameters = {}, .version = {}, .checksum = {}};
    const auto doc = nlohmann::json::parse(render(t, m, OutputFormat::json));
    REQUIRE(doc.is_object());
    CHECK(doc.size() == 2);
    CHECK(doc.contains("manifest"));
    CHECK(doc.contains("rows"));
    CHECK(doc["manifest"]["command"] == "demo");
    CHECK(doc["rows"][0]["x"] == 0.25);
}

TEST_CASE("rto reports the perfectly correlated point") {
    const auto res = run_cli("rto --phase-a 0 --phase-b 0 --format csv");
    REQUIRE(res.exit_code == 0);
    const auto csv = parse_csv(res.out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(near(csv.value(0, "p11"), 0.5, 1e-12));
    CHECK(near(csv.value(0, "p22"), 0.5, 1e-12));
    CHECK(near(csv.value(0, "p12"), 0.0, 1e-12));
    CHECK(near(csv.value(0, "p21"), 0.0, 1e-12));
    CHECK(near(csv.value(0, "degree"), 1.0, 1e-12));
}

TEST_CASE("usage errors exit with code 2 and emit no rows") {
    for (const char* bad : {"rto --phase-a bogus", "nosuchcommand", "rto --no-such-flag 1",
                            "sweep --points 0"}) {
        const auto res = run_cli(bad);
        CHECK(res.exit_code == 2);
        CHECK(parse_csv(res.out).rows.empty());
    }
}

TEST_CASE("help and version exit cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("rto --help").exit_code == 0);
    const auto res = run_cli("--version");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("chsh json reports the Bell value") {
    const auto res = run_cli("chsh --format json");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc.size() == 2);
    const auto& row = doc["rows"][0];
    CHECK(near(row["s_value"].get<double>(), 2.8284271, 1e-6));
    CHECK(row["violated"].get<bool>());
}

TEST_CASE("sweep emits the documented header and row count") {
    const auto res = run_cli("sweep --points 3");
    REQUIRE(res.exit_code == 0);
    const auto csv = parse_csv(res.out);
    REQUIRE(csv.header.size() == 4);
    CHECK(csv.header[0] == "delta_rad");
    CHECK(csv.header[1] == "p_corr");
    CHECK(csv.header[2] == "p_anti");
    CHECK(csv.header[3] == "degree");
    CHECK(csv.rows.size() == 3);
}

TEST_CASE("sampled sweeps with the same seed are byte-identical") {
    const std::string f1 = temp_path("biphoton_sweep_a.csv");
    const std::string f2 = temp_path("biphoton_sweep_b.csv");
    REQUIRE(run_cli("sweep --points 5 --trials 20000 --seed 7 --out " + f1).exit_code == 0);
    REQUIRE(run_cli("sweep --points 5 --trials 20000 --seed 7 --out " + f2).exit_code == 0);
    const auto a = testutil::read_file(f1);
    const auto b = testutil::read_file(f2);
    CHECK(!a.empty());
    CHECK(a == b);
    std::remove(f1.c_str());
    std::remove(f2.c_str());

    const auto j1 = run_cli("sweep --points 5 --trials 20000 --seed 7 --format json");
    const auto j2 = run_cli("sweep --points 5 --trials 20000 --seed 7 --format json");
    CHECK(j1.out == j2.out);
}

TEST_CASE("sampled runs append the estimator columns") {
    auto res = run_cli("sweep --points 2 --trials 1000 --seed 3");
    REQUIRE(res.exit_code == 0);
    auto csv = parse_csv(res.out);
    REQUIRE(csv.header.size() == 7);
    CHECK(csv.header[4] == "c_hat");
    CHECK(csv.header[6] == "n");
    CHECK(near(csv.value(0, "n"), 1000.0, 0.0));

    res = run_cli("rto --phase-a 0 --phase-b 0 --trials 500 --seed 3");
    REQUIRE(res.exit_code == 0);
    csv = parse_csv(res.out);
    REQUIRE(csv.header.size() == 16);
    // perfectly correlated point: every trial agrees
    CHECK(near(csv.value(0, "c_hat"), 1.0, 0.0));
    CHECK(near(csv.value(0, "n12"), 0.0, 0.0));
}

TEST_CASE("json rows round-trip to the in-memory values") {
    const auto res = run_cli("sweep --points 7 --format json");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    const auto expected = correlation_sweep(closed_grid(7, 0.0, 2.0 * kPi), 0.0);
    REQUIRE(doc["rows"].size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
        const auto& row = doc["rows"][k];
        CHECK(near(row["delta_rad"].get<double>(), expected[k].delta, 1e-12));
        CHECK(near(row["p_corr"].get<double>(), expected[k].p_corr, 1e-12));
        CHECK(near(row["p_anti"].get<double>(), expected[k].p_anti, 1e-12));
        CHECK(near(row["degree"].get<double>(), expected[k].degree, 1e-12));
    }
}

TEST_CASE("environment seed applies unless --seed wins") {
    const std::string args = "sweep --points 2 --trials 5000";
    const auto env_run = run_cli(args, "BIPHOTON_SEED=9");
    const auto flag_run = run_cli(args + " --seed 9");
    CHECK(env_run.out == flag_run.out);

    const auto override_run = run_cli(args + " --seed 7", "BIPHOTON_SEED=9");
    const auto plain_run = run_cli(args + " --seed 7");
    CHECK(override_run.out == plain_run.out);
    CHECK(override_run.out != env_run.out);

    CHECK(run_cli(args, "BIPHOTON_SEED=trash").exit_code == 1);
}

TEST_CASE("degrees flag converts inputs to radians") {
    const auto res = run_cli("rto --phase-a 0 --phase-b 90 --degrees");
    REQUIRE(res.exit_code == 0);
    const auto csv = parse_csv(res.out);
    CHECK(near(csv.value(0, "delta_rad"), kPi / 2.0, 1e-12));
    CHECK(near(csv.value(0, "degree"), 0.0, 1e-12));
}

TEST_CASE("table1 flags exactly the quarter-phase rows") {
    const auto res = run_cli("table1 --format json");
    REQUIRE(res.exit_code == 0);
    const auto rows = nlohmann::json::parse(res.out)["rows"];
    REQUIRE(rows.size() == 5);
    CHECK_FALSE(rows[0]["flag"].get<bool>());
    CHECK(rows[1]["flag"].get<bool>());
    CHECK_FALSE(rows[2]["flag"].get<bool>());
    CHECK(rows[3]["flag"].get<bool>());
    CHECK_FALSE(rows[4]["flag"].get<bool>());
    CHECK(rows[1]["paper_claim"] == "71/29");
}

TEST_CASE("whichpath and ledger emit the expected physics") {
    auto res = run_cli("whichpath --overlap 0 --points 9");
    REQUIRE(res.exit_code == 0);
    auto csv = parse_csv(res.out);
    REQUIRE(csv.rows.size() == 9);
    for (std::size_t k = 0; k < csv.rows.size(); ++k) {
        CHECK(near(csv.value(k, "p_port1"), 0.5, 1e-12));
    }

    res = run_cli("ledger --overlap 0");
    REQUIRE(res.exit_code == 0);
    csv = parse_csv(res.out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(near(csv.value(0, "global_purity"), 1.0, 1e-10));
    CHECK(near(csv.value(0, "local_purity_a"), 0.5, 1e-10));
    CHECK(near(csv.value(0, "local_purity_b"), 0.5, 1e-10));
    CHECK(near(csv.value(0, "local_l1_a"), 0.0, 1e-12));
    CHECK(near(csv.value(0, "correlation_visibility"), 1.0, 1e-10));

    res = run_cli("whichpath --overlap 1.5");
    CHECK(res.exit_code == 2);
}

TEST_CASE("mzi subcommand sweeps phi1") {
    const auto res = run_cli("mzi --points 5 --phi2 0");
    REQUIRE(res.exit_code == 0);
    const auto csv = parse_csv(res.out);
    REQUIRE(csv.rows.size() == 5);
    CHECK(near(csv.value(0, "p_1d"), 1.0, 1e-12));   // phi1 = 0
    CHECK(near(csv.value(2, "p_1d"), 0.0, 1e-12));   // phi1 = pi
    CHECK(near(csv.value(4, "p_1d"), 1.0, 1e-12));   // phi1 = 2 pi
}

TEST_CASE("unwritable destinations exit with code 1") {
    const auto res = run_cli("sweep --points 2 --out /nonexistent_dir_biphoton/out.csv");
    CHECK(res.exit_code == 1);
}

} // TEST_SUITE
