#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "mobiflow/csv.hpp"
#include "mobiflow/ingest.hpp"
#include "nlohmann/json.hpp"
#include "support/cli_runner.hpp"

namespace fs = std::filesystem;
using cli_runner::read_file;
using cli_runner::run;
using cli_runner::TempDir;
using cli_runner::write_file;
using nlohmann::json;

namespace {

std::string q(const fs::path& path) { return "\"" + path.string() + "\""; }

std::string cli() { return q(MOBIFLOW_CLI_PATH); }

std::vector<std::vector<std::string>> csv_rows(const fs::path& path) {
    return mobiflow::csv::parse(read_file(path));
}

std::size_t count_containing(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// Writes a synth spec and generates its fixture; returns the fixture dir.
fs::path gen_fixture(const TempDir& tmp, const std::string& name, const std::string& spec_json) {
    const fs::path spec = tmp.path() / (name + "_spec.json");
    write_file(spec, spec_json);
    const fs::path out = tmp.path() / name;
    const auto r = run(cli() + " synth --spec " + q(spec) + " --out " + q(out));
    REQUIRE(r.status == 0);
    return out;
}

} // namespace

TEST_CASE("cli: lagged-pair synthesis feeds the lag scan, which recovers every delay") {
    TempDir tmp("mf_cli_lag");
    const fs::path fixture = gen_fixture(tmp, "lagged",
                                         R"({"kind": "lagged-pair", "seed": 7, "regions": 8,
                                             "length": 120, "lag_min": 11, "lag_max": 18,
                                             "noise_sigma": 0.05})");
    for (const char* name : {"mobility.csv", "trends.csv", "truth.json", "manifest.json"}) {
        CHECK(fs::exists(fixture / name));
    }

    const auto truth = json::parse(read_file(fixture / "truth.json"));
    CHECK(truth["kind"] == "lagged-pair");
    REQUIRE(truth["regions"].size() == 8);
    std::map<std::string, int> planted;
    for (const auto& entry : truth["regions"]) {
        planted[entry["region"].get<std::string>()] = entry["lag"].get<int>();
    }
    CHECK(planted.at("r00") == 11);
    CHECK(planted.at("r07") == 18);

    const fs::path out = tmp.path() / "lag_out";
    const auto r = run(cli() + " lag --mobility " + q(fixture / "mobility.csv") + " --trends " +
                       q(fixture / "trends.csv") + " --out " + q(out));
    CHECK(r.status == 0);

    const auto results = csv_rows(out / "lag_results.csv");
    REQUIRE(results.size() == 9);
    CHECK(results[0] == std::vector<std::string>{"region", "best_shift", "r_at_best", "overlap"});
    for (std::size_t i = 1; i < results.size(); ++i) {
        const auto& row = results[i];
        CHECK(std::stoi(row[1]) == planted.at(row[0]));
        CHECK(std::stod(row[2]) < -0.9); // strongly anti-correlated at the planted shift
    }

    const auto summary = csv_rows(out / "lag_summary.csv");
    REQUIRE(summary.size() == 2);
    CHECK(summary[1] == std::vector<std::string>{"8", "14.5", "11", "18"});

    const auto doc = json::parse(read_file(out / "lag_results.json"));
    REQUIRE(doc["results"].size() == 8);
    CHECK(doc["flagged"].empty());
    for (const auto& item : doc["results"]) {
        CHECK(item["profile"].size() == 31); // shifts 0..30
    }

    const auto manifest = json::parse(read_file(out / "manifest.json"));
    CHECK(manifest["verb"] == "lag");
    CHECK(manifest["flags"].empty());
    CHECK(manifest["inputs"].size() == 2);
}

TEST_CASE("cli: lag flags one-sided regions but still reports the rest") {
    TempDir tmp("mf_cli_lag_flag");
    const fs::path fixture = gen_fixture(tmp, "lagged",
                                         R"({"kind": "lagged-pair", "seed": 7, "regions": 3,
                                             "length": 90, "lag_min": 12, "lag_max": 14,
                                             "noise_sigma": 0.05})");

    // clone the first data row of the trends file under a region name that has
    // no mobility counterpart
    std::string trends = read_file(fixture / "trends.csv");
    const std::size_t header_end = trends.find('\n');
    const std::size_t line_end = trends.find('\n', header_end + 1);
    std::string extra = trends.substr(header_end + 1, line_end - header_end - 1);
    extra = "zzz" + extra.substr(extra.find(','));
    const fs::path padded = tmp.path() / "trends_extra.csv";
    write_file(padded, trends + extra + "\n");

    const fs::path out = tmp.path() / "lag_out";
    const auto r = run(cli() + " lag --mobility " + q(fixture / "mobility.csv") + " --trends " +
                       q(padded) + " --out " + q(out));
    CHECK(r.status == 1);

    CHECK(csv_rows(out / "lag_results.csv").size() == 4); // header + 3 regions
    const auto doc = json::parse(read_file(out / "lag_results.json"));
    REQUIRE(doc["flagged"].size() == 1);
    CHECK(doc["flagged"][0]["region"] == "zzz");
    CHECK(doc["flagged"][0]["reason"] == "missing from the mobility input");
}

TEST_CASE("cli: consensus clustering recovers planted blocks with zero dispersion") {
    TempDir tmp("mf_cli_cluster");
    const fs::path fixture = gen_fixture(tmp, "planted",
                                         R"({"kind": "planted", "seed": 11,
                                             "blocks": [8, 10, 12]})");

    const fs::path out = tmp.path() / "cluster_out";
    const auto r = run(cli() + " cluster --flows " + q(fixture / "flows.csv") + " --out " +
                       q(out) + " --seed 3 --runs 40");
    CHECK(r.status == 0);

    const auto stats = csv_rows(out / "cluster_stats.csv");
    REQUIRE(stats.size() == 2);
    CHECK(stats[0] == std::vector<std::string>{"week_start", "mode", "mean", "std"});
    CHECK(stats[1] == std::vector<std::string>{"2020-03-01", "3", "3", "0"});

    const auto parts = json::parse(read_file(out / "partitions.json"));
    REQUIRE(parts["weeks"].size() == 1);
    const auto& week = parts["weeks"][0];
    CHECK(week["week_start"] == "2020-03-01");
    CHECK(week["runs"] == 40);
    CHECK(week["mode"] == 3);
    CHECK(week["counts"].size() == 40);
    CHECK(week["representative"]["cluster_count"] == 3);

    // representative clusters match the generator's ground truth exactly
    const auto truth = json::parse(read_file(fixture / "truth.json"));
    std::set<std::set<std::string>> expected;
    for (const auto& group : truth["clusters"]) {
        expected.insert(std::set<std::string>(group.begin(), group.end()));
    }
    std::set<std::set<std::string>> found;
    for (const auto& group : week["representative"]["clusters"]) {
        found.insert(std::set<std::string>(group.begin(), group.end()));
    }
    CHECK(found == expected);

    const auto geojson = json::parse(read_file(out / "clusters_2020-03-01.geojson"));
    CHECK(geojson["type"] == "FeatureCollection");
    CHECK(geojson["features"].size() == 30);
}

TEST_CASE("cli: a single-week run matches the matching row of an all-weeks run") {
    TempDir tmp("mf_cli_week");
    const fs::path fixture = gen_fixture(tmp, "twoweek",
                                         R"({"kind": "two-week", "seed": 13,
                                             "blocks": [5, 6], "isolation_factor": 0.6})");

    const fs::path all_out = tmp.path() / "all";
    const fs::path one_out = tmp.path() / "one";
    const std::string base = cli() + " cluster --flows " + q(fixture / "flows.csv") +
                             " --seed 5 --runs 30";
    REQUIRE(run(base + " --out " + q(all_out)).status == 0);
    REQUIRE(run(base + " --out " + q(one_out) + " --week 2020-03-01").status == 0);

    const auto all_rows = csv_rows(all_out / "cluster_stats.csv");
    const auto one_rows = csv_rows(one_out / "cluster_stats.csv");
    REQUIRE(all_rows.size() == 3); // header + two weeks
    REQUIRE(one_rows.size() == 2);
    CHECK(one_rows[1] == all_rows[1]);

    const auto all_parts = json::parse(read_file(all_out / "partitions.json"));
    const auto one_parts = json::parse(read_file(one_out / "partitions.json"));
    CHECK(all_parts["weeks"][0] == one_parts["weeks"][0]);

    const auto missing = run(base + " --out " + q(tmp.path() / "none") + " --week 2020-04-06");
    CHECK(missing.status == 2);
    CHECK(missing.output.find("error:") != std::string::npos);
    CHECK(missing.output.find("2020-04-06") != std::string::npos);
}

TEST_CASE("cli: the seed environment variable is interchangeable with --seed") {
    TempDir tmp("mf_cli_seed");
    const fs::path spec = fs::path(MOBIFLOW_TEST_DATA_DIR) / "panel_spec.json";

    const fs::path flag_out = tmp.path() / "flag";
    const fs::path env_out = tmp.path() / "env";
    const fs::path other_out = tmp.path() / "other";
    REQUIRE(run(cli() + " synth --spec " + q(spec) + " --out " + q(flag_out) + " --seed 9")
                .status == 0);
    REQUIRE(run("MOBIFLOW_SEED=9 " + cli() + " synth --spec " + q(spec) + " --out " +
                q(env_out))
                .status == 0);
    REQUIRE(run(cli() + " synth --spec " + q(spec) + " --out " + q(other_out) + " --seed 10")
                .status == 0);

    CHECK(cli_runner::compare_trees(flag_out, env_out) == "");
    CHECK(read_file(flag_out / "flows.csv") != read_file(other_out / "flows.csv"));

    // without an override the spec's own seed applies
    const fs::path spec_out = tmp.path() / "specseed";
    const fs::path repeat_out = tmp.path() / "specseed2";
    REQUIRE(run(cli() + " synth --spec " + q(spec) + " --out " + q(spec_out)).status == 0);
    REQUIRE(run(cli() + " synth --spec " + q(spec) + " --out " + q(repeat_out)).status == 0);
    CHECK(cli_runner::compare_trees(spec_out, repeat_out) == "");
    const auto manifest = json::parse(read_file(spec_out / "manifest.json"));
    CHECK(manifest["seed"] == 42);
}

TEST_CASE("cli: metrics reports the before/after drop of every centrality") {
    TempDir tmp("mf_cli_metrics");
    const fs::path fixture = gen_fixture(tmp, "twoweek",
                                         R"({"kind": "two-week", "seed": 17,
                                             "blocks": [5, 6], "isolation_factor": 0.5})");

    const fs::path out = tmp.path() / "metrics_out";
    const auto r = run(cli() + " metrics --flows " + q(fixture / "flows.csv") + " --out " +
                       q(out) + " --before 2020-03-01 --after 2020-03-08 --top-k 5");
    CHECK((r.status == 0 || r.status == 1)); // zero-baseline betweenness flags are expected

    for (const char* name :
         {"centrality_2020-03-01.csv", "centrality_2020-03-08.csv", "reduction.csv", "topk.csv",
          "metric_stats.csv", "reduction.json", "manifest.json"}) {
        CHECK(fs::exists(out / name));
    }

    const auto reduction = csv_rows(out / "reduction.csv");
    REQUIRE(reduction.size() == 12); // header + 11 regions
    for (std::size_t i = 1; i < reduction.size(); ++i) {
        // halving every cross-block flow strictly lowers degree and closeness
        CHECK(std::stod(reduction[i][3]) > 0.0);
        CHECK(std::stod(reduction[i][6]) > 0.0);
    }

    const auto doc = json::parse(read_file(out / "reduction.json"));
    CHECK(doc["before"] == "2020-03-01");
    CHECK(doc["after"] == "2020-03-08");
    CHECK(doc["per_node"].size() == 11);
    CHECK((r.status == 1) == !doc["flags"].empty());

    const auto stats = csv_rows(out / "metric_stats.csv");
    REQUIRE(stats.size() == 4);
    CHECK(stats[1][0] == "degree");
    CHECK(std::stod(stats[1][1]) > 0.0); // mean degree reduction
    CHECK(std::stoi(stats[1][3]) == 11);

    const auto top = csv_rows(out / "topk.csv");
    std::size_t degree_rows = 0;
    for (std::size_t i = 1; i < top.size(); ++i) degree_rows += top[i][0] == "degree";
    CHECK(degree_rows == 5);
}

TEST_CASE("cli: geographic report shows clusters sitting tighter than the country") {
    TempDir tmp("mf_cli_geo");
    const fs::path fixture = gen_fixture(tmp, "planted",
                                         R"({"kind": "planted", "seed": 23,
                                             "blocks": [5, 5, 5]})");

    const fs::path cluster_out = tmp.path() / "cluster_out";
    REQUIRE(run(cli() + " cluster --flows " + q(fixture / "flows.csv") + " --out " +
                q(cluster_out) + " --seed 1 --runs 25")
                .status == 0);

    const fs::path out = tmp.path() / "geo_out";
    const auto r = run(cli() + " geo --flows " + q(fixture / "flows.csv") + " --partitions " +
                       q(cluster_out / "partitions.json") + " --out " + q(out));
    CHECK(r.status == 0);

    const auto rows = csv_rows(out / "cluster_distances.csv");
    REQUIRE(rows.size() == 4); // header + 3 clusters
    CHECK(rows[0] == std::vector<std::string>{"week_start", "cluster", "size", "medoid",
                                              "cluster_avg_km", "country_avg_km",
                                              "reduction_pct"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][2] == "5");
        CHECK(std::stod(rows[i][4]) < std::stod(rows[i][5]));
        CHECK(std::stod(rows[i][6]) > 50.0);
    }

    const auto doc = json::parse(read_file(out / "cluster_distances.json"));
    REQUIRE(doc["weeks"].size() == 1);
    CHECK(doc["weeks"][0]["flags"].empty());
    for (const auto& entry : doc["weeks"][0]["clusters"]) {
        CHECK(entry["reduction_pct"].get<double>() > 50.0);
        CHECK(entry["members"].size() == 5);
    }
    CHECK(fs::exists(out / "clusters_2020-03-01.geojson"));
}

TEST_CASE("cli: export renders thresholded networks as dot and geojson") {
    TempDir tmp("mf_cli_export");
    const fs::path fixture = gen_fixture(tmp, "twoweek",
                                         R"({"kind": "two-week", "seed": 29,
                                             "blocks": [5, 6], "isolation_factor": 0.6})");
    const std::string flows = q(fixture / "flows.csv");

    const fs::path dot_out = tmp.path() / "dot";
    REQUIRE(run(cli() + " export --flows " + flows + " --out " + q(dot_out) +
                " --format dot --week 2020-03-01 --threshold 800")
                .status == 0);
    const std::string dot = read_file(dot_out / "network_2020-03-01.dot");
    CHECK(dot.rfind("graph \"2020-03-01\"", 0) == 0);
    // only the within-block pairs survive an 800 threshold: C(5,2) + C(6,2)
    CHECK(count_containing(dot, " -- ") == 25);
    CHECK(count_containing(dot, "total_flow=") == 11);

    const fs::path bare_out = tmp.path() / "bare";
    REQUIRE(run(cli() + " export --flows " + flows + " --out " + q(bare_out) +
                " --format dot --week 2020-03-01 --threshold 10000000")
                .status == 0);
    const std::string bare = read_file(bare_out / "network_2020-03-01.dot");
    CHECK(count_containing(bare, " -- ") == 0);
    CHECK(count_containing(bare, "total_flow=") == 11);

    const fs::path geo_out = tmp.path() / "geojson";
    REQUIRE(run(cli() + " export --flows " + flows + " --out " + q(geo_out) +
                " --format geojson --threshold 800")
                .status == 0);
    CHECK(fs::exists(geo_out / "network_2020-03-01.geojson"));
    CHECK(fs::exists(geo_out / "network_2020-03-08.geojson"));
    const auto doc = json::parse(read_file(geo_out / "network_2020-03-01.geojson"));
    CHECK(doc["type"] == "FeatureCollection");
    CHECK(doc["features"].size() == 11 + 25);

    const auto bad = run(cli() + " export --flows " + flows + " --out " +
                         q(tmp.path() / "bad") + " --format svg");
    CHECK(bad.status == 2);
}

TEST_CASE("cli: bare and help invocations") {
    const auto bare = run(cli());
    CHECK(bare.status == 2);

    const auto help = run(cli() + " --help");
    CHECK(help.status == 0);
    for (const char* verb : {"lag", "cluster", "metrics", "geo", "export", "synth"}) {
        CHECK(help.output.find(verb) != std::string::npos);
    }

    const auto version = run(cli() + " --version");
    CHECK(version.status == 0);
}

TEST_CASE("cli: repeated runs produce byte-identical output trees") {
    TempDir tmp("mf_cli_determinism");
    const fs::path spec = fs::path(MOBIFLOW_TEST_DATA_DIR) / "panel_spec.json";
    const fs::path fix1 = tmp.path() / "fix1";
    const fs::path fix2 = tmp.path() / "fix2";
    REQUIRE(run(cli() + " synth --spec " + q(spec) + " --out " + q(fix1)).status == 0);
    REQUIRE(run(cli() + " synth --spec " + q(spec) + " --out " + q(fix2)).status == 0);
    CHECK(cli_runner::compare_trees(fix1, fix2) == "");

    // the generated panel reparses cleanly: 30 regions, 11 weeks, full tables
    const auto table = mobiflow::ingest::parse_flow_records(read_file(fix1 / "flows.csv"));
    CHECK(table.records.size() == 11 * 30 * 29);
    CHECK(table.centroids.size() == 30);
    CHECK(table.weeks().size() == 11);

    const std::string base = cli() + " cluster --flows " + q(fix1 / "flows.csv") +
                             " --seed 4 --runs 30";
    const fs::path run1 = tmp.path() / "run1";
    const fs::path run2 = tmp.path() / "run2";
    REQUIRE(run(base + " --out " + q(run1) + " --week 2020-03-02").status == 0);
    REQUIRE(run(base + " --out " + q(run2) + " --week 2020-03-02").status == 0);
    CHECK(cli_runner::compare_trees(run1, run2) == "");

    // week 1 plants a single cluster, week 3 plants two
    const auto one = csv_rows(run1 / "cluster_stats.csv");
    REQUIRE(one.size() == 2);
    CHECK(one[1][1] == "1");

    const fs::path split = tmp.path() / "split";
    REQUIRE(run(base + " --out " + q(split) + " --week 2020-03-16").status == 0);
    const auto two = csv_rows(split / "cluster_stats.csv");
    REQUIRE(two.size() == 2);
    CHECK(two[1][1] == "2");
}
