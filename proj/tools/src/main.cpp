#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "mobiflow/version.hpp"
#include "verbs.hpp"

namespace cli = mobiflow::cli;

int main(int argc, char** argv) {
    CLI::App app{"spatiotemporal mobility analysis toolkit"};
    app.set_version_flag("--version", std::string(mobiflow::kVersion));
    app.require_subcommand(1);
    int rc = 0;

    {
        auto opts = std::make_shared<cli::LagOpts>();
        CLI::App* sub = app.add_subcommand(
            "lag", "shift scan pairing daily mobility against search trends");
        sub->add_option("--mobility", opts->mobility_path, "daily mobility wide CSV")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--trends", opts->trends_path,
                        "weekly trends wide CSV (daily also accepted)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts->out_dir, "output directory")->required();
        sub->add_option("--max-shift", opts->max_shift, "last shift to scan, days")
            ->capture_default_str();
        sub->add_option("--censored-value", opts->censored_value,
                        "substitute for the censored '<1' token")
            ->capture_default_str();
        sub->add_flag("--echo-inputs", opts->echo_inputs, "print parsed inputs as JSON");
        sub->callback([opts, &rc] { rc = cli::run_lag(*opts); });
    }

    {
        auto opts = std::make_shared<cli::ConsensusOpts>();
        CLI::App* sub = app.add_subcommand(
            "cluster", "weekly consensus clustering of the flow network");
        sub->add_option("--flows", opts->flows_path, "weekly flow records CSV")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts->out_dir, "output directory")->required();
        sub->add_option("--week", opts->week, "restrict to one week (default: all)");
        sub->add_option("--flow-kind", opts->flow_kind, "which flow column weights the edges")
            ->check(CLI::IsMember({"visitor", "population"}))
            ->capture_default_str();
        sub->add_option("--seed", opts->seed, "base seed")
            ->envname("MOBIFLOW_SEED")
            ->capture_default_str();
        sub->add_option("--runs", opts->runs, "label propagation runs per week")
            ->capture_default_str();
        sub->add_flag("--unweighted", opts->unweighted, "score neighbors by count, not weight");
        sub->add_option("--max-sweeps", opts->max_sweeps, "sweep cap per run")
            ->capture_default_str();
        sub->add_flag("--echo-inputs", opts->echo_inputs, "print parsed inputs as JSON");
        sub->callback([opts, &rc] { rc = cli::run_cluster(*opts); });
    }

    {
        auto opts = std::make_shared<cli::GeoOpts>();
        CLI::App* sub = app.add_subcommand(
            "geo", "cluster-average vs country-average distances per week");
        sub->add_option("--flows", opts->flows_path,
                        "weekly flow records CSV (supplies the centroids)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--partitions", opts->partitions_path,
                        "partitions.json written by the cluster verb")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts->out_dir, "output directory")->required();
        sub->add_flag("--echo-inputs", opts->echo_inputs, "print parsed inputs as JSON");
        sub->callback([opts, &rc] { rc = cli::run_geo(*opts); });
    }

    {
        auto opts = std::make_shared<cli::MetricsOpts>();
        CLI::App* sub = app.add_subcommand(
            "metrics", "before/after centrality reports and reductions");
        sub->add_option("--flows", opts->flows_path, "weekly flow records CSV")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts->out_dir, "output directory")->required();
        sub->add_option("--before", opts->before_week, "baseline week start")->required();
        sub->add_option("--after", opts->after_week, "comparison week start")->required();
        sub->add_option("--flow-kind", opts->flow_kind, "which flow column weights the edges")
            ->check(CLI::IsMember({"visitor", "population"}))
            ->capture_default_str();
        sub->add_option("--closeness-form", opts->closeness_form, "closeness variant")
            ->check(CLI::IsMember({"component-scaled", "raw-average"}))
            ->capture_default_str();
        sub->add_option("--top-k", opts->top_k, "regions per metric in the top-reduction view")
            ->capture_default_str();
        sub->add_flag("--echo-inputs", opts->echo_inputs, "print parsed inputs as JSON");
        sub->callback([opts, &rc] { rc = cli::run_metrics(*opts); });
    }

    {
        auto opts = std::make_shared<cli::ExportOpts>();
        CLI::App* sub = app.add_subcommand("export", "render thresholded flow networks");
        sub->add_option("--flows", opts->flows_path, "weekly flow records CSV")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts->out_dir, "output directory")->required();
        sub->add_option("--format", opts->format, "dot or geojson")
            ->check(CLI::IsMember({"dot", "geojson"}))
            ->capture_default_str();
        sub->add_option("--week", opts->week, "restrict to one week (default: all)");
        sub->add_option("--flow-kind", opts->flow_kind, "which flow column weights the edges")
            ->check(CLI::IsMember({"visitor", "population"}))
            ->capture_default_str();
        sub->add_option("--threshold", opts->threshold, "drop edges lighter than this")
            ->capture_default_str();
        sub->add_flag("--echo-inputs", opts->echo_inputs, "print parsed inputs as JSON");
        sub->callback([opts, &rc] { rc = cli::run_export(*opts); });
    }

    {
        auto opts = std::make_shared<cli::SynthOpts>();
        CLI::App* sub = app.add_subcommand("synth", "generate fixtures with known ground truth");
        sub->add_option("--spec", opts->spec_path,
                        "JSON spec: {\"kind\": lagged-pair|planted|two-week|panel, ...}")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts->out_dir, "output directory")->required();
        auto* seed = sub->add_option("--seed", opts->seed, "overrides the spec's seed")
                         ->envname("MOBIFLOW_SEED");
        sub->add_flag("--echo-inputs", opts->echo_inputs, "print the spec file");
        sub->callback([opts, seed, &rc] {
            opts->seed_overridden = seed->count() > 0;
            rc = cli::run_synth(*opts);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
