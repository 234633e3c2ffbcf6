#include <algorithm>
#include <iostream>
#include <map>

#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "mobiflow/csv.hpp"
#include "mobiflow/errors.hpp"
#include "mobiflow/ingest.hpp"
#include "mobiflow/lagcorr.hpp"
#include "verbs.hpp"

namespace mobiflow::cli {
namespace {

// The trends side accepts either weekly columns (interpolated to days) or an
// already-daily file; the header date spacing decides.
std::vector<TimeSeries> load_trends_daily(const std::string& text, double censored_value) {
    const auto rows = csv::parse(text);
    if (rows.empty() || rows.front().size() < 2) {
        throw ParseError("expected a region column plus at least one date column", 1, 0);
    }
    int gap = 7;
    if (rows.front().size() >= 3) {
        const Date a = Date::parse(rows.front()[1]);
        const Date b = Date::parse(rows.front()[2]);
        gap = b - a;
    }
    if (gap == 1) return ingest::parse_daily_mobility(text);
    auto weekly = ingest::parse_weekly_trends(text, {censored_value});
    std::vector<TimeSeries> daily;
    daily.reserve(weekly.size());
    for (const auto& series : weekly) {
        daily.push_back(ingest::interpolate_weekly_to_daily(series));
    }
    return daily;
}

} // namespace

int run_lag(const LagOpts& opts) {
    RunManifest manifest("lag");
    manifest.set_parameter("max_shift", opts.max_shift);
    manifest.set_parameter("censored_value", opts.censored_value);

    const std::string mobility_text = read_file(opts.mobility_path);
    const std::string trends_text = read_file(opts.trends_path);
    manifest.add_input("mobility", opts.mobility_path, mobility_text);
    manifest.add_input("trends", opts.trends_path, trends_text);

    const auto mobility = ingest::parse_daily_mobility(mobility_text);
    const auto trends = load_trends_daily(trends_text, opts.censored_value);

    if (opts.echo_inputs) {
        nlohmann::ordered_json echo;
        echo["mobility"] = nlohmann::ordered_json::parse(ingest::timeseries_to_json(mobility));
        echo["trends"] = nlohmann::ordered_json::parse(ingest::timeseries_to_json(trends));
        std::cout << echo.dump(2) << '\n';
    }

    std::map<std::string, const TimeSeries*> trends_by_region;
    for (const auto& series : trends) trends_by_region[series.region_id] = &series;
    std::map<std::string, const TimeSeries*> mobility_by_region;
    for (const auto& series : mobility) mobility_by_region[series.region_id] = &series;

    std::vector<lagcorr::LagResult> results;
    nlohmann::ordered_json flagged = nlohmann::ordered_json::array();
    auto flag = [&](const std::string& region, const std::string& reason) {
        manifest.add_flag(region + ": " + reason);
        flagged.push_back({{"region", region}, {"reason", reason}});
    };

    const lagcorr::LagOptions lag_options{opts.max_shift};
    for (const auto& [region, mob] : mobility_by_region) {
        const auto it = trends_by_region.find(region);
        if (it == trends_by_region.end()) {
            flag(region, "missing from the trends input");
            continue;
        }
        try {
            const TimeSeries scaled_mob = ingest::minmax_scale(*mob);
            const TimeSeries scaled_trend = ingest::minmax_scale(*it->second);
            results.push_back(lagcorr::best_lag(scaled_mob, scaled_trend, lag_options));
        } catch (const ComputationError& e) {
            flag(region, e.what());
        } catch (const ValidationError& e) {
            flag(region, e.what());
        }
    }
    for (const auto& [region, series] : trends_by_region) {
        if (!mobility_by_region.count(region)) flag(region, "missing from the mobility input");
    }

    std::vector<csv::Row> result_rows;
    result_rows.push_back({"region", "best_shift", "r_at_best", "overlap"});
    for (const auto& r : results) {
        result_rows.push_back({r.region_id, std::to_string(r.best_shift),
                               csv::format_double(r.r_at_best),
                               std::to_string(r.overlap_length)});
    }
    manifest.write_output(opts.out_dir, "lag_results.csv", csv::write(result_rows));

    std::vector<csv::Row> summary_rows;
    summary_rows.push_back({"regions", "mean_shift", "min_shift", "max_shift"});
    if (results.empty()) {
        summary_rows.push_back({"0", "", "", ""});
    } else {
        double sum = 0.0;
        int lo = results.front().best_shift;
        int hi = lo;
        for (const auto& r : results) {
            sum += r.best_shift;
            lo = std::min(lo, r.best_shift);
            hi = std::max(hi, r.best_shift);
        }
        summary_rows.push_back({std::to_string(results.size()),
                                csv::format_double(sum / static_cast<double>(results.size())),
                                std::to_string(lo), std::to_string(hi)});
    }
    manifest.write_output(opts.out_dir, "lag_summary.csv", csv::write(summary_rows));

    nlohmann::ordered_json root;
    auto& items = root["results"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json item;
        item["region"] = r.region_id;
        item["best_shift"] = r.best_shift;
        item["r_at_best"] = r.r_at_best;
        item["overlap"] = r.overlap_length;
        auto& profile = item["profile"] = nlohmann::ordered_json::array();
        for (const auto& sample : r.profile) {
            profile.push_back({{"shift", sample.shift},
                               {"r", sample.r},
                               {"overlap", sample.overlap}});
        }
        items.push_back(std::move(item));
    }
    root["flagged"] = flagged;
    manifest.write_output(opts.out_dir, "lag_results.json", root.dump(2) + "\n");

    manifest.save(opts.out_dir);
    return manifest.flagged() ? 1 : 0;
}

} // namespace mobiflow::cli
