#include "mobiflow/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "mobiflow/csv.hpp"
#include "mobiflow/errors.hpp"

namespace mobiflow::ingest {
namespace {

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view cell, std::size_t row, std::size_t col) {
    const std::string_view t = trimmed(cell);
    double value = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || t.empty()) {
        throw ParseError("non-numeric value '" + std::string(cell) + "'", row, col);
    }
    return value;
}

Date parse_date_cell(std::string_view cell, std::size_t row, std::size_t col) {
    try {
        return Date::parse(trimmed(cell));
    } catch (const ParseError& e) {
        throw ParseError(e.what(), row, col);
    }
}

std::vector<TimeSeries> parse_wide(std::string_view csv_text, Cadence cadence,
                                   const TrendsOptions* trends) {
    const auto rows = csv::parse(csv_text);
    if (rows.empty()) throw ParseError("empty input", 1, 0);
    const auto& header = rows.front();
    if (header.size() < 2) {
        throw ParseError("expected a region column plus at least one date column", 1, 0);
    }

    std::vector<Date> dates;
    dates.reserve(header.size() - 1);
    for (std::size_t j = 1; j < header.size(); ++j) {
        dates.push_back(parse_date_cell(header[j], 1, j + 1));
    }
    const int step = cadence_days(cadence);
    for (std::size_t j = 0; j + 1 < dates.size(); ++j) {
        if (dates[j + 1] - dates[j] != step) {
            throw ValidationError("header dates " + dates[j].to_iso() + " and " +
                                  dates[j + 1].to_iso() + " are not " +
                                  std::to_string(step) + " day(s) apart");
        }
    }

    std::vector<TimeSeries> out;
    std::set<std::string> seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::size_t line = i + 1;
        if (row.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) +
                                 " fields, found " + std::to_string(row.size()),
                             line, 0);
        }
        std::string region(trimmed(row[0]));
        if (region.empty()) throw ParseError("empty region name", line, 1);
        if (!seen.insert(region).second) {
            throw ParseError("duplicate region '" + region + "'", line, 1);
        }
        TimeSeries series;
        series.region_id = std::move(region);
        series.cadence = cadence;
        series.points.reserve(dates.size());
        for (std::size_t j = 1; j < row.size(); ++j) {
            double value = 0.0;
            if (trends != nullptr && trimmed(row[j]) == "<1") {
                value = trends->censored_value;
            } else {
                value = parse_double(row[j], line, j + 1);
            }
            if (trends != nullptr && (value < 0.0 || value > 100.0)) {
                throw ValidationError("value " + csv::format_double(value) +
                                      " out of range [0, 100] at row " +
                                      std::to_string(line) + ", column " +
                                      std::to_string(j + 1));
            }
            series.points.push_back({dates[j - 1], value});
        }
        out.push_back(std::move(series));
    }
    return out;
}

std::size_t find_column(const csv::Row& header, std::string_view name) {
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (trimmed(header[j]) == name) return j;
    }
    throw ParseError("missing required column '" + std::string(name) + "'", 1, 0);
}

} // namespace

std::vector<TimeSeries> parse_daily_mobility(std::string_view csv_text) {
    return parse_wide(csv_text, Cadence::daily, nullptr);
}

std::vector<TimeSeries> parse_weekly_trends(std::string_view csv_text,
                                            const TrendsOptions& options) {
    return parse_wide(csv_text, Cadence::weekly, &options);
}

WeeklyFlowTable parse_flow_records(std::string_view csv_text) {
    const auto rows = csv::parse(csv_text);
    if (rows.empty()) throw ParseError("empty input", 1, 0);
    const auto& header = rows.front();
    const std::size_t c_week = find_column(header, "week_start");
    const std::size_t c_orig = find_column(header, "origin");
    const std::size_t c_dest = find_column(header, "destination");
    const std::size_t c_vis = find_column(header, "visitor_flow");
    const std::size_t c_pop = find_column(header, "population_flow");
    const std::size_t c_olat = find_column(header, "origin_lat");
    const std::size_t c_olng = find_column(header, "origin_lng");
    const std::size_t c_dlat = find_column(header, "dest_lat");
    const std::size_t c_dlng = find_column(header, "dest_lng");

    WeeklyFlowTable table;
    auto note_centroid = [&](const std::string& region, GeoPoint point, std::size_t line) {
        auto [it, inserted] = table.centroids.emplace(region, point);
        if (!inserted && !(it->second == point)) {
            throw ValidationError("conflicting centroids for region '" + region +
                                  "' at row " + std::to_string(line));
        }
    };

    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::size_t line = i + 1;
        if (row.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) +
                                 " fields, found " + std::to_string(row.size()),
                             line, 0);
        }
        FlowRecord rec;
        rec.week_start = parse_date_cell(row[c_week], line, c_week + 1);
        rec.origin = std::string(trimmed(row[c_orig]));
        rec.destination = std::string(trimmed(row[c_dest]));
        if (rec.origin.empty()) throw ParseError("empty origin", line, c_orig + 1);
        if (rec.destination.empty()) throw ParseError("empty destination", line, c_dest + 1);
        rec.visitor_flow = parse_double(row[c_vis], line, c_vis + 1);
        rec.population_flow = parse_double(row[c_pop], line, c_pop + 1);
        const GeoPoint origin_pt{parse_double(row[c_olat], line, c_olat + 1),
                                 parse_double(row[c_olng], line, c_olng + 1)};
        const GeoPoint dest_pt{parse_double(row[c_dlat], line, c_dlat + 1),
                               parse_double(row[c_dlng], line, c_dlng + 1)};
        note_centroid(rec.origin, origin_pt, line);
        note_centroid(rec.destination, dest_pt, line);
        table.records.push_back(std::move(rec));
    }
    validate(table);
    return table;
}

TimeSeries minmax_scale(const TimeSeries& series) {
    if (series.points.size() < 2) {
        throw ValidationError("min-max scaling needs at least 2 points, region '" +
                              series.region_id + "' has " +
                              std::to_string(series.points.size()));
    }
    double lo = series.points.front().value;
    double hi = lo;
    for (const auto& p : series.points) {
        lo = std::min(lo, p.value);
        hi = std::max(hi, p.value);
    }
    if (lo == hi) {
        throw ValidationError("constant series '" + series.region_id +
                              "' cannot be min-max scaled");
    }
    TimeSeries out = series;
    const double span = hi - lo;
    for (auto& p : out.points) p.value = (p.value - lo) / span;
    return out;
}

TimeSeries interpolate_weekly_to_daily(const TimeSeries& series) {
    if (series.cadence != Cadence::weekly) {
        throw ValidationError("interpolation expects a weekly series, region '" +
                              series.region_id + "' is daily");
    }
    validate(series);
    if (series.points.empty()) {
        throw ValidationError("cannot interpolate empty series '" + series.region_id + "'");
    }
    TimeSeries out;
    out.region_id = series.region_id;
    out.cadence = Cadence::daily;
    for (std::size_t i = 0; i + 1 < series.points.size(); ++i) {
        const auto& a = series.points[i];
        const auto& b = series.points[i + 1];
        for (int k = 0; k < 7; ++k) {
            out.points.push_back({a.date + k, a.value + (k * (b.value - a.value)) / 7.0});
        }
    }
    out.points.push_back(series.points.back());
    return out;
}

std::string write_wide_csv(const std::vector<TimeSeries>& series) {
    if (series.empty()) throw ValidationError("nothing to write");
    const auto& first = series.front();
    for (const auto& s : series) {
        if (s.cadence != first.cadence || s.points.size() != first.points.size()) {
            throw ValidationError("series '" + s.region_id +
                                  "' does not share the common date grid");
        }
        for (std::size_t j = 0; j < s.points.size(); ++j) {
            if (s.points[j].date != first.points[j].date) {
                throw ValidationError("series '" + s.region_id +
                                      "' does not share the common date grid");
            }
        }
    }
    std::vector<csv::Row> rows;
    csv::Row header{"region"};
    for (const auto& p : first.points) header.push_back(p.date.to_iso());
    rows.push_back(std::move(header));
    for (const auto& s : series) {
        csv::Row row{s.region_id};
        for (const auto& p : s.points) row.push_back(csv::format_double(p.value));
        rows.push_back(std::move(row));
    }
    return csv::write(rows);
}

std::string write_flow_csv(const WeeklyFlowTable& table) {
    std::vector<const FlowRecord*> order;
    order.reserve(table.records.size());
    for (const auto& r : table.records) order.push_back(&r);
    std::sort(order.begin(), order.end(), [](const FlowRecord* a, const FlowRecord* b) {
        return std::tie(a->week_start, a->origin, a->destination) <
               std::tie(b->week_start, b->origin, b->destination);
    });

    std::vector<csv::Row> rows;
    rows.push_back({"week_start", "origin", "destination", "visitor_flow", "population_flow",
                    "origin_lat", "origin_lng", "dest_lat", "dest_lng"});
    for (const FlowRecord* r : order) {
        const GeoPoint& o = table.centroids.at(r->origin);
        const GeoPoint& d = table.centroids.at(r->destination);
        rows.push_back({r->week_start.to_iso(), r->origin, r->destination,
                        csv::format_double(r->visitor_flow), csv::format_double(r->population_flow),
                        csv::format_double(o.lat), csv::format_double(o.lon),
                        csv::format_double(d.lat), csv::format_double(d.lon)});
    }
    return csv::write(rows);
}

std::string timeseries_to_json(const std::vector<TimeSeries>& series) {
    nlohmann::ordered_json root = nlohmann::ordered_json::array();
    for (const auto& s : series) {
        nlohmann::ordered_json item;
        item["region"] = s.region_id;
        item["cadence"] = s.cadence == Cadence::daily ? "daily" : "weekly";
        auto& points = item["points"] = nlohmann::ordered_json::array();
        for (const auto& p : s.points) {
            points.push_back({{"date", p.date.to_iso()}, {"value", p.value}});
        }
        root.push_back(std::move(item));
    }
    return root.dump(2);
}

std::string flow_table_to_json(const WeeklyFlowTable& table) {
    nlohmann::ordered_json root;
    auto& records = root["records"] = nlohmann::ordered_json::array();
    for (const auto& r : table.records) {
        records.push_back({{"week_start", r.week_start.to_iso()},
                           {"origin", r.origin},
                           {"destination", r.destination},
                           {"visitor_flow", r.visitor_flow},
                           {"population_flow", r.population_flow}});
    }
    auto& centroids = root["centroids"] = nlohmann::ordered_json::object();
    for (const auto& [region, point] : table.centroids) {
        centroids[region] = {{"lat", point.lat}, {"lon", point.lon}};
    }
    return root.dump(2);
}

} // namespace mobiflow::ingest
