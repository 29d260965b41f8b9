#include "volcp/app.hpp"

#include "volcp/cluster.hpp"
#include "volcp/csv.hpp"
#include "volcp/error.hpp"
#include "volcp/filter.hpp"
#include "volcp/metric.hpp"
#include "volcp/parallel.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace volcp::app {

using nlohmann::json;
using csv::format_double;

namespace {

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot write " + path.string());
    os << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// The worker count never changes results, so it is left out of the record
// to keep output trees identical across --threads.
json config_record(const RunConfig& cfg) {
    json j = to_json(cfg);
    j.erase("threads");
    return j;
}

void check_label_is_path_safe(const std::string& label) {
    if (label.empty() || label == "." || label == ".." || label.find_first_of("/\\") != std::string::npos) {
        throw InputError("series label '" + label + "' cannot be used as a directory name");
    }
}

std::vector<double> column(const ReturnsTable& r, std::size_t c) {
    const auto col = r.returns.col(static_cast<Eigen::Index>(c));
    return {col.data(), col.data() + col.size()};
}

json pmf_json(const SparsePmf& pmf) {
    return {{"support", std::vector<std::int64_t>(pmf.support().begin(), pmf.support().end())},
            {"probs", std::vector<double>(pmf.probs().begin(), pmf.probs().end())}};
}

struct FitOutput {
    std::string map_trace;
    std::string params;
    std::string predictive;
    std::vector<std::pair<std::string, std::string>> snapshots;  // file name, content
};

FitOutput fit_series(const std::vector<double>& y, const std::vector<std::string>& dates, const FilterConfig& cfg,
                     const std::map<std::size_t, std::string>& snapshot_rows) {
    FitOutput out;
    const bool with_mu = cfg.hyper.include_mu;
    std::ostringstream trace, params, pred;
    trace << "date,t,tau_map,run_length\n";
    params << "date";
    if (with_mu) params << ",mu_mean,mu_lo,mu_hi";
    params << ",alpha_mean,alpha_lo,alpha_hi,log_sigma_mode,log_sigma_lo,log_sigma_hi\n";
    pred << "date,loc,lo,hi\n";

    ChangepointFilter f(cfg, y.front());
    for (std::size_t r = 1; r < y.size(); ++r) {
        f.step(y[r]);
        const auto& date = dates[r];
        const auto tau = f.map_changepoint();
        trace << date << ',' << f.t() << ',' << tau << ',' << (f.t() - tau) << '\n';

        params << date;
        const auto emit = [&](ParamTarget target) {
            const auto s = f.param_summary(target, 0.95);
            params << ',' << format_double(s.point) << ',' << format_double(s.lo) << ',' << format_double(s.hi);
        };
        if (with_mu) emit(ParamTarget::mu);
        emit(ParamTarget::alpha);
        emit(ParamTarget::log_sigma);
        params << '\n';

        const auto st = f.map_predictive();
        pred << date << ',' << format_double(st.loc) << ',' << format_double(st.quantile(0.025)) << ','
             << format_double(st.quantile(0.975)) << '\n';

        if (const auto it = snapshot_rows.find(r); it != snapshot_rows.end()) {
            json doc = pmf_json(f.posterior());
            doc["date"] = it->second;
            doc["t"] = f.t();
            out.snapshots.emplace_back("posterior_" + it->second + ".json", dump(doc));
        }
    }
    out.map_trace = trace.str();
    out.params = params.str();
    out.predictive = pred.str();
    return out;
}

std::size_t row_of_date(const ReturnsTable& r, const std::string& date) {
    check_iso_date(date);
    const auto it = std::find(r.dates.begin(), r.dates.end(), date);
    if (it == r.dates.end()) throw InputError("date " + date + " is not in the returns table");
    return static_cast<std::size_t>(it - r.dates.begin());
}

ReturnsTable load_returns_checked(const fs::path& path, MissingPolicy policy) {
    auto loaded = read_returns(path, policy);
    if (loaded.table.dates.size() < 2) throw InputError("returns table needs at least two rows (y0 and y1)");
    if (loaded.table.tickers.empty()) throw InputError("returns table has no series");
    return std::move(loaded.table);
}

std::string add_days(const std::string& iso, std::int64_t days) {
    using namespace std::chrono;
    check_iso_date(iso);
    const year_month_day ymd{year{std::stoi(iso.substr(0, 4))}, month{static_cast<unsigned>(std::stoi(iso.substr(5, 2)))},
                             day{static_cast<unsigned>(std::stoi(iso.substr(8, 2)))}};
    const year_month_day out{sys_days{ymd} + std::chrono::days{days}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(out.year()), static_cast<unsigned>(out.month()),
                  static_cast<unsigned>(out.day()));
    return buf;
}

json segments_json(const std::vector<SegmentParams>& segs) {
    json arr = json::array();
    for (const auto& s : segs) arr.push_back({{"mu", s.mu}, {"alpha", s.alpha}, {"sigma", s.sigma}});
    return arr;
}

}  // namespace

void cmd_returns(const fs::path& prices_csv, const fs::path& out_dir, MissingPolicy policy, bool long_format) {
    const auto loaded = read_prices(prices_csv, policy, long_format);
    const auto returns = log_returns(loaded.table);
    ensure_dir(out_dir);
    std::ostringstream os;
    write_returns_csv(os, returns);
    write_file(out_dir / "returns.csv", os.str());
    write_file(out_dir / "load_report.txt", loaded.report.to_text());
}

void cmd_fit(const fs::path& returns_csv, const RunConfig& cfg, const fs::path& out_dir,
             const std::vector<std::string>& snapshot_dates) {
    const auto fcfg = cfg.filter_config();
    const auto table = load_returns_checked(returns_csv, cfg.missing_policy);
    for (const auto& t : table.tickers) check_label_is_path_safe(t);

    std::map<std::size_t, std::string> snapshot_rows;
    for (const auto& d : snapshot_dates) {
        const auto r = row_of_date(table, d);
        if (r == 0) throw InputError("snapshot date " + d + " is the initial observation; no posterior exists yet");
        snapshot_rows[r] = d;
    }

    std::vector<FitOutput> results(table.tickers.size());
    parallel_for(table.tickers.size(), cfg.threads, [&](std::size_t c) {
        results[c] = fit_series(column(table, c), table.dates, fcfg, snapshot_rows);
    });

    ensure_dir(out_dir);
    for (std::size_t c = 0; c < table.tickers.size(); ++c) {
        const auto dir = out_dir / table.tickers[c];
        ensure_dir(dir);
        write_file(dir / "map_trace.csv", results[c].map_trace);
        write_file(dir / "params.csv", results[c].params);
        write_file(dir / "predictive.csv", results[c].predictive);
        for (const auto& [name, content] : results[c].snapshots) write_file(dir / name, content);
    }
    write_file(out_dir / "config_used.json", dump(config_record(cfg)));
}

void cmd_distance(const fs::path& returns_csv, const std::string& date, const RunConfig& cfg,
                  const fs::path& out_dir) {
    const auto fcfg = cfg.filter_config();
    const auto table = load_returns_checked(returns_csv, cfg.missing_policy);
    if (table.tickers.size() < 2) throw InputError("distance needs at least two series");
    const auto row = row_of_date(table, date);
    if (row == 0) throw InputError("date " + date + " is the initial observation; no posterior exists yet");

    std::vector<LabeledPmf> pmfs(table.tickers.size());
    parallel_for(table.tickers.size(), cfg.threads, [&](std::size_t c) {
        const auto y = column(table, c);
        ChangepointFilter f(fcfg, y.front());
        for (std::size_t r = 1; r <= row; ++r) f.step(y[r]);
        pmfs[c] = {table.tickers[c], f.posterior()};
    });
    const auto d = pairwise(pmfs, cfg.threads);

    ensure_dir(out_dir);
    std::ostringstream os;
    write_csv(os, d);
    write_file(out_dir / "dissim.csv", os.str());
    write_file(out_dir / "config_used.json", dump(config_record(cfg)));
}

void cmd_cluster(const fs::path& dissim_csv, std::optional<std::size_t> k, const fs::path& out_dir) {
    std::ifstream is(dissim_csv);
    if (!is) throw InputError("cannot open " + dissim_csv.string());
    const auto d = read_dissimilarity_csv(is);
    const auto dgm = average_linkage(d);
    std::vector<std::size_t> labels;
    if (k) labels = cut(dgm, *k);

    ensure_dir(out_dir);
    write_file(out_dir / "dendrogram.json", dump(to_json(dgm)));
    std::ostringstream os;
    write_csv(os, d.reordered(leaf_order(dgm)));
    write_file(out_dir / "reordered.csv", os.str());
    if (k) {
        std::ostringstream cs;
        cs << "label,cluster\n";
        for (std::size_t i = 0; i < d.size(); ++i) cs << d.labels()[i] << ',' << labels[i] << '\n';
        write_file(out_dir / "clusters.csv", cs.str());
    }
}

void cmd_simulate(const SimulateOptions& opts, const RunConfig& cfg, const fs::path& out_dir) {
    if (opts.series < 1) throw InputError("simulate needs at least one series");
    const auto hazard = HazardModel::geometric(cfg.hazard_p);
    std::vector<SynthPath> paths(opts.series);
    std::vector<std::string> labels(opts.series);
    for (std::size_t i = 0; i < opts.series; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "S%03zu", i + 1);
        labels[i] = buf;
        SynthSpec spec;
        spec.length = opts.length;
        spec.hazard = hazard;
        if (opts.segments.empty()) {
            spec.params = cfg.hyperparams();
        } else {
            spec.params = opts.segments;
        }
        spec.y0 = opts.y0;
        spec.seed = cfg.seed + i;
        paths[i] = generate(spec);
    }

    ReturnsTable table;
    table.tickers = labels;
    table.returns.resize(opts.length + 1, static_cast<Eigen::Index>(opts.series));
    for (std::int64_t t = 0; t <= opts.length; ++t) {
        table.dates.push_back(add_days(opts.start_date, t));
        for (std::size_t i = 0; i < opts.series; ++i) {
            table.returns(t, static_cast<Eigen::Index>(i)) = paths[i].y[static_cast<std::size_t>(t)];
        }
    }

    json truth;
    if (opts.series == 1) {
        truth = {{"changepoints", paths[0].changepoints}, {"segments", segments_json(paths[0].segments)},
                 {"seed", cfg.seed}};
    } else {
        json series = json::array();
        for (std::size_t i = 0; i < opts.series; ++i) {
            series.push_back({{"label", labels[i]},
                              {"changepoints", paths[i].changepoints},
                              {"segments", segments_json(paths[i].segments)},
                              {"seed", cfg.seed + i}});
        }
        truth = {{"seed", cfg.seed}, {"series", series}};
    }

    ensure_dir(out_dir);
    std::ostringstream os;
    write_returns_csv(os, table);
    write_file(out_dir / "returns.csv", os.str());
    write_file(out_dir / "truth.json", dump(truth));
    write_file(out_dir / "config_used.json", dump(config_record(cfg)));
}

std::vector<SegmentParams> parse_segments(const std::string& text) {
    std::vector<SegmentParams> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::array<double, 3> v{};
        std::size_t start = 0;
        for (int k = 0; k < 3; ++k) {
            const auto pos = item.find(':', start);
            if ((k < 2) == (pos == std::string::npos)) {
                throw InputError("segment '" + item + "' must look like mu:alpha:sigma");
            }
            const auto cell = item.substr(start, k < 2 ? pos - start : std::string::npos);
            const auto parsed = csv::parse_cell(cell, "segment '" + item + "'");
            if (!parsed) throw InputError("segment '" + item + "' has an empty field");
            v[static_cast<std::size_t>(k)] = *parsed;
            start = pos + 1;
        }
        out.push_back({v[0], v[1], v[2]});
    }
    return out;
}

}  // namespace volcp::app
