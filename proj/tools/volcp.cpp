// volcp: volatility change-point filtering and W1 clustering of return series.
//
// Exit codes: 0 success, 2 input error, 3 numeric failure.

#include "volcp/app.hpp"
#include "volcp/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Overrides {
    std::string config_path;
    std::optional<double> hazard_p, a, b, delta0, delta1;
    std::optional<std::size_t> max_support;
    std::optional<bool> include_mu;
    std::optional<std::string> missing;
    std::optional<unsigned> threads;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        cmd->add_option("--hazard-p", hazard_p, "geometric change-point gap parameter");
        cmd->add_option("--a", a, "inverse-gamma shape");
        cmd->add_option("--b", b, "inverse-gamma scale");
        cmd->add_option("--delta0", delta0, "prior scale of the intercept");
        cmd->add_option("--delta1", delta1, "prior scale of the AR coefficient");
        cmd->add_option("--max-support", max_support, "retained change-point hypotheses (0 = no pruning)");
        cmd->add_option("--include-mu", include_mu, "model the intercept (true/false)");
        cmd->add_option("--missing", missing, "missing-data policy: error or drop_rows");
        cmd->add_option("--threads", threads, "worker threads (0 = auto)");
        cmd->add_option("--seed", seed, "random seed");
    }

    volcp::RunConfig resolve() const {
        auto cfg = config_path.empty() ? volcp::RunConfig{} : volcp::load_run_config(config_path);
        if (hazard_p) cfg.hazard_p = *hazard_p;
        if (a) cfg.a = *a;
        if (b) cfg.b = *b;
        if (delta0) cfg.delta0 = *delta0;
        if (delta1) cfg.delta1 = *delta1;
        if (max_support) cfg.max_support = *max_support;
        if (include_mu) cfg.include_mu = *include_mu;
        if (missing) cfg.missing_policy = volcp::parse_missing_policy(*missing);
        if (threads) cfg.threads = *threads;
        if (seed) cfg.seed = *seed;
        cfg.validate();
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volatility change-point detection and dynamic clustering of return series"};
    app.require_subcommand(1);

    std::string input;
    std::string out_dir = ".";
    std::string date;
    std::vector<std::string> snapshot_dates;
    std::optional<std::size_t> k;
    bool long_format = false;
    volcp::app::SimulateOptions sim;
    std::string segments;

    auto* returns = app.add_subcommand("returns", "prices CSV -> daily log-returns CSV");
    returns->add_option("prices", input, "price CSV (wide: date,<ticker>,...)")->required();
    returns->add_option("--out", out_dir, "output directory");
    returns->add_flag("--long-format", long_format, "input is date,ticker,close");
    std::string returns_missing = "error";
    returns->add_option("--missing", returns_missing, "missing-data policy: error or drop_rows");

    Overrides fit_ov, dist_ov, sim_ov;
    auto* fit = app.add_subcommand("fit", "run the change-point filter on every series");
    fit->add_option("returns", input, "returns CSV")->required();
    fit->add_option("--out", out_dir, "output directory");
    fit->add_option("--snapshot-dates", snapshot_dates, "dates for full posterior snapshots")->delimiter(',');
    fit_ov.attach(fit);

    auto* distance = app.add_subcommand("distance", "pairwise W1 distances of change-point posteriors");
    distance->add_option("returns", input, "returns CSV")->required();
    distance->add_option("--date", date, "evaluation date (ISO-8601)")->required();
    distance->add_option("--out", out_dir, "output directory");
    dist_ov.attach(distance);

    auto* cluster = app.add_subcommand("cluster", "average-linkage clustering of a dissimilarity matrix");
    cluster->add_option("dissim", input, "dissimilarity CSV")->required();
    cluster->add_option("--out", out_dir, "output directory");
    cluster->add_option("--k", k, "number of flat clusters");

    auto* simulate = app.add_subcommand("simulate", "generate synthetic returns with known change-points");
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_option("--length", sim.length, "number of returns after y0");
    simulate->add_option("--series", sim.series, "number of independent series");
    simulate->add_option("--segments", segments, "explicit mu:alpha:sigma per segment, comma separated");
    simulate->add_option("--y0", sim.y0, "initial value y0");
    simulate->add_option("--start-date", sim.start_date, "date label of y0");
    sim_ov.attach(simulate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        namespace a = volcp::app;
        if (*returns) {
            a::cmd_returns(input, out_dir, volcp::parse_missing_policy(returns_missing), long_format);
        } else if (*fit) {
            a::cmd_fit(input, fit_ov.resolve(), out_dir, snapshot_dates);
        } else if (*distance) {
            a::cmd_distance(input, date, dist_ov.resolve(), out_dir);
        } else if (*cluster) {
            a::cmd_cluster(input, k, out_dir);
        } else if (*simulate) {
            sim.segments = a::parse_segments(segments);
            a::cmd_simulate(sim, sim_ov.resolve(), out_dir);
        }
    } catch (const volcp::NumericError& e) {
        std::cerr << "volcp: numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const volcp::InputError& e) {
        std::cerr << "volcp: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "volcp: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
