#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lrdcp/asymptotics.hpp"
#include "lrdcp/csv.hpp"
#include "lrdcp/estimators.hpp"
#include "lrdcp/experiment_io.hpp"
#include "lrdcp/montecarlo.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

double round_sig(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

int cmd_estimate(const std::string& input, const std::string& method_name,
                 double gamma, double tau1, double tau2,
                 const std::string& format, bool with_trace) {
    const lrdcp::TimeSeries series = lrdcp::read_series_csv(input);

    lrdcp::ChangePointEstimate est;
    lrdcp::StatisticTrace trace;
    if (method_name == "wilcoxon") {
        const lrdcp::RankVector r = lrdcp::compute_ranks(series);
        trace = lrdcp::wilcoxon_trace(r);
        est = lrdcp::argmax_estimate(trace);
        est.had_ties = r.had_ties;
    } else if (method_name == "sn-wilcoxon") {
        const lrdcp::RankVector r = lrdcp::compute_ranks(series);
        trace = lrdcp::sn_wilcoxon_trace(r, {tau1, tau2});
        est = lrdcp::argmax_estimate(trace);
        est.window = {tau1, tau2};
        est.had_ties = r.had_ties;
    } else if (method_name == "cusum") {
        trace = lrdcp::cusum_trace(series.values, gamma);
        est = lrdcp::argmax_estimate(trace);
        est.had_ties = lrdcp::compute_ranks(series).had_ties;
    } else {
        throw std::invalid_argument("unknown method '" + method_name + "'");
    }

    const bool has_label = series.has_labels();
    const double label = has_label ? series.labels[est.k_hat - 1] : 0.0;

    if (format == "json") {
        json out;
        out["method"] = method_name;
        out["k_hat"] = est.k_hat;
        if (has_label) {
            out["label"] = label;
        } else {
            out["label"] = nullptr;
        }
        out["statistic"] = round_sig(est.statistic_value);
        out["degenerate"] = est.degenerate;
        out["had_ties"] = est.had_ties;
        out["n"] = series.size();
        if (with_trace) {
            json tr = json::array();
            for (std::size_t k = trace.k_first; k <= trace.k_last; ++k) {
                tr.push_back(trace.at_k(k));
            }
            out["trace"] = tr;
            out["trace_k_first"] = trace.k_first;
        }
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "method,k_hat,label,statistic,degenerate,had_ties,n\n";
        std::cout << method_name << ',' << est.k_hat << ',';
        if (has_label) std::cout << label;
        std::cout << ',' << round_sig(est.statistic_value) << ','
                  << (est.degenerate ? 1 : 0) << ',' << (est.had_ties ? 1 : 0) << ','
                  << series.size() << "\n";
        if (with_trace) {
            std::cout << "k,value\n";
            for (std::size_t k = trace.k_first; k <= trace.k_last; ++k) {
                std::cout << k << ',' << trace.at_k(k) << "\n";
            }
        }
    } else {
        throw std::invalid_argument("format must be 'json' or 'csv'");
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    const lrdcp::SimulationPlan plan = lrdcp::parse_plan(read_text_file(config_path));
    const auto summaries = lrdcp::run_plan(plan);

    std::filesystem::create_directories(out_dir);
    lrdcp::write_file_atomic(out_dir + "/summary.csv", lrdcp::summary_csv(summaries));
    lrdcp::write_file_atomic(out_dir + "/raw_estimates.csv",
                             lrdcp::raw_estimates_csv(summaries));
    std::cout << lrdcp::summary_table(summaries);
    return 0;
}

int cmd_mae(const std::vector<double>& hursts, const std::vector<std::size_t>& lengths,
            std::size_t reps, double shift, double tau, std::uint64_t seed,
            unsigned threads, const std::string& out_path) {
    const auto cells = lrdcp::mae_curve(hursts, lengths, reps, shift, tau, seed, threads);
    std::ostringstream os;
    os << "hurst,n,mae\n";
    for (const auto& c : cells) {
        os << c.hurst << ',' << c.n << ',' << c.mae << '\n';
    }
    if (!out_path.empty()) {
        lrdcp::write_file_atomic(out_path, os.str());
    }
    std::cout << os.str();
    return 0;
}

int cmd_limit_sample(double tau, double hurst, std::size_t reps, double grid_m,
                     double step, std::uint64_t seed, bool zero_j1,
                     const std::string& out_path) {
    lrdcp::LimitLawOptions opt;
    opt.grid_m = grid_m;
    opt.grid_step = step;
    if (zero_j1) {
        opt.override_int_j1 = true;
        opt.int_j1_value = 0.0;
    }
    const lrdcp::LimitLawSample sample = lrdcp::sample_limit_argmax(tau, hurst, reps, seed, opt);
    std::ostringstream os;
    for (double v : sample.argmax_values) os << v << '\n';
    if (!out_path.empty()) {
        lrdcp::write_file_atomic(out_path, os.str());
    } else {
        std::cout << os.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Change point estimation for long-range dependent time series"};
    app.require_subcommand(1);

    // estimate
    std::string input, method = "wilcoxon", format = "json";
    double gamma = 0.0, tau1 = 0.15, tau2 = 0.85;
    bool with_trace = false;
    auto* estimate = app.add_subcommand("estimate", "Estimate a mean-shift location from a CSV series");
    estimate->add_option("--input", input, "CSV file (value column, optional leading label column)")->required();
    estimate->add_option("--method", method, "wilcoxon | sn-wilcoxon | cusum");
    estimate->add_option("--gamma", gamma, "CUSUM weight exponent in [0,1)");
    estimate->add_option("--tau1", tau1, "sn-wilcoxon window lower fraction");
    estimate->add_option("--tau2", tau2, "sn-wilcoxon window upper fraction");
    estimate->add_option("--format", format, "json | csv");
    estimate->add_flag("--trace", with_trace, "include the full statistic trace");

    // simulate
    std::string config_path, out_dir = ".";
    auto* simulate = app.add_subcommand("simulate", "Run a replicated sampling-distribution experiment");
    simulate->add_option("--config", config_path, "JSON experiment config")->required();
    simulate->add_option("--out", out_dir, "output directory for CSVs");

    // mae
    std::vector<double> hursts = {0.6, 0.7, 0.8, 0.9};
    std::vector<std::size_t> lengths = {1000, 2000, 4000, 8000, 16000};
    std::size_t mae_reps = 500;
    double mae_h = 1.0, mae_tau = 0.5;
    std::uint64_t mae_seed = 0;
    unsigned mae_threads = 1;
    std::string mae_out;
    auto* mae = app.add_subcommand("mae", "Mean absolute error of the Wilcoxon estimator over (H, n)");
    mae->add_option("--hurst", hursts, "Hurst values");
    mae->add_option("--n", lengths, "series lengths");
    mae->add_option("--reps", mae_reps, "replications per cell");
    mae->add_option("--shift", mae_h, "shift height");
    mae->add_option("--tau", mae_tau, "change fraction");
    mae->add_option("--seed", mae_seed, "base seed");
    mae->add_option("--threads", mae_threads, "worker threads");
    mae->add_option("--out", mae_out, "output CSV path");

    // limit-sample
    double ls_tau = 0.5, ls_hurst = 0.7, ls_m = 50.0, ls_step = 0.05;
    std::size_t ls_reps = 2000;
    std::uint64_t ls_seed = 0;
    std::string ls_out;
    bool ls_zero_j1 = false;
    auto* limit = app.add_subcommand("limit-sample", "Sample the limit-law argmax distribution");
    limit->add_option("--tau", ls_tau, "change fraction");
    limit->add_option("--hurst", ls_hurst, "Hurst index");
    limit->add_option("--reps", ls_reps, "replications");
    limit->add_option("--M", ls_m, "grid half-width");
    limit->add_option("--step", ls_step, "grid spacing");
    limit->add_option("--seed", ls_seed, "seed");
    limit->add_option("--out", ls_out, "output path (one argmax per line)");
    limit->add_flag("--zero-j1", ls_zero_j1, "force int J1 dF to 0 (testing)")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (estimate->parsed()) {
            return cmd_estimate(input, method, gamma, tau1, tau2, format, with_trace);
        }
        if (simulate->parsed()) {
            return cmd_simulate(config_path, out_dir);
        }
        if (mae->parsed()) {
            return cmd_mae(hursts, lengths, mae_reps, mae_h, mae_tau, mae_seed,
                           mae_threads, mae_out);
        }
        if (limit->parsed()) {
            return cmd_limit_sample(ls_tau, ls_hurst, ls_reps, ls_m, ls_step, ls_seed,
                                    ls_zero_j1, ls_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
