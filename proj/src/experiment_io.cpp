#include "lrdcp/experiment_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lrdcp {

namespace {

using nlohmann::json;

std::vector<double> as_double_list(const json& v, const char* key) {
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& e : v) out.push_back(e.get<double>());
    } else if (v.is_number()) {
        out.push_back(v.get<double>());
    } else {
        throw std::invalid_argument(std::string("config key '") + key +
                                    "' must be a number or array of numbers");
    }
    if (out.empty()) {
        throw std::invalid_argument(std::string("config key '") + key + "' is empty");
    }
    return out;
}

MethodSpec parse_method(const std::string& name, double gamma, SnWindow window) {
    MethodSpec ms;
    if (name == "wilcoxon") {
        ms.method = Method::wilcoxon;
    } else if (name == "sn-wilcoxon" || name == "sn_wilcoxon") {
        ms.method = Method::sn_wilcoxon;
        ms.window = window;
    } else if (name == "cusum") {
        ms.method = Method::cusum;
        ms.gamma = gamma;
    } else {
        throw std::invalid_argument("unknown method '" + name + "'");
    }
    return ms;
}

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

SimulationPlan parse_plan(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("config root must be a JSON object");
    }

    static const std::set<std::string> known = {
        "margin", "pareto_beta", "pareto_k", "tau",  "h",       "hurst", "n",
        "reps",   "methods",     "gamma",    "tau1", "tau2",    "seed",  "threads"};
    std::string unknown;
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (!known.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
    }
    if (!unknown.empty()) {
        throw std::invalid_argument("unknown config keys: " + unknown);
    }

    SimulationPlan plan;
    if (doc.contains("margin")) {
        const std::string m = doc["margin"].get<std::string>();
        if (m == "normal" || m == "gaussian") {
            plan.margin = Margin::gaussian;
        } else if (m == "pareto") {
            plan.margin = Margin::pareto;
        } else {
            throw std::invalid_argument("margin must be 'normal' or 'pareto'");
        }
    }
    if (doc.contains("pareto_beta")) plan.pareto_beta = doc["pareto_beta"].get<double>();
    if (doc.contains("pareto_k")) plan.pareto_k = doc["pareto_k"].get<double>();
    if (doc.contains("tau")) plan.taus = as_double_list(doc["tau"], "tau");
    if (doc.contains("h")) plan.shifts = as_double_list(doc["h"], "h");
    if (doc.contains("hurst")) plan.hursts = as_double_list(doc["hurst"], "hurst");
    if (doc.contains("n")) plan.n = doc["n"].get<std::size_t>();
    if (doc.contains("reps")) plan.reps = doc["reps"].get<std::size_t>();
    if (doc.contains("seed")) plan.seed_base = doc["seed"].get<std::uint64_t>();
    if (doc.contains("threads")) plan.threads = doc["threads"].get<unsigned>();

    const double gamma = doc.contains("gamma") ? doc["gamma"].get<double>() : 0.0;
    SnWindow window;
    if (doc.contains("tau1")) window.tau1 = doc["tau1"].get<double>();
    if (doc.contains("tau2")) window.tau2 = doc["tau2"].get<double>();

    if (doc.contains("methods")) {
        plan.methods.clear();
        for (const auto& m : doc["methods"]) {
            plan.methods.push_back(parse_method(m.get<std::string>(), gamma, window));
        }
        if (plan.methods.empty()) {
            throw std::invalid_argument("methods list is empty");
        }
    } else {
        plan.methods = {parse_method("wilcoxon", gamma, window)};
    }
    return plan;
}

std::vector<ExperimentSummary> run_plan(const SimulationPlan& plan) {
    std::vector<ExperimentSummary> out;
    std::uint64_t cell_id = 0;
    for (double tau : plan.taus) {
        for (double shift : plan.shifts) {
            for (double hurst : plan.hursts) {
                ExperimentConfig cfg;
                cfg.margin = plan.margin;
                cfg.pareto_beta = plan.pareto_beta;
                cfg.pareto_k = plan.pareto_k;
                cfg.tau = tau;
                cfg.shift = shift;
                cfg.hurst = hurst;
                cfg.n = plan.n;
                cfg.reps = plan.reps;
                cfg.methods = plan.methods;
                cfg.seed_base = plan.seed_base;
                cfg.cell_id = cell_id++;
                cfg.threads = plan.threads;
                out.push_back(run_experiment(cfg));
            }
        }
    }
    return out;
}

std::string summary_csv(const std::vector<ExperimentSummary>& summaries) {
    std::ostringstream os;
    os << "cell,margin,tau,h,hurst,n,reps,method,gamma,k0,mean,sd,q1,median,q3,"
          "degenerate_count\n";
    for (const auto& s : summaries) {
        for (const auto& m : s.per_method) {
            os << s.config.cell_id << ','
               << (s.config.margin == Margin::gaussian ? "normal" : "pareto") << ','
               << format_full(s.config.tau) << ',' << format_full(s.config.shift) << ','
               << format_full(s.config.hurst) << ',' << s.config.n << ',' << s.reps_used
               << ',' << method_name(m.spec.method) << ',' << format_full(m.spec.gamma)
               << ',' << s.k0 << ',' << format_full(m.stats.mean) << ','
               << format_full(m.stats.sd) << ',' << format_full(m.stats.q1) << ','
               << format_full(m.stats.median) << ',' << format_full(m.stats.q3) << ','
               << m.degenerate_count << '\n';
        }
    }
    return os.str();
}

std::string raw_estimates_csv(const std::vector<ExperimentSummary>& summaries) {
    std::ostringstream os;
    os << "cell,margin,tau,h,hurst,method,rep,k_hat\n";
    for (const auto& s : summaries) {
        for (const auto& m : s.per_method) {
            for (std::size_t rep = 0; rep < m.estimates.size(); ++rep) {
                os << s.config.cell_id << ','
                   << (s.config.margin == Margin::gaussian ? "normal" : "pareto") << ','
                   << format_full(s.config.tau) << ',' << format_full(s.config.shift)
                   << ',' << format_full(s.config.hurst) << ','
                   << method_name(m.spec.method) << ',' << rep << ',' << m.estimates[rep]
                   << '\n';
            }
        }
    }
    return os.str();
}

std::string summary_table(const std::vector<ExperimentSummary>& summaries) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof(line), "%-8s %-12s %6s %6s %6s %6s %10s %10s %22s\n",
                  "margin", "method", "tau", "h", "H", "k0", "mean", "sd",
                  "quartiles");
    os << line;
    for (const auto& s : summaries) {
        for (const auto& m : s.per_method) {
            char quart[64];
            std::snprintf(quart, sizeof(quart), "(%g, %g, %g)", m.stats.q1,
                          m.stats.median, m.stats.q3);
            std::snprintf(line, sizeof(line),
                          "%-8s %-12s %6g %6g %6g %6zu %10.6g %10.6g %22s\n",
                          s.config.margin == Margin::gaussian ? "normal" : "pareto",
                          method_name(m.spec.method), s.config.tau, s.config.shift,
                          s.config.hurst, s.k0, m.stats.mean, m.stats.sd, quart);
            os << line;
        }
    }
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        if (!out.flush()) {
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, target);
}

} // namespace lrdcp
