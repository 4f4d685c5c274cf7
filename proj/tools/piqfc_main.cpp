// piqfc: simulation and analysis pipeline for polarization-insensitive
// quantum frequency conversion experiments.
//
// Subcommands:
//   simulate        source (+ optional QFC) -> Poissonian count records
//   analyze         count records -> MLE reconstruction + metrics report
//   fit-efficiency  pump-power calibration data -> (eta_max, g)
//   pipeline        simulate + analyze, single or paired arms

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "piqfc/pipeline.hpp"
#include "piqfc/report.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw piqfc::ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw piqfc::ValidationError("cannot write file: " + path);
    out << content;
}

struct CommonOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> resamples;

    void apply(piqfc::PipelineConfig& cfg) const {
        if (seed) cfg.seed = *seed;
        if (resamples) {
            cfg.base.bootstrap_resamples = *resamples;
            cfg.no_qfc.bootstrap_resamples = *resamples;
            cfg.with_qfc.bootstrap_resamples = *resamples;
        }
    }
};

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const CommonOverrides& overrides) {
    auto cfg = piqfc::load_pipeline_config(config_path);
    overrides.apply(cfg);
    if (cfg.paired)
        throw piqfc::ValidationError(
            "simulate handles a single scenario; use 'pipeline' for paired configs");

    const auto sim = piqfc::simulate_scenario(cfg.base, cfg.seed);
    write_file(out_path, piqfc::format_count_records(sim.records));

    std::cout << "total_counts = " << sim.total_counts << "\n";
    if (sim.qfc_success_prob)
        std::cout << "qfc_success_prob = " << *sim.qfc_success_prob << "\n";
    return 0;
}

int cmd_analyze(const std::string& records_path, const std::string& config_path,
                const std::string& out_path, const CommonOverrides& overrides) {
    auto cfg = piqfc::load_pipeline_config(config_path);
    overrides.apply(cfg);

    const auto records = piqfc::parse_count_records(read_file(records_path));
    const auto arm = piqfc::analyze_records(records, cfg.base, cfg.seed, "single");
    write_file(out_path, piqfc::write_report(cfg, {arm}));

    std::cout << "E = " << arm.metrics.eof << "  P = " << arm.metrics.purity
              << "  F = " << arm.metrics.max_fidelity
              << "  theta_star_deg = " << arm.metrics.theta_star_deg << "\n";
    if (!arm.reconstruction.converged) std::cout << "warning: MLE did not converge\n";
    return 0;
}

int cmd_fit_efficiency(const std::string& data_path, std::optional<double> target,
                       const std::string& out_path) {
    const auto data = piqfc::parse_efficiency_data(read_file(data_path));
    const auto fit = piqfc::fit_efficiency(data);

    std::cout << "eta_max = " << fit.model.eta_max << "\n";
    std::cout << "g = " << fit.model.g << " /W\n";
    std::cout << "residual_norm = " << fit.residual_norm << "\n";

    std::optional<double> target_power;
    if (target) {
        if (*target > fit.model.eta_max)
            throw piqfc::UnreachableTarget("target efficiency " + std::to_string(*target) +
                                           " exceeds fitted eta_max " +
                                           std::to_string(fit.model.eta_max));
        // smaller root of eta_max sin^2(sqrt(gP)) = target
        const double x = std::asin(std::sqrt(*target / fit.model.eta_max));
        target_power = x * x / fit.model.g;
        std::cout << "target_power_W = " << *target_power << "\n";
    }

    if (!out_path.empty()) {
        nlohmann::json doc;
        doc["eta_max"] = fit.model.eta_max;
        doc["g_per_W"] = fit.model.g;
        doc["residual_norm"] = fit.residual_norm;
        doc["iterations"] = fit.iterations;
        if (target) {
            doc["target_efficiency"] = *target;
            doc["target_power_W"] = *target_power;
        }
        write_file(out_path, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_pipeline(const std::string& config_path, const std::string& out_path,
                 const CommonOverrides& overrides) {
    auto cfg = piqfc::load_pipeline_config(config_path);
    overrides.apply(cfg);

    const auto arms = piqfc::run_pipeline(cfg);
    write_file(out_path, piqfc::write_report(cfg, arms));

    for (const auto& arm : arms) {
        std::cout << arm.name << ": E = " << arm.metrics.eof << "  P = " << arm.metrics.purity
                  << "  F = " << arm.metrics.max_fidelity
                  << "  theta_star_deg = " << arm.metrics.theta_star_deg;
        if (arm.qfc_success_prob) std::cout << "  qfc_success_prob = " << *arm.qfc_success_prob;
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polarization-insensitive QFC simulation and analysis"};
    app.require_subcommand(1);

    std::string config_path, records_path, data_path, out_path;
    CommonOverrides overrides;
    std::uint64_t seed_flag = 0;
    int resamples_flag = 0;
    double target_flag = 0.0;

    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", seed_flag, "override the config seed")
            ->each([&](const std::string&) { overrides.seed = seed_flag; });
    };
    auto add_resamples = [&](CLI::App* sub) {
        sub->add_option("--resamples", resamples_flag, "override bootstrap resamples")
            ->each([&](const std::string&) { overrides.resamples = resamples_flag; });
    };

    auto* simulate = app.add_subcommand("simulate", "generate count records from a config");
    simulate->add_option("--config", config_path, "pipeline config file")->required();
    simulate->add_option("--out", out_path, "output count-record file")->required();
    add_seed(simulate);

    auto* analyze = app.add_subcommand("analyze", "reconstruct and score count records");
    analyze->add_option("--records", records_path, "count-record file")->required();
    analyze->add_option("--config", config_path, "pipeline config file")->required();
    analyze->add_option("--out", out_path, "output report file")->required();
    add_seed(analyze);
    add_resamples(analyze);

    auto* fit = app.add_subcommand("fit-efficiency", "fit the pump-power efficiency model");
    fit->add_option("--data", data_path, "calibration data file (power_W efficiency)")->required();
    auto* target_opt = fit->add_option("--target", target_flag, "report pump power for this efficiency");
    fit->add_option("--out", out_path, "optional JSON output file");

    auto* pipeline = app.add_subcommand("pipeline", "simulate + analyze in one step");
    pipeline->add_option("--config", config_path, "pipeline config file")->required();
    pipeline->add_option("--out", out_path, "output report file")->required();
    add_seed(pipeline);
    add_resamples(pipeline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(config_path, out_path, overrides);
        if (analyze->parsed()) return cmd_analyze(records_path, config_path, out_path, overrides);
        if (fit->parsed())
            return cmd_fit_efficiency(
                data_path, target_opt->count() ? std::optional<double>(target_flag) : std::nullopt,
                out_path);
        if (pipeline->parsed()) return cmd_pipeline(config_path, out_path, overrides);
    } catch (const piqfc::ComputationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const piqfc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return 0;
}
