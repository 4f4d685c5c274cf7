#include "piqfc/report.hpp"

#include <set>

namespace piqfc {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix4c& m, bool real_part) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back(real_part ? m(i, j).real() : m(i, j).imag());
        rows.push_back(row);
    }
    return rows;
}

const char* plan_name(PlanName p) {
    switch (p) {
        case PlanName::Standard36: return "Standard36";
        case PlanName::Minimal16: return "Minimal16";
        case PlanName::Custom: return "Custom";
    }
    return "?";
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ValidationError("report: unknown field '" + where + key + "'");
    }
}

} // namespace

std::string write_report(const PipelineConfig& config, const std::vector<ArmResult>& arms) {
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["tool_version"] = kToolVersion;
    doc["seed"] = config.seed;
    doc["paired"] = config.paired;
    doc["config_text"] = config.raw_text;
    doc["assumptions"] = json::array({
        "uncertainties are bootstrap-1sigma (Poisson resampling of observed counts)",
        "equal acquisition weights across settings",
        "Standard36 is the default tomography plan",
    });
    doc["metadata"] = {
        {"detuning_MHz", config.metadata.detuning_mhz},
        {"write_pulse_ns", config.metadata.write_pulse_ns},
        {"read_pulse_ns", config.metadata.read_pulse_ns},
        {"init_pulse_ns", config.metadata.init_pulse_ns},
        {"repetitions_per_cycle", config.metadata.repetitions_per_cycle},
    };

    json arm_list = json::array();
    for (const auto& arm : arms) {
        json a;
        a["name"] = arm.name;
        a["plan"] = plan_name(arm.plan);
        a["total_counts"] = arm.total_counts;
        if (arm.qfc_success_prob) a["qfc_success_prob"] = *arm.qfc_success_prob;
        a["reconstruction"] = {
            {"rho_re", matrix_to_json(arm.reconstruction.rho.rho(), true)},
            {"rho_im", matrix_to_json(arm.reconstruction.rho.rho(), false)},
            {"log_likelihood", arm.reconstruction.log_likelihood},
            {"iterations_used", arm.reconstruction.iterations_used},
            {"converged", arm.reconstruction.converged},
        };
        a["metrics"] = {
            {"concurrence", arm.metrics.concurrence},
            {"eof", arm.metrics.eof},
            {"purity", arm.metrics.purity},
            {"max_fidelity", arm.metrics.max_fidelity},
            {"theta_star_deg", arm.metrics.theta_star_deg},
        };
        json stats;
        for (const auto& [name, st] : arm.bootstrap.stats)
            stats[name] = {{"mean", st.mean}, {"std", st.stddev}};
        a["uncertainties"] = {
            {"method", "bootstrap-1sigma"},
            {"resamples", arm.bootstrap.resamples_requested},
            {"failed_fraction", arm.bootstrap.failure_fraction},
            {"stats", stats},
        };
        arm_list.push_back(a);
    }
    doc["arms"] = arm_list;
    return doc.dump(2) + "\n";
}

nlohmann::json read_report(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("report: ") + e.what());
    }

    check_keys(doc, {"schema_version", "tool_version", "seed", "paired", "config_text",
                     "assumptions", "metadata", "arms"},
               "");
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
        doc["schema_version"].get<int>() != kReportSchemaVersion)
        throw ValidationError("report: unsupported or missing schema_version");

    if (!doc.contains("arms") || !doc["arms"].is_array() || doc["arms"].empty())
        throw ValidationError("report: missing arms");
    for (const auto& arm : doc["arms"]) {
        check_keys(arm,
                   {"name", "plan", "total_counts", "qfc_success_prob", "reconstruction",
                    "metrics", "uncertainties"},
                   "arms[].");
        if (arm.contains("reconstruction"))
            check_keys(arm["reconstruction"],
                       {"rho_re", "rho_im", "log_likelihood", "iterations_used", "converged"},
                       "arms[].reconstruction.");
        if (arm.contains("metrics"))
            check_keys(arm["metrics"],
                       {"concurrence", "eof", "purity", "max_fidelity", "theta_star_deg"},
                       "arms[].metrics.");
        if (arm.contains("uncertainties"))
            check_keys(arm["uncertainties"], {"method", "resamples", "failed_fraction", "stats"},
                       "arms[].uncertainties.");
    }
    return doc;
}

} // namespace piqfc
