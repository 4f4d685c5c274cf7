#include "piqfc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace piqfc {

namespace {

constexpr double rad(double degv) { return degv * std::numbers::pi / 180.0; }

struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

using IniFile = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

IniFile parse_ini(const std::string& text) {
    IniFile file;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": empty section name");
            file[section]; // sections may legitimately be empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
        if (section.empty())
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": empty key or value");
        if (file[section].count(key))
            throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key '" +
                                  section + "." + key + "'");
        file[section][key] = Entry{value, lineno, false};
    }
    return file;
}

/// Key lookup with arm-scoped override: "<arm>.<section>" shadows "<section>".
class Reader {
public:
    Reader(const IniFile& file, std::string arm_prefix)
        : file_(file), prefix_(std::move(arm_prefix)) {}

    const Entry* find(const std::string& section, const std::string& key) const {
        if (!prefix_.empty()) {
            if (auto* e = lookup(prefix_ + "." + section, key)) {
                lookup(section, key); // mark a shadowed base key as consumed
                return e;
            }
        }
        return lookup(section, key);
    }

    bool has_section(const std::string& section) const {
        if (!prefix_.empty() && file_.count(prefix_ + "." + section)) return true;
        return file_.count(section) > 0;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
        const Entry* e = find(section, key);
        return e ? e->value : fallback;
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        const Entry* e = find(section, key);
        if (!e) return fallback;
        return parse_double(*e, section + "." + key);
    }

    double require_double(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e)
            throw ValidationError("config: missing required field '" + section + "." + key + "'");
        return parse_double(*e, section + "." + key);
    }

    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const {
        const Entry* e = find(section, key);
        if (!e) return fallback;
        std::int64_t v = 0;
        auto res = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
        if (res.ec != std::errc() || res.ptr != e->value.data() + e->value.size())
            throw ValidationError("config line " + std::to_string(e->line) + ": field '" +
                                  section + "." + key + "' is not an integer");
        return v;
    }

    std::uint64_t require_u64(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e)
            throw ValidationError("config: missing required field '" + section + "." + key + "'");
        std::uint64_t v = 0;
        auto res = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
        if (res.ec != std::errc() || res.ptr != e->value.data() + e->value.size())
            throw ValidationError("config line " + std::to_string(e->line) + ": field '" +
                                  section + "." + key + "' is not an unsigned integer");
        return v;
    }

private:
    static double parse_double(const Entry& e, const std::string& name) {
        double v = 0.0;
        auto res = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
        if (res.ec != std::errc() || res.ptr != e.value.data() + e.value.size())
            throw ValidationError("config line " + std::to_string(e.line) + ": field '" + name +
                                  "' is not a number");
        return v;
    }

    const Entry* lookup(const std::string& section, const std::string& key) const {
        auto sec = file_.find(section);
        if (sec == file_.end()) return nullptr;
        auto it = sec->second.find(key);
        if (it == sec->second.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    const IniFile& file_;
    std::string prefix_;
};

SourceSpec read_source(const Reader& r) {
    SourceSpec spec;
    const std::string type = r.get_string("source", "type", "atom_photon");
    if (type == "werner") {
        spec.kind = SourceSpec::Kind::Werner;
        spec.werner_p = r.require_double("source", "p");
        if (spec.werner_p < 0.0 || spec.werner_p > 1.0)
            throw ValidationError("config: field 'source.p' must be in [0, 1]");
        spec.werner_theta = rad(r.get_double("source", "theta_deg", 0.0));
    } else if (type == "atom_photon") {
        spec.kind = SourceSpec::Kind::AtomPhoton;
        const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
        spec.atom_photon.alpha = Complex(r.get_double("source", "alpha_re", inv_sqrt2),
                                         r.get_double("source", "alpha_im", 0.0));
        spec.atom_photon.beta = Complex(r.get_double("source", "beta_re", inv_sqrt2),
                                        r.get_double("source", "beta_im", 0.0));
        spec.atom_photon.dephasing = r.get_double("source", "dephasing", 0.0);
        spec.atom_photon.white_noise = r.get_double("source", "white_noise", 0.0);
        spec.atom_photon.read_phase = rad(r.get_double("source", "read_phase_deg", 0.0));
        spec.readout_balance = r.get_double("source", "readout_balance", 0.5);
        if (spec.readout_balance < 0.0 || spec.readout_balance > 1.0)
            throw ValidationError("config: field 'source.readout_balance' must be in [0, 1]");
        try {
            spec.atom_photon.validate();
        } catch (const ValidationError& err) {
            throw ValidationError(std::string("config: [source] ") + err.what());
        }
    } else {
        throw ValidationError("config: field 'source.type' must be 'werner' or 'atom_photon'");
    }
    return spec;
}

std::optional<QfcConfig> read_qfc(const Reader& r) {
    if (!r.has_section("qfc")) return std::nullopt;
    QfcConfig cfg;
    cfg.theta_h = rad(r.require_double("qfc", "theta_h_deg"));
    cfg.theta_v = rad(r.require_double("qfc", "theta_v_deg"));
    cfg.phi_h = rad(r.get_double("qfc", "phi_h_deg", 0.0));
    cfg.phi_v = rad(r.get_double("qfc", "phi_v_deg", 0.0));
    cfg.transmission = r.get_double("qfc", "transmission", 1.0);
    try {
        cfg.validate();
    } catch (const ValidationError& err) {
        throw ValidationError(std::string("config: [qfc] ") + err.what());
    }
    return cfg;
}

ScenarioConfig read_scenario(const Reader& r, bool allow_qfc) {
    ScenarioConfig sc;
    sc.source = read_source(r);
    if (allow_qfc) {
        sc.qfc = read_qfc(r);
        const std::string arm = r.get_string("qfc", "arm", "AS");
        if (arm == "AS")
            sc.qfc_arm = Arm::AS;
        else if (arm == "S")
            sc.qfc_arm = Arm::S;
        else
            throw ValidationError("config: field 'qfc.arm' must be 'AS' or 'S'");
    }

    const std::string plan = r.get_string("run", "plan", "Standard36");
    if (plan == "Standard36")
        sc.plan = PlanName::Standard36;
    else if (plan == "Minimal16")
        sc.plan = PlanName::Minimal16;
    else
        throw ValidationError("config: field 'run.plan' must be 'Standard36' or 'Minimal16'");

    sc.mean_pairs_per_setting = r.require_double("run", "mean_pairs_per_setting");
    if (!(sc.mean_pairs_per_setting > 0.0))
        throw ValidationError("config: field 'run.mean_pairs_per_setting' must be > 0");

    sc.bootstrap_resamples =
        static_cast<int>(r.get_int("run", "bootstrap_resamples", 100));
    if (sc.bootstrap_resamples < 10)
        throw ValidationError("config: field 'run.bootstrap_resamples' must be >= 10");

    sc.mle.max_iterations = static_cast<int>(r.get_int("mle", "max_iterations", 5000));
    sc.mle.convergence_tol = r.get_double("mle", "convergence_tol", 1e-10);
    sc.mle.dilution = r.get_double("mle", "dilution", 1.0);
    try {
        sc.mle.validate();
    } catch (const ValidationError& err) {
        throw ValidationError(std::string("config: [mle] ") + err.what());
    }
    return sc;
}

} // namespace

TwoQubitState SourceSpec::make_state() const {
    if (kind == Kind::Werner) return werner_state(werner_p, werner_theta);
    return read_out(atom_photon_state(atom_photon), readout_balance);
}

PipelineConfig parse_pipeline_config(const std::string& text) {
    const IniFile file = parse_ini(text);

    PipelineConfig cfg;
    cfg.raw_text = text;

    bool paired = false;
    for (const auto& [section, entries] : file) {
        (void)entries;
        if (section.rfind("no_qfc.", 0) == 0 || section.rfind("with_qfc.", 0) == 0) paired = true;
    }
    cfg.paired = paired;

    const Reader base(file, "");
    cfg.seed = base.require_u64("run", "seed");
    cfg.metadata.detuning_mhz = base.get_double("metadata", "detuning_MHz", 10.0);
    cfg.metadata.write_pulse_ns = base.get_double("metadata", "write_pulse_ns", 70.0);
    cfg.metadata.read_pulse_ns = base.get_double("metadata", "read_pulse_ns", 100.0);
    cfg.metadata.init_pulse_ns = base.get_double("metadata", "init_pulse_ns", 200.0);
    cfg.metadata.repetitions_per_cycle =
        static_cast<int>(base.get_int("metadata", "repetitions_per_cycle", 990));

    if (paired) {
        const Reader no_r(file, "no_qfc");
        const Reader with_r(file, "with_qfc");
        cfg.no_qfc = read_scenario(no_r, /*allow_qfc=*/false);
        cfg.with_qfc = read_scenario(with_r, /*allow_qfc=*/true);
        if (!cfg.with_qfc.qfc)
            throw ValidationError(
                "config: paired run needs a [with_qfc.qfc] (or base [qfc]) section");
        cfg.base = cfg.no_qfc;
    } else {
        cfg.base = read_scenario(base, /*allow_qfc=*/true);
        cfg.no_qfc = cfg.base;
        cfg.with_qfc = cfg.base;
    }

    for (const auto& [section, entries] : file)
        for (const auto& [key, entry] : entries)
            if (!entry.used)
                throw ValidationError("config line " + std::to_string(entry.line) +
                                      ": unknown field '" + section + "." + key + "'");
    return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pipeline_config(buf.str());
}

} // namespace piqfc
