#include "piqfc/measurement.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "piqfc/rng.hpp"

namespace piqfc {

namespace {

constexpr double kPi = std::numbers::pi;

double reduce_angle(double a) {
    // to [0, pi); waveplate action has period pi
    double r = std::fmod(a, kPi);
    if (r < 0.0) r += kPi;
    return r;
}

constexpr double deg(double rad) { return rad * 180.0 / std::numbers::pi; }
constexpr double rad(double degv) { return degv * std::numbers::pi / 180.0; }

} // namespace

MeasurementSetting MeasurementSetting::reduced() const {
    return {reduce_angle(qwp_s), reduce_angle(hwp_s), reduce_angle(qwp_as), reduce_angle(hwp_as)};
}

Matrix2c hwp_jones(double theta) {
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    Matrix2c m;
    m << c, s, s, -c;
    return m;
}

Matrix2c qwp_jones(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex one_minus_i(1.0, -1.0);
    Matrix2c m;
    m(0, 0) = Complex(c * c, s * s);
    m(0, 1) = one_minus_i * s * c;
    m(1, 0) = one_minus_i * s * c;
    m(1, 1) = Complex(s * s, c * c);
    return m;
}

PolarizationKet analyzer_ket(double qwp, double hwp) {
    Vector2c h(1.0, 0.0);
    Vector2c m = qwp_jones(qwp).adjoint() * (hwp_jones(hwp).adjoint() * h);
    return PolarizationKet(m / m.norm());
}

Matrix4c setting_projector(const MeasurementSetting& s) {
    const auto ket_s = analyzer_ket(s.qwp_s, s.hwp_s);
    const auto ket_as = analyzer_ket(s.qwp_as, s.hwp_as);
    return kron(ket_s.projector(), ket_as.projector());
}

double coincidence_probability(const TwoQubitState& state, const MeasurementSetting& setting) {
    const double p = (state.rho() * setting_projector(setting)).trace().real();
    return std::clamp(p, 0.0, 1.0);
}

SettingsPlan standard_plan(PlanName name) {
    // Analyzer (qwp, hwp) pairs selecting H, V, D, A, R, L at the
    // PBS-transmitted port under the frozen Jones conventions.
    const std::pair<double, double> h{0.0, 0.0};
    const std::pair<double, double> v{0.0, kPi / 4.0};
    const std::pair<double, double> d{kPi / 4.0, kPi / 8.0};
    const std::pair<double, double> a{kPi / 4.0, 7.0 * kPi / 8.0};
    const std::pair<double, double> r{kPi / 4.0, 0.0};
    const std::pair<double, double> l{3.0 * kPi / 4.0, 0.0};

    std::vector<std::pair<double, double>> arm;
    SettingsPlan plan;
    switch (name) {
        case PlanName::Standard36:
            arm = {h, v, d, a, r, l};
            plan.name = PlanName::Standard36;
            break;
        case PlanName::Minimal16:
            arm = {h, v, d, r};
            plan.name = PlanName::Minimal16;
            break;
        case PlanName::Custom:
            throw ValidationError("standard_plan: Custom has no predefined settings");
    }
    for (const auto& ps : arm)
        for (const auto& pas : arm)
            plan.settings.push_back(MeasurementSetting{ps.first, ps.second, pas.first, pas.second});
    return plan;
}

int completeness_rank(const SettingsPlan& plan, double sv_tol) {
    if (plan.settings.empty()) return 0;
    Eigen::MatrixXcd vecs(static_cast<Eigen::Index>(plan.settings.size()), 16);
    for (std::size_t j = 0; j < plan.settings.size(); ++j) {
        const Matrix4c pi = setting_projector(plan.settings[j]);
        for (int row = 0; row < 4; ++row)
            for (int col = 0; col < 4; ++col)
                vecs(static_cast<Eigen::Index>(j), row * 4 + col) = pi(row, col);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vecs);
    const double top = svd.singularValues()(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > sv_tol * std::max(1.0, top)) ++rank;
    return rank;
}

bool is_informationally_complete(const SettingsPlan& plan) {
    return completeness_rank(plan) == 16;
}

std::vector<CountRecord> simulate_counts(const TwoQubitState& state, const SettingsPlan& plan,
                                         double mean_pairs_per_setting, std::uint64_t seed) {
    if (!(mean_pairs_per_setting > 0.0))
        throw ValidationError("simulate_counts: mean_pairs_per_setting must be > 0");
    Rng rng(seed);
    std::vector<CountRecord> records;
    records.reserve(plan.settings.size());
    for (const auto& setting : plan.settings) {
        CountRecord rec;
        rec.setting = setting.reduced();
        rec.acquisition_weight = 1.0;
        const double mean =
            mean_pairs_per_setting * rec.acquisition_weight * coincidence_probability(state, setting);
        rec.count = rng.poisson(mean);
        records.push_back(rec);
    }
    return records;
}

std::string format_count_records(const std::vector<CountRecord>& records) {
    std::string out = "# qwp_S_deg hwp_S_deg qwp_AS_deg hwp_AS_deg count weight\n";
    char buf[160];
    for (const auto& rec : records) {
        const auto s = rec.setting.reduced();
        std::snprintf(buf, sizeof(buf), "%.10g %.10g %.10g %.10g %llu %.10g\n", deg(s.qwp_s),
                      deg(s.hwp_s), deg(s.qwp_as), deg(s.hwp_as),
                      static_cast<unsigned long long>(rec.count), rec.acquisition_weight);
        out += buf;
    }
    return out;
}

std::vector<CountRecord> parse_count_records(const std::string& text) {
    std::vector<CountRecord> records;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() != 6)
            throw ValidationError("count records line " + std::to_string(lineno) +
                                  ": expected 6 fields, got " + std::to_string(tokens.size()));

        auto parse_double = [&](const std::string& t, const char* field) {
            double val = 0.0;
            auto res = std::from_chars(t.data(), t.data() + t.size(), val);
            if (res.ec != std::errc() || res.ptr != t.data() + t.size())
                throw ValidationError("count records line " + std::to_string(lineno) + ": bad " +
                                      std::string(field));
            return val;
        };

        CountRecord rec;
        rec.setting.qwp_s = rad(parse_double(tokens[0], "qwp_S"));
        rec.setting.hwp_s = rad(parse_double(tokens[1], "hwp_S"));
        rec.setting.qwp_as = rad(parse_double(tokens[2], "qwp_AS"));
        rec.setting.hwp_as = rad(parse_double(tokens[3], "hwp_AS"));
        std::uint64_t count = 0;
        auto rc = std::from_chars(tokens[4].data(), tokens[4].data() + tokens[4].size(), count);
        if (rc.ec != std::errc() || rc.ptr != tokens[4].data() + tokens[4].size())
            throw ValidationError("count records line " + std::to_string(lineno) + ": bad count");
        rec.count = count;
        rec.acquisition_weight = parse_double(tokens[5], "weight");
        if (rec.acquisition_weight <= 0.0)
            throw ValidationError("count records line " + std::to_string(lineno) +
                                  ": weight must be > 0");
        rec.setting = rec.setting.reduced();
        records.push_back(rec);
    }
    return records;
}

} // namespace piqfc
