#ifndef PIQFC_MEASUREMENT_HPP
#define PIQFC_MEASUREMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "piqfc/state.hpp"

namespace piqfc {

/// Waveplate angles of the two polarization analyzers, radians,
/// reduced to [0, pi).
struct MeasurementSetting {
    double qwp_s = 0.0;
    double hwp_s = 0.0;
    double qwp_as = 0.0;
    double hwp_as = 0.0;

    MeasurementSetting reduced() const;
};

struct CountRecord {
    MeasurementSetting setting;
    std::uint64_t count = 0;
    double acquisition_weight = 1.0;
};

enum class PlanName { Standard36, Minimal16, Custom };

struct SettingsPlan {
    std::vector<MeasurementSetting> settings;
    PlanName name = PlanName::Custom;
};

// Jones matrices, frozen convention for the whole project:
//   HWP(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
//   QWP(t) = [[cos^2 t + i sin^2 t, (1-i) sin t cos t],
//             [(1-i) sin t cos t,   sin^2 t + i cos^2 t]]
Matrix2c hwp_jones(double theta);
Matrix2c qwp_jones(double theta);

/// The polarization state whose photon exits the PBS-transmitted port:
/// |m> = QWP(qwp)^dag HWP(hwp)^dag |H>.
PolarizationKet analyzer_ket(double qwp, double hwp);

/// The rank-1 two-qubit projector |m_S m_AS><m_S m_AS| of one setting.
Matrix4c setting_projector(const MeasurementSetting& s);

/// Born-rule coincidence probability tr(rho Pi) for one setting.
double coincidence_probability(const TwoQubitState& state, const MeasurementSetting& setting);

/// Standard36: all pairs of {H,V,D,A,R,L} analyzers per arm.
/// Minimal16: the product set {H,V,D,R} x {H,V,D,R}.
SettingsPlan standard_plan(PlanName name);

/// Rank of the vectorized projector span; 16 means informationally complete.
int completeness_rank(const SettingsPlan& plan, double sv_tol = 1e-9);
bool is_informationally_complete(const SettingsPlan& plan);

/// Draws count_j ~ Poisson(mean_pairs * weight * probability) per setting.
/// Deterministic for a fixed seed.
std::vector<CountRecord> simulate_counts(const TwoQubitState& state, const SettingsPlan& plan,
                                         double mean_pairs_per_setting, std::uint64_t seed);

// Count-record serialization: one record per line,
// "qwp_S hwp_S qwp_AS hwp_AS count weight", angles in degrees.
std::string format_count_records(const std::vector<CountRecord>& records);
std::vector<CountRecord> parse_count_records(const std::string& text);

} // namespace piqfc

#endif
