#ifndef PIQFC_QFC_HPP
#define PIQFC_QFC_HPP

#include <string>
#include <utility>
#include <vector>

#include "piqfc/state.hpp"

namespace piqfc {

struct FrequencyMetadata {
    double lambda_upper_nm = 780.0;
    double lambda_lower_nm = 1522.0;
    double lambda_pump_nm = 1600.0;
};

/// Pump-derived parameters of the dual-polarization frequency converter.
/// theta_X is the product |xi_X| tau (radians); the per-polarization
/// amplitudes are t_X = cos(theta_X), r_X = e^{i phi_X} sin(theta_X).
struct QfcConfig {
    double theta_h = 0.0;
    double theta_v = 0.0;
    double phi_h = 0.0; // reduced to (-pi, pi] by validate()
    double phi_v = 0.0;
    // End-to-end passive transmission folded into one scalar on the
    // postselection probability (couplings, filters); polarization independent.
    double transmission = 1.0;
    FrequencyMetadata freq_meta{};

    /// Checks finiteness and ranges, reduces phases to (-pi, pi].
    void validate();

    double t_h() const { return std::cos(theta_h); }
    double t_v() const { return std::cos(theta_v); }
    Complex r_h() const { return std::polar(std::sin(theta_h), phi_h); }
    Complex r_v() const { return std::polar(std::sin(theta_v), phi_v); }
};

/// Single photon over the four modes ((u,H), (u,V), (l,H), (l,V)).
class FourModeState {
public:
    explicit FourModeState(const Vector4c& amplitudes);
    const Vector4c& amplitudes() const { return amps_; }

private:
    Vector4c amps_;
};

/// Which photon of the pair enters the converter.
enum class Arm { S, AS };

enum class OperatingPoint { HalfBS, FrequencyPBS, PPBS, Identity, PolarizationInsensitive };

struct OperatingPointResult {
    OperatingPoint point;
    /// Common reflectance, set when point == PolarizationInsensitive.
    double reflectance = 0.0;
};

std::string to_string(OperatingPoint p);

/// The 4x4 single-photon unitary of the converter: per polarization X the
/// 2x2 block on ((u,X),(l,X)) is [[t_X, -r_X], [conj(r_X), t_X]].
Matrix4c mode_transform(const QfcConfig& cfg);

/// Applies the postselected conversion channel K = diag(conj(r_H), conj(r_V))
/// to the selected qubit and renormalizes. Returns the output state and the
/// success probability (including cfg.transmission).
/// Throws ZeroSuccess when the postselection probability vanishes.
std::pair<TwoQubitState, double> apply_qfc_postselected(const TwoQubitState& rho_in,
                                                        const QfcConfig& cfg, Arm arm);

/// Names the beamsplitter regime by comparing (T_H, T_V) within tol.
OperatingPointResult classify_operating_point(const QfcConfig& cfg, double tol);

struct EfficiencyModel {
    double eta_max = 0.0; // in [0, 1]
    double g = 1.0;       // 1/W, > 0
};

/// eta_max * sin^2(sqrt(g P)). Throws NegativePower for P < 0.
double efficiency(const EfficiencyModel& model, double pump_power_w);

struct EfficiencyFit {
    EfficiencyModel model;
    double residual_norm = 0.0; // sqrt of the summed squared residuals
    int iterations = 0;
};

/// Damped Gauss-Newton least-squares fit of (eta_max, g). Deterministic:
/// initialized at eta_max0 = max y, g0 = (pi/2)^2 / P_at_max, stopped on
/// relative residual change < 1e-12 or 200 iterations.
/// Throws InsufficientData (< 3 points, duplicates, out-of-range values)
/// or FitDiverged.
EfficiencyFit fit_efficiency(const std::vector<std::pair<double, double>>& data);

/// Parses "power_W efficiency" pairs, one per line, '#' comments,
/// locale-independent decimal parsing.
std::vector<std::pair<double, double>> parse_efficiency_data(const std::string& text);

} // namespace piqfc

#endif
