#include "piqfc/qfc.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace piqfc {

namespace {

double reduce_phase(double phi) {
    // to (-pi, pi]
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    if (r > std::numbers::pi) r -= two_pi;
    return r;
}

} // namespace

void QfcConfig::validate() {
    if (!std::isfinite(theta_h) || !std::isfinite(theta_v))
        throw ValidationError("QfcConfig: non-finite theta");
    if (theta_h < 0.0 || theta_v < 0.0)
        throw ValidationError("QfcConfig: theta must be >= 0");
    if (!std::isfinite(phi_h) || !std::isfinite(phi_v))
        throw ValidationError("QfcConfig: non-finite phase");
    if (transmission < 0.0 || transmission > 1.0)
        throw ValidationError("QfcConfig: transmission must be in [0, 1]");
    phi_h = reduce_phase(phi_h);
    phi_v = reduce_phase(phi_v);
}

FourModeState::FourModeState(const Vector4c& amplitudes) : amps_(amplitudes) {
    if (std::abs(amps_.norm() - 1.0) > 1e-12)
        throw ValidationError("FourModeState: not normalized");
}

Matrix4c mode_transform(const QfcConfig& cfg) {
    // Modes ordered ((u,H), (u,V), (l,H), (l,V)); H block on (0,2),
    // V block on (1,3).
    Matrix4c u = Matrix4c::Zero();
    const double t[2] = {cfg.t_h(), cfg.t_v()};
    const Complex r[2] = {cfg.r_h(), cfg.r_v()};
    for (int pol = 0; pol < 2; ++pol) {
        const int up = pol;
        const int lo = pol + 2;
        u(up, up) = t[pol];
        u(up, lo) = -r[pol];
        u(lo, up) = std::conj(r[pol]);
        u(lo, lo) = t[pol];
    }
    return u;
}

std::pair<TwoQubitState, double> apply_qfc_postselected(const TwoQubitState& rho_in,
                                                        const QfcConfig& cfg, Arm arm) {
    Matrix2c k = Matrix2c::Zero();
    k(0, 0) = std::conj(cfg.r_h());
    k(1, 1) = std::conj(cfg.r_v());

    const Matrix4c op = (arm == Arm::AS) ? Matrix4c(kron(identity2(), k))
                                         : Matrix4c(kron(k, identity2()));
    const Matrix4c filtered = op * rho_in.rho() * op.adjoint();
    const double p = filtered.trace().real();
    if (p <= 1e-14) throw ZeroSuccess("apply_qfc_postselected: conversion probability " +
                                      std::to_string(p));
    return {TwoQubitState(filtered / p), p * cfg.transmission};
}

std::string to_string(OperatingPoint p) {
    switch (p) {
        case OperatingPoint::HalfBS: return "HalfBS";
        case OperatingPoint::FrequencyPBS: return "FrequencyPBS";
        case OperatingPoint::PPBS: return "PPBS";
        case OperatingPoint::Identity: return "Identity";
        case OperatingPoint::PolarizationInsensitive: return "PolarizationInsensitive";
    }
    return "?";
}

OperatingPointResult classify_operating_point(const QfcConfig& cfg, double tol) {
    if (tol <= 0.0 || tol >= 0.1)
        throw ValidationError("classify_operating_point: tol must be in (0, 0.1)");

    const double s_h = std::sin(cfg.theta_h);
    const double s_v = std::sin(cfg.theta_v);
    const double r_h = s_h * s_h;
    const double r_v = s_v * s_v;
    const double t_h = 1.0 - r_h;
    const double t_v = 1.0 - r_v;

    auto near = [tol](double x, double y) { return std::abs(x - y) <= tol; };

    if (near(r_h, 0.0) && near(r_v, 0.0)) return {OperatingPoint::Identity, 0.0};
    if (near(t_h, 0.5) && near(t_v, 0.5)) return {OperatingPoint::HalfBS, 0.5};
    if ((near(t_h, 1.0) && near(r_v, 1.0)) || (near(t_v, 1.0) && near(r_h, 1.0)))
        return {OperatingPoint::FrequencyPBS, 0.0};
    if (near(r_h, r_v)) return {OperatingPoint::PolarizationInsensitive, 0.5 * (r_h + r_v)};
    return {OperatingPoint::PPBS, 0.0};
}

double efficiency(const EfficiencyModel& model, double pump_power_w) {
    if (pump_power_w < 0.0)
        throw NegativePower("efficiency: pump power " + std::to_string(pump_power_w));
    const double s = std::sin(std::sqrt(model.g * pump_power_w));
    return model.eta_max * s * s;
}

namespace {

// Residuals and Jacobian of eta_max sin^2(sqrt(g P)) against the data.
void fit_residuals(const std::vector<std::pair<double, double>>& data, double eta, double g,
                   Eigen::VectorXd& r, Eigen::MatrixXd& jac) {
    const auto n = static_cast<Eigen::Index>(data.size());
    r.resize(n);
    jac.resize(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double p = data[static_cast<std::size_t>(i)].first;
        const double y = data[static_cast<std::size_t>(i)].second;
        const double x = std::sqrt(g * p);
        const double s = std::sin(x);
        r(i) = eta * s * s - y;
        jac(i, 0) = s * s;
        // d/dg [sin^2(sqrt(gP))] = sin(2x) * P / (2x), with the x -> 0 limit P.
        jac(i, 1) = (x > 1e-12) ? eta * std::sin(2.0 * x) * p / (2.0 * x) : eta * p;
    }
}

} // namespace

std::vector<std::pair<double, double>> parse_efficiency_data(const std::string& text) {
    std::vector<std::pair<double, double>> data;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string pw, ef, extra;
        if (!(ls >> pw)) continue; // blank line
        if (!(ls >> ef) || (ls >> extra))
            throw ValidationError("efficiency data line " + std::to_string(lineno) +
                                  ": expected 'power_W efficiency'");
        double p = 0.0, y = 0.0;
        auto rp = std::from_chars(pw.data(), pw.data() + pw.size(), p);
        auto ry = std::from_chars(ef.data(), ef.data() + ef.size(), y);
        if (rp.ec != std::errc() || rp.ptr != pw.data() + pw.size() || ry.ec != std::errc() ||
            ry.ptr != ef.data() + ef.size())
            throw ValidationError("efficiency data line " + std::to_string(lineno) +
                                  ": bad number");
        data.emplace_back(p, y);
    }
    return data;
}

EfficiencyFit fit_efficiency(const std::vector<std::pair<double, double>>& data) {
    if (data.size() < 3) throw InsufficientData("fit_efficiency: need >= 3 points");
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i].first < 0.0)
            throw InsufficientData("fit_efficiency: negative pump power");
        if (data[i].second < 0.0 || data[i].second > 1.0)
            throw InsufficientData("fit_efficiency: efficiency outside [0, 1]");
        for (std::size_t j = i + 1; j < data.size(); ++j)
            if (data[i].first == data[j].first)
                throw InsufficientData("fit_efficiency: duplicate pump power");
    }

    // Deterministic initializer: peak observation sets the scale.
    double eta = 0.0, p_at_max = 0.0;
    for (const auto& [p, y] : data) {
        if (y > eta) {
            eta = y;
            p_at_max = p;
        }
    }
    const double quarter_pi_sq = std::numbers::pi * std::numbers::pi / 4.0;
    double g = (p_at_max > 0.0) ? quarter_pi_sq / p_at_max : 1.0;

    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    fit_residuals(data, eta, g, r, jac);
    double cost = r.squaredNorm();

    double lambda = 1e-3;
    const int max_iter = 200;
    int iter = 0;
    int stale = 0;
    for (; iter < max_iter; ++iter) {
        const Eigen::Matrix2d jtj = jac.transpose() * jac;
        const Eigen::Vector2d jtr = jac.transpose() * r;
        const Eigen::Matrix2d damped =
            jtj + lambda * Eigen::Matrix2d(jtj.diagonal().cwiseMax(1e-12).asDiagonal());
        const Eigen::Vector2d step = damped.ldlt().solve(-jtr);

        const double eta_new = eta + step(0);
        const double g_new = g + step(1);
        bool accepted = false;
        if (std::isfinite(eta_new) && std::isfinite(g_new) && g_new > 0.0) {
            Eigen::VectorXd r_new;
            Eigen::MatrixXd jac_new;
            fit_residuals(data, eta_new, g_new, r_new, jac_new);
            const double cost_new = r_new.squaredNorm();
            if (cost_new <= cost) {
                const double rel = (cost > 0.0) ? (cost - cost_new) / cost : 0.0;
                eta = eta_new;
                g = g_new;
                r = std::move(r_new);
                jac = std::move(jac_new);
                cost = cost_new;
                lambda = std::max(lambda * 0.3, 1e-12);
                accepted = true;
                stale = 0;
                if (rel < 1e-12) break;
            }
        }
        if (!accepted) {
            lambda *= 10.0;
            if (++stale > 40) break;
        }
    }
    if (stale > 40 && cost > 1e-6)
        throw FitDiverged("fit_efficiency: no residual decrease within the iteration budget");

    EfficiencyFit out;
    out.model.eta_max = eta;
    out.model.g = g;
    out.residual_norm = std::sqrt(cost);
    out.iterations = iter;
    return out;
}

} // namespace piqfc
