#include <doctest.h>

#include <numbers>

#include <piqfc/metrics.hpp>
#include <piqfc/qfc.hpp>
#include <piqfc/source.hpp>

#include "test_util.hpp"

using namespace piqfc;

namespace {

constexpr double kPi = std::numbers::pi;

QfcConfig make_cfg(double th, double tv, double ph = 0.0, double pv = 0.0) {
    QfcConfig cfg;
    cfg.theta_h = th;
    cfg.theta_v = tv;
    cfg.phi_h = ph;
    cfg.phi_v = pv;
    cfg.validate();
    return cfg;
}

} // namespace

TEST_CASE("mode_transform with no pump is the identity") {
    const Matrix4c u = mode_transform(make_cfg(0.0, 0.0));
    CHECK((u - Matrix4c::Identity()).norm() < 1e-15);
}

TEST_CASE("mode_transform at the half-BS point") {
    const Matrix4c u = mode_transform(make_cfg(kPi / 4.0, kPi / 4.0));
    const double s = 1.0 / std::numbers::sqrt2;
    // H block on modes (0, 2), V block on (1, 3); both [[s, -s], [s, s]].
    for (int pol = 0; pol < 2; ++pol) {
        CHECK(u(pol, pol).real() == doctest::Approx(s));
        CHECK(u(pol, pol + 2).real() == doctest::Approx(-s));
        CHECK(u(pol + 2, pol).real() == doctest::Approx(s));
        CHECK(u(pol + 2, pol + 2).real() == doctest::Approx(s));
    }
}

TEST_CASE("mode_transform at the frequency-PBS point") {
    const Matrix4c u = mode_transform(make_cfg(0.0, kPi / 2.0));
    // H passes unconverted, V converts fully.
    CHECK(std::abs(u(0, 0) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(u(2, 2) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(u(1, 1)) < 1e-15);
    CHECK(std::abs(u(1, 3)) == doctest::Approx(1.0));
    CHECK(std::abs(u(3, 1)) == doctest::Approx(1.0));
}

TEST_CASE("mode_transform is unitary for random configs") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto cfg = make_cfg(rng.uniform() * kPi, rng.uniform() * kPi,
                                  (rng.uniform() - 0.5) * 2.0 * kPi,
                                  (rng.uniform() - 0.5) * 2.0 * kPi);
        const Matrix4c u = mode_transform(cfg);
        CHECK((u.adjoint() * u - Matrix4c::Identity()).norm() < 1e-12);
    }
}

TEST_CASE("single-photon probability is conserved across the transform") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto cfg = make_cfg(rng.uniform() * kPi, rng.uniform() * kPi,
                                  rng.uniform() * kPi, rng.uniform() * kPi);
        const FourModeState in(testutil::random_pure(rng));
        const Vector4c out = mode_transform(cfg) * in.amplitudes();
        const double upper = std::norm(out(0)) + std::norm(out(1));
        const double lower = std::norm(out(2)) + std::norm(out(3));
        CHECK(upper + lower == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("balanced equal-phase conversion preserves the state") {
    Rng rng(9);
    const double theta = 0.7;
    const auto cfg = make_cfg(theta, theta, 0.4, 0.4);
    for (int trial = 0; trial < 20; ++trial) {
        const TwoQubitState in = testutil::random_state(rng);
        const auto [out, p] = apply_qfc_postselected(in, cfg, Arm::AS);
        CHECK(trace_distance(in, out) < 1e-12);
        CHECK(p == doctest::Approx(std::sin(theta) * std::sin(theta)).epsilon(1e-12));
    }
}

TEST_CASE("balanced conversion with phase offset is a pure phase rotation") {
    Rng rng(10);
    const double delta = 1.1;
    const auto cfg = make_cfg(0.6, 0.6, delta, 0.0);
    for (int trial = 0; trial < 20; ++trial) {
        const TwoQubitState in = testutil::random_state(rng);
        const auto [out, p] = apply_qfc_postselected(in, cfg, Arm::AS);

        // Oracle: conjugate the AS qubit by diag(e^{-i delta}, 1).
        Matrix2c d = Matrix2c::Identity();
        d(0, 0) = std::polar(1.0, -delta);
        const Matrix4c op = kron(identity2(), d);
        const TwoQubitState expected(Matrix4c(op * in.rho() * op.adjoint()));
        CHECK(trace_distance(out, expected) < 1e-12);
    }
}

TEST_CASE("PBS configuration postselects the H branch") {
    const auto cfg = make_cfg(kPi / 2.0, 0.0); // R_H = 1, R_V = 0
    const TwoQubitState in = TwoQubitState::from_ket(phi_plus());
    const auto [out, p] = apply_qfc_postselected(in, cfg, Arm::AS);
    CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conversion on the S arm acts on the first factor") {
    const auto cfg = make_cfg(kPi / 2.0, 0.0);
    Vector4c hv = Vector4c::Zero();
    hv(1) = 1.0; // |H V>
    const auto [out, p] = apply_qfc_postselected(TwoQubitState::from_ket(hv), cfg, Arm::S);
    CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero conversion probability raises ZeroSuccess") {
    const auto cfg = make_cfg(0.0, 0.0);
    CHECK_THROWS_AS(apply_qfc_postselected(TwoQubitState::maximally_mixed(), cfg, Arm::AS),
                    ZeroSuccess);
}

TEST_CASE("classify_operating_point names the converter regimes") {
    const double tol = 1e-6;
    CHECK(classify_operating_point(make_cfg(kPi / 4.0, kPi / 4.0), tol).point ==
          OperatingPoint::HalfBS);
    CHECK(classify_operating_point(make_cfg(0.0, kPi / 2.0), tol).point ==
          OperatingPoint::FrequencyPBS);
    CHECK(classify_operating_point(make_cfg(kPi / 6.0, kPi / 3.0), tol).point ==
          OperatingPoint::PPBS);
    CHECK(classify_operating_point(make_cfg(0.0, 0.0), tol).point == OperatingPoint::Identity);

    const auto pol = classify_operating_point(make_cfg(0.3, 0.3), tol);
    CHECK(pol.point == OperatingPoint::PolarizationInsensitive);
    CHECK(pol.reflectance == doctest::Approx(std::sin(0.3) * std::sin(0.3)));

    CHECK_THROWS_AS(classify_operating_point(make_cfg(0.0, 0.0), 0.5), ValidationError);
}

TEST_CASE("efficiency model evaluations") {
    const EfficiencyModel model{0.34, 8.4};
    CHECK(efficiency(model, 0.0) == 0.0);
    CHECK(efficiency(model, 0.2) == doctest::Approx(0.315).epsilon(0.004));

    const double p_max = (kPi / 2.0) * (kPi / 2.0) / model.g;
    CHECK(efficiency(model, p_max) == doctest::Approx(0.34).epsilon(1e-12));

    CHECK_THROWS_AS(efficiency(model, -0.1), NegativePower);
}

TEST_CASE("efficiency is monotone up to the first maximum") {
    const EfficiencyModel model{0.34, 8.4};
    const double p_max = (kPi / 2.0) * (kPi / 2.0) / model.g;
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double eta = efficiency(model, p_max * i / 200.0);
        CHECK(eta >= prev - 1e-15);
        prev = eta;
    }
}

TEST_CASE("fit_efficiency recovers the model from noiseless data") {
    const EfficiencyModel truth{0.34, 8.4};
    std::vector<std::pair<double, double>> data;
    for (double p = 0.05; p < 0.305; p += 0.05) data.emplace_back(p, efficiency(truth, p));

    const auto fit = fit_efficiency(data);
    CHECK(fit.model.eta_max == doctest::Approx(0.34).epsilon(1e-6));
    CHECK(fit.model.g == doctest::Approx(8.4).epsilon(1e-6));
}

TEST_CASE("fit_efficiency tolerates gaussian noise") {
    const EfficiencyModel truth{0.34, 8.4};
    Rng rng(123);
    int ok = 0;
    for (int seed_trial = 0; seed_trial < 20; ++seed_trial) {
        std::vector<std::pair<double, double>> data;
        for (int i = 0; i < 25; ++i) {
            const double p = 0.01 + (0.60 - 0.01) * i / 24.0;
            double y = efficiency(truth, p) + 0.005 * rng.normal();
            data.emplace_back(p, std::clamp(y, 0.0, 1.0));
        }
        const auto fit = fit_efficiency(data);
        if (std::abs(fit.model.eta_max - 0.34) < 0.02 * 0.34 &&
            std::abs(fit.model.g - 8.4) < 0.02 * 8.4)
            ++ok;
    }
    CHECK(ok >= 19);
}

TEST_CASE("fit_efficiency degenerate and error cases") {
    std::vector<std::pair<double, double>> flat = {{0.05, 0.0}, {0.1, 0.0}, {0.2, 0.0}};
    const auto fit = fit_efficiency(flat);
    CHECK(std::abs(fit.model.eta_max) < 1e-9);

    CHECK_THROWS_AS(fit_efficiency({{0.1, 0.2}, {0.2, 0.3}}), InsufficientData);
    CHECK_THROWS_AS(fit_efficiency({{0.1, 0.2}, {0.1, 0.3}, {0.2, 0.1}}), InsufficientData);
    CHECK_THROWS_AS(fit_efficiency({{-0.1, 0.2}, {0.1, 0.3}, {0.2, 0.1}}), InsufficientData);
    CHECK_THROWS_AS(fit_efficiency({{0.1, 1.2}, {0.2, 0.3}, {0.3, 0.1}}), InsufficientData);
}

TEST_CASE("parse_efficiency_data handles comments and rejects junk") {
    const auto data = parse_efficiency_data("# header\n0.05 0.11\n0.10 0.25 # inline\n\n0.2 0.31\n");
    REQUIRE(data.size() == 3);
    CHECK(data[1].first == 0.10);
    CHECK(data[1].second == 0.25);

    CHECK_THROWS_AS(parse_efficiency_data("0.05\n"), ValidationError);
    CHECK_THROWS_AS(parse_efficiency_data("0.05 abc\n"), ValidationError);
}

TEST_CASE("config validation reduces phases and rejects bad values") {
    QfcConfig cfg;
    cfg.theta_h = 0.1;
    cfg.theta_v = 0.1;
    cfg.phi_h = 3.0 * kPi;
    cfg.validate();
    CHECK(cfg.phi_h == doctest::Approx(kPi));

    QfcConfig bad;
    bad.theta_h = -1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}
