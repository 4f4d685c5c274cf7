#ifndef PIQFC_CONFIG_HPP
#define PIQFC_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "piqfc/measurement.hpp"
#include "piqfc/qfc.hpp"
#include "piqfc/source.hpp"
#include "piqfc/tomography.hpp"

namespace piqfc {

/// Which state family the [source] section describes.
struct SourceSpec {
    enum class Kind { Werner, AtomPhoton };
    Kind kind = Kind::AtomPhoton;

    // Werner family
    double werner_p = 1.0;
    double werner_theta = 0.0; // radians

    // Atom-photon family
    SourceConfig atom_photon{};
    double readout_balance = 0.5;

    /// The photon-pair state after read-out.
    TwoQubitState make_state() const;
};

/// One simulate -> reconstruct -> metrics scenario (one arm of a flip-mirror
/// flip-mirror setup: with or without the converter in the AS path).
struct ScenarioConfig {
    SourceSpec source{};
    std::optional<QfcConfig> qfc; // absent = no-conversion arm
    Arm qfc_arm = Arm::AS;
    PlanName plan = PlanName::Standard36;
    double mean_pairs_per_setting = 1000.0;
    MleOptions mle{};
    int bootstrap_resamples = 100;
};

struct PipelineConfig {
    std::uint64_t seed = 0;
    ScenarioMetadata metadata{};
    ScenarioConfig base{};
    /// Set when the file carries no_qfc.* / with_qfc.* override sections.
    bool paired = false;
    ScenarioConfig no_qfc{};
    ScenarioConfig with_qfc{};
    /// Verbatim file text, echoed into reports for exact reruns.
    std::string raw_text;
};

/// Parses the flat "[section]" / "key = value" config format. Throws
/// ValidationError with a line/field diagnostic on any problem.
PipelineConfig parse_pipeline_config(const std::string& text);

PipelineConfig load_pipeline_config(const std::string& path);

} // namespace piqfc

#endif
