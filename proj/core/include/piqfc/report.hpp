#ifndef PIQFC_REPORT_HPP
#define PIQFC_REPORT_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "piqfc/pipeline.hpp"

namespace piqfc {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Serializes a full analysis report (config echo, reconstruction, metrics,
/// bootstrap uncertainties, provenance). Output is deterministic.
std::string write_report(const PipelineConfig& config, const std::vector<ArmResult>& arms);

/// Parses and validates a report document. Rejects unknown fields and
/// schema-version mismatches (ValidationError).
nlohmann::json read_report(const std::string& text);

} // namespace piqfc

#endif
