#ifndef PIQFC_ERRORS_HPP
#define PIQFC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace piqfc {

// Invalid or inconsistent inputs (configs, data files, preconditions).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation could not produce a meaningful result.
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : ValidationError {
    NotHermitian(const std::string& what) : ValidationError("NotHermitian: " + what) {}
};

struct NotPSD : ValidationError {
    NotPSD(const std::string& what) : ValidationError("NotPSD: " + what) {}
};

struct ZeroTrace : ValidationError {
    ZeroTrace(const std::string& what) : ValidationError("ZeroTrace: " + what) {}
};

struct ZeroSuccess : ComputationError {
    ZeroSuccess(const std::string& what) : ComputationError("ZeroSuccess: " + what) {}
};

struct NegativePower : ValidationError {
    NegativePower(const std::string& what) : ValidationError("NegativePower: " + what) {}
};

struct InsufficientData : ValidationError {
    InsufficientData(const std::string& what) : ValidationError("InsufficientData: " + what) {}
};

struct FitDiverged : ComputationError {
    FitDiverged(const std::string& what) : ComputationError("FitDiverged: " + what) {}
};

struct NotInformationallyComplete : ValidationError {
    NotInformationallyComplete(const std::string& what)
        : ValidationError("NotInformationallyComplete: " + what) {}
};

struct AllZeroCounts : ComputationError {
    AllZeroCounts(const std::string& what) : ComputationError("AllZeroCounts: " + what) {}
};

struct UnreachableTarget : ComputationError {
    UnreachableTarget(const std::string& what) : ComputationError("UnreachableTarget: " + what) {}
};

} // namespace piqfc

#endif
