#pragma once

#include <stdexcept>
#include <string>

namespace isingmaps {

/// Base of all library errors. kind() is the stable machine-readable name.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ISINGMAPS_ERROR(Name)                                              \
    struct Name : Error {                                                  \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}       \
    };

ISINGMAPS_ERROR(NonZeroRemainder)
ISINGMAPS_ERROR(DegenerateInterval)
ISINGMAPS_ERROR(PrecisionExhausted)
ISINGMAPS_ERROR(NumericModeAtNuOne)
ISINGMAPS_ERROR(EnumerationBound)
ISINGMAPS_ERROR(FactorizationMismatch)
ISINGMAPS_ERROR(NoRootInRange)
ISINGMAPS_ERROR(DegenerateBranch)
ISINGMAPS_ERROR(StepTooLarge)
ISINGMAPS_ERROR(NonPositiveSequence)
ISINGMAPS_ERROR(InvalidArgument)

#undef ISINGMAPS_ERROR

} // namespace isingmaps
