#pragma once

#include <stdexcept>
#include <string>

namespace jastrow_dyn {

// Validation errors mean the request itself is malformed; numerical errors
// mean a well-formed request could not be carried out. The CLI maps them to
// exit codes 1 and 2.
enum class ErrorCategory { Validation, Numerical };

class Error : public std::runtime_error {
public:
    Error(std::string kind, ErrorCategory category, const std::string& message);

    const std::string& kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_; }

private:
    std::string kind_;
    ErrorCategory category_;
};

#define JASTROW_DYN_ERROR(Name, Category)                                   \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& message)                           \
            : Error(#Name, ErrorCategory::Category, message) {}             \
    }

JASTROW_DYN_ERROR(InvalidModel, Validation);
JASTROW_DYN_ERROR(InadmissibleProtocol, Validation);
JASTROW_DYN_ERROR(IncompatibleScenario, Validation);
JASTROW_DYN_ERROR(DimensionTooLarge, Validation);
JASTROW_DYN_ERROR(ConfigError, Validation);
JASTROW_DYN_ERROR(ContactSingularity, Numerical);
JASTROW_DYN_ERROR(OutOfGrid, Numerical);
JASTROW_DYN_ERROR(BlowUp, Numerical);
JASTROW_DYN_ERROR(StepFailure, Numerical);
JASTROW_DYN_ERROR(NonPositiveScaling, Numerical);
JASTROW_DYN_ERROR(SamplerDivergence, Numerical);
JASTROW_DYN_ERROR(NoAsymptote, Numerical);

#undef JASTROW_DYN_ERROR

}  // namespace jastrow_dyn
