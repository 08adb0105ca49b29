#include "jastrow_dyn/errors.hpp"

#include <utility>

namespace jastrow_dyn {

Error::Error(std::string kind, ErrorCategory category, const std::string& message)
    : std::runtime_error(message), kind_(std::move(kind)), category_(category) {}

}  // namespace jastrow_dyn
