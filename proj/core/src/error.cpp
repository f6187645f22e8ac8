#include "casimir/error.hpp"

namespace casimir {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::instability: return "instability";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string message, std::string parameter)
    : std::runtime_error(message), kind_(kind), message_(std::move(message)),
      parameter_(std::move(parameter)) {}

Error Error::with_context(std::string_view context) const {
  return Error(kind_, std::string(context) + ": " + message_, parameter_);
}

Error Error::with_parameter(std::string parameter) const {
  return Error(kind_, message_, std::move(parameter));
}

}  // namespace casimir
