#ifndef GODEL_ERRORS_HPP
#define GODEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace godel {

/// Raised when an argument lies outside the domain of an operation
/// (non-positive scale, Kundt y <= 0, non-normalized covector, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace godel

#endif  // GODEL_ERRORS_HPP
