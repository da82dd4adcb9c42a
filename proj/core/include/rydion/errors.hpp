#pragma once

#include <stdexcept>
#include <string>

namespace rydion {

// Exit-code families used by the CLI: config=1, physics=2, convergence=3.
enum class ErrorKind { config, physics, convergence, unit, domain, lookup };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::config, w) {}
};
struct PhysicsError : Error {
  explicit PhysicsError(const std::string& w) : Error(ErrorKind::physics, w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error(ErrorKind::convergence, w) {}
};
struct UnitError : Error {
  explicit UnitError(const std::string& w) : Error(ErrorKind::unit, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};
struct LookupError : Error {
  explicit LookupError(const std::string& w) : Error(ErrorKind::lookup, w) {}
};

}  // namespace rydion
