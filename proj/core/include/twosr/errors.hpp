#pragma once

#include <stdexcept>
#include <string>

namespace twosr {

/// Argument outside the admissible range of a model (curvature, spiral angle, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller broke a precondition that the types cannot express (e.g. mixing
/// soft and rigid velocity inputs).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Active block of a configuration matrix lost rank.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frame chains that must agree by construction did not.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twosr
