#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mobnbody {

// Base class for every error caused by the mathematical domain of a request
// (as opposed to malformed input). The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SingularKind { Collision, Antipodal };

// A pair of bodies lies in the collision set or the antipodal set.
class SingularPair : public DomainError {
 public:
  SingularPair(SingularKind kind, std::size_t first, std::size_t second);
  SingularPair(SingularKind kind, const std::string& context);

  SingularKind kind() const noexcept { return kind_; }
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  SingularKind kind_;
  std::size_t first_ = 0;
  std::size_t second_ = 0;
};

// A family constructor or mass solve has no admissible (positive, real) answer.
class Infeasible : public DomainError {
 public:
  using DomainError::DomainError;
};

// A bracketing root search found no sign change in the requested interval.
class NoRoot : public DomainError {
 public:
  using DomainError::DomainError;
};

const char* to_string(SingularKind kind) noexcept;

}  // namespace mobnbody
