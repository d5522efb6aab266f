#pragma once

#include <stdexcept>
#include <string>

namespace bmetric {

// Input outside the domain of an operation (point at the origin, point inside
// an obstacle, degenerate query, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid construction or configuration parameter.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Target not reachable in the free space of a scene.
class UnreachableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation declined to produce a result (e.g. a non-converged metric
// estimate asked for a geodesic).
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bmetric
