#pragma once

#include <stdexcept>
#include <string>

namespace imexlmm {

/// Argument outside the supported range (e.g. a BDF order above six).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Evaluation point outside the domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested modification constant exceeds the generating-polynomial minimum.
class CertificateInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proof check failed; indicates an assembly bug rather than bad input.
class CertificateInvalid : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal identity that must hold by construction did not.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IllPosedStep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StarterFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace imexlmm
