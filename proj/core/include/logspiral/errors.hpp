#pragma once

#include <stdexcept>
#include <string>

namespace logspiral {

// Invalid input: beta = 0, angle outside the fundamental domain, poles.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// beta too close to a critical value where counts or stability change.
class NearCriticalError : public DomainError {
public:
    NearCriticalError(double beta, std::string critical, double value)
        : DomainError("beta = " + std::to_string(beta) + " is within the guard band of " + critical +
                      " = " + std::to_string(value)),
          beta_(beta), critical_(std::move(critical)), value_(value) {}

    double beta() const { return beta_; }
    const std::string& critical_name() const { return critical_; }
    double critical_value() const { return value_; }

private:
    double beta_;
    std::string critical_;
    double value_;
};

// Eigenvalue test is inconclusive.
class NonHyperbolicError : public DomainError {
public:
    using DomainError::DomainError;
};

// A root that the theory says exists was not found.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A bracket that must contain a sign change did not; points at a kernel bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Step-size underflow or a non-finite state during integration.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integration ended without reaching any equilibrium.
class UnresolvedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace logspiral
