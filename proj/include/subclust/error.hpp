#pragma once

#include <stdexcept>
#include <string>

namespace subclust {

/// Shapes of the arguments do not agree (X is n×p, A is p×q, F is k×q ...).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument is outside the mathematical domain of the operation
/// (negative radius, non-finite entry, non-orthonormal loading, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The requested fit cannot exist for this data: n < k, q ≥ p, q ≥ n.
class InfeasibleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A least-squares update needs (UᵀU)⁻¹ but some cluster has no members.
class EmptyClusterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace subclust
