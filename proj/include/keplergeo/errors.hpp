#ifndef KEPLERGEO_ERRORS_HPP
#define KEPLERGEO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace keplergeo {

/// A phase point lies outside the domain of an operation (singular point,
/// chart boundary, undefined stencil point, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Position at the removed singular point |x| = 0.
struct SingularityError : DomainError {
    explicit SingularityError(const std::string& what) : DomainError(what) {}
};

/// State outside the open region covered by a coordinate chart.
struct ChartBoundaryError : DomainError {
    explicit ChartBoundaryError(const std::string& what) : DomainError(what) {}
};

/// A gradient component came out non-finite; the message names the coordinate.
struct EvaluationDomainError : DomainError {
    explicit EvaluationDomainError(const std::string& what) : DomainError(what) {}
};

/// A configuration the analysis explicitly excludes (e.g. C = 0).
struct ExcludedCaseError : DomainError {
    explicit ExcludedCaseError(const std::string& what) : DomainError(what) {}
};

/// Mutually contradictory inputs (e.g. repulsive branch with k >= 0).
struct InconsistencyError : std::invalid_argument {
    explicit InconsistencyError(const std::string& what) : std::invalid_argument(what) {}
};

/// Sampled data too coarse for the requested quadrature accuracy.
struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// Paired trajectories do not share a sample grid.
struct AlignmentError : std::runtime_error {
    explicit AlignmentError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace keplergeo

#endif
