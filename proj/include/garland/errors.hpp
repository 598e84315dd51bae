#pragma once

#include <stdexcept>
#include <string>

namespace garland {

/// Malformed input: bad dimensions, broken invariants, unparseable files.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vertices of a spherical simplex that are not linearly independent.
class GeneralPositionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A link graph (or the complex itself) that is not connected.
class NotConnectedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Input is well formed but the requested criterion or formula does not apply to it.
class CriterionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A formula whose denominator vanishes (some cosine equal to 1).
class SingularityError : public CriterionError {
public:
    using CriterionError::CriterionError;
};

/// Gonality outside {2,3,4,6,8} for a thick generalized polygon.
class FeitHigmanError : public CriterionError {
public:
    using CriterionError::CriterionError;
};

/// Breadth-first group enumeration did not close below its cap.
class EnumerationCapError : public CriterionError {
public:
    using CriterionError::CriterionError;
};

}  // namespace garland
