#ifndef TRIGINV_ERRORS_HPP
#define TRIGINV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace triginv {

/// Unsupported model id, rank out of range, malformed run configuration.
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimension/arity/chart mismatches and out-of-range indices.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exponential sum that should be Weyl-invariant is not.
class NotInvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// cot_mul input is not antisymmetric under the root reflection.
class NotCotMultiplicableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical evaluation requested at an inadmissible point.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Something that must hold by construction did not.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace triginv

#endif
