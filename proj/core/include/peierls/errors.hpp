#pragma once

#include <stdexcept>
#include <string>

namespace peierls {

/// A model or rotation descriptor that does not define a valid object.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The potential returned a non-finite value; message names the point.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace peierls
