#pragma once

#include <stdexcept>
#include <string>

namespace hypervis {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Coordinate tuples of incompatible length.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Request would exceed the sampler's resource guard.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Observation cutoff reaches beyond the simulated window.
class WindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration; the message names the violated precondition.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hypervis
