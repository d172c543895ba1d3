#pragma once

#include <stdexcept>
#include <string>

namespace decay {

/// Bad caller input: out-of-range index, malformed generator string, etc.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A bound was queried outside the region where its derivation holds.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature did not converge, a shift hit the spectrum, or similar.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace decay
