#pragma once

#include <stdexcept>
#include <string>

namespace acms {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Out-of-range ranks, non-roots, elements outside the expected subspace.
class DomainError : public Error {
public:
    using Error::Error;
};

// Zero or rank-deficient input where a nonzero/full-rank one is required.
class DegenerateError : public Error {
public:
    using Error::Error;
};

// Chamber seed lying on a wall of the Weyl chamber decomposition.
class NotRegularError : public Error {
public:
    using Error::Error;
};

// Malformed scenario configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace acms
