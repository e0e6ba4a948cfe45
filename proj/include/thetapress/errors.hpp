#pragma once

#include <stdexcept>
#include <string>

namespace thetapress {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed system definition: metric axioms, map tables, potentials.
class InvalidSystem : public Error {
public:
    using Error::Error;
};

/// Candidate generation would exceed the configured limit.
class CandidateExplosion : public Error {
public:
    using Error::Error;
};

/// The candidate family does not cover the universe.
class Infeasible : public Error {
public:
    using Error::Error;
};

/// No sign change of M(alpha) - 1 was found while expanding the bracket.
class BracketFailure : public Error {
public:
    using Error::Error;
};

/// Z is neither forward nor backward invariant under the given maps.
class InvalidInvariance : public Error {
public:
    using Error::Error;
};

/// The point map does not intertwine the two map sequences.
class NotSemiconjugate : public Error {
public:
    using Error::Error;
};

/// Bad configuration file or command line value.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace thetapress
