#pragma once

#include <stdexcept>
#include <string>

namespace returnlab {

// Base class for every data/analysis error raised by the library.
// The CLI maps these to exit code 2; anything else is a usage error (1).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// market_data
class MalformedRow : public Error {
public:
    using Error::Error;
};
class NonPositiveValue : public Error {
public:
    using Error::Error;
};
class DuplicateDate : public Error {
public:
    using Error::Error;
};
class NonContiguousPe : public Error {
public:
    using Error::Error;
};
class NoPeCoverage : public Error {
public:
    using Error::Error;
};
class EmptyResult : public Error {
public:
    using Error::Error;
};

// horizons
class SeriesTooShort : public Error {
public:
    using Error::Error;
};
class TotalLoss : public Error {
public:
    using Error::Error;
};
class EmptySet : public Error {
public:
    using Error::Error;
};

// distribution
class DegenerateSample : public Error {
public:
    using Error::Error;
};

// complexity
class InvalidQ : public Error {
public:
    using Error::Error;
};
class NoMatches : public Error {
public:
    using Error::Error;
};
class TooShort : public Error {
public:
    using Error::Error;
};
class DegenerateSeries : public Error {
public:
    using Error::Error;
};
class InsufficientNeighbors : public Error {
public:
    using Error::Error;
};

// infoflow
class LengthMismatch : public Error {
public:
    using Error::Error;
};
class DegenerateMarginal : public Error {
public:
    using Error::Error;
};

// cli_report
class UnsupportedKind : public Error {
public:
    using Error::Error;
};

}  // namespace returnlab
