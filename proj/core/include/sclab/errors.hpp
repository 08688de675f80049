#pragma once

#include <stdexcept>
#include <string>

namespace sclab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad letters / rank out of range in textual or structural input.
struct InvalidAlphabetError : Error {
    using Error::Error;
};

// Operands built over different ranks.
struct RankMismatchError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

// Counting family rejected (empty family, member shorter than 2, rank clash).
struct FamilyError : Error {
    using Error::Error;
};

// Word required to lie in the commutator subgroup has nonzero abelianization.
struct HomologyError : Error {
    using Error::Error;
};

// Eigenvalue iteration ran out of budget.
struct SpectralError : Error {
    using Error::Error;
};

// Search or power size past the configured hard limit.
struct BudgetError : Error {
    using Error::Error;
};

struct DegeneratePolygonError : Error {
    using Error::Error;
};

// A certified numerical identity failed to hold (e.g. angle/area bookkeeping).
struct NumericalIntegrityError : Error {
    using Error::Error;
};

// Conditioned sampler starved: acceptance rate below the abort threshold.
struct StarvationError : Error {
    explicit StarvationError(const std::string& what, double rate_bound)
        : Error(what), observed_rate_bound(rate_bound) {}
    double observed_rate_bound;
};

}  // namespace sclab
