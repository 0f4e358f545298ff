#pragma once

#include <stdexcept>
#include <string>

namespace confluentia {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- equation validation --
struct ZeroLeadingError : Error { using Error::Error; };
struct CommonFactorError : Error { using Error::Error; };

// -- classification --
struct NotASingularityError : Error { using Error::Error; };
struct IrregularPointError : Error { using Error::Error; };
struct IrrationalExponentsError : Error { using Error::Error; };
struct InconsistentSymbolsError : Error { using Error::Error; };
struct DegenerateSymbolError : Error { using Error::Error; };

// -- numerics --
struct NoConvergenceError : Error { using Error::Error; };
struct GridTooCoarseError : Error { using Error::Error; };
struct ShiftOffGridError : Error { using Error::Error; };
struct OddGridError : Error { using Error::Error; };

// -- io --
struct ParseError : Error { using Error::Error; };

}  // namespace confluentia
