#pragma once

#include <stdexcept>
#include <string>

namespace dcmlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// degseq
struct MalformedSequence : Error { using Error::Error; };
struct DegenerateEntropy : Error { using Error::Error; };
struct EmptyMeasure : Error { using Error::Error; };
struct RepairOverflow : Error { using Error::Error; };

// graph
struct SimpleUnreachable : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

// walk
struct DanglingVertex : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// limits
struct DepthExceeded : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };

}  // namespace dcmlab
