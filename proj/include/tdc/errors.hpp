#pragma once

#include <stdexcept>
#include <string>

namespace tdc {

// Base class for all validation and computation errors raised by the library.
// CLI maps these to exit code 1; I/O failures use std::system_error-ish paths
// and map to exit code 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DuplicateNode : Error { using Error::Error; };
struct DanglingEdge : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct NegativeWeight : Error { using Error::Error; };
struct UnknownLayer : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };
struct EmptyLayer : Error { using Error::Error; };
struct TooFewNodes : Error { using Error::Error; };
struct BadName : Error { using Error::Error; };

struct NonFiniteInput : Error { using Error::Error; };
struct MissingImpedance : Error { using Error::Error; };
struct ZeroMeanImpedance : Error { using Error::Error; };

struct AmbiguousZeroCycle : Error { using Error::Error; };

struct DegenerateSum : Error { using Error::Error; };
struct ZeroBaseEfficiency : Error { using Error::Error; };
struct BadBinEdges : Error { using Error::Error; };
struct InvalidDirection : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };
struct MissingVoltage : Error { using Error::Error; };
struct UnknownSubstation : Error { using Error::Error; };
struct DuplicateAssignment : Error { using Error::Error; };
struct RewireExhausted : Error { using Error::Error; };

struct NoReachablePairs : Error { using Error::Error; };

// File-system failures; the CLI maps these to exit code 2.
struct IoError : Error { using Error::Error; };

}  // namespace tdc
