#ifndef RELAB_ERRORS_HPP
#define RELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relab {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---- graph construction / queries ----
struct DisconnectedGraph : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct DuplicateNode : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct GenerationFailed : Error { using Error::Error; };
struct NotBijective : Error { using Error::Error; };

// ---- ruling set / partition ----
struct GraphTooSmall : Error { using Error::Error; };

// ---- codec ----
struct UnsortedMembers : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct IntolerantCodec : Error { using Error::Error; };
struct TooManyErasures : Error { using Error::Error; };
struct CorruptBlockSize : Error { using Error::Error; };

// ---- simulation ----
struct BandwidthExceeded : Error { using Error::Error; };
struct MaxRoundsExceeded : Error { using Error::Error; };
struct ProgramFault : Error { using Error::Error; };
struct PhaseOverrun : Error { using Error::Error; };

// ---- oracle / scheme ----
struct TooShort : Error { using Error::Error; };
struct DecodeFailed : Error { using Error::Error; };

// ---- file formats ----
struct ParseError : Error { using Error::Error; };

} // namespace relab

#endif
