#pragma once

#include <stdexcept>
#include <string>

namespace heis {

enum class ErrorKind {
    ShapeMismatch,
    DimensionMismatch,
    InvNotSupported,
    UnsupportedLeading,
    NotClassical,
    TruncationTooShallow,
    TruncationRequired,
    LogResidueUnsupported,
    ModulusMismatch,
    NonInvertibleSymbol,
    NonIsometricAction,
    BadIndex,
    WrongShape,
    NotDegreeZero,
    DescriptorInvalid,
    NotInFiltration,
    CubatureNoConvergence,
    ParseError,
};

// Domain errors map to CLI exit code 3, parse errors to exit code 2.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace heis
