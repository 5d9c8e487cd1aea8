#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mukai {

enum class ErrorCode {
    DimensionMismatch,
    InvalidLattice,
    InvalidInput,
    NoSolution,
    NoEmbedding,
    NoIsometry,
    NoSemistableSheaf,
    OutOfScope,
    InconsistentInput,
    DivisibilityFailure,
    PreconditionViolation,
    NoStream,
    BudgetExhausted,
    ContractViolation,
    Parse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace mukai
