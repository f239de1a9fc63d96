#pragma once

#include <stdexcept>
#include <string>

namespace pvs {

enum class ErrorCode {
    // tower construction
    NotSquarefree,
    NotARoot,
    NotClosedUnderComposition,
    BaseMismatch,
    // forms and labels
    UnsupportedDegree,
    UnsupportedField,
    DegenerateForm,
    DegeneratePolynomial,
    // scalar-level
    ZeroInput,
    DIsSquare,
    ZeroBeta,
    NonUnit,
    TrialDivisionExceeded,
    // actions and representatives
    TowerMismatch,
    SingularGroupElement,
    NormConditionUnsatisfiable,
    NotRational,
    NotSemistable,
    CharTwoUnsupported,
    FiberDataMismatch,
    UnsupportedGaloisCase,
    // oracle / cli
    BudgetExceeded,
    MalformedInput,
    InternalCheckFailed,
};

const char* error_code_name(ErrorCode c);

/// Library-wide exception.  `code()` identifies the failure class so callers
/// (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

    /// Internal-check failures signal inconsistent inputs detected after
    /// construction (e.g. a Galois-descent residue), not user mistakes.
    bool is_internal() const {
        return code_ == ErrorCode::NotRational || code_ == ErrorCode::InternalCheckFailed;
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace pvs
