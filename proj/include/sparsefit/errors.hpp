#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sparsefit {

enum class ErrorCode {
    Schema,
    InvalidArgument,
    Domain,
    DimensionMismatch,
    GammaPole,
    PoleDetected,
    HyperbolicAlias,
    MissingSample,
    NeedsMoreSamples,
    MultipleMatches,
    StillAmbiguous,
    EmptyIntersection,
    SingularB,
    NoConvergence,
    DegenerateNodes,
    ZeroCoefficient,
    SinNodeZero,
    PairingFailure,
    NonIntegerCandidate,
    NearZeroVectorEntry,
    CollisionDetected,
    DependentDirections,
};

const char* error_name(ErrorCode code);

// CLI exit code: 2 schema, 3 domain, 4 ambiguity or sample budget, 5 numerical.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::vector<long> indices = {})
        : std::runtime_error(what), code_(code), indices_(std::move(indices)) {}

    ErrorCode code() const { return code_; }
    // grid indices involved (missing sample, extra samples needed)
    const std::vector<long>& indices() const { return indices_; }

private:
    ErrorCode code_;
    std::vector<long> indices_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what, std::vector<long> indices = {})
{
    throw Error(code, what, std::move(indices));
}

}  // namespace sparsefit
