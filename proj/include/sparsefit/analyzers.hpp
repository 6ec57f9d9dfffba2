#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sparsefit/disambiguation.hpp"
#include "sparsefit/linalg.hpp"
#include "sparsefit/order.hpp"

namespace sparsefit {

struct AnalyzerOptions {
    double tol_singular = 1e-10;   // SingularB threshold on s_min / s_max of B
    double tol_match = 1e-9;       // candidate intersection, relative to the bound
    double tol_snap = 0.25;        // integer snapping for degrees
    double tol_verify = 1e-6;      // a snapped degree must reproduce the measured value this closely
    double tol_pencil = 1e-9;      // backward error of each eigenpair (warning only)
    double tol_zero = 1e-12;       // |alpha_i| relative to max |alpha| before a quotient
    bool allow_escalation = true;  // read the third-value samples when two candidates survive
    std::optional<long> rho;       // third value; defaults to sigma + tau
};

struct SampleRef {
    int line = 0;                  // 0 for univariate data, 1..d for multivariate lines
    long index = 0;
    bool operator<(const SampleRef& o) const { return line != o.line ? line < o.line : index < o.index; }
    bool operator==(const SampleRef& o) const = default;
};

struct RecoveryResult {
    SparseModel model;
    int order_estimate = 0;
    std::optional<OrderEstimate> order;      // set when the order was estimated
    double residual_max = 0.0;               // over the consumed samples only
    double cond_A = 0.0;
    double cond_B = 0.0;
    std::vector<std::size_t> ambiguity_log;  // per term: candidates left after sigma/tau
    std::vector<SampleRef> consumed;
    bool escalated = false;
    long rho = 0;
    std::vector<cplx> eigenvalues;
    std::vector<cplx> shifted_values;        // per term: the tau evaluation (cos, exp, ...)
    std::vector<cplx> rho_values;            // per term: the rho evaluation, when escalated
    std::string method;                      // eigensolver route
    std::vector<std::string> log;
    Pencil pencil;
};

RecoveryResult analyze_exponential(const SampleSet& samples, int n, const AnalyzerOptions& opt = {});
// Pencil (H^tau, H^0): eigenvalues carry tau, eigenvectors carry sigma.
RecoveryResult analyze_exponential_variant(const SampleSet& samples, int n, const AnalyzerOptions& opt = {});
RecoveryResult analyze_cosine(const SampleSet& samples, int n, const AnalyzerOptions& opt = {});
RecoveryResult analyze_sine(const SampleSet& samples, int n, const AnalyzerOptions& opt = {});
RecoveryResult analyze_phase_sine(const SampleSet& samples, int n, const AnalyzerOptions& opt = {});
RecoveryResult analyze_hyperbolic(const SampleSet& samples, int n, Family kind, const AnalyzerOptions& opt = {});
RecoveryResult analyze_chebyshev(const SampleSet& samples, int n, Family kind, const AnalyzerOptions& opt = {});
RecoveryResult analyze_spread(const SampleSet& samples, int n, const AnalyzerOptions& opt = {});
RecoveryResult analyze_sinc(const SampleSet& samples, int n, const AnalyzerOptions& opt = {});
RecoveryResult analyze_gamma(const SampleSet& samples, int n, const AnalyzerOptions& opt = {});
// The width 2w^2 is taken from the scheme.
RecoveryResult analyze_gaussian(const SampleSet& samples, int n, const AnalyzerOptions& opt = {});

// Dispatch on the family (univariate only).
RecoveryResult analyze(const SampleSet& samples, Family f, int n, const AnalyzerOptions& opt = {});

// Estimate n first, then analyze; a zero estimate returns the empty model.
RecoveryResult analyze_auto(const SampleSet& samples, Family f, int nu_max,
                            double threshold = default_order_threshold, const AnalyzerOptions& opt = {});

// Raw indices an analyzer reads for (family, scheme, n), negative indices folded
// for even/odd families. With escalate, the third-value samples are included.
std::vector<long> required_indices(Family f, const SamplingScheme& s, int n, bool escalate = false);

}  // namespace sparsefit
