#pragma once

#include <optional>
#include <set>
#include <vector>

#include "sparsefit/special.hpp"

namespace sparsefit {

struct Candidate {
    cplx value;
    long branch = 0;     // l in the branch progression
    int sign = 0;        // s in the exponential sets; 1 or 2 for the two arccos/arcsin progressions
};

struct CandidateSet {
    std::vector<Candidate> items;
    char source = 's';   // 's' sigma, 't' tau, 'r' rho
    double bound = 0.0;  // pi/delta, R or M

    std::size_t size() const { return items.size(); }
    std::vector<cplx> values() const;
    std::vector<double> real_values() const;
};

// {(Ln(lambda) + 2 pi i l) / (scale delta)} over the signed branch range.
// A negative scale is folded into lambda^-1.
CandidateSet exp_candidates(cplx lambda, long scale, double delta);

// Unique element of S intersect T (match within tol_rel * pi/delta).
cplx exp_resolve(cplx lambda_sigma, cplx lambda_tau, long sigma, long tau, double delta, double tol_rel = 1e-9);

// Two arccos progressions clipped to [0, R); delta defaults to pi/R.
CandidateSet cos_candidates(double C, long scale, double R, std::optional<double> delta = std::nullopt,
                            double merge_tol_rel = 1e-9);

struct CosResolution {
    std::vector<double> survivors;   // after sigma/tau (and rho, if supplied)
    std::size_t pair_size = 0;       // |Phi_sigma intersect Phi_tau|
    bool needs_third = false;
    double value() const { return survivors.front(); }
};

// Throws EmptyIntersection or StillAmbiguous.
CosResolution cos_resolve(double C_sigma, double C_tau, long sigma, long tau, double R,
                          std::optional<double> C_rho = std::nullopt, std::optional<long> rho = std::nullopt,
                          std::optional<double> delta = std::nullopt, double tol_rel = 1e-9);

std::set<long> integer_snap(const CandidateSet& c, long M, double tol = 0.25, double offset = 0.0);

// Snapped arccos candidates that also reproduce C = cos((m + offset) scale delta)
// within verify_tol. Without the check, non-integer branches can land near an integer.
std::set<long> cos_degrees(double C, long scale, long M, double delta, double offset = 0.0, double snap_tol = 0.25,
                           double verify_tol = 1e-6);

// Arcsin progressions for S = sin^2(m scale delta), snapped to Z_M and verified like cos_degrees.
CandidateSet spread_candidates(double S, long scale, long M, double delta, double snap_tol = 0.25,
                               double verify_tol = 1e-6);

struct IntegerResolution {
    std::vector<long> survivors;
    std::size_t pair_size = 0;
    bool needs_third = false;
};

// Exact integer intersection of snapped candidate sets (Chebyshev and spread).
IntegerResolution integer_resolve(const std::set<long>& from_sigma, const std::set<long>& from_tau,
                                  const std::optional<std::set<long>>& from_rho = std::nullopt);

}  // namespace sparsefit
