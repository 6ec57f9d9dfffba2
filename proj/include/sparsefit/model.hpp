#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsefit/errors.hpp"
#include "sparsefit/special.hpp"

namespace sparsefit {

enum class Family {
    Exponential,
    Cosine,
    Sine,
    PhaseSine,
    Cosh,
    Sinh,
    ChebyshevT,
    ChebyshevU,
    ChebyshevV,
    ChebyshevW,
    Spread,
    Sinc,
    Gamma,
    Gaussian,
    MultiExponential,
    MultiGaussian,
};

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);
std::vector<Family> all_families();

bool is_integer_family(Family f);    // Chebyshev kinds and spread carry degrees m
bool is_multivariate(Family f);
bool is_chebyshev(Family f);

struct Term {
    cplx alpha{0.0, 0.0};
    cplx phi{0.0, 0.0};
    long m = 0;
    double psi = 0.0;              // PhaseSine only
    std::vector<cplx> phi_vec;     // multivariate only
};

struct SparseModel {
    Family family = Family::Exponential;
    std::vector<Term> terms;
    double width = 1.0;            // Gaussian: the fixed 2w^2
    int dim = 1;                   // multivariate families
    std::vector<double> weights;   // MultiGaussian per-coordinate weights; empty means all ones

    std::size_t n() const { return terms.size(); }
};

struct EvalOptions {
    bool strict_domain = false;    // reject |t|>1 (Chebyshev) and t outside [0,1] (spread)
};

// Throws Schema for structurally invalid models (wrong parameter kind, m >= M,
// duplicated parameters, S_0 terms).
void validate(const SparseModel& model, std::optional<long> degree_bound = std::nullopt);

cplx evaluate(const SparseModel& model, cplx t, const EvalOptions& opt = {});

// Chebyshev families at t = cos(theta), spread at t = sin^2(theta); avoids the
// precision loss of recovering theta from t for high degrees.
cplx evaluate_angle(const SparseModel& model, double theta);

cplx evaluate_multivariate(const SparseModel& model, std::span<const double> x);

}  // namespace sparsefit
