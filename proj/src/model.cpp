#include "sparsefit/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sparsefit {

const char* error_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GammaPole: return "GammaPole";
    case ErrorCode::PoleDetected: return "PoleDetected";
    case ErrorCode::HyperbolicAlias: return "HyperbolicAlias";
    case ErrorCode::MissingSample: return "MissingSample";
    case ErrorCode::NeedsMoreSamples: return "NeedsMoreSamples";
    case ErrorCode::MultipleMatches: return "MultipleMatches";
    case ErrorCode::StillAmbiguous: return "StillAmbiguous";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::SingularB: return "SingularB";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateNodes: return "DegenerateNodes";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::SinNodeZero: return "SinNodeZero";
    case ErrorCode::PairingFailure: return "PairingFailure";
    case ErrorCode::NonIntegerCandidate: return "NonIntegerCandidate";
    case ErrorCode::NearZeroVectorEntry: return "NearZeroVectorEntry";
    case ErrorCode::CollisionDetected: return "CollisionDetected";
    case ErrorCode::DependentDirections: return "DependentDirections";
    }
    return "Unknown";
}

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Schema:
        return 2;
    case ErrorCode::InvalidArgument:
    case ErrorCode::Domain:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::GammaPole:
    case ErrorCode::PoleDetected:
    case ErrorCode::HyperbolicAlias:
        return 3;
    case ErrorCode::MissingSample:
    case ErrorCode::NeedsMoreSamples:
    case ErrorCode::MultipleMatches:
    case ErrorCode::StillAmbiguous:
        return 4;
    default:
        return 5;
    }
}

namespace {

struct FamilyEntry {
    Family family;
    std::string_view name;
};

constexpr std::array<FamilyEntry, 16> family_table{{
    {Family::Exponential, "exponential"},
    {Family::Cosine, "cosine"},
    {Family::Sine, "sine"},
    {Family::PhaseSine, "phase-sine"},
    {Family::Cosh, "cosh"},
    {Family::Sinh, "sinh"},
    {Family::ChebyshevT, "chebyshev-t"},
    {Family::ChebyshevU, "chebyshev-u"},
    {Family::ChebyshevV, "chebyshev-v"},
    {Family::ChebyshevW, "chebyshev-w"},
    {Family::Spread, "spread"},
    {Family::Sinc, "sinc"},
    {Family::Gamma, "gamma"},
    {Family::Gaussian, "gaussian"},
    {Family::MultiExponential, "multi-exponential"},
    {Family::MultiGaussian, "multi-gaussian"},
}};

}  // namespace

std::string_view family_name(Family f)
{
    for (const auto& e : family_table)
        if (e.family == f)
            return e.name;
    return "unknown";
}

std::optional<Family> family_from_name(std::string_view name)
{
    for (const auto& e : family_table)
        if (e.name == name)
            return e.family;
    return std::nullopt;
}

std::vector<Family> all_families()
{
    std::vector<Family> out;
    for (const auto& e : family_table)
        out.push_back(e.family);
    return out;
}

bool is_chebyshev(Family f)
{
    return f == Family::ChebyshevT || f == Family::ChebyshevU || f == Family::ChebyshevV ||
           f == Family::ChebyshevW;
}

bool is_integer_family(Family f) { return is_chebyshev(f) || f == Family::Spread; }

bool is_multivariate(Family f) { return f == Family::MultiExponential || f == Family::MultiGaussian; }

void validate(const SparseModel& model, std::optional<long> degree_bound)
{
    const Family f = model.family;
    const std::string fname(family_name(f));
    if (f == Family::Gaussian && !(model.width > 0.0))
        fail(ErrorCode::Schema, "gaussian width must be positive");
    if (is_multivariate(f)) {
        if (model.dim < 1)
            fail(ErrorCode::Schema, "dim must be >= 1");
        if (!model.weights.empty() && int(model.weights.size()) != model.dim)
            fail(ErrorCode::Schema, "weights length must equal dim");
        for (const auto& t : model.terms)
            if (int(t.phi_vec.size()) != model.dim)
                fail(ErrorCode::Schema, fname + ": every term needs phi_vec of length dim");
    }
    for (std::size_t i = 0; i < model.terms.size(); ++i) {
        const Term& a = model.terms[i];
        if (is_integer_family(f)) {
            if (a.m < 0)
                fail(ErrorCode::Schema, fname + ": degree must be nonnegative");
            if (f == Family::Spread && a.m == 0)
                fail(ErrorCode::Schema, "spread: S_0 vanishes identically and cannot be recovered");
            if (degree_bound && a.m >= *degree_bound)
                fail(ErrorCode::Schema, fname + ": degree " + std::to_string(a.m) + " >= bound " +
                                            std::to_string(*degree_bound));
        }
        if (f == Family::PhaseSine && a.phi.imag() != 0.0)
            fail(ErrorCode::Schema, "phase-sine: phi must be real");
        for (std::size_t j = 0; j < i; ++j) {
            const Term& b = model.terms[j];
            bool same = false;
            switch (f) {
            case Family::ChebyshevT: case Family::ChebyshevU: case Family::ChebyshevV:
            case Family::ChebyshevW: case Family::Spread:
                same = a.m == b.m;
                break;
            case Family::Cosine: case Family::Cosh: case Family::Sine: case Family::Sinh:
            case Family::Sinc: case Family::PhaseSine:
                same = a.phi == b.phi || a.phi == -b.phi;
                break;
            case Family::MultiExponential: case Family::MultiGaussian:
                same = a.phi_vec == b.phi_vec;
                break;
            default:
                same = a.phi == b.phi;
            }
            if (same)
                fail(ErrorCode::Schema, fname + ": terms " + std::to_string(j) + " and " +
                                            std::to_string(i) + " share a parameter");
        }
    }
}

namespace {

void check_real_arg(const SparseModel& model, cplx t, const EvalOptions& opt, double lo, double hi)
{
    if (!opt.strict_domain)
        return;
    if (t.imag() != 0.0 || t.real() < lo || t.real() > hi)
        fail(ErrorCode::Domain, std::string(family_name(model.family)) + ": argument outside [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace

cplx evaluate(const SparseModel& model, cplx t, const EvalOptions& opt)
{
    const Family f = model.family;
    if (is_multivariate(f))
        fail(ErrorCode::InvalidArgument, "evaluate: multivariate family needs evaluate_multivariate");

    if (is_chebyshev(f) || f == Family::Spread) {
        const bool spread = f == Family::Spread;
        check_real_arg(model, t, opt, spread ? 0.0 : -1.0, 1.0);
        const bool inside = t.imag() == 0.0 &&
                            (spread ? (t.real() >= 0.0 && t.real() <= 1.0) : std::abs(t.real()) <= 1.0);
        if (inside) {
            double theta = spread ? std::asin(std::sqrt(t.real())) : std::acos(t.real());
            return evaluate_angle(model, theta);
        }
        cplx sum = 0.0;
        for (const auto& term : model.terms) {
            cplx g;
            switch (f) {
            case Family::ChebyshevT: g = chebyshev_t_rec(term.m, t); break;
            case Family::ChebyshevU: g = chebyshev_u_rec(term.m, t); break;
            case Family::ChebyshevV: g = chebyshev_v_rec(term.m, t); break;
            case Family::ChebyshevW: g = chebyshev_w_rec(term.m, t); break;
            default: g = spread_rec(term.m, t);
            }
            sum += term.alpha * g;
        }
        return sum;
    }

    cplx sum = 0.0;
    for (const auto& term : model.terms) {
        const cplx phi = term.phi;
        cplx g;
        switch (f) {
        case Family::Exponential: g = std::exp(phi * t); break;
        case Family::Cosine: g = std::cos(phi * t); break;
        case Family::Sine: g = std::sin(phi * t); break;
        case Family::PhaseSine: g = std::sin(phi * t - term.psi); break;
        case Family::Cosh: g = std::cosh(phi * t); break;
        case Family::Sinh: g = std::sinh(phi * t); break;
        case Family::Sinc: g = sinc(phi * t); break;
        case Family::Gamma: g = gamma(t + phi); break;
        case Family::Gaussian: {
            cplx d = t - phi;
            g = std::exp(-d * d / model.width);
            break;
        }
        default: g = 0.0;
        }
        sum += term.alpha * g;
    }
    return sum;
}

cplx evaluate_angle(const SparseModel& model, double theta)
{
    cplx sum = 0.0;
    for (const auto& term : model.terms) {
        double g = 0.0;
        switch (model.family) {
        case Family::ChebyshevT: g = chebyshev_t_angle(term.m, theta); break;
        case Family::ChebyshevU: g = chebyshev_u_angle(term.m, theta); break;
        case Family::ChebyshevV: g = chebyshev_v_angle(term.m, theta); break;
        case Family::ChebyshevW: g = chebyshev_w_angle(term.m, theta); break;
        case Family::Spread: g = spread_angle(term.m, theta); break;
        default:
            fail(ErrorCode::InvalidArgument, "evaluate_angle: not a polynomial family");
        }
        sum += term.alpha * g;
    }
    return sum;
}

cplx evaluate_multivariate(const SparseModel& model, std::span<const double> x)
{
    if (!is_multivariate(model.family))
        fail(ErrorCode::InvalidArgument, "evaluate_multivariate: univariate family");
    if (int(x.size()) != model.dim)
        fail(ErrorCode::DimensionMismatch, "point has " + std::to_string(x.size()) +
                                               " coordinates, model dim is " + std::to_string(model.dim));
    cplx sum = 0.0;
    for (const auto& term : model.terms) {
        if (int(term.phi_vec.size()) != model.dim)
            fail(ErrorCode::DimensionMismatch, "phi_vec length differs from dim");
        cplx e = 0.0;
        for (int k = 0; k < model.dim; ++k) {
            if (model.family == Family::MultiExponential) {
                e += term.phi_vec[k] * x[k];
            } else {
                double w = model.weights.empty() ? 1.0 : model.weights[k];
                cplx d = x[k] - term.phi_vec[k];
                e -= w * d * d;
            }
        }
        sum += term.alpha * std::exp(e);
    }
    return sum;
}

}  // namespace sparsefit
