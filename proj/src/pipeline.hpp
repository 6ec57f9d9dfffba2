#pragma once

// Internal: how each family maps onto one of the shared recovery pipelines.

#include <cmath>

#include "sparsefit/sampling.hpp"

namespace sparsefit::detail {

enum class Pipeline { Exponential, Cosine, Sine, Spread, Gaussian, Gamma };

inline Pipeline pipeline_of(Family f)
{
    switch (f) {
    case Family::Cosine: case Family::Cosh: case Family::ChebyshevT: case Family::ChebyshevV:
        return Pipeline::Cosine;
    case Family::Sine: case Family::Sinh: case Family::Sinc: case Family::ChebyshevU: case Family::ChebyshevW:
        return Pipeline::Sine;
    case Family::Spread:
        return Pipeline::Spread;
    case Family::Gaussian: case Family::MultiGaussian:
        return Pipeline::Gaussian;
    case Family::Gamma:
        return Pipeline::Gamma;
    default:
        return Pipeline::Exponential;
    }
}

// Offset between the pipeline's frequency and the family's degree:
// sin(theta) U_m = sin((m+1) theta), cos(theta/2) V_m = cos((m+1/2) theta),
// sin(theta/2) W_m = sin((m+1/2) theta).
inline double degree_offset(Family f)
{
    switch (f) {
    case Family::ChebyshevU: return 1.0;
    case Family::ChebyshevV: case Family::ChebyshevW: return 0.5;
    default: return 0.0;
    }
}

// Series seen by the pipeline: raw samples folded by parity, then the
// family's premultiplication (sinc, Chebyshev kinds 2-4).
inline Series family_series(Family f, SampleView& view, const SamplingScheme& s)
{
    const double d = s.delta;
    switch (f) {
    case Family::Sinc:
        return [&view, d](long i) { return i == 0 ? cplx(0.0) : double(i) * d * view(i); };
    case Family::ChebyshevU:
        return [&view, d](long i) { return i == 0 ? cplx(0.0) : std::sin(double(i) * d) * view(i); };
    case Family::ChebyshevV:
        return [&view, d](long i) { return std::cos(0.5 * double(i) * d) * view(i); };
    case Family::ChebyshevW:
        return [&view, d](long i) { return i == 0 ? cplx(0.0) : std::sin(0.5 * double(i) * d) * view(i); };
    default:
        return [&view](long i) { return view(i); };
    }
}

// Step in the rescaled variable t / sqrt(2 w^2) for the gaussian family
inline double gaussian_delta(const SamplingScheme& s) { return s.delta / std::sqrt(s.width); }

}  // namespace sparsefit::detail
