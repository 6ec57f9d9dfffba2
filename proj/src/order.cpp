#include "sparsefit/order.hpp"

#include <cmath>
#include <limits>

#include "pipeline.hpp"
#include "sparsefit/linalg.hpp"

namespace sparsefit {

using detail::Pipeline;

namespace {

double multi_gauss_norm2(const SamplingScheme& s, long j)
{
    double acc = 0.0;
    for (int k = 0; k < s.dim; ++k) {
        double sig = s.sigma_vec.empty() ? 1.0 : double(s.sigma_vec[k]);
        double x = double(j) * sig * s.delta_vec[k];
        acc += x * x;
    }
    return acc;
}

}  // namespace

CMatrix order_matrix(const SampleSet& samples, Family f, int nu)
{
    const SamplingScheme& s = samples.scheme();
    SampleView view(samples, f);
    Series g = detail::family_series(f, view, s);
    switch (detail::pipeline_of(f)) {
    case Pipeline::Cosine:
        return build_cosine_matrix(g, s.sigma, 0, nu);
    case Pipeline::Sine:
        return build_sine_matrix(g, s.sigma, 0, nu);
    case Pipeline::Spread:
        return build_spread_matrices(g, s.sigma, 0, nu).first;
    case Pipeline::Gaussian:
        if (f == Family::MultiGaussian)
            return build_aux_hankel([&](long j) { return std::exp(multi_gauss_norm2(s, j)) * g(j); }, nu);
        return build_gauss_hankel(
            [&](long j) { return aux_transform(Family::Gaussian, g, s.sigma, 0, j, detail::gaussian_delta(s)); },
            nu);
    case Pipeline::Gamma:
        return build_gamma_hankel(gamma_transform(g, s.complex_tau, s.gamma_delta(), 2 * nu - 2), 0, nu);
    case Pipeline::Exponential:
        break;
    }
    return build_hankel(g, f == Family::MultiGaussian ? 1 : s.sigma, 0, nu);
}

OrderEstimate rank_from_profile(const std::vector<double>& sv, double threshold)
{
    OrderEstimate est;
    est.profile = sv;
    est.nu = int(sv.size());
    if (sv.empty() || sv.front() == 0.0) {
        est.gap_ratio = std::numeric_limits<double>::infinity();
        return est;
    }
    int n = 0;
    for (double x : sv)
        if (x > threshold * sv.front())
            ++n;
    est.n = n;
    if (n < int(sv.size()) && sv[n] > 0.0)
        est.gap_ratio = sv[n - 1] / sv[n];
    else
        est.gap_ratio = std::numeric_limits<double>::infinity();
    est.weak_gap = est.gap_ratio < 1e3;
    return est;
}

OrderEstimate estimate_order(const SampleSet& samples, Family f, int nu_max, double threshold, bool full_profile)
{
    if (nu_max < 1)
        fail(ErrorCode::InvalidArgument, "estimate_order: nu_max must be >= 1");
    OrderEstimate prev;
    int prev_rank = -1;
    for (int nu = 1; nu <= nu_max; ++nu) {
        OrderEstimate cur = rank_from_profile(singular_values(order_matrix(samples, f, nu)), threshold);
        if (!full_profile && prev_rank == cur.n && cur.n < nu - 1)
            return cur;
        prev_rank = cur.n;
        prev = cur;
    }
    return prev;
}

}  // namespace sparsefit
