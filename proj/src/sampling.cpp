#include "sparsefit/sampling.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace sparsefit {

double SamplingScheme::bound() const
{
    return R.value_or(std::numbers::pi / delta);
}

long SamplingScheme::degree_bound(Family f) const
{
    if (M)
        return *M;
    double limit = f == Family::Spread ? std::numbers::pi / (2.0 * delta) : std::numbers::pi / delta;
    return long(std::floor(limit + 1e-9));
}

void validate(const SamplingScheme& s, Family f)
{
    if (is_multivariate(f)) {
        if (s.dim < 1 || int(s.delta_vec.size()) != s.dim)
            fail(ErrorCode::InvalidArgument, "scheme: delta_vec must have dim entries");
        if (int(s.shift_vecs.size()) != s.dim - 1)
            fail(ErrorCode::InvalidArgument, "scheme: need dim-1 shift vectors");
        for (const auto& v : s.shift_vecs)
            if (int(v.size()) != s.dim)
                fail(ErrorCode::InvalidArgument, "scheme: shift vector length must equal dim");
        if (f == Family::MultiGaussian) {
            if (!s.sigma_vec.empty() && int(s.sigma_vec.size()) != s.dim)
                fail(ErrorCode::InvalidArgument, "scheme: sigma_vec length must equal dim");
            for (const auto& v : s.shift_vecs)
                for (double x : v)
                    if (x != std::round(x))
                        fail(ErrorCode::InvalidArgument, "scheme: gaussian shift vectors must be integer");
        }
    }
    if (f == Family::Gamma) {
        if (s.gamma_delta() == cplx(0.0, 0.0))
            fail(ErrorCode::InvalidArgument, "scheme: gamma delta must be nonzero");
        return;
    }
    if (!is_multivariate(f) && !(s.delta > 0.0))
        fail(ErrorCode::InvalidArgument, "scheme: delta must be positive");
    if (s.sigma < 1)
        fail(ErrorCode::InvalidArgument, "scheme: sigma must be a positive integer");
    if (s.tau != 0 && std::gcd(long(s.sigma), std::labs(s.tau)) != 1)
        fail(ErrorCode::InvalidArgument, "scheme: gcd(sigma, |tau|) must be 1");
    if (s.R && !(*s.R > 0.0))
        fail(ErrorCode::InvalidArgument, "scheme: R must be positive");
    if (s.M && *s.M < 1)
        fail(ErrorCode::InvalidArgument, "scheme: M must be positive");
}

cplx SampleSet::at(long index) const
{
    auto it = values_.find(index);
    if (it == values_.end())
        fail(ErrorCode::MissingSample, "missing sample at index " + std::to_string(index), {index});
    return it->second;
}

cplx MultiSampleSet::at(int line, long index) const
{
    auto it = lines.find(line);
    if (it == lines.end())
        fail(ErrorCode::MissingSample, "missing line " + std::to_string(line), {index});
    return it->second.at(index);
}

Parity parity_of(Family f)
{
    switch (f) {
    case Family::Cosine: case Family::Cosh: case Family::ChebyshevT: case Family::ChebyshevU:
    case Family::ChebyshevV: case Family::ChebyshevW: case Family::Spread: case Family::Sinc:
        return Parity::Even;
    case Family::Sine: case Family::Sinh:
        return Parity::Odd;
    default:
        return Parity::None;
    }
}

SampleView::SampleView(const SampleSet& samples, Family f)
    : samples_(samples), parity_(parity_of(f)), zero_at_origin_(f == Family::Spread || parity_of(f) == Parity::Odd)
{
}

cplx SampleView::operator()(long index)
{
    if (index == 0 && zero_at_origin_)
        return 0.0;
    double sign = 1.0;
    if (index < 0 && parity_ != Parity::None) {
        if (parity_ == Parity::Odd)
            sign = -1.0;
        index = -index;
    }
    cplx v = samples_.at(index);
    consumed_.insert(index);
    return sign * v;
}

cplx location_of(Family f, const SamplingScheme& s, long index)
{
    double theta = double(index) * s.delta;
    if (is_chebyshev(f))
        return std::cos(theta);
    if (f == Family::Spread) {
        double x = std::sin(theta);
        return x * x;
    }
    if (f == Family::Gamma)
        return s.complex_tau + s.gamma_delta() + double(index);
    return theta;
}

std::vector<GridPoint> grid_points(Family f, const SamplingScheme& s, long j_begin, long j_end)
{
    std::vector<GridPoint> out;
    for (long j = j_begin; j <= j_end; ++j) {
        long idx = f == Family::Gamma ? j : s.tau + j * s.sigma;
        out.push_back({idx, location_of(f, s, idx)});
    }
    return out;
}

std::vector<double> multi_location(Family f, const SamplingScheme& s, int line, long index)
{
    std::vector<double> x(s.dim, 0.0);
    for (int k = 0; k < s.dim; ++k) {
        double shift = line >= 2 ? s.shift_vecs.at(line - 2).at(k) : 0.0;
        if (f == Family::MultiGaussian) {
            double sig = s.sigma_vec.empty() ? 1.0 : double(s.sigma_vec[k]);
            x[k] = (shift + double(index) * sig) * s.delta_vec[k];
        } else {
            x[k] = shift + double(index) * s.delta_vec[k];
        }
    }
    return x;
}

cplx aux_transform(Family f, const Series& fs, int sigma, long tau, long j, double delta)
{
    const long js = j * sigma;
    switch (f) {
    case Family::Cosine: case Family::Cosh: case Family::ChebyshevT: case Family::ChebyshevV:
        return 0.5 * fs(tau + js) + 0.5 * fs(tau - js);
    case Family::Sine: case Family::Sinh: case Family::ChebyshevU: case Family::ChebyshevW:
        return 0.5 * fs(tau + js) + 0.5 * fs(-tau + js);
    case Family::Spread:
        return 0.5 * (fs(tau) + fs(js)) - 0.25 * (fs(tau + js) + fs(tau - js));
    case Family::Gaussian: {
        const double d2 = delta * delta;
        return std::exp(2.0 * double(tau * js) * d2) * std::exp(double(js * js) * d2) * fs(tau + js);
    }
    case Family::Sinc: {
        long i = tau + js;
        if (i == 0)
            return 0.0;
        return double(i) * delta * fs(i);
    }
    default:
        return fs(tau + js);
    }
}

std::vector<cplx> gamma_transform(const Series& fs, cplx tau, cplx delta, int depth)
{
    if (depth < 0)
        fail(ErrorCode::InvalidArgument, "gamma_transform: negative depth");
    // row[p] holds F_{tau,j}(delta + p)
    std::vector<cplx> row(depth + 1);
    for (int p = 0; p <= depth; ++p) {
        row[p] = fs(p);
        if (!std::isfinite(row[p].real()) || !std::isfinite(row[p].imag()))
            fail(ErrorCode::PoleDetected, "sample at gamma grid point " + std::to_string(p) +
                                              " is not finite (pole)", {long(p)});
    }
    std::vector<cplx> out{row[0]};
    for (int j = 1; j <= depth; ++j) {
        for (int p = 0; p + j <= depth; ++p)
            row[p] = row[p + 1] - (tau + delta + double(p)) * row[p];
        out.push_back(row[0]);
    }
    return out;
}

std::vector<cplx> gamma_transform(const SampleSet& samples, cplx tau, int depth)
{
    return gamma_transform([&](long i) { return samples.at(i); }, tau, samples.scheme().gamma_delta(), depth);
}

namespace {

cplx model_at(const SparseModel& model, const SamplingScheme& s, long index)
{
    if (is_integer_family(model.family))
        return evaluate_angle(model, double(index) * s.delta);
    return evaluate(model, location_of(model.family, s, index));
}

struct Noise {
    explicit Noise(const NoiseSpec& spec) : sd(spec.sd), rng(spec.seed) {}
    cplx draw(bool real_only)
    {
        if (sd <= 0.0)
            return 0.0;
        double re = normal(rng) * sd;
        double im = real_only ? 0.0 : normal(rng) * sd;
        return {re, im};
    }
    double sd;
    std::mt19937_64 rng;
    std::normal_distribution<double> normal{0.0, 1.0};
};

}  // namespace

SampleSet simulate(const SparseModel& model, const SamplingScheme& scheme, const std::vector<long>& indices,
                   const NoiseSpec& noise)
{
    SampleSet out(scheme);
    std::vector<cplx> clean;
    bool all_real = true;
    for (long i : indices) {
        cplx v = model_at(model, scheme, i);
        all_real = all_real && v.imag() == 0.0;
        clean.push_back(v);
    }
    Noise gen(noise);
    for (std::size_t k = 0; k < indices.size(); ++k)
        out.set(indices[k], clean[k] + gen.draw(all_real));
    return out;
}

MultiSampleSet simulate_multi(const SparseModel& model, const SamplingScheme& scheme,
                              const std::map<int, std::vector<long>>& indices, const NoiseSpec& noise)
{
    MultiSampleSet out;
    out.scheme = scheme;
    Noise gen(noise);
    for (const auto& [line, idx] : indices) {
        SampleSet set(scheme);
        for (long i : idx) {
            auto x = multi_location(model.family, scheme, line, i);
            set.set(i, evaluate_multivariate(model, x) + gen.draw(false));
        }
        out.lines[line] = std::move(set);
    }
    return out;
}

}  // namespace sparsefit
