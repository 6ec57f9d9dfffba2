#include "sparsefit/special.hpp"

#include <cmath>
#include <numbers>

#include "sparsefit/errors.hpp"

namespace sparsefit {

namespace {

// g = 7, nine terms; relative error ~1e-15 for Re z >= 0.5
constexpr double lanczos_g = 7.0;
constexpr double lanczos_p[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

constexpr double near_zero = 1e-12;

}  // namespace

bool is_gamma_pole(cplx z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx gamma(cplx z)
{
    using std::numbers::pi;
    if (is_gamma_pole(z))
        fail(ErrorCode::GammaPole, "gamma pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5)
        return pi / (std::sin(pi * z) * gamma(1.0 - z));
    z -= 1.0;
    cplx x = lanczos_p[0];
    for (int i = 1; i < 9; ++i)
        x += lanczos_p[i] / (z + double(i));
    cplx t = z + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

namespace {

cplx three_term(long m, cplx t, cplx p0, cplx p1)
{
    if (m == 0)
        return p0;
    for (long k = 1; k < m; ++k) {
        cplx p2 = 2.0 * t * p1 - p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

}  // namespace

cplx chebyshev_t_rec(long m, cplx t) { return three_term(m, t, 1.0, t); }
cplx chebyshev_u_rec(long m, cplx t) { return three_term(m, t, 1.0, 2.0 * t); }
cplx chebyshev_v_rec(long m, cplx t) { return three_term(m, t, 1.0, 2.0 * t - 1.0); }
cplx chebyshev_w_rec(long m, cplx t) { return three_term(m, t, 1.0, 2.0 * t + 1.0); }

cplx spread_rec(long m, cplx t)
{
    if (m == 0)
        return 0.0;
    cplx s0 = 0.0, s1 = t;
    for (long k = 1; k < m; ++k) {
        cplx s2 = 2.0 * (1.0 - 2.0 * t) * s1 - s0 + 2.0 * t;
        s0 = s1;
        s1 = s2;
    }
    return s1;
}

double chebyshev_t_angle(long m, double theta) { return std::cos(double(m) * theta); }

double chebyshev_u_angle(long m, double theta)
{
    double k = double(m + 1);
    double s = std::sin(theta);
    if (std::abs(s) < near_zero)
        return k * std::cos(k * theta) / std::cos(theta);
    return std::sin(k * theta) / s;
}

double chebyshev_v_angle(long m, double theta)
{
    double k = double(m) + 0.5;
    double c = std::cos(0.5 * theta);
    if (std::abs(c) < near_zero)
        return 2.0 * k * std::sin(k * theta) / std::sin(0.5 * theta);
    return std::cos(k * theta) / c;
}

double chebyshev_w_angle(long m, double theta)
{
    double k = double(m) + 0.5;
    double s = std::sin(0.5 * theta);
    if (std::abs(s) < near_zero)
        return 2.0 * k * std::cos(k * theta) / std::cos(0.5 * theta);
    return std::sin(k * theta) / s;
}

double spread_angle(long m, double theta)
{
    double s = std::sin(double(m) * theta);
    return s * s;
}

cplx sinc(cplx x)
{
    if (std::abs(x) < 1e-8)
        return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace sparsefit
