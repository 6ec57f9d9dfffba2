#pragma once

#include <complex>

namespace sparsefit {

using cplx = std::complex<double>;

// Lanczos gamma with reflection; throws GammaPole at 0, -1, -2, ...
cplx gamma(cplx z);

bool is_gamma_pole(cplx z);

// Polynomials of degree m via the three-term recurrences; valid for any argument.
cplx chebyshev_t_rec(long m, cplx t);
cplx chebyshev_u_rec(long m, cplx t);
cplx chebyshev_v_rec(long m, cplx t);
cplx chebyshev_w_rec(long m, cplx t);
cplx spread_rec(long m, cplx t);

// Closed trigonometric forms at t = cos(theta) (Chebyshev) and t = sin^2(theta) (spread).
double chebyshev_t_angle(long m, double theta);
double chebyshev_u_angle(long m, double theta);
double chebyshev_v_angle(long m, double theta);
double chebyshev_w_angle(long m, double theta);
double spread_angle(long m, double theta);

// sin(x)/x with the removable singularity filled in
cplx sinc(cplx x);

}  // namespace sparsefit
