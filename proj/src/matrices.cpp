#include "sparsefit/matrices.hpp"

#include <iomanip>
#include <sstream>

namespace sparsefit {

namespace {

void check_order(int n)
{
    if (n < 1)
        fail(ErrorCode::InvalidArgument, "matrix order must be >= 1");
}

Series direct(const SampleSet& s)
{
    return [&s](long i) { return s.at(i); };
}

}  // namespace

CMatrix build_hankel(const Series& f, int sigma, long tau, int n)
{
    check_order(n);
    CMatrix H(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l)
            H(k, l) = H(l, k) = f(tau + long(k + l) * sigma);
    return H;
}

CMatrix build_toeplitz(const Series& f, int sigma, long tau, int n)
{
    check_order(n);
    CMatrix T(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            T(k, l) = f(tau + long(k - l) * sigma);
    return T;
}

CMatrix build_cosine_matrix(const Series& f, int sigma, long tau, int n)
{
    return 0.25 * (build_hankel(f, sigma, tau, n) + build_hankel(f, -sigma, tau, n) +
                   build_toeplitz(f, sigma, tau, n) + build_toeplitz(f, -sigma, tau, n));
}

CMatrix build_sine_matrix(const Series& f, int sigma, long tau, int n)
{
    return 0.25 * (build_hankel(f, sigma, sigma + tau, n) + build_hankel(f, sigma, sigma - tau, n) +
                   build_toeplitz(f, sigma, sigma + tau, n) + build_toeplitz(f, sigma, sigma - tau, n));
}

CMatrix build_hankel(const SampleSet& s, int sigma, long tau, int n) { return build_hankel(direct(s), sigma, tau, n); }
CMatrix build_toeplitz(const SampleSet& s, int sigma, long tau, int n) { return build_toeplitz(direct(s), sigma, tau, n); }
CMatrix build_cosine_matrix(const SampleSet& s, int sigma, long tau, int n) { return build_cosine_matrix(direct(s), sigma, tau, n); }
CMatrix build_sine_matrix(const SampleSet& s, int sigma, long tau, int n) { return build_sine_matrix(direct(s), sigma, tau, n); }

std::pair<CMatrix, CMatrix> build_spread_matrices(const Series& f, int sigma, long tau, int n)
{
    check_order(n);
    auto combine = [n](const std::function<cplx(long)>& g) {
        CMatrix X(n, n);
        for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= n; ++l)
                X(k - 1, l - 1) = 0.5 * g(k) + 0.5 * g(l) - 0.25 * g(k + l) - 0.25 * g(k - l);
        return X;
    };
    CMatrix J = combine([&](long j) { return f(j * sigma); });
    CMatrix K = combine([&](long j) { return aux_transform(Family::Spread, f, sigma, tau, j, 0.0); });
    return {J, K};
}

CMatrix build_aux_hankel(const std::function<cplx(long)>& F, int n, long offset)
{
    check_order(n);
    CMatrix H(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l)
            H(k, l) = H(l, k) = F(offset + k + l);
    return H;
}

CMatrix build_gauss_hankel(const std::function<cplx(long)>& F, int n) { return build_aux_hankel(F, n, 0); }

CMatrix build_gamma_hankel(const std::vector<cplx>& F, int k, int n)
{
    check_order(n);
    if (k < 0 || std::size_t(k + 2 * n - 1) > F.size())
        fail(ErrorCode::MissingSample, "gamma series too short for the requested Hankel",
             {long(k + 2 * n - 2)});
    return build_aux_hankel([&](long j) { return F[j]; }, n, k);
}

CMatrix build_multivariate_hankel(const Series& line, int sigma, int n, long offset)
{
    return build_hankel(line, sigma, offset, n);
}

std::string dump_matrix_csv(const CMatrix& m)
{
    std::ostringstream os;
    os << std::setprecision(17);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c)
                os << ',';
            os << m(r, c).real() << ',' << m(r, c).imag();
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace sparsefit
