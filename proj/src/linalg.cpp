#include "sparsefit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace sparsefit {

namespace {

bool is_hermitian(const CMatrix& M)
{
    double scale = M.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return true;
    return (M - M.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

bool is_real(const CMatrix& M) { return M.imag().cwiseAbs().maxCoeff() == 0.0; }

struct RawEig {
    std::vector<cplx> values;
    std::vector<CVector> vectors;
};

RawEig symmetric_definite(const CMatrix& A, const CMatrix& B)
{
    const lapack_int n = lapack_int(A.rows());
    RawEig out;
    std::vector<double> w(n);
    if (is_real(A) && is_real(B)) {
        Eigen::MatrixXd a = A.real(), b = B.real();
        lapack_int info = LAPACKE_dsygv(LAPACK_COL_MAJOR, 1, 'V', 'U', n, a.data(), n, b.data(), n, w.data());
        if (info != 0)
            fail(ErrorCode::NoConvergence, "dsygv failed with info " + std::to_string(info));
        for (lapack_int i = 0; i < n; ++i) {
            out.values.emplace_back(w[i], 0.0);
            out.vectors.push_back(a.col(i).cast<cplx>());
        }
    } else {
        CMatrix a = A, b = B;
        lapack_int info = LAPACKE_zhegv(LAPACK_COL_MAJOR, 1, 'V', 'U', n, a.data(), n, b.data(), n, w.data());
        if (info != 0)
            fail(ErrorCode::NoConvergence, "zhegv failed with info " + std::to_string(info));
        for (lapack_int i = 0; i < n; ++i) {
            out.values.emplace_back(w[i], 0.0);
            out.vectors.push_back(a.col(i));
        }
    }
    return out;
}

RawEig qz(const CMatrix& A, const CMatrix& B)
{
    const lapack_int n = lapack_int(A.rows());
    RawEig out;
    if (is_real(A) && is_real(B)) {
        Eigen::MatrixXd a = A.real(), b = B.real(), vr(n, n);
        std::vector<double> ar(n), ai(n), beta(n);
        lapack_int info = LAPACKE_dggev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, b.data(), n, ar.data(),
                                        ai.data(), beta.data(), nullptr, 1, vr.data(), n);
        if (info != 0)
            fail(ErrorCode::NoConvergence, "dggev failed with info " + std::to_string(info));
        for (lapack_int i = 0; i < n; ++i) {
            if (beta[i] == 0.0)
                fail(ErrorCode::SingularB, "infinite generalized eigenvalue");
            out.values.emplace_back(ar[i] / beta[i], ai[i] / beta[i]);
            if (ai[i] == 0.0) {
                out.vectors.push_back(vr.col(i).cast<cplx>());
            } else {
                // conjugate pair stored in consecutive columns
                CVector v = vr.col(i).cast<cplx>() + cplx(0, 1) * vr.col(i + 1).cast<cplx>();
                out.vectors.push_back(v);
                out.vectors.push_back(v.conjugate());
                out.values.emplace_back(ar[i + 1] / beta[i + 1], ai[i + 1] / beta[i + 1]);
                ++i;
            }
        }
    } else {
        CMatrix a = A, b = B, vr(n, n);
        std::vector<cplx> alpha(n), beta(n);
        lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, b.data(), n, alpha.data(),
                                        beta.data(), nullptr, 1, vr.data(), n);
        if (info != 0)
            fail(ErrorCode::NoConvergence, "zggev failed with info " + std::to_string(info));
        for (lapack_int i = 0; i < n; ++i) {
            if (beta[i] == cplx(0.0, 0.0))
                fail(ErrorCode::SingularB, "infinite generalized eigenvalue");
            out.values.push_back(alpha[i] / beta[i]);
            out.vectors.push_back(vr.col(i));
        }
    }
    return out;
}

}  // namespace

EigenPairs generalized_eig(const Pencil& pencil, double tol)
{
    const CMatrix& A = pencil.A;
    const CMatrix& B = pencil.B;
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows() || A.rows() == 0)
        fail(ErrorCode::InvalidArgument, "pencil matrices must be square and of equal size");
    auto sv = singular_values(B);
    if (!(sv.back() > tol * sv.front()))
        fail(ErrorCode::SingularB,
             "B is numerically singular (s_min/s_max = " + std::to_string(sv.back() / sv.front()) +
                 "); check the order estimate or change sigma");

    EigenPairs out;
    RawEig raw;
    bool definite = false;
    if (is_hermitian(A) && is_hermitian(B)) {
        Eigen::LLT<CMatrix> llt(0.5 * (B + B.adjoint()));
        definite = llt.info() == Eigen::Success;
    }
    if (definite) {
        raw = symmetric_definite(0.5 * (A + A.adjoint()), 0.5 * (B + B.adjoint()));
        out.method = "cholesky";
    } else {
        raw = qz(A, B);
        out.method = "qz";
    }

    const std::size_t n = raw.values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    double scale = 0.0;
    for (auto v : raw.values)
        scale = std::max(scale, std::abs(v));
    const double tie = 1e-12 * std::max(scale, 1e-300);
    // insertion sort: the tie tolerance is not a strict weak ordering
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = i; j > 0; --j) {
            cplx a = raw.values[order[j - 1]], b = raw.values[order[j]];
            bool swap = std::abs(std::abs(a) - std::abs(b)) > tie ? std::abs(b) > std::abs(a)
                                                                 : std::arg(b) < std::arg(a);
            if (!swap)
                break;
            std::swap(order[j - 1], order[j]);
        }
    }
    for (std::size_t i : order) {
        CVector v = raw.vectors[i];
        double nv = v.norm();
        if (nv > 0)
            v /= nv;
        cplx lam = raw.values[i];
        out.values.push_back(lam);
        out.residuals.push_back((A * v - lam * (B * v)).norm());
        out.vectors.push_back(v);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(out.values[i] - out.values[j]) <= 1e-8 * std::max(scale, 1e-300))
                out.warnings.push_back("ClusterWarning: eigenvalues " + std::to_string(i) + " and " +
                                       std::to_string(j) + " nearly coincide");
    return out;
}

std::vector<double> singular_values(const CMatrix& m)
{
    if (m.size() == 0)
        return {};
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

double cond2(const CMatrix& m)
{
    auto s = singular_values(m);
    if (s.empty() || s.front() == 0.0)
        fail(ErrorCode::InvalidArgument, "cond2 of a zero matrix");
    if (s.back() <= std::numeric_limits<double>::min())
        return std::numeric_limits<double>::infinity();
    return s.front() / s.back();
}

CVector vandermonde_solve(const std::vector<cplx>& nodes, const std::vector<cplx>& rhs, int rows)
{
    const int n = int(nodes.size());
    if (rows < n || std::size_t(rows) > rhs.size())
        fail(ErrorCode::InvalidArgument, "vandermonde_solve: need n <= rows <= rhs size");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (std::abs(nodes[i] - nodes[j]) <= 1e-13 * std::max({1.0, std::abs(nodes[i]), std::abs(nodes[j])}))
                fail(ErrorCode::DegenerateNodes, "vandermonde_solve: nodes " + std::to_string(j) + " and " +
                                                     std::to_string(i) + " coincide");
    CMatrix V(rows, n);
    for (int i = 0; i < n; ++i) {
        cplx p = 1.0;
        for (int j = 0; j < rows; ++j) {
            V(j, i) = p;
            p *= nodes[i];
        }
    }
    CVector b(rows);
    for (int j = 0; j < rows; ++j)
        b(j) = rhs[j];
    return solve_dense(V, b);
}

CVector solve_dense(const CMatrix& A, const CVector& b)
{
    if (A.rows() < A.cols() || A.rows() != b.size())
        fail(ErrorCode::InvalidArgument, "solve_dense: need rows >= cols and matching rhs");
    if (A.rows() == A.cols()) {
        Eigen::FullPivLU<CMatrix> lu(A);
        if (!lu.isInvertible())
            fail(ErrorCode::DegenerateNodes, "solve_dense: singular coefficient matrix");
        return lu.solve(b);
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(A);
    if (qr.rank() < A.cols())
        fail(ErrorCode::DegenerateNodes, "solve_dense: rank deficient coefficient matrix");
    return qr.solve(b);
}

double correlation(const CVector& v, const CVector& w)
{
    double d = v.norm() * w.norm();
    if (d == 0.0)
        return 0.0;
    return std::abs(v.dot(w)) / d;
}

}  // namespace sparsefit
