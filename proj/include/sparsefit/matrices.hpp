#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sparsefit/sampling.hpp"

namespace sparsefit {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct Pencil {
    CMatrix A;
    CMatrix B;
    Family family = Family::Exponential;
    std::string labels;
};

// Storage is 0-based. Hankel/Toeplitz/cosine entries (k, l) with k, l = 0..n-1.
// The sine matrix stores its 1-based row k = 1..n at storage row k-1.

CMatrix build_hankel(const Series& f, int sigma, long tau, int n);
CMatrix build_toeplitz(const Series& f, int sigma, long tau, int n);
CMatrix build_cosine_matrix(const Series& f, int sigma, long tau, int n);
CMatrix build_sine_matrix(const Series& f, int sigma, long tau, int n);

CMatrix build_hankel(const SampleSet& s, int sigma, long tau, int n);
CMatrix build_toeplitz(const SampleSet& s, int sigma, long tau, int n);
CMatrix build_cosine_matrix(const SampleSet& s, int sigma, long tau, int n);
CMatrix build_sine_matrix(const SampleSet& s, int sigma, long tau, int n);

// (J, K^tau) with 1-based indices k, l = 1..n; K uses the spread auxiliary series.
std::pair<CMatrix, CMatrix> build_spread_matrices(const Series& f, int sigma, long tau, int n);

// Hankel in an auxiliary series: entry (k, l) = F(k + l + offset), F indexed by j.
CMatrix build_aux_hankel(const std::function<cplx(long)>& F, int n, long offset = 0);

// F(j) = F_{tau + j sigma} of the gaussian transform
CMatrix build_gauss_hankel(const std::function<cplx(long)>& F, int n);

// Hankel of the gamma series with offset k: entry (r, c) = F[k + r + c]
CMatrix build_gamma_hankel(const std::vector<cplx>& F, int k, int n);

// Hankel of one multivariate line: entry (r, c) = f_line((r + c) sigma + offset)
CMatrix build_multivariate_hankel(const Series& line, int sigma, int n, long offset = 0);

// row-major "re,im" pairs, one matrix row per line
std::string dump_matrix_csv(const CMatrix& m);

}  // namespace sparsefit
