#pragma once

#include <string>
#include <vector>

#include "sparsefit/matrices.hpp"

namespace sparsefit {

struct EigenPairs {
    std::vector<cplx> values;
    std::vector<CVector> vectors;      // unit 2-norm right eigenvectors
    std::vector<double> residuals;     // ||A v - lambda B v||_2
    std::string method;                // "cholesky" (symmetric definite) or "qz"
    std::vector<std::string> warnings;
};

// Symmetric/Hermitian pencils with positive definite B go through the Cholesky
// reduction, everything else through QZ. Values sorted by descending modulus,
// ties by argument.
EigenPairs generalized_eig(const Pencil& pencil, double tol = 1e-10);

std::vector<double> singular_values(const CMatrix& m);

double cond2(const CMatrix& m);

// Least-squares solution of sum_i c_i z_i^j = rhs_j for j = 0..rows-1.
CVector vandermonde_solve(const std::vector<cplx>& nodes, const std::vector<cplx>& rhs, int rows);

// Square or overdetermined dense solve; DegenerateNodes when rank deficient.
CVector solve_dense(const CMatrix& A, const CVector& b);

// |<v, w>| / (||v|| ||w||)
double correlation(const CVector& v, const CVector& w);

}  // namespace sparsefit
