#pragma once

#include <map>
#include <string>
#include <vector>

#include "sparsefit/analyzers.hpp"

namespace sparsefit {

// Line 1 runs through the origin along delta_vec (scaled by sigma); line k >= 2
// is shifted by shift_vecs[k-2]. Uses (d+1)n samples when sigma = 1.
RecoveryResult analyze_multi_exponential(const MultiSampleSet& data, int n, const AnalyzerOptions& opt = {});

// Unit weights; sampling at (tau^(k) + j sigma_vec) (.) delta_vec with integer tau^(k).
RecoveryResult analyze_multi_gaussian(const MultiSampleSet& data, int n, const AnalyzerOptions& opt = {});

// Solves rows * phi = rhs for one term. DependentDirections when rows are singular;
// a warning is appended when the condition number exceeds 1e8.
std::vector<cplx> solve_direction_system(const Eigen::MatrixXd& rows, const std::vector<cplx>& rhs,
                                         std::vector<std::string>* warnings = nullptr);

std::map<int, std::vector<long>> required_multi_indices(Family f, const SamplingScheme& s, int n);

}  // namespace sparsefit
