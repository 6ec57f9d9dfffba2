#pragma once

#include <vector>

#include "sparsefit/matrices.hpp"

namespace sparsefit {

struct OrderEstimate {
    int n = 0;
    double gap_ratio = 0.0;          // s_n / s_{n+1}; infinity when s_{n+1} is zero or absent
    std::vector<double> profile;     // singular values of the last matrix examined
    int nu = 0;                      // size of that matrix
    bool weak_gap = false;           // gap_ratio < 1e3
};

constexpr double default_order_threshold = 1e-10;

// The nu x nu structured matrix whose rank equals the number of terms:
// H (exponential), C (cosine kinds), B (sine kinds), J (spread), G (gaussian),
// the gamma Hankel, or the line-1 Hankel for multivariate data.
CMatrix order_matrix(const SampleSet& samples, Family f, int nu);

// Grows nu from 1 and stops once the rank stays put for two consecutive sizes
// (or at nu_max). With full_profile the final profile is taken at nu_max.
OrderEstimate estimate_order(const SampleSet& samples, Family f, int nu_max,
                             double threshold = default_order_threshold, bool full_profile = false);

OrderEstimate rank_from_profile(const std::vector<double>& sv, double threshold);

}  // namespace sparsefit
