#pragma once

// Shared helpers for the unit, property and acceptance tests. Nothing in here
// calls into the code under test except to build inputs.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "sparsefit/analyzers.hpp"
#include "sparsefit/multivariate.hpp"

namespace testing {

using namespace sparsefit;

constexpr double pi = std::numbers::pi;

inline double max_rel_err(const CMatrix& got, const CMatrix& want)
{
    double scale = want.cwiseAbs().maxCoeff();
    return (got - want).cwiseAbs().maxCoeff() / (scale > 0.0 ? scale : 1.0);
}

inline double rel_err(cplx got, cplx want)
{
    double s = std::abs(want);
    return std::abs(got - want) / (s > 0.0 ? s : 1.0);
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed * 7919 + 17) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
    double sign() { return integer(0, 1) ? 1.0 : -1.0; }
    // coefficient with magnitude in [0.5, 2]
    double coeff() { return sign() * uniform(0.5, 2.0); }
};

// n values from draw() whose images under key() are pairwise separated by gap
// and which all pass ok(). Gives up after many rejections (returns fewer).
template <class T>
std::vector<T> separated(int n, const std::function<T()>& draw, const std::function<double(const T&, const T&)>& dist,
                         double gap, const std::function<bool(const T&)>& ok = nullptr)
{
    std::vector<T> out;
    for (int tries = 0; int(out.size()) < n && tries < 100000; ++tries) {
        T x = draw();
        if (ok && !ok(x))
            continue;
        bool far = std::all_of(out.begin(), out.end(), [&](const T& y) { return dist(x, y) >= gap; });
        if (far)
            out.push_back(x);
    }
    return out;
}

// Matches each true term to the nearest recovered one and returns the worst
// relative error over parameters and coefficients (1 when counts differ).
inline double model_error(const SparseModel& got, const SparseModel& truth)
{
    if (got.terms.size() != truth.terms.size())
        return 1.0;
    std::vector<bool> used(got.terms.size(), false);
    double worst = 0.0;
    for (const auto& t : truth.terms) {
        std::size_t best = got.terms.size();
        double bd = 0.0;
        for (std::size_t i = 0; i < got.terms.size(); ++i) {
            if (used[i])
                continue;
            double d;
            if (is_integer_family(truth.family))
                d = std::abs(double(got.terms[i].m - t.m));
            else if (is_multivariate(truth.family)) {
                d = 0.0;
                for (std::size_t k = 0; k < t.phi_vec.size(); ++k)
                    d += std::abs(got.terms[i].phi_vec[k] - t.phi_vec[k]);
            } else
                d = std::abs(got.terms[i].phi - t.phi);
            if (best == got.terms.size() || d < bd) {
                best = i;
                bd = d;
            }
        }
        used[best] = true;
        const Term& g = got.terms[best];
        if (is_integer_family(truth.family)) {
            if (g.m != t.m)
                return 1.0;
        } else if (is_multivariate(truth.family)) {
            double diff = 0.0, norm = 0.0;
            for (std::size_t k = 0; k < t.phi_vec.size(); ++k) {
                diff += std::norm(g.phi_vec[k] - t.phi_vec[k]);
                norm += std::norm(t.phi_vec[k]);
            }
            worst = std::max(worst, std::sqrt(diff / norm));
        } else {
            worst = std::max(worst, rel_err(g.phi, t.phi));
        }
        worst = std::max(worst, rel_err(g.alpha, t.alpha));
        if (truth.family == Family::PhaseSine)
            worst = std::max(worst, std::abs(g.psi - t.psi));
    }
    return worst;
}

}  // namespace testing
