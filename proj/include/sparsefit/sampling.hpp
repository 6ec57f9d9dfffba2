#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sparsefit/model.hpp"

namespace sparsefit {

struct SamplingScheme {
    double delta = 1.0;
    int sigma = 1;
    long tau = 0;
    std::optional<double> R;              // frequency bound; defaults to pi/delta
    std::optional<long> M;                // degree bound for Chebyshev / spread
    double width = 1.0;                   // gaussian 2w^2, fixed and known
    // Gamma samples live on tau + delta + j with complex tau and delta
    std::optional<cplx> complex_delta;
    cplx complex_tau{0.0, 0.0};
    // multivariate
    int dim = 1;
    std::vector<double> delta_vec;
    std::vector<std::vector<double>> shift_vecs;   // tau^(2..d)
    std::vector<long> sigma_vec;                   // MultiGaussian integer scale vector

    double bound() const;
    long degree_bound(Family f) const;             // M, or the largest admissible one for delta
    cplx gamma_delta() const { return complex_delta.value_or(cplx(delta, 0.0)); }
};

// Throws InvalidArgument for nonpositive delta, sigma < 1, gcd(sigma,|tau|) != 1,
// or inconsistent multivariate vectors.
void validate(const SamplingScheme& s, Family f);

class SampleSet {
public:
    SampleSet() = default;
    explicit SampleSet(SamplingScheme scheme) : scheme_(std::move(scheme)) {}

    void set(long index, cplx value) { values_[index] = value; }
    bool has(long index) const { return values_.count(index) != 0; }
    cplx at(long index) const;     // MissingSample when absent
    const std::map<long, cplx>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    const SamplingScheme& scheme() const { return scheme_; }
    SamplingScheme& scheme() { return scheme_; }

    std::map<std::string, std::vector<cplx>> meta;

private:
    SamplingScheme scheme_;
    std::map<long, cplx> values_;
};

// Samples on d-variate lines; line 1 passes through the origin, line k through tau^(k).
struct MultiSampleSet {
    SamplingScheme scheme;
    std::map<int, SampleSet> lines;
    cplx at(int line, long index) const;
};

using Series = std::function<cplx(long)>;

enum class Parity { None, Even, Odd };
Parity parity_of(Family f);

// Read-only view that folds negative indices through the family's symmetry and
// records which raw samples were actually read.
class SampleView {
public:
    SampleView(const SampleSet& samples, Family f);
    cplx operator()(long index);
    const std::set<long>& consumed() const { return consumed_; }
    Series series() { return [this](long i) { return (*this)(i); }; }

private:
    const SampleSet& samples_;
    Parity parity_;
    bool zero_at_origin_;
    std::set<long> consumed_;
};

struct GridPoint {
    long index;
    cplx location;
};

cplx location_of(Family f, const SamplingScheme& s, long index);

// Locations for the indices tau + j*sigma, j in [j_begin, j_end].
std::vector<GridPoint> grid_points(Family f, const SamplingScheme& s, long j_begin, long j_end);

std::vector<double> multi_location(Family f, const SamplingScheme& s, int line, long index);

// F_{tau + j sigma} for the family; sinc returns the premultiplied value (tau+j sigma) delta f.
cplx aux_transform(Family f, const Series& samples, int sigma, long tau, long j, double delta);

// F_{tau,0..depth}: sample p sits at tau + delta + p.
std::vector<cplx> gamma_transform(const Series& samples, cplx tau, cplx delta, int depth);
std::vector<cplx> gamma_transform(const SampleSet& samples, cplx tau, int depth);

struct NoiseSpec {
    double sd = 0.0;
    std::uint64_t seed = 0;
};

SampleSet simulate(const SparseModel& model, const SamplingScheme& scheme,
                   const std::vector<long>& indices, const NoiseSpec& noise = {});

MultiSampleSet simulate_multi(const SparseModel& model, const SamplingScheme& scheme,
                              const std::map<int, std::vector<long>>& indices,
                              const NoiseSpec& noise = {});

}  // namespace sparsefit
