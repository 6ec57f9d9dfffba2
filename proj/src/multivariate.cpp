#include "sparsefit/multivariate.hpp"

#include <cmath>
#include <numbers>

namespace sparsefit {

namespace {

void check_collisions(const std::vector<cplx>& lam)
{
    double scale = 0.0;
    for (auto z : lam)
        scale = std::max(scale, std::abs(z));
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::size_t j = i + 1; j < lam.size(); ++j)
            if (std::abs(lam[i] - lam[j]) <= 1e-8 * scale)
                fail(ErrorCode::CollisionDetected, "projected eigenvalues " + std::to_string(i) + " and " +
                                                       std::to_string(j) +
                                                       " coincide; change delta_vec or the scale factor");
}

const SampleSet& line_of(const MultiSampleSet& data, int k)
{
    auto it = data.lines.find(k);
    if (it == data.lines.end())
        fail(ErrorCode::MissingSample, "no samples on line " + std::to_string(k));
    return it->second;
}

void finalize_multi(RecoveryResult& r, const MultiSampleSet& data, const std::map<int, std::set<long>>& used)
{
    r.consumed.clear();
    double worst = 0.0;
    for (const auto& [line, idx] : used)
        for (long i : idx) {
            r.consumed.push_back({line, i});
            auto x = multi_location(r.model.family, data.scheme, line, i);
            worst = std::max(worst, std::abs(evaluate_multivariate(r.model, x) - data.at(line, i)));
        }
    r.residual_max = worst;
}

std::vector<cplx> vec(const CVector& v) { return std::vector<cplx>(v.data(), v.data() + v.size()); }

}  // namespace

std::vector<cplx> solve_direction_system(const Eigen::MatrixXd& rows, const std::vector<cplx>& rhs,
                                         std::vector<std::string>* warnings)
{
    if (rows.rows() != rows.cols() || std::size_t(rows.rows()) != rhs.size())
        fail(ErrorCode::DimensionMismatch, "direction system must be d x d with d right-hand sides");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(sv.size() - 1) > 1e-13 * sv(0)))
        fail(ErrorCode::DependentDirections, "sampling directions are linearly dependent");
    const double cond = sv(0) / sv(sv.size() - 1);
    if (cond > 1e8 && warnings)
        warnings->push_back("direction system is ill-conditioned (cond " + std::to_string(cond) + ")");
    CVector b(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i)
        b(i) = rhs[i];
    Eigen::FullPivLU<CMatrix> lu(rows.cast<cplx>());
    return vec(lu.solve(b));
}

RecoveryResult analyze_multi_exponential(const MultiSampleSet& data, int n, const AnalyzerOptions& opt)
{
    if (n < 1)
        fail(ErrorCode::InvalidArgument, "number of terms must be >= 1");
    const SamplingScheme& s = data.scheme;
    validate(s, Family::MultiExponential);
    const int d = s.dim, sig = s.sigma;
    if (sig > 1 && s.tau == 0)
        fail(ErrorCode::InvalidArgument, "sigma > 1 needs a nonzero shift tau on line 1");

    RecoveryResult r;
    r.model.family = Family::MultiExponential;
    r.model.dim = d;
    r.order_estimate = n;

    std::map<int, std::set<long>> used;
    SampleView v1(line_of(data, 1), Family::MultiExponential);
    Series g1 = v1.series();
    r.pencil = {build_multivariate_hankel(g1, sig, n, sig), build_multivariate_hankel(g1, sig, n, 0),
                Family::MultiExponential, "line 1: A = H(sigma, tau=sigma), B = H(sigma, tau=0)"};
    r.cond_A = cond2(r.pencil.A);
    r.cond_B = cond2(r.pencil.B);
    EigenPairs e = generalized_eig(r.pencil, opt.tol_singular);
    r.method = e.method;
    r.eigenvalues = e.values;
    check_collisions(e.values);

    std::vector<cplx> rhs;
    for (int j = 0; j < 2 * n; ++j)
        rhs.push_back(g1(long(j) * sig));
    CVector alpha = vandermonde_solve(e.values, rhs, 2 * n);
    const double top = alpha.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i)
        if (!(std::abs(alpha(i)) > opt.tol_zero * top))
            fail(ErrorCode::ZeroCoefficient, "coefficient " + std::to_string(i) + " is numerically zero");

    // projections onto delta_vec and each shift vector, one row per term
    std::vector<std::vector<cplx>> proj(n, std::vector<cplx>(d));
    if (sig == 1) {
        for (int i = 0; i < n; ++i)
            proj[i][0] = std::log(e.values[i]);
    } else {
        std::vector<cplx> rt;
        for (int j = 0; j < n; ++j)
            rt.push_back(g1(s.tau + long(j) * sig));
        CVector beta = vandermonde_solve(e.values, rt, n);
        for (int i = 0; i < n; ++i) {
            r.shifted_values.push_back(beta(i) / alpha(i));
            proj[i][0] = exp_resolve(e.values[i], beta(i) / alpha(i), sig, s.tau, 1.0, opt.tol_match);
        }
    }
    used[1] = v1.consumed();

    for (int k = 2; k <= d; ++k) {
        SampleView vk(line_of(data, k), Family::MultiExponential);
        std::vector<cplx> rk;
        for (int j = 0; j < n; ++j)
            rk.push_back(vk(long(j) * sig));
        CVector beta = vandermonde_solve(e.values, rk, n);
        for (int i = 0; i < n; ++i) {
            cplx q = beta(i) / alpha(i);
            if (std::abs(std::log(q).imag()) > std::numbers::pi - 1e-9)
                r.log.push_back("shift projection on line " + std::to_string(k) + " is at the branch cut");
            proj[i][k - 1] = std::log(q);
        }
        used[k] = vk.consumed();
    }

    Eigen::MatrixXd rows(d, d);
    for (int c = 0; c < d; ++c)
        rows(0, c) = s.delta_vec[c];
    for (int k = 2; k <= d; ++k)
        for (int c = 0; c < d; ++c)
            rows(k - 1, c) = s.shift_vecs[k - 2][c];
    for (int i = 0; i < n; ++i) {
        Term t;
        t.alpha = alpha(i);
        t.phi_vec = solve_direction_system(rows, proj[i], &r.log);
        r.model.terms.push_back(t);
        r.ambiguity_log.push_back(1);
    }
    finalize_multi(r, data, used);
    return r;
}

RecoveryResult analyze_multi_gaussian(const MultiSampleSet& data, int n, const AnalyzerOptions& opt)
{
    if (n < 1)
        fail(ErrorCode::InvalidArgument, "number of terms must be >= 1");
    const SamplingScheme& s = data.scheme;
    validate(s, Family::MultiGaussian);
    const int d = s.dim;

    RecoveryResult r;
    r.model.family = Family::MultiGaussian;
    r.model.dim = d;
    r.order_estimate = n;

    std::vector<double> sd(d);   // sigma (.) delta
    double sd2 = 0.0;
    for (int c = 0; c < d; ++c) {
        sd[c] = (s.sigma_vec.empty() ? 1.0 : double(s.sigma_vec[c])) * s.delta_vec[c];
        sd2 += sd[c] * sd[c];
    }

    std::map<int, std::set<long>> used;
    SampleView v1(line_of(data, 1), Family::MultiGaussian);
    auto F1 = [&](long j) { return std::exp(double(j * j) * sd2) * v1(j); };
    r.pencil = {build_aux_hankel(F1, n, 1), build_aux_hankel(F1, n, 0), Family::MultiGaussian,
                "line 1: A = G(sigma, tau=sigma) scaled, B = G(sigma, tau=0)"};
    r.cond_A = cond2(r.pencil.A);
    r.cond_B = cond2(r.pencil.B);
    EigenPairs e = generalized_eig(r.pencil, opt.tol_singular);
    r.method = e.method;
    r.eigenvalues = e.values;
    check_collisions(e.values);

    std::vector<cplx> rhs;
    for (int j = 0; j < 2 * n; ++j)
        rhs.push_back(F1(j));
    CVector c0 = vandermonde_solve(e.values, rhs, 2 * n);
    const double top = c0.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i)
        if (!(std::abs(c0(i)) > opt.tol_zero * top))
            fail(ErrorCode::ZeroCoefficient, "coefficient " + std::to_string(i) + " is numerically zero");

    std::vector<std::vector<cplx>> proj(n, std::vector<cplx>(d));
    for (int i = 0; i < n; ++i)
        proj[i][0] = 0.5 * std::log(e.values[i]);
    used[1] = v1.consumed();

    Eigen::MatrixXd rows(d, d);
    for (int c = 0; c < d; ++c)
        rows(0, c) = sd[c];
    for (int k = 2; k <= d; ++k) {
        std::vector<double> td(d);
        double td2 = 0.0, cross = 0.0;
        for (int c = 0; c < d; ++c) {
            td[c] = s.shift_vecs[k - 2][c] * s.delta_vec[c];
            td2 += td[c] * td[c];
            cross += td[c] * sd[c];
            rows(k - 1, c) = td[c];
        }
        SampleView vk(line_of(data, k), Family::MultiGaussian);
        std::vector<cplx> rk;
        for (int j = 0; j < n; ++j)
            rk.push_back(std::exp(2.0 * double(j) * cross + double(j * j) * sd2) * vk(j));
        CVector ct = vandermonde_solve(e.values, rk, n);
        for (int i = 0; i < n; ++i)
            proj[i][k - 1] = 0.5 * std::log(std::exp(td2) * ct(i) / c0(i));
        used[k] = vk.consumed();
    }

    for (int i = 0; i < n; ++i) {
        Term t;
        t.phi_vec = solve_direction_system(rows, proj[i], &r.log);
        cplx norm2 = 0.0;
        for (auto p : t.phi_vec)
            norm2 += p * p;
        t.alpha = c0(i) * std::exp(norm2);
        r.model.terms.push_back(t);
        r.ambiguity_log.push_back(1);
    }
    finalize_multi(r, data, used);
    return r;
}

std::map<int, std::vector<long>> required_multi_indices(Family f, const SamplingScheme& s, int n)
{
    if (!is_multivariate(f))
        fail(ErrorCode::InvalidArgument, "required_multi_indices expects a multivariate family");
    std::map<int, std::vector<long>> out;
    const long step = f == Family::MultiExponential ? s.sigma : 1;
    std::set<long> first;
    for (long j = 0; j < 2 * n; ++j)
        first.insert(j * step);
    if (f == Family::MultiExponential && s.sigma > 1)
        for (long j = 0; j < n; ++j)
            first.insert(s.tau + j * step);
    out[1] = std::vector<long>(first.begin(), first.end());
    for (int k = 2; k <= s.dim; ++k)
        for (long j = 0; j < n; ++j)
            out[k].push_back(j * step);
    return out;
}

}  // namespace sparsefit
