#include "sparsefit/analyzers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pipeline.hpp"

namespace sparsefit {

using detail::Pipeline;
using std::numbers::pi;

namespace {

void check_n(int n)
{
    if (n < 1)
        fail(ErrorCode::InvalidArgument, "number of terms must be >= 1");
}

double safe_cond(const CMatrix& m)
{
    try {
        return cond2(m);
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

long fold(Family f, long i) { return parity_of(f) == Parity::None ? i : std::labs(i); }

std::string join(const std::vector<long>& v)
{
    std::ostringstream os;
    for (std::size_t k = 0; k < v.size(); ++k)
        os << (k ? "," : "") << v[k];
    return os.str();
}

[[noreturn]] void need_more(const SampleSet& samples, const std::vector<long>& wanted, const std::string& why)
{
    std::vector<long> missing;
    for (long i : wanted)
        if (!samples.has(i))
            missing.push_back(i);
    fail(ErrorCode::NeedsMoreSamples,
         why + (missing.empty() ? std::string() : "; missing indices " + join(missing)), missing);
}

EigenPairs solve_pencil(RecoveryResult& r, CMatrix A, CMatrix B, Family f, std::string labels,
                        const AnalyzerOptions& opt)
{
    r.cond_A = safe_cond(A);
    r.cond_B = safe_cond(B);
    r.pencil = {std::move(A), std::move(B), f, std::move(labels)};
    EigenPairs e = generalized_eig(r.pencil, opt.tol_singular);
    r.method = e.method;
    const double nA = singular_values(r.pencil.A).front();
    const double nB = singular_values(r.pencil.B).front();
    for (std::size_t i = 0; i < e.values.size(); ++i)
        if (e.residuals[i] > opt.tol_pencil * (nA + std::abs(e.values[i]) * nB))
            r.log.push_back("pencil residual " + std::to_string(e.residuals[i]) + " above tolerance for eigenvalue " +
                            std::to_string(i));
    for (const auto& w : e.warnings)
        r.log.push_back(w);
    r.eigenvalues = e.values;
    return e;
}

void finalize(RecoveryResult& r, const SampleSet& samples, const std::set<long>& consumed)
{
    std::vector<long> idx(consumed.begin(), consumed.end());
    r.consumed.clear();
    for (long i : idx)
        r.consumed.push_back({0, i});
    try {
        SampleSet sim = simulate(r.model, samples.scheme(), idx);
        double worst = 0.0;
        for (long i : idx)
            worst = std::max(worst, std::abs(sim.at(i) - samples.at(i)));
        r.residual_max = worst;
    } catch (const Error& e) {
        r.residual_max = std::numeric_limits<double>::quiet_NaN();
        r.log.push_back(std::string("residual not available: ") + e.what());
    }
}

void check_alpha(const CVector& alpha, double tol)
{
    const double top = alpha.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < alpha.size(); ++i)
        if (!(std::abs(alpha(i)) > tol * top))
            fail(ErrorCode::ZeroCoefficient,
                 "coefficient " + std::to_string(i) + " is numerically zero; the shift quotient is undefined");
}

void require_shift(const SamplingScheme& s)
{
    if (s.sigma > 1 && s.tau == 0)
        fail(ErrorCode::InvalidArgument, "sigma > 1 needs a nonzero shift tau");
}

std::vector<double> real_parts(const std::vector<cplx>& v, RecoveryResult& r, const char* what)
{
    std::vector<double> out;
    for (auto z : v) {
        if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z)))
            r.log.push_back(std::string(what) + " has a significant imaginary part; using the real part");
        out.push_back(z.real());
    }
    return out;
}

// cos(x) values must lie in [-1, 1]; the complex acos keeps complex parameters at sigma = 1
cplx acos_param(cplx lam)
{
    if (lam.imag() == 0.0 && std::abs(lam.real()) <= 1.0 + 1e-12)
        return std::acos(std::clamp(lam.real(), -1.0, 1.0));
    return std::acos(lam);
}

cplx acosh_param(cplx lam, bool aliased)
{
    const bool real_ok = std::abs(lam.imag()) <= 1e-9 * std::max(1.0, std::abs(lam)) && lam.real() >= 1.0 - 1e-12;
    if (real_ok)
        return std::acosh(std::max(lam.real(), 1.0));
    if (aliased)
        fail(ErrorCode::HyperbolicAlias,
             "hyperbolic eigenvalue is not real and >= 1; complex parameters need sigma = 1");
    return std::acosh(lam);
}

// Candidate machinery shared by the cosine and sine pipelines.
struct Resolver {
    Family family;
    const SamplingScheme& s;
    const AnalyzerOptions& opt;
    RecoveryResult& r;

    long rho() const { return opt.rho.value_or(long(s.sigma) + s.tau); }

    std::set<long> degrees(double C, long scale) const
    {
        if (family == Family::Spread)
            return integer_snap(
                spread_candidates(C, scale, s.degree_bound(family), s.delta, opt.tol_snap, opt.tol_verify),
                s.degree_bound(family), 0.5);
        return cos_degrees(C, scale, s.degree_bound(family), s.delta, detail::degree_offset(family), opt.tol_snap,
                           opt.tol_verify);
    }

    // The value a degree produces at the given scale, in the same form as the pencil output.
    double value_at(long m, long scale) const
    {
        const double x = (double(m) + detail::degree_offset(family)) * double(scale) * s.delta;
        if (family == Family::Spread)
            return std::sin(x) * std::sin(x);
        return std::cos(x);
    }

    // Snapping the rho progression is unreliable (its spacing is not an integer), so the
    // surviving degrees are evaluated directly and the closest one wins.
    long pick_by_value(const std::vector<long>& pair, double C, long scale) const
    {
        std::vector<std::pair<double, long>> d;
        for (long m : pair)
            d.emplace_back(std::abs(value_at(m, scale) - C), m);
        std::sort(d.begin(), d.end());
        if (d.size() > 1 && d[1].first - d[0].first <= opt.tol_match)
            fail(ErrorCode::StillAmbiguous, "degrees " + std::to_string(d[0].second) + " and " +
                                                std::to_string(d[1].second) + " agree at the third value");
        return d.front().second;
    }

    // Unaliased values for every term; third() computes the rho evaluations on demand.
    std::vector<double> run(const std::vector<double>& lam, const std::vector<double>& ctau,
                            const std::function<std::vector<double>()>& third)
    {
        const std::size_t n = lam.size();
        std::vector<double> out(n, 0.0);
        std::vector<std::size_t> pending;
        const bool integer = is_integer_family(family);
        std::vector<std::set<long>> S(n), T(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (integer) {
                S[i] = degrees(lam[i], s.sigma);
                if (S[i].empty())
                    fail(ErrorCode::NonIntegerCandidate,
                         "no integer degree matches eigenvalue " + std::to_string(lam[i]));
                if (s.sigma == 1) {
                    if (S[i].size() > 1)
                        fail(ErrorCode::StillAmbiguous, "several degrees match at sigma = 1; check the bound M");
                    out[i] = double(*S[i].begin());
                    r.ambiguity_log.push_back(1);
                    continue;
                }
                T[i] = degrees(ctau[i], s.tau);
                if (T[i].empty())
                    fail(ErrorCode::NonIntegerCandidate,
                         "no integer degree matches shifted value " + std::to_string(ctau[i]));
                IntegerResolution res = integer_resolve(S[i], T[i]);
                r.ambiguity_log.push_back(res.pair_size);
                if (res.needs_third)
                    pending.push_back(i);
                else
                    out[i] = double(res.survivors.front());
            } else {
                CosResolution res = cos_resolve(lam[i], ctau[i], s.sigma, s.tau, s.bound(), std::nullopt,
                                                std::nullopt, s.delta, opt.tol_match);
                r.ambiguity_log.push_back(res.pair_size);
                if (res.needs_third)
                    pending.push_back(i);
                else
                    out[i] = res.value();
            }
        }
        if (pending.empty())
            return out;

        std::vector<double> crho = third();
        r.escalated = true;
        r.rho = rho();
        r.rho_values.assign(crho.begin(), crho.end());
        r.log.push_back("two candidates survived for " + std::to_string(pending.size()) +
                        " term(s); resolved with rho = " + std::to_string(r.rho));
        for (std::size_t i : pending) {
            if (integer) {
                out[i] = double(pick_by_value(integer_resolve(S[i], T[i]).survivors, crho[i], r.rho));
            } else {
                auto res = cos_resolve(lam[i], ctau[i], s.sigma, s.tau, s.bound(), crho[i], r.rho, s.delta,
                                       opt.tol_match);
                out[i] = res.value();
            }
        }
        return out;
    }
};

// Wraps the third-value computation so missing samples turn into a request for them.
std::function<std::vector<double>()> guarded_third(const SampleSet& samples, Family f, int n,
                                                   const AnalyzerOptions& opt,
                                                   std::function<std::vector<double>()> compute)
{
    return [&samples, f, n, &opt, compute]() {
        SamplingScheme sc = samples.scheme();
        auto wanted = required_indices(f, sc, n, true);
        if (opt.rho) {
            // custom rho: no closed layout, ask for whatever the computation touches
            wanted.clear();
        }
        if (!opt.allow_escalation)
            need_more(samples, wanted, "two candidates survive and escalation is disabled");
        try {
            return compute();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::MissingSample)
                throw;
            if (wanted.empty())
                wanted = e.indices();
            need_more(samples, wanted, "two candidates survive; the third value needs more samples");
        }
    };
}

CMatrix node_matrix(const std::vector<cplx>& nodes, int first_row, int rows,
                    const std::function<cplx(long j, cplx node)>& basis)
{
    CMatrix W(rows, nodes.size());
    for (int j = 0; j < rows; ++j)
        for (std::size_t i = 0; i < nodes.size(); ++i)
            W(j, i) = basis(first_row + j, nodes[i]);
    return W;
}

CVector series_vector(const Series& g, int first, int rows, int sigma)
{
    CVector b(rows);
    for (int j = 0; j < rows; ++j)
        b(j) = g(long(first + j) * sigma);
    return b;
}

cplx cheb_t(long j, cplx x) { return chebyshev_t_rec(j, x); }

RecoveryResult base_result(Family f, int n)
{
    RecoveryResult r;
    r.model.family = f;
    r.order_estimate = n;
    return r;
}

// Cos, cosh, Chebyshev T and V
RecoveryResult run_cosine(const SampleSet& samples, Family f, int n, const AnalyzerOptions& opt)
{
    check_n(n);
    const SamplingScheme& s = samples.scheme();
    validate(s, f);
    const bool hyper = f == Family::Cosh;
    if (!hyper)
        require_shift(s);
    SampleView view(samples, f);
    Series g = detail::family_series(f, view, s);
    const int sig = s.sigma;

    RecoveryResult r = base_result(f, n);
    EigenPairs e = solve_pencil(r, build_cosine_matrix(g, sig, sig, n), build_cosine_matrix(g, sig, 0, n), f,
                                "A = C(sigma, tau=sigma), B = C(sigma, tau=0)", opt);
    const auto& lam = e.values;
    CVector b = series_vector(g, 0, 2 * n, sig);
    CVector alpha = solve_dense(node_matrix(lam, 0, 2 * n, cheb_t), b);

    auto shifted = [&](long shift) {
        CVector F(n);
        for (int j = 0; j < n; ++j)
            F(j) = aux_transform(f, g, sig, shift, j, s.delta);
        CVector beta = solve_dense(node_matrix(lam, 0, n, cheb_t), F);
        std::vector<double> q;
        for (int i = 0; i < n; ++i)
            q.push_back((beta(i) / alpha(i)).real());
        return q;
    };

    if (hyper) {
        for (int i = 0; i < n; ++i) {
            cplx phi = acosh_param(lam[i], sig > 1) / (double(sig) * s.delta);
            r.model.terms.push_back({alpha(i), phi});
            r.ambiguity_log.push_back(1);
        }
        finalize(r, samples, view.consumed());
        return r;
    }

    if (sig == 1 && !is_chebyshev(f)) {
        for (int i = 0; i < n; ++i) {
            r.model.terms.push_back({alpha(i), acos_param(lam[i]) / s.delta});
            r.ambiguity_log.push_back(1);
        }
        finalize(r, samples, view.consumed());
        return r;
    }

    std::vector<double> lam_re = real_parts(lam, r, "eigenvalue");
    std::vector<double> ctau;
    if (sig > 1) {
        check_alpha(alpha, opt.tol_zero);
        ctau = shifted(s.tau);
        r.shifted_values.assign(ctau.begin(), ctau.end());
    }
    Resolver res{f, s, opt, r};
    auto third = guarded_third(samples, f, n, opt, [&] { return shifted(res.rho()); });
    std::vector<double> vals = res.run(lam_re, ctau, third);

    if (is_chebyshev(f)) {
        // exact nodes once the degrees are known
        const double off = detail::degree_offset(f);
        std::vector<cplx> nodes;
        for (double m : vals)
            nodes.push_back(std::cos((m + off) * sig * s.delta));
        CVector a = solve_dense(node_matrix(nodes, 0, 2 * n, cheb_t), b);
        for (int i = 0; i < n; ++i) {
            Term t;
            t.alpha = a(i);
            t.m = long(vals[i]);
            r.model.terms.push_back(t);
        }
    } else {
        for (int i = 0; i < n; ++i)
            r.model.terms.push_back({alpha(i), vals[i]});
    }
    finalize(r, samples, view.consumed());
    return r;
}

// Sin, sinh, sinc, Chebyshev U and W
RecoveryResult run_sine(const SampleSet& samples, Family f, int n, const AnalyzerOptions& opt)
{
    check_n(n);
    const SamplingScheme& s = samples.scheme();
    validate(s, f);
    const bool hyper = f == Family::Sinh;
    if (!hyper)
        require_shift(s);
    SampleView view(samples, f);
    Series g = detail::family_series(f, view, s);
    const int sig = s.sigma;

    RecoveryResult r = base_result(f, n);
    CMatrix B0 = build_sine_matrix(g, sig, 0, n);
    EigenPairs e = solve_pencil(r, build_sine_matrix(g, sig, sig, n), B0, f,
                                "A = B(sigma, tau=sigma), B = B(sigma, tau=0)", opt);
    const auto& lam = e.values;

    // first row of B0: sum_i (alpha_i sin(phi_i sigma delta)) T_l(lambda_i)
    CVector row = B0.row(0).transpose();
    CVector sv = solve_dense(node_matrix(lam, 0, n, cheb_t), row);

    // a_i(j) = alpha_i sin(phi_i j sigma delta) by the angle-addition recursion
    auto weights = [&](int j_max) {
        CMatrix U(j_max + 1, n);
        for (int i = 0; i < n; ++i) {
            U(0, i) = 0.0;
            for (int j = 1; j <= j_max; ++j)
                U(j, i) = U(j - 1, i) * lam[i] + chebyshev_t_rec(j - 1, lam[i]) * sv(i);
        }
        return U;
    };
    auto shifted = [&](long shift) {
        CMatrix U = weights(n).bottomRows(n);
        CVector F(n);
        for (int j = 1; j <= n; ++j)
            F(j - 1) = aux_transform(Family::Sine, g, sig, shift, j, s.delta);
        CVector c = solve_dense(U, F);
        std::vector<double> q;
        for (int i = 0; i < n; ++i)
            q.push_back(c(i).real());
        return q;
    };

    std::vector<cplx> params(n);
    if (hyper) {
        for (int i = 0; i < n; ++i) {
            params[i] = acosh_param(lam[i], sig > 1) / (double(sig) * s.delta);
            r.ambiguity_log.push_back(1);
        }
    } else if (sig == 1 && !is_chebyshev(f)) {
        for (int i = 0; i < n; ++i) {
            params[i] = acos_param(lam[i]) / s.delta;
            r.ambiguity_log.push_back(1);
        }
    } else {
        std::vector<double> lam_re = real_parts(lam, r, "eigenvalue");
        std::vector<double> ctau;
        if (sig > 1) {
            ctau = shifted(s.tau);
            r.shifted_values.assign(ctau.begin(), ctau.end());
        }
        Resolver res{f, s, opt, r};
        auto third = guarded_third(samples, f, n, opt, [&] { return shifted(res.rho()); });
        std::vector<double> vals = res.run(lam_re, ctau, third);
        for (int i = 0; i < n; ++i)
            params[i] = vals[i];
    }

    for (int i = 0; i < n; ++i) {
        const double off = detail::degree_offset(f);
        cplx arg = (params[i] + off) * double(sig) * s.delta;
        cplx den = hyper ? std::sinh(arg) : std::sin(arg);
        if (std::abs(den) < 1e-10)
            fail(ErrorCode::SinNodeZero, "sin(phi sigma delta) vanishes for term " + std::to_string(i) +
                                             "; choose a different sigma");
        cplx a = sv(i) / den;
        Term t;
        if (is_chebyshev(f)) {
            t.m = long(params[i].real());
        } else {
            t.phi = params[i];
            if (f == Family::Sinc)
                a *= params[i];
        }
        t.alpha = a;
        r.model.terms.push_back(t);
    }
    finalize(r, samples, view.consumed());
    return r;
}

}  // namespace

RecoveryResult analyze_exponential(const SampleSet& samples, int n, const AnalyzerOptions& opt)
{
    check_n(n);
    const SamplingScheme& s = samples.scheme();
    validate(s, Family::Exponential);
    require_shift(s);
    SampleView view(samples, Family::Exponential);
    Series g = view.series();
    const int sig = s.sigma;

    RecoveryResult r = base_result(Family::Exponential, n);
    EigenPairs e = solve_pencil(r, build_hankel(g, sig, sig, n), build_hankel(g, sig, 0, n), Family::Exponential,
                                "A = H(sigma, tau=sigma), B = H(sigma, tau=0)", opt);
    std::vector<cplx> rhs;
    for (int j = 0; j < 2 * n; ++j)
        rhs.push_back(g(long(j) * sig));
    CVector alpha = vandermonde_solve(e.values, rhs, 2 * n);

    if (sig > 1) {
        check_alpha(alpha, opt.tol_zero);
        std::vector<cplx> rt;
        for (int j = 0; j < n; ++j)
            rt.push_back(g(s.tau + long(j) * sig));
        CVector beta = vandermonde_solve(e.values, rt, n);
        for (int i = 0; i < n; ++i)
            r.shifted_values.push_back(beta(i) / alpha(i));
    }
    for (int i = 0; i < n; ++i) {
        cplx phi = sig == 1 ? std::log(e.values[i]) / s.delta
                            : exp_resolve(e.values[i], r.shifted_values[i], sig, s.tau, s.delta, opt.tol_match);
        r.model.terms.push_back({alpha(i), phi});
        r.ambiguity_log.push_back(1);
    }
    finalize(r, samples, view.consumed());
    return r;
}

RecoveryResult analyze_exponential_variant(const SampleSet& samples, int n, const AnalyzerOptions& opt)
{
    check_n(n);
    const SamplingScheme& s = samples.scheme();
    validate(s, Family::Exponential);
    if (s.tau == 0)
        fail(ErrorCode::InvalidArgument, "the variant pencil needs a nonzero shift tau");
    SampleView view(samples, Family::Exponential);
    Series g = view.series();
    const int sig = s.sigma;

    RecoveryResult r = base_result(Family::Exponential, n);
    EigenPairs e = solve_pencil(r, build_hankel(g, sig, s.tau, n), build_hankel(g, sig, 0, n), Family::Exponential,
                                "A = H(sigma, tau), B = H(sigma, tau=0)", opt);
    std::vector<cplx> lam_sigma(n);
    for (int i = 0; i < n; ++i) {
        if (n == 1) {
            cplx f0 = g(0);
            if (std::abs(f0) == 0.0)
                fail(ErrorCode::NearZeroVectorEntry, "f_0 vanishes; cannot form the quotient");
            lam_sigma[i] = g(sig) / f0;
            continue;
        }
        // B v_i is proportional to (1, z, z^2, ...) with z = exp(phi_i sigma delta)
        CVector u = r.pencil.B * e.vectors[i];
        cplx num = 0.0;
        double den = 0.0;
        for (int k = 0; k + 1 < n; ++k) {
            num += std::conj(u(k)) * u(k + 1);
            den += std::norm(u(k));
        }
        if (!(den > 1e-24 * u.squaredNorm()))
            fail(ErrorCode::NearZeroVectorEntry, "eigenvector image has vanishing leading entries");
        lam_sigma[i] = num / den;
    }
    const int rows = n == 1 ? 2 : 2 * n - 1;
    std::vector<cplx> rhs;
    for (int j = 0; j < rows; ++j)
        rhs.push_back(g(long(j) * sig));
    CVector alpha = vandermonde_solve(lam_sigma, rhs, rows);
    for (int i = 0; i < n; ++i) {
        r.shifted_values.push_back(e.values[i]);
        cplx phi = sig == 1 ? std::log(lam_sigma[i]) / s.delta
                            : exp_resolve(lam_sigma[i], e.values[i], sig, s.tau, s.delta, opt.tol_match);
        r.model.terms.push_back({alpha(i), phi});
        r.ambiguity_log.push_back(1);
    }
    finalize(r, samples, view.consumed());
    return r;
}

RecoveryResult analyze_cosine(const SampleSet& samples, int n, const AnalyzerOptions& opt)
{
    return run_cosine(samples, Family::Cosine, n, opt);
}

RecoveryResult analyze_sine(const SampleSet& samples, int n, const AnalyzerOptions& opt)
{
    return run_sine(samples, Family::Sine, n, opt);
}

RecoveryResult analyze_sinc(const SampleSet& samples, int n, const AnalyzerOptions& opt)
{
    return run_sine(samples, Family::Sinc, n, opt);
}

RecoveryResult analyze_hyperbolic(const SampleSet& samples, int n, Family kind, const AnalyzerOptions& opt)
{
    if (kind == Family::Cosh)
        return run_cosine(samples, kind, n, opt);
    if (kind == Family::Sinh)
        return run_sine(samples, kind, n, opt);
    fail(ErrorCode::InvalidArgument, "analyze_hyperbolic expects cosh or sinh");
}

RecoveryResult analyze_chebyshev(const SampleSet& samples, int n, Family kind, const AnalyzerOptions& opt)
{
    if (kind == Family::ChebyshevT || kind == Family::ChebyshevV)
        return run_cosine(samples, kind, n, opt);
    if (kind == Family::ChebyshevU || kind == Family::ChebyshevW)
        return run_sine(samples, kind, n, opt);
    fail(ErrorCode::InvalidArgument, "analyze_chebyshev expects a Chebyshev kind");
}

RecoveryResult analyze_phase_sine(const SampleSet& samples, int n, const AnalyzerOptions& opt)
{
    check_n(n);
    RecoveryResult r = analyze_exponential(samples, 2 * n, opt);
    const auto exps = r.model.terms;
    std::vector<bool> used(exps.size(), false);
    r.model = SparseModel{};
    r.model.family = Family::PhaseSine;
    r.order_estimate = n;
    for (std::size_t k = 0; k < exps.size(); ++k) {
        if (used[k])
            continue;
        std::size_t best = exps.size();
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < exps.size(); ++l) {
            if (l == k || used[l])
                continue;
            double d = std::abs(exps[k].phi + exps[l].phi);
            if (d < gap) {
                gap = d;
                best = l;
            }
        }
        if (best == exps.size() || gap > 1e-6 * std::max(1.0, std::abs(exps[k].phi)))
            fail(ErrorCode::PairingFailure, "exponent " + std::to_string(k) + " has no mirrored partner");
        used[k] = used[best] = true;
        // beta1 multiplies exp(+i phi t)
        const Term& p = exps[k].phi.imag() >= 0.0 ? exps[k] : exps[best];
        const Term& q = exps[k].phi.imag() >= 0.0 ? exps[best] : exps[k];
        if (std::abs(p.phi.real()) > 1e-6 * std::max(1.0, std::abs(p.phi)))
            r.log.push_back("exponent pair has a real part; the phase model assumes pure oscillation");
        const double phi = 0.5 * (p.phi.imag() - q.phi.imag());
        const cplx sum = p.alpha + q.alpha;     // -alpha sin(psi)
        const cplx diff = p.alpha - q.alpha;    // -i alpha cos(psi)
        double psi = std::atan2((-sum).real(), (cplx(0, 1) * diff).real());
        if (psi > pi / 2)
            psi -= pi;
        else if (psi <= -pi / 2)
            psi += pi;
        const double sn = std::sin(psi), cs = std::cos(psi);
        const double alpha = std::abs(sn) > std::abs(cs) ? (-sum / sn).real() : (cplx(0, 1) * diff / cs).real();
        Term t;
        t.alpha = alpha;
        t.phi = phi;
        t.psi = psi;
        r.model.terms.push_back(t);
    }
    r.ambiguity_log.assign(n, 1);
    std::set<long> consumed;
    for (const auto& c : r.consumed)
        consumed.insert(c.index);
    finalize(r, samples, consumed);
    return r;
}

RecoveryResult analyze_spread(const SampleSet& samples, int n, const AnalyzerOptions& opt)
{
    check_n(n);
    const SamplingScheme& s = samples.scheme();
    validate(s, Family::Spread);
    require_shift(s);
    SampleView view(samples, Family::Spread);
    Series g = view.series();
    const int sig = s.sigma;

    RecoveryResult r = base_result(Family::Spread, n);
    auto [J, K] = build_spread_matrices(g, sig, sig, n);
    EigenPairs e = solve_pencil(r, K, J, Family::Spread, "A = K(sigma, tau=sigma), B = J(sigma)", opt);
    const auto& lam = e.values;
    auto spread_basis = [](long j, cplx x) { return spread_rec(j, x); };
    CVector b = series_vector(g, 1, 2 * n, sig);
    CVector alpha = solve_dense(node_matrix(lam, 1, 2 * n, spread_basis), b);

    auto shifted = [&](long shift) {
        CVector F(n);
        for (int j = 1; j <= n; ++j)
            F(j - 1) = aux_transform(Family::Spread, g, sig, shift, j, s.delta);
        CVector beta = solve_dense(node_matrix(lam, 1, n, spread_basis), F);
        std::vector<double> q;
        for (int i = 0; i < n; ++i)
            q.push_back((beta(i) / alpha(i)).real());
        return q;
    };

    std::vector<double> lam_re = real_parts(lam, r, "eigenvalue");
    std::vector<double> stau;
    if (sig > 1) {
        check_alpha(alpha, opt.tol_zero);
        stau = shifted(s.tau);
        r.shifted_values.assign(stau.begin(), stau.end());
    }
    Resolver res{Family::Spread, s, opt, r};
    auto third = guarded_third(samples, Family::Spread, n, opt, [&] { return shifted(res.rho()); });
    std::vector<double> m = res.run(lam_re, stau, third);

    std::vector<cplx> nodes;
    for (double d : m)
        nodes.push_back(spread_angle(long(d), sig * s.delta));
    CVector a = solve_dense(node_matrix(nodes, 1, 2 * n, spread_basis), b);
    for (int i = 0; i < n; ++i) {
        Term t;
        t.alpha = a(i);
        t.m = long(m[i]);
        r.model.terms.push_back(t);
    }
    finalize(r, samples, view.consumed());
    return r;
}

RecoveryResult analyze_gamma(const SampleSet& samples, int n, const AnalyzerOptions& opt)
{
    check_n(n);
    const SamplingScheme& s = samples.scheme();
    validate(s, Family::Gamma);
    if (s.sigma != 1)
        fail(ErrorCode::InvalidArgument, "the gamma family has no scaled variant; use sigma = 1");
    SampleView view(samples, Family::Gamma);
    std::vector<cplx> F = gamma_transform(view.series(), s.complex_tau, s.gamma_delta(), 2 * n - 1);

    RecoveryResult r = base_result(Family::Gamma, n);
    EigenPairs e = solve_pencil(r, build_gamma_hankel(F, 1, n), build_gamma_hankel(F, 0, n), Family::Gamma,
                                "A = gamma Hankel (k=1), B = gamma Hankel (k=0)", opt);
    CVector c = vandermonde_solve(e.values, F, 2 * n);
    const cplx base = s.complex_tau + s.gamma_delta();
    for (int i = 0; i < n; ++i) {
        cplx z = base + e.values[i];
        if (is_gamma_pole(z))
            fail(ErrorCode::GammaPole, "tau + delta + phi hits a pole of gamma for term " + std::to_string(i) +
                                           "; rerun with a complex shift tau");
        r.model.terms.push_back({c(i) / gamma(z), e.values[i]});
        r.ambiguity_log.push_back(1);
    }
    finalize(r, samples, view.consumed());
    return r;
}

RecoveryResult analyze_gaussian(const SampleSet& samples, int n, const AnalyzerOptions& opt)
{
    check_n(n);
    const SamplingScheme& s = samples.scheme();
    validate(s, Family::Gaussian);
    require_shift(s);
    if (!(s.width > 0.0))
        fail(ErrorCode::InvalidArgument, "gaussian width must be positive");
    SampleView view(samples, Family::Gaussian);
    Series g = view.series();
    const int sig = s.sigma;
    const double d = detail::gaussian_delta(s);

    RecoveryResult r = base_result(Family::Gaussian, n);
    r.model.width = s.width;
    auto F0 = [&](long j) { return aux_transform(Family::Gaussian, g, sig, 0, j, d); };
    // offset-1 Hankel of F0 equals G(sigma, tau=sigma) up to the constant exp(sigma^2 d^2)
    EigenPairs e = solve_pencil(r, build_aux_hankel(F0, n, 1), build_aux_hankel(F0, n, 0), Family::Gaussian,
                                "A = G(sigma, tau=sigma) exp(sigma^2 delta^2), B = G(sigma, tau=0)", opt);
    std::vector<cplx> rhs;
    for (int j = 0; j < 2 * n; ++j)
        rhs.push_back(F0(j));
    CVector c0 = vandermonde_solve(e.values, rhs, 2 * n);

    if (sig > 1) {
        check_alpha(c0, opt.tol_zero);
        std::vector<cplx> rt;
        for (int j = 0; j < n; ++j)
            rt.push_back(aux_transform(Family::Gaussian, g, sig, s.tau, j, d));
        CVector ct = vandermonde_solve(e.values, rt, n);
        const double tt = double(s.tau) * d;
        for (int i = 0; i < n; ++i)
            r.shifted_values.push_back(std::exp(tt * tt) * ct(i) / c0(i));
    }
    const double scale = std::sqrt(s.width);
    for (int i = 0; i < n; ++i) {
        cplx twice = sig == 1 ? std::log(e.values[i]) / d
                              : exp_resolve(e.values[i], r.shifted_values[i], sig, s.tau, d, opt.tol_match);
        cplx p = 0.5 * twice;
        r.model.terms.push_back({c0(i) * std::exp(p * p), p * scale});
        r.ambiguity_log.push_back(1);
    }
    finalize(r, samples, view.consumed());
    return r;
}

RecoveryResult analyze(const SampleSet& samples, Family f, int n, const AnalyzerOptions& opt)
{
    switch (f) {
    case Family::Exponential: return analyze_exponential(samples, n, opt);
    case Family::Cosine: return analyze_cosine(samples, n, opt);
    case Family::Sine: return analyze_sine(samples, n, opt);
    case Family::PhaseSine: return analyze_phase_sine(samples, n, opt);
    case Family::Cosh: case Family::Sinh: return analyze_hyperbolic(samples, n, f, opt);
    case Family::ChebyshevT: case Family::ChebyshevU: case Family::ChebyshevV: case Family::ChebyshevW:
        return analyze_chebyshev(samples, n, f, opt);
    case Family::Spread: return analyze_spread(samples, n, opt);
    case Family::Sinc: return analyze_sinc(samples, n, opt);
    case Family::Gamma: return analyze_gamma(samples, n, opt);
    case Family::Gaussian: return analyze_gaussian(samples, n, opt);
    case Family::MultiExponential: case Family::MultiGaussian: break;
    }
    fail(ErrorCode::InvalidArgument, "multivariate families need line samples; use the multivariate analyzers");
}

RecoveryResult analyze_auto(const SampleSet& samples, Family f, int nu_max, double threshold,
                            const AnalyzerOptions& opt)
{
    OrderEstimate est = estimate_order(samples, f, nu_max, threshold);
    int n = est.n;
    if (f == Family::PhaseSine)
        n /= 2;   // every term contributes two exponentials
    RecoveryResult r;
    if (n == 0) {
        r.model.family = f;
        r.model.width = samples.scheme().width;
        r.log.push_back("order estimate is zero; returning the empty model");
    } else {
        r = analyze(samples, f, n, opt);
    }
    r.order_estimate = n;
    if (est.weak_gap)
        r.log.push_back("weak singular value gap (ratio " + std::to_string(est.gap_ratio) + ")");
    r.order = std::move(est);
    return r;
}

std::vector<long> required_indices(Family f, const SamplingScheme& s, int n, bool escalate)
{
    check_n(n);
    const long sig = s.sigma, tau = s.tau, rho = sig + tau;
    std::set<long> out;
    auto add = [&](long i) { out.insert(fold(f, i)); };
    switch (detail::pipeline_of(f)) {
    case Pipeline::Exponential: {
        const int m = f == Family::PhaseSine ? 2 * n : n;
        for (long j = 0; j < 2 * m; ++j)
            add(j * sig);
        if (sig > 1)
            for (long j = 0; j < m; ++j)
                add(tau + j * sig);
        break;
    }
    case Pipeline::Gaussian:
        for (long j = 0; j < 2 * n; ++j)
            add(j * sig);
        if (sig > 1)
            for (long j = 0; j < n; ++j)
                add(tau + j * sig);
        break;
    case Pipeline::Gamma:
        for (long j = 0; j < 2 * n; ++j)
            add(j);
        break;
    case Pipeline::Cosine:
        for (long j = 0; j < 2 * n; ++j)
            add(j * sig);
        if (sig > 1 && f != Family::Cosh) {
            for (long j = 0; j < n; ++j) {
                add(tau + j * sig);
                add(tau - j * sig);
            }
            if (escalate)
                add(tau + n * sig);
        }
        break;
    case Pipeline::Sine:
        for (long j = 1; j <= 2 * n; ++j)
            add(j * sig);
        if (sig > 1 && f != Family::Sinh) {
            for (long j = 1; j <= n; ++j) {
                add(j * sig + tau);
                add(j * sig - tau);
            }
            if (escalate) {
                add(rho + n * sig);
                add(-rho + sig);
            }
        }
        break;
    case Pipeline::Spread:
        for (long j = 1; j <= 2 * n + 1; ++j)
            add(j * sig);
        if (sig > 1) {
            add(tau);
            for (long j = 1; j <= n; ++j) {
                add(tau + j * sig);
                add(tau - j * sig);
            }
            if (escalate)
                add(rho + n * sig);
        }
        break;
    }
    // sine kinds and spread vanish at the origin and never read index 0
    if (detail::pipeline_of(f) == Pipeline::Sine || detail::pipeline_of(f) == Pipeline::Spread)
        out.erase(0L);
    return std::vector<long>(out.begin(), out.end());
}

}  // namespace sparsefit
