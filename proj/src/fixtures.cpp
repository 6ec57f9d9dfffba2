#include "sparsefit/fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "sparsefit/analyzers.hpp"
#include "sparsefit/io.hpp"

namespace sparsefit {

namespace {

constexpr double pi = std::numbers::pi;

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Check near(const std::string& name, double got, double want, double tol)
{
    double err = std::abs(got - want);
    return {name, err <= tol, "got " + num(got) + ", want " + num(want) + ", |err| " + num(err) + " (tol " + num(tol) + ")"};
}

Check ratio_within(const std::string& name, double got, double want, double factor)
{
    double r = got / want;
    return {name, r <= factor && r >= 1.0 / factor, "got " + num(got) + ", want " + num(want) + " within x" + num(factor)};
}

// Every wanted value must pair with a distinct got value within tol.
Check multiset(const std::string& name, std::vector<double> got, const std::vector<double>& want, double tol)
{
    std::string detail;
    bool ok = got.size() == want.size();
    double worst = 0.0;
    for (double w : want) {
        auto best = got.end();
        for (auto it = got.begin(); it != got.end(); ++it)
            if (best == got.end() || std::abs(*it - w) < std::abs(*best - w))
                best = it;
        if (best == got.end()) {
            ok = false;
            break;
        }
        double err = std::abs(*best - w);
        worst = std::max(worst, err);
        if (err > tol)
            ok = false;
        detail += num(*best) + " vs " + num(w) + "; ";
        got.erase(best);
    }
    return {name, ok, detail + "max |err| " + num(worst) + " (tol " + num(tol) + ")"};
}

std::vector<double> reals(const std::vector<cplx>& v)
{
    std::vector<double> out;
    for (auto z : v)
        out.push_back(z.real());
    return out;
}

// index of the recovered term closest to each wanted parameter
std::vector<std::size_t> pair_terms(const SparseModel& got, const std::vector<double>& want)
{
    std::vector<std::size_t> out;
    for (double w : want) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < got.terms.size(); ++i)
            if (std::abs(got.terms[i].phi - w) < std::abs(got.terms[best].phi - w))
                best = i;
        out.push_back(best);
    }
    return out;
}

std::vector<long> stride(long count, long step)
{
    std::vector<long> out;
    for (long j = 0; j < count; ++j)
        out.push_back(j * step);
    return out;
}

std::string profile_of(const SampleSet& s, Family f, int nu) { return profile_csv(singular_values(order_matrix(s, f, nu))); }

double elapsed(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SparseModel make_model(Family f, std::vector<std::pair<double, double>> alpha_phi)
{
    SparseModel m;
    m.family = f;
    for (auto [a, p] : alpha_phi) {
        Term t;
        t.alpha = a;
        if (is_integer_family(f))
            t.m = long(p);
        else
            t.phi = p;
        m.terms.push_back(t);
    }
    return m;
}

ReproReport gauss()
{
    ReproReport rep{"gauss", {}, {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    SamplingScheme s;
    s.delta = 0.1;
    SparseModel truth = make_model(Family::Gaussian, {{1.0, 5.0}, {0.01, 4.99}});
    SampleSet data = simulate(truth, s, stride(20, 1));

    RecoveryResult r = analyze_auto(data, Family::Gaussian, 10);
    rep.seconds = elapsed(t0);
    rep.checks.push_back({"order estimate is 2", r.order_estimate == 2, "got " + std::to_string(r.order_estimate)});
    if (r.model.n() == 2) {
        auto idx = pair_terms(r.model, {5.0, 4.99});
        rep.checks.push_back(near("phi_1", r.model.terms[idx[0]].phi.real(), 4.9999999737, 1e-8));
        rep.checks.push_back(near("phi_2", r.model.terms[idx[1]].phi.real(), 4.9899976207, 1e-8));
        rep.checks.push_back(near("alpha_1", r.model.terms[idx[0]].alpha.real(), 1.0000049866, 1e-8));
        rep.checks.push_back(near("alpha_2", r.model.terms[idx[1]].alpha.real(), 0.0099950129, 1e-8));
    }
    rep.checks.push_back({"runtime under 1 s", rep.seconds < 1.0, num(rep.seconds) + " s"});
    rep.csv.emplace_back("gauss_G10_profile.csv", profile_of(data, Family::Gaussian, 10));
    return rep;
}

ReproReport sinc_case()
{
    ReproReport rep{"sinc", {}, {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    SparseModel truth = make_model(Family::Sinc, {{-10.0, 145.5}, {20.0, 149.0}, {4.0, 147.3}});
    const std::vector<double> phis{145.5, 149.0, 147.3}, alphas{-10.0, 20.0, 4.0};

    SamplingScheme s1;
    s1.delta = pi / 300.0;
    SampleSet d1 = simulate(truth, s1, stride(22, 1));
    RecoveryResult r1 = analyze_sinc(d1, 3);

    SamplingScheme s30 = s1;
    s30.sigma = 30;
    s30.tau = 1;
    SampleSet d30 = simulate(truth, s30, required_indices(Family::Sinc, s30, 3));
    RecoveryResult r30 = analyze_sinc(d30, 3);
    rep.seconds = elapsed(t0);

    rep.checks.push_back(multiset("pencil eigenvalues at sigma 30", reals(r30.eigenvalues),
                                  {-0.1564344650400536, -0.9510565162957546, -0.6613118653271576}, 1e-12));
    if (r30.model.n() == 3) {
        auto idx = pair_terms(r30.model, phis);
        for (int i = 0; i < 3; ++i) {
            const auto& t = r30.model.terms[idx[i]];
            rep.checks.push_back(near("phi_" + std::to_string(i + 1), t.phi.real(), phis[i], 1e-8));
            rep.checks.push_back(near("alpha_" + std::to_string(i + 1), t.alpha.real(), alphas[i], 1e-7));
        }
    }
    rep.checks.push_back(ratio_within("cond of B(sigma=1, 0)", r1.cond_B, 1.6e7, 3.0));
    rep.checks.push_back(ratio_within("cond of B(sigma=1, 1)", r1.cond_A, 7.5e6, 3.0));
    rep.checks.push_back(ratio_within("cond of B(sigma=30, 0)", r30.cond_B, 1.1e3, 3.0));
    rep.checks.push_back(ratio_within("cond of B(sigma=30, 1)", r30.cond_A, 9.7e2, 3.0));
    rep.checks.push_back({"runtime under 1 s", rep.seconds < 1.0, num(rep.seconds) + " s"});

    SampleSet p30 = simulate(truth, s30, stride(22, 30));
    rep.csv.emplace_back("sinc_B10_sigma1_profile.csv", profile_of(d1, Family::Sinc, 10));
    rep.csv.emplace_back("sinc_B10_sigma30_profile.csv", profile_of(p30, Family::Sinc, 10));
    return rep;
}

ReproReport chebyshev()
{
    ReproReport rep{"chebyshev", {}, {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    SparseModel truth = make_model(Family::ChebyshevT, {{2.0, 6}, {1.0, 7}, {1.0, 39999}});

    SamplingScheme s1;
    s1.delta = pi / 50000.0;
    s1.M = 50000;
    SampleSet d1 = simulate(truth, s1, stride(15, 1));
    auto est1 = rank_from_profile(singular_values(order_matrix(d1, Family::ChebyshevT, 8)), default_order_threshold);

    SamplingScheme s = s1;
    s.sigma = 3125;
    s.tau = 16;
    auto idx = required_indices(Family::ChebyshevT, s, 3, true);
    for (long i : stride(15, 3125))
        idx.push_back(i);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    SampleSet d = simulate(truth, s, idx);
    auto est = rank_from_profile(singular_values(order_matrix(d, Family::ChebyshevT, 8)), default_order_threshold);

    RecoveryResult r = analyze_chebyshev(d, 3, Family::ChebyshevT);
    rep.seconds = elapsed(t0);

    std::vector<long> degrees;
    for (const auto& t : r.model.terms)
        degrees.push_back(t.m);
    std::sort(degrees.begin(), degrees.end());
    std::string got;
    for (long m : degrees)
        got += std::to_string(m) + " ";
    rep.checks.push_back({"degrees {6, 7, 39999}", degrees == std::vector<long>{6, 7, 39999}, "got " + got});
    rep.checks.push_back({"third value used with rho 3141", r.escalated && r.rho == 3141,
                          "escalated " + std::to_string(r.escalated) + ", rho " + std::to_string(r.rho)});
    rep.checks.push_back({"sigma 1 order estimate is 2", est1.n == 2, "got " + std::to_string(est1.n)});
    rep.checks.push_back({"sigma 3125 order estimate is 3", est.n == 3, "got " + std::to_string(est.n)});
    rep.checks.push_back(multiset("cos(m sigma delta) values", reals(r.eigenvalues),
                                  {0.9999999204093383, -0.8089800617792506, -0.007490918959382487}, 1e-12));
    rep.checks.push_back(multiset("cos(m tau delta) values", reals(r.shifted_values),
                                  {-0.8084256802389809, 0.9999752362021560, 0.9999818099296417}, 1e-12));
    rep.checks.push_back(multiset("cos(m rho delta) values", reals(r.rho_values),
                                  {-0.6780621808989576, 0.1881836009619241, 0.3771037932233129}, 1e-12));
    rep.checks.push_back({"runtime under 2 s", rep.seconds < 2.0, num(rep.seconds) + " s"});

    rep.csv.emplace_back("cheb_C8_sigma1_profile.csv", profile_csv(est1.profile));
    rep.csv.emplace_back("cheb_C8_sigma3125_profile.csv", profile_csv(est.profile));
    return rep;
}

// Candidate-pair checks for a single cosine parameter, then the full analyzer with escalation.
void cosine_ambiguity(ReproReport& rep, const std::string& label, double phi, double R, double delta, long sigma,
                      long tau, const std::vector<double>& pair)
{
    const long rho = sigma + tau;
    auto cs = std::cos(phi * double(sigma) * delta), ct = std::cos(phi * double(tau) * delta),
         cr = std::cos(phi * double(rho) * delta);
    CosResolution before = cos_resolve(cs, ct, sigma, tau, R, std::nullopt, std::nullopt, delta);
    std::string surv;
    for (double v : before.survivors)
        surv += num(v) + " ";
    rep.checks.push_back({label + ": two candidates before the third value", before.pair_size == 2,
                          "survivors " + surv});
    if (!pair.empty()) {
        bool ok = before.survivors.size() == pair.size();
        for (std::size_t i = 0; ok && i < pair.size(); ++i)
            ok = std::abs(before.survivors[i] - pair[i]) <= 1e-9 * pair[i];
        std::string want;
        for (double v : pair)
            want += num(v) + " ";
        rep.checks.push_back({label + ": candidate pair", ok, "got " + surv + "want " + want});
    }
    try {
        CosResolution after = cos_resolve(cs, ct, sigma, tau, R, cr, rho, delta);
        bool ok = after.survivors.size() == 1 && std::abs(after.value() - phi) <= 1e-9 * phi;
        rep.checks.push_back({label + ": rho = sigma + tau leaves the true value", ok,
                              "got " + num(after.survivors.front()) + " from " +
                                  std::to_string(after.survivors.size())});
    } catch (const Error& e) {
        rep.checks.push_back({label + ": rho = sigma + tau leaves the true value", false, e.what()});
    }
}

void cosine_end_to_end(ReproReport& rep, const std::string& label, double phi, double R, double delta, long sigma,
                       long tau)
{
    SamplingScheme s;
    s.delta = delta;
    s.R = R;
    s.sigma = int(sigma);
    s.tau = tau;
    SparseModel truth = make_model(Family::Cosine, {{1.0, phi}});
    try {
        RecoveryResult r = analyze_cosine(simulate(truth, s, required_indices(Family::Cosine, s, 1, true)), 1);
        double got = r.model.terms.at(0).phi.real();
        rep.checks.push_back({label + ": analyzer recovers the parameter",
                              std::abs(got - phi) <= 1e-9 * phi && r.escalated,
                              "got " + num(got) + ", escalated " + std::to_string(r.escalated)});
    } catch (const Error& e) {
        rep.checks.push_back({label + ": analyzer recovers the parameter", false, e.what()});
    }
}

ReproReport appendix1()
{
    ReproReport rep{"appendix1", {}, {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const double R = 1000.0, delta = pi / R;
    // the printed value, then the value whose candidate pair actually has two elements
    cosine_ambiguity(rep, "printed phi 70800/1547", 70800.0 / 1547.0, R, delta, 299, 357, {});
    cosine_ambiguity(rep, "phi 708000/1547", 708000.0 / 1547.0, R, delta, 299, 357,
                     {6000.0 / 1547.0, 708000.0 / 1547.0});
    cosine_end_to_end(rep, "phi 708000/1547", 708000.0 / 1547.0, R, delta, 299, 357);
    rep.seconds = elapsed(t0);
    return rep;
}

ReproReport appendix2()
{
    ReproReport rep{"appendix2", {}, {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const double R = 50.0, delta = pi / (2.0 * R);
    cosine_ambiguity(rep, "phi 3300/133", 3300.0 / 133.0, R, delta, 21, 19, {500.0 / 133.0, 3300.0 / 133.0});
    cosine_end_to_end(rep, "phi 3300/133", 3300.0 / 133.0, R, delta, 21, 19);
    rep.seconds = elapsed(t0);
    return rep;
}

}  // namespace

bool ReproReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<std::string> repro_cases() { return {"gauss", "sinc", "chebyshev", "appendix1", "appendix2"}; }

ReproReport run_repro(const std::string& name)
{
    ReproReport (*run)() = nullptr;
    if (name == "gauss")
        run = gauss;
    else if (name == "sinc")
        run = sinc_case;
    else if (name == "chebyshev")
        run = chebyshev;
    else if (name == "appendix1")
        run = appendix1;
    else if (name == "appendix2")
        run = appendix2;
    else
        fail(ErrorCode::InvalidArgument, "unknown repro case '" + name + "'");
    try {
        return run();
    } catch (const Error& e) {
        return {name, {{"completed", false, std::string(error_name(e.code())) + ": " + e.what()}}, {}, 0.0};
    }
}

}  // namespace sparsefit
