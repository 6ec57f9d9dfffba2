#include "sparsefit/disambiguation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sparsefit/errors.hpp"

namespace sparsefit {

using std::numbers::pi;

std::vector<cplx> CandidateSet::values() const
{
    std::vector<cplx> out;
    for (const auto& c : items)
        out.push_back(c.value);
    return out;
}

std::vector<double> CandidateSet::real_values() const
{
    std::vector<double> out;
    for (const auto& c : items)
        out.push_back(c.value.real());
    return out;
}

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

void check_coprime(long a, long b)
{
    if (std::gcd(std::labs(a), std::labs(b)) != 1)
        fail(ErrorCode::InvalidArgument,
             "scale factors " + std::to_string(a) + " and " + std::to_string(b) + " are not coprime");
}

void push_unique(std::vector<double>& v, double x, double tol)
{
    for (double y : v)
        if (std::abs(x - y) <= tol)
            return;
    v.push_back(x);
}

std::vector<double> intersect(const std::vector<double>& a, const std::vector<double>& b, double tol)
{
    std::vector<double> out;
    for (double x : a)
        for (double y : b)
            if (std::abs(x - y) <= tol)
                push_unique(out, 0.5 * (x + y), tol);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CandidateSet exp_candidates(cplx lambda, long scale, double delta)
{
    if (scale == 0 || std::abs(lambda) == 0.0)
        fail(ErrorCode::InvalidArgument, "exp_candidates: need nonzero scale and lambda");
    if (scale < 0) {
        lambda = 1.0 / lambda;
        scale = -scale;
    }
    const cplx ln = std::log(lambda);
    const int s = sgn(ln.imag());
    const long lo = -s * (scale / 2);
    const long hi = s * ((scale + 1) / 2 - 1);
    CandidateSet out;
    out.bound = pi / delta;
    const double h = double(scale) * delta;
    for (long l = std::min(lo, hi); l <= std::max(lo, hi); ++l)
        out.items.push_back({(ln + cplx(0.0, 2.0 * pi * double(l))) / h, l, s});
    return out;
}

cplx exp_resolve(cplx lambda_sigma, cplx lambda_tau, long sigma, long tau, double delta, double tol_rel)
{
    if (sigma == 1)
        return std::log(lambda_sigma) / delta;
    if (tau == 0)
        fail(ErrorCode::InvalidArgument, "exp_resolve: sigma > 1 needs a nonzero shift");
    check_coprime(sigma, tau);
    const auto S = exp_candidates(lambda_sigma, sigma, delta);
    auto T = exp_candidates(lambda_tau, tau, delta);
    T.source = 't';
    const double tol = tol_rel * pi / delta;
    std::vector<cplx> hits;
    for (const auto& a : S.items)
        for (const auto& b : T.items)
            if (std::abs(a.value - b.value) <= tol) {
                cplx mid = 0.5 * (a.value + b.value);
                bool dup = std::any_of(hits.begin(), hits.end(), [&](cplx h) { return std::abs(h - mid) <= tol; });
                if (!dup)
                    hits.push_back(mid);
            }
    if (hits.empty())
        fail(ErrorCode::EmptyIntersection, "exp_resolve: candidate sets do not intersect");
    if (hits.size() > 1)
        fail(ErrorCode::MultipleMatches, "exp_resolve: " + std::to_string(hits.size()) + " matches");
    return hits.front();
}

CandidateSet cos_candidates(double C, long scale, double R, std::optional<double> delta, double merge_tol_rel)
{
    if (scale == 0)
        fail(ErrorCode::InvalidArgument, "cos_candidates: zero scale");
    scale = std::labs(scale);
    const double d = delta.value_or(pi / R);
    const double h = double(scale) * d;
    const double phi_s = std::acos(std::clamp(C, -1.0, 1.0)) / h;
    const double period = 2.0 * pi / h;
    const double tol = merge_tol_rel * R;
    CandidateSet out;
    out.bound = R;
    auto add = [&](double v, long l, int set) {
        if (v < 0.0 || v >= R)
            return;
        for (const auto& c : out.items)
            if (std::abs(c.value.real() - v) <= tol)
                return;
        out.items.push_back({v, l, set});
    };
    for (long l = 0; phi_s + period * double(l) < R; ++l)
        add(phi_s + period * double(l), l, 1);
    const double second = (period - phi_s) * sgn(phi_s);
    for (long l = 0; second + period * double(l) < R; ++l)
        add(second + period * double(l), l, 2);
    return out;
}

CosResolution cos_resolve(double C_sigma, double C_tau, long sigma, long tau, double R, std::optional<double> C_rho,
                          std::optional<long> rho, std::optional<double> delta, double tol_rel)
{
    CosResolution res;
    const double tol = tol_rel * R;
    const auto S = cos_candidates(C_sigma, sigma, R, delta, tol_rel).real_values();
    if (std::labs(sigma) == 1) {
        if (S.empty())
            fail(ErrorCode::EmptyIntersection, "cos_resolve: no candidate below the bound");
        res.survivors = {S.front()};
        res.pair_size = 1;
        return res;
    }
    if (tau == 0)
        fail(ErrorCode::InvalidArgument, "cos_resolve: sigma > 1 needs a nonzero shift");
    check_coprime(sigma, tau);
    auto I = intersect(S, cos_candidates(C_tau, tau, R, delta, tol_rel).real_values(), tol);
    res.pair_size = I.size();
    if (I.empty())
        fail(ErrorCode::EmptyIntersection, "cos_resolve: sigma and tau candidate sets do not intersect");
    if (I.size() > 1 && C_rho && rho) {
        check_coprime(sigma, *rho);
        check_coprime(tau, *rho);
        I = intersect(I, cos_candidates(*C_rho, *rho, R, delta, tol_rel).real_values(), tol);
        if (I.empty())
            fail(ErrorCode::EmptyIntersection, "cos_resolve: third value removes every candidate");
    }
    res.survivors = I;
    if (I.size() == 2 && !(C_rho && rho)) {
        res.needs_third = true;
        return res;
    }
    if (I.size() > 1)
        fail(ErrorCode::StillAmbiguous,
             "cos_resolve: " + std::to_string(I.size()) + " candidates survive; raise precision");
    return res;
}

std::set<long> integer_snap(const CandidateSet& c, long M, double tol, double offset)
{
    std::set<long> out;
    for (const auto& item : c.items) {
        double x = item.value.real() - offset;
        double r = std::round(x);
        if (std::abs(x - r) <= tol && r >= 0.0 && r < double(M))
            out.insert(long(r));
    }
    return out;
}

std::set<long> cos_degrees(double C, long scale, long M, double delta, double offset, double snap_tol,
                           double verify_tol)
{
    std::set<long> out;
    const double h = double(std::labs(scale)) * delta;
    for (long m : integer_snap(cos_candidates(C, scale, double(M) + offset, delta), M, snap_tol, offset))
        if (std::abs(std::cos((double(m) + offset) * h) - C) <= verify_tol)
            out.insert(m);
    return out;
}

CandidateSet spread_candidates(double S, long scale, long M, double delta, double snap_tol, double verify_tol)
{
    if (scale == 0)
        fail(ErrorCode::InvalidArgument, "spread_candidates: zero scale");
    scale = std::labs(scale);
    const double a = std::asin(std::sqrt(std::clamp(S, 0.0, 1.0)));
    const double h = double(scale) * delta;
    const double limit = double(M) + snap_tol;
    CandidateSet raw;
    for (long l = 0; (a + pi * double(l)) / h < limit; ++l)
        raw.items.push_back({(a + pi * double(l)) / h, l, 1});
    for (long l = 1; (-a + pi * double(l)) / h < limit; ++l)
        raw.items.push_back({(-a + pi * double(l)) / h, l, 2});
    CandidateSet out;
    out.bound = double(M);
    for (const auto& item : raw.items) {
        double r = std::round(item.value.real());
        const double sr = std::sin(r * h);
        if (std::abs(item.value.real() - r) <= snap_tol && r >= 0.0 && r < double(M) &&
            std::abs(sr * sr - S) <= verify_tol) {
            bool dup = std::any_of(out.items.begin(), out.items.end(),
                                   [&](const Candidate& c) { return c.value.real() == r; });
            if (!dup)
                out.items.push_back({r, item.branch, item.sign});
        }
    }
    return out;
}

IntegerResolution integer_resolve(const std::set<long>& from_sigma, const std::set<long>& from_tau,
                                  const std::optional<std::set<long>>& from_rho)
{
    IntegerResolution res;
    std::set<long> I;
    std::set_intersection(from_sigma.begin(), from_sigma.end(), from_tau.begin(), from_tau.end(),
                          std::inserter(I, I.begin()));
    res.pair_size = I.size();
    if (I.empty())
        fail(ErrorCode::EmptyIntersection, "integer candidate sets do not intersect");
    if (I.size() > 1 && from_rho) {
        std::set<long> J;
        std::set_intersection(I.begin(), I.end(), from_rho->begin(), from_rho->end(), std::inserter(J, J.begin()));
        if (J.empty())
            fail(ErrorCode::EmptyIntersection, "third value removes every integer candidate");
        I = J;
    }
    res.survivors.assign(I.begin(), I.end());
    if (I.size() > 1 && !from_rho) {
        res.needs_third = true;
        return res;
    }
    if (I.size() > 1)
        fail(ErrorCode::StillAmbiguous, std::to_string(I.size()) + " integer candidates survive");
    return res;
}

}  // namespace sparsefit
