#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sparsefit/analyzers.hpp"
#include "sparsefit/fixtures.hpp"
#include "sparsefit/io.hpp"
#include "sparsefit/multivariate.hpp"

using namespace sparsefit;

namespace {

// Writes to the named file, or stdout for "" and "-".
void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::Schema, "cannot write " + path);
    out << text;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::Schema, "cannot open " + path);
    return in;
}

Family parse_family(const std::string& name)
{
    auto f = family_from_name(name);
    if (!f)
        fail(ErrorCode::Schema, "unknown family '" + name + "'");
    return *f;
}

std::pair<long, long> parse_range(const std::string& text)
{
    auto colon = text.find(':');
    try {
        if (colon == std::string::npos)
            throw std::invalid_argument(text);
        return {std::stol(text.substr(0, colon)), std::stol(text.substr(colon + 1))};
    } catch (const std::exception&) {
        fail(ErrorCode::Schema, "--j-range expects a:b, got '" + text + "'");
    }
}

std::vector<long> parse_indices(const std::string& text)
{
    std::vector<long> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stol(cell));
        } catch (const std::exception&) {
            fail(ErrorCode::Schema, "--indices expects a comma separated list, got '" + text + "'");
        }
    }
    return out;
}

std::string join(const std::vector<long>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

struct SimulateArgs {
    std::string model, scheme, j_range, indices, out;
    bool for_analysis = false, escalate = false;
    int n = 0;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

int run_simulate(const SimulateArgs& a)
{
    SparseModel model = model_from_json(load_json_file(a.model));
    SamplingScheme scheme = scheme_from_json(load_json_file(a.scheme));
    validate(scheme, model.family);
    NoiseSpec noise{a.noise, a.seed};
    const int modes = int(!a.j_range.empty()) + int(!a.indices.empty()) + int(a.for_analysis);
    if (modes != 1)
        fail(ErrorCode::Schema, "pick exactly one of --j-range, --indices, --for-analysis");
    if (a.for_analysis && a.n < 1)
        fail(ErrorCode::Schema, "--for-analysis needs --n >= 1");

    std::ostringstream os;
    if (is_multivariate(model.family)) {
        std::map<int, std::vector<long>> idx;
        if (a.for_analysis) {
            idx = required_multi_indices(model.family, scheme, a.n);
        } else {
            std::vector<long> list = a.indices.empty() ? std::vector<long>{} : parse_indices(a.indices);
            if (!a.j_range.empty()) {
                auto [lo, hi] = parse_range(a.j_range);
                for (long j = lo; j <= hi; ++j)
                    list.push_back(j);
            }
            for (int k = 1; k <= scheme.dim; ++k)
                idx[k] = list;
        }
        write_multi_csv(os, simulate_multi(model, scheme, idx, noise));
    } else {
        std::vector<long> idx;
        if (a.for_analysis) {
            idx = required_indices(model.family, scheme, a.n, a.escalate);
        } else if (!a.indices.empty()) {
            idx = parse_indices(a.indices);
        } else {
            auto [lo, hi] = parse_range(a.j_range);
            for (const auto& g : grid_points(model.family, scheme, lo, hi))
                idx.push_back(g.index);
        }
        write_samples_csv(os, simulate(model, scheme, idx, noise));
    }
    emit(a.out, os.str());
    return 0;
}

struct AnalyzeArgs {
    std::string family, scheme, samples, out, dump_pencil;
    int n = 0, nu_max = 10;
    bool auto_order = false, no_escalation = false, variant = false;
    double threshold = default_order_threshold;
    std::optional<int> sigma;
    std::optional<long> tau, rho;
    AnalyzerOptions opt;
};

SamplingScheme load_scheme(const std::string& path, std::optional<int> sigma, std::optional<long> tau)
{
    SamplingScheme s = scheme_from_json(load_json_file(path));
    if (sigma)
        s.sigma = *sigma;
    if (tau) {
        s.tau = *tau;
        s.complex_tau = double(*tau);
    }
    return s;
}

int run_analyze(AnalyzeArgs a)
{
    const Family f = parse_family(a.family);
    SamplingScheme scheme = load_scheme(a.scheme, a.sigma, a.tau);
    a.opt.rho = a.rho;
    a.opt.allow_escalation = !a.no_escalation;
    if (!a.auto_order && a.n < 1)
        fail(ErrorCode::Schema, "give --n >= 1 or --auto-order");
    if (a.variant && f != Family::Exponential)
        fail(ErrorCode::Schema, "--variant applies to the exponential family only");

    auto in = open_in(a.samples);
    RecoveryResult r;
    if (is_multivariate(f)) {
        MultiSampleSet data = read_multi_csv(in, scheme);
        int n = a.n;
        std::optional<OrderEstimate> est;
        if (a.auto_order) {
            auto line = data.lines.find(1);
            if (line == data.lines.end())
                fail(ErrorCode::MissingSample, "no samples on line 1");
            est = estimate_order(line->second, f, a.nu_max, a.threshold);
            n = est->n;
        }
        if (n == 0) {
            r.model.family = f;
            r.model.dim = scheme.dim;
        } else {
            r = f == Family::MultiExponential ? analyze_multi_exponential(data, n, a.opt)
                                              : analyze_multi_gaussian(data, n, a.opt);
        }
        r.order = est;
        r.order_estimate = n;
    } else {
        SampleSet data = read_samples_csv(in, scheme);
        try {
            if (a.auto_order)
                r = analyze_auto(data, f, a.nu_max, a.threshold, a.opt);
            else if (a.variant)
                r = analyze_exponential_variant(data, a.n, a.opt);
            else
                r = analyze(data, f, a.n, a.opt);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::MissingSample || a.auto_order)
                throw;
            std::vector<long> missing;
            for (long i : required_indices(f, scheme, a.n))
                if (!data.has(i))
                    missing.push_back(i);
            if (missing.empty())
                missing = e.indices();
            fail(ErrorCode::MissingSample,
                 std::string(e.what()) + "; required indices not present: " + join(missing), missing);
        }
    }
    if (!a.dump_pencil.empty() && r.pencil.A.size() > 0) {
        emit(a.dump_pencil + "_A.csv", dump_matrix_csv(r.pencil.A));
        emit(a.dump_pencil + "_B.csv", dump_matrix_csv(r.pencil.B));
    }
    emit(a.out, report_to_json(r).dump(2) + "\n");
    return 0;
}

struct OrderArgs {
    std::string family, scheme, samples, out;
    int nu = 10;
    double threshold = default_order_threshold;
    std::optional<int> sigma;
    std::optional<long> tau;
};

int run_order(const OrderArgs& a)
{
    const Family f = parse_family(a.family);
    SamplingScheme scheme = load_scheme(a.scheme, a.sigma, a.tau);
    auto in = open_in(a.samples);
    SampleSet data;
    if (is_multivariate(f)) {
        MultiSampleSet multi = read_multi_csv(in, scheme);
        auto line = multi.lines.find(1);
        if (line == multi.lines.end())
            fail(ErrorCode::MissingSample, "no samples on line 1");
        data = line->second;
    } else {
        data = read_samples_csv(in, scheme);
    }
    auto est = rank_from_profile(singular_values(order_matrix(data, f, a.nu)), a.threshold);
    emit(a.out, profile_csv(est.profile));
    std::cerr << "rank " << est.n << " (gap ratio " << est.gap_ratio << (est.weak_gap ? ", weak" : "") << ")\n";
    return 0;
}

int run_repro_cmd(const std::string& which, const std::string& out_dir)
{
    std::vector<std::string> names = which == "all" ? repro_cases() : std::vector<std::string>{which};
    std::filesystem::create_directories(out_dir);
    bool all_ok = true;
    for (const auto& name : names) {
        ReproReport rep = run_repro(name);
        std::cout << "== " << rep.name << " (" << rep.seconds << " s)\n";
        for (const auto& c : rep.checks)
            std::cout << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << ": " << c.detail << "\n";
        for (const auto& [file, text] : rep.csv)
            emit((std::filesystem::path(out_dir) / file).string(), text);
        all_ok = all_ok && rep.passed();
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"sparse interpolation with scale and shift sampling"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "write samples of a model");
    c_sim->add_option("--model", sim.model, "model JSON")->required();
    c_sim->add_option("--scheme", sim.scheme, "sampling scheme JSON")->required();
    c_sim->add_option("--j-range", sim.j_range, "a:b, samples at tau + j sigma for j in [a, b]");
    c_sim->add_option("--indices", sim.indices, "comma separated grid indices");
    c_sim->add_flag("--for-analysis", sim.for_analysis, "exactly the samples an analyzer reads");
    c_sim->add_option("--n", sim.n, "number of terms for --for-analysis");
    c_sim->add_flag("--escalate", sim.escalate, "include the third-value samples");
    c_sim->add_option("--noise", sim.noise, "gaussian noise standard deviation");
    c_sim->add_option("--seed", sim.seed, "noise seed");
    c_sim->add_option("--out", sim.out, "output CSV (default stdout)");

    AnalyzeArgs an;
    auto* c_an = app.add_subcommand("analyze", "recover a model from samples");
    c_an->add_option("--family", an.family)->required();
    c_an->add_option("--scheme", an.scheme)->required();
    c_an->add_option("--samples", an.samples)->required();
    c_an->add_option("--n", an.n, "number of terms");
    c_an->add_flag("--auto-order", an.auto_order, "estimate the number of terms first");
    c_an->add_option("--nu-max", an.nu_max, "largest matrix size for --auto-order");
    c_an->add_option("--threshold", an.threshold, "relative singular value threshold");
    c_an->add_option("--sigma", an.sigma, "override the scheme's scale factor");
    c_an->add_option("--tau", an.tau, "override the scheme's shift");
    c_an->add_option("--rho", an.rho, "third value (default sigma + tau)");
    c_an->add_flag("--no-escalation", an.no_escalation, "fail instead of reading third-value samples");
    c_an->add_flag("--variant", an.variant, "exponential: eigenvalues carry tau");
    c_an->add_option("--tol-singular", an.opt.tol_singular);
    c_an->add_option("--tol-match", an.opt.tol_match);
    c_an->add_option("--tol-snap", an.opt.tol_snap);
    c_an->add_option("--tol-verify", an.opt.tol_verify, "value check applied to snapped degrees");
    c_an->add_option("--tol-pencil", an.opt.tol_pencil);
    c_an->add_option("--tol-zero", an.opt.tol_zero);
    c_an->add_option("--dump-pencil", an.dump_pencil, "write PREFIX_A.csv and PREFIX_B.csv");
    c_an->add_option("--out", an.out, "report JSON (default stdout)");

    OrderArgs ord;
    auto* c_ord = app.add_subcommand("order", "singular value profile of the order matrix");
    c_ord->add_option("--family", ord.family)->required();
    c_ord->add_option("--scheme", ord.scheme)->required();
    c_ord->add_option("--samples", ord.samples)->required();
    c_ord->add_option("--nu", ord.nu, "matrix size");
    c_ord->add_option("--threshold", ord.threshold);
    c_ord->add_option("--sigma", ord.sigma);
    c_ord->add_option("--tau", ord.tau);
    c_ord->add_option("--out", ord.out, "profile CSV (default stdout)");

    std::string repro_case, out_dir = ".";
    auto* c_rep = app.add_subcommand("repro", "rerun the reference experiments");
    c_rep->add_option("case", repro_case, "gauss, sinc, chebyshev, appendix1, appendix2 or all")->required();
    c_rep->add_option("--out-dir", out_dir, "where the singular value CSVs go");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_sim->parsed())
            return run_simulate(sim);
        if (c_an->parsed())
            return run_analyze(an);
        if (c_ord->parsed())
            return run_order(ord);
        return run_repro_cmd(repro_case, out_dir);
    } catch (const Error& e) {
        std::cerr << "error: " << error_name(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
}
