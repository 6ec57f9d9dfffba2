#include "sparsefit/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sparsefit {

namespace {

[[noreturn]] void schema(const std::string& what) { fail(ErrorCode::Schema, what); }

template <class T>
T get_as(const json& j, const char* key)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        schema(std::string("field '") + key + "': " + e.what());
    }
}

json number(double x)
{
    if (std::isfinite(x))
        return x;
    return nullptr;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double to_double(const std::string& s, std::size_t row)
{
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size() && s.find_first_not_of(" \r", pos) != std::string::npos)
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        schema("csv row " + std::to_string(row) + ": '" + s + "' is not a number");
    }
}

long to_long(const std::string& s, std::size_t row)
{
    double v = to_double(s, row);
    if (v != std::round(v))
        schema("csv row " + std::to_string(row) + ": index '" + s + "' is not an integer");
    return long(v);
}

std::string trim(std::string s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' '))
        s.pop_back();
    return s;
}

}  // namespace

cplx complex_from_json(const json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    schema("expected a number or a [re, im] pair, got " + j.dump());
}

json complex_to_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        schema("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        schema(path + ": " + e.what());
    }
}

SparseModel model_from_json(const json& j)
{
    if (!j.is_object())
        schema("model must be a JSON object");
    SparseModel m;
    auto fam = family_from_name(get_as<std::string>(j, "family"));
    if (!fam)
        schema("unknown family '" + j.at("family").get<std::string>() + "'");
    m.family = *fam;
    if (j.contains("width"))
        m.width = get_as<double>(j, "width");
    if (j.contains("dim"))
        m.dim = get_as<int>(j, "dim");
    if (j.contains("weights"))
        m.weights = get_as<std::vector<double>>(j, "weights");
    if (!j.contains("terms") || !j.at("terms").is_array())
        schema("model needs a 'terms' array");
    for (const auto& tj : j.at("terms")) {
        if (!tj.is_object() || !tj.contains("alpha"))
            schema("every term needs 'alpha'");
        Term t;
        t.alpha = complex_from_json(tj.at("alpha"));
        const bool has_phi = tj.contains("phi"), has_m = tj.contains("m"), has_vec = tj.contains("phi_vec");
        if (is_integer_family(m.family)) {
            if (!has_m || has_phi || has_vec)
                schema("family " + std::string(family_name(m.family)) + " terms carry an integer 'm' only");
            t.m = get_as<long>(tj, "m");
        } else if (is_multivariate(m.family)) {
            if (!has_vec || has_phi || has_m)
                schema("multivariate terms carry 'phi_vec' only");
            for (const auto& p : tj.at("phi_vec"))
                t.phi_vec.push_back(complex_from_json(p));
        } else {
            if (!has_phi || has_m || has_vec)
                schema("family " + std::string(family_name(m.family)) + " terms carry 'phi' only");
            t.phi = complex_from_json(tj.at("phi"));
        }
        if (tj.contains("psi")) {
            if (m.family != Family::PhaseSine)
                schema("'psi' is only allowed for phase-sine terms");
            t.psi = get_as<double>(tj, "psi");
        }
        m.terms.push_back(t);
    }
    validate(m);
    return m;
}

json model_to_json(const SparseModel& m)
{
    json j;
    j["family"] = std::string(family_name(m.family));
    if (m.family == Family::Gaussian)
        j["width"] = m.width;
    if (is_multivariate(m.family))
        j["dim"] = m.dim;
    if (!m.weights.empty())
        j["weights"] = m.weights;
    j["terms"] = json::array();
    for (const auto& t : m.terms) {
        json tj;
        tj["alpha"] = complex_to_json(t.alpha);
        if (is_integer_family(m.family)) {
            tj["m"] = t.m;
        } else if (is_multivariate(m.family)) {
            tj["phi_vec"] = json::array();
            for (auto p : t.phi_vec)
                tj["phi_vec"].push_back(complex_to_json(p));
        } else {
            tj["phi"] = complex_to_json(t.phi);
        }
        if (m.family == Family::PhaseSine)
            tj["psi"] = t.psi;
        j["terms"].push_back(tj);
    }
    return j;
}

SamplingScheme scheme_from_json(const json& j)
{
    if (!j.is_object())
        schema("scheme must be a JSON object");
    SamplingScheme s;
    if (j.contains("delta")) {
        cplx d = complex_from_json(j.at("delta"));
        s.delta = d.real();
        if (d.imag() != 0.0)
            s.complex_delta = d;
    } else if (!j.contains("delta_vec")) {
        schema("scheme needs 'delta' or 'delta_vec'");
    }
    if (j.contains("sigma"))
        s.sigma = get_as<int>(j, "sigma");
    if (j.contains("tau")) {
        const json& t = j.at("tau");
        if (t.is_number_integer()) {
            s.tau = t.get<long>();
            s.complex_tau = double(s.tau);
        } else {
            // non-integer shifts only make sense for the gamma family
            s.complex_tau = complex_from_json(t);
        }
    }
    if (j.contains("R"))
        s.R = get_as<double>(j, "R");
    if (j.contains("M"))
        s.M = get_as<long>(j, "M");
    if (j.contains("width"))
        s.width = get_as<double>(j, "width");
    if (j.contains("dim"))
        s.dim = get_as<int>(j, "dim");
    if (j.contains("delta_vec")) {
        s.delta_vec = get_as<std::vector<double>>(j, "delta_vec");
        if (!j.contains("dim"))
            s.dim = int(s.delta_vec.size());
        if (!j.contains("delta"))
            s.delta = 1.0;
    }
    if (j.contains("shift_vecs"))
        s.shift_vecs = get_as<std::vector<std::vector<double>>>(j, "shift_vecs");
    if (j.contains("sigma_vec"))
        s.sigma_vec = get_as<std::vector<long>>(j, "sigma_vec");
    if (!(s.width > 0.0))
        schema("scheme width must be positive");
    return s;
}

json scheme_to_json(const SamplingScheme& s)
{
    json j;
    if (s.complex_delta)
        j["delta"] = complex_to_json(*s.complex_delta);
    else
        j["delta"] = s.delta;
    j["sigma"] = s.sigma;
    // the complex gamma shift only when it carries information the integer shift does not
    if (s.complex_tau != cplx(0.0, 0.0) && s.complex_tau != cplx(double(s.tau), 0.0))
        j["tau"] = complex_to_json(s.complex_tau);
    else
        j["tau"] = s.tau;
    if (s.R)
        j["R"] = *s.R;
    if (s.M)
        j["M"] = *s.M;
    if (s.width != 1.0)
        j["width"] = s.width;
    if (!s.delta_vec.empty()) {
        j["dim"] = s.dim;
        j["delta_vec"] = s.delta_vec;
        j["shift_vecs"] = s.shift_vecs;
    }
    if (!s.sigma_vec.empty())
        j["sigma_vec"] = s.sigma_vec;
    return j;
}

SampleSet read_samples_csv(std::istream& in, const SamplingScheme& scheme)
{
    std::string line;
    if (!std::getline(in, line) || trim(line) != "index,re,im")
        schema("sample csv must start with the header 'index,re,im'");
    SampleSet out(scheme);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = trim(line);
        if (line.empty())
            continue;
        auto cells = split_csv(line);
        if (cells.size() != 3)
            schema("csv row " + std::to_string(row) + ": expected 3 columns");
        long idx = to_long(cells[0], row);
        if (out.has(idx))
            schema("csv row " + std::to_string(row) + ": duplicate index " + std::to_string(idx));
        out.set(idx, {to_double(cells[1], row), to_double(cells[2], row)});
    }
    return out;
}

void write_samples_csv(std::ostream& out, const SampleSet& samples)
{
    out << "index,re,im\n" << std::setprecision(17);
    for (const auto& [i, v] : samples.values())
        out << i << ',' << v.real() << ',' << v.imag() << '\n';
}

MultiSampleSet read_multi_csv(std::istream& in, const SamplingScheme& scheme)
{
    std::string line;
    if (!std::getline(in, line) || trim(line) != "line,index,re,im")
        schema("multivariate csv must start with the header 'line,index,re,im'");
    MultiSampleSet out;
    out.scheme = scheme;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = trim(line);
        if (line.empty())
            continue;
        auto cells = split_csv(line);
        if (cells.size() != 4)
            schema("csv row " + std::to_string(row) + ": expected 4 columns");
        long k = to_long(cells[0], row);
        if (k < 1 || k > scheme.dim)
            schema("csv row " + std::to_string(row) + ": line must be in 1..dim");
        long idx = to_long(cells[1], row);
        auto [it, fresh] = out.lines.try_emplace(int(k), scheme);
        if (it->second.has(idx))
            schema("csv row " + std::to_string(row) + ": duplicate sample");
        it->second.set(idx, {to_double(cells[2], row), to_double(cells[3], row)});
    }
    return out;
}

void write_multi_csv(std::ostream& out, const MultiSampleSet& samples)
{
    out << "line,index,re,im\n" << std::setprecision(17);
    for (const auto& [k, set] : samples.lines)
        for (const auto& [i, v] : set.values())
            out << k << ',' << i << ',' << v.real() << ',' << v.imag() << '\n';
}

json report_to_json(const RecoveryResult& r)
{
    json j;
    j["family"] = std::string(family_name(r.model.family));
    j["model"] = model_to_json(r.model);
    j["order_estimate"] = r.order_estimate;
    if (r.order) {
        json o;
        o["n"] = r.order->n;
        o["gap_ratio"] = number(r.order->gap_ratio);
        o["nu"] = r.order->nu;
        o["weak_gap"] = r.order->weak_gap;
        o["profile"] = r.order->profile;
        j["order"] = o;
    }
    j["residual_max"] = number(r.residual_max);
    j["cond_A"] = number(r.cond_A);
    j["cond_B"] = number(r.cond_B);
    j["ambiguity_log"] = r.ambiguity_log;
    json consumed = json::array();
    for (const auto& c : r.consumed) {
        if (c.line == 0)
            consumed.push_back(c.index);
        else
            consumed.push_back(json::array({c.line, c.index}));
    }
    j["consumed"] = consumed;
    j["consumed_count"] = r.consumed.size();
    j["escalated"] = r.escalated;
    if (r.escalated)
        j["rho"] = r.rho;
    auto list = [](const std::vector<cplx>& v) {
        json a = json::array();
        for (auto z : v)
            a.push_back(complex_to_json(z));
        return a;
    };
    j["eigenvalues"] = list(r.eigenvalues);
    j["shifted_values"] = list(r.shifted_values);
    j["rho_values"] = list(r.rho_values);
    j["method"] = r.method;
    j["pencil"] = r.pencil.labels;
    j["log"] = r.log;
    return j;
}

std::string profile_csv(const std::vector<double>& sv)
{
    std::ostringstream os;
    os << "k,singular_value\n" << std::setprecision(17);
    for (std::size_t k = 0; k < sv.size(); ++k)
        os << k + 1 << ',' << sv[k] << '\n';
    return os.str();
}

}  // namespace sparsefit
