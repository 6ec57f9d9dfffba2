#include <doctest.h>

#include <sstream>

#include "cases.hpp"
#include "sparsefit/io.hpp"

using namespace testing;

namespace {

void expect_schema(const std::function<void()>& fn)
{
    try {
        fn();
        FAIL("expected Schema");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Schema);
        CHECK(exit_code_for(e.code()) == 2);
    }
}

}  // namespace

TEST_CASE("models round trip through JSON for every family")
{
    for (Family f : univariate_families()) {
        Case c = random_case(f, 3, 3);
        SparseModel back = model_from_json(json::parse(model_to_json(c.model).dump()));
        CHECK(back.family == f);
        CHECK(model_error(back, c.model) == 0.0);
    }
    Case mv = random_case(Family::MultiExponential, 1, 2);
    SparseModel back = model_from_json(model_to_json(mv.model));
    CHECK(back.dim == 2);
    CHECK(model_error(back, mv.model) == 0.0);
}

TEST_CASE("model JSON accepts plain numbers and [re, im] pairs")
{
    auto m = model_from_json(json::parse(R"({"family": "exponential",
        "terms": [{"alpha": 2, "phi": [0, 1.5]}, {"alpha": [1, -1], "phi": -0.25}]})"));
    REQUIRE(m.n() == 2);
    CHECK(m.terms[0].alpha == cplx(2.0));
    CHECK(m.terms[0].phi == cplx(0.0, 1.5));
    CHECK(m.terms[1].alpha == cplx(1.0, -1.0));
    CHECK(m.terms[1].phi == cplx(-0.25));
    auto g = model_from_json(json::parse(R"({"family": "gaussian", "width": 2.0, "terms": []})"));
    CHECK(g.width == 2.0);
    CHECK(g.n() == 0);
}

TEST_CASE("malformed models are schema errors")
{
    const char* bad[] = {
        R"([])",
        R"({"terms": []})",
        R"({"family": "nope", "terms": []})",
        R"({"family": "cosine"})",
        R"({"family": "cosine", "terms": [{"phi": 1}]})",
        R"({"family": "cosine", "terms": [{"alpha": 1, "m": 3}]})",
        R"({"family": "chebyshev-t", "terms": [{"alpha": 1, "phi": 3}]})",
        R"({"family": "cosine", "terms": [{"alpha": 1, "phi": 2, "psi": 0.1}]})",
        R"({"family": "cosine", "terms": [{"alpha": "x", "phi": 2}]})",
        R"({"family": "cosine", "terms": [{"alpha": 1, "phi": [1, 2, 3]}]})",
        R"({"family": "spread", "terms": [{"alpha": 1, "m": 0}]})",
    };
    for (const char* text : bad) {
        INFO(text);
        expect_schema([&] { model_from_json(json::parse(text)); });
    }
}

TEST_CASE("schemes round trip and accept complex gamma shifts")
{
    SamplingScheme s;
    s.delta = 0.25;
    s.sigma = 3;
    s.tau = 2;
    s.R = 12.0;
    s.M = 40;
    s.width = 0.5;
    auto back = scheme_from_json(scheme_to_json(s));
    CHECK(back.delta == 0.25);
    CHECK(back.sigma == 3);
    CHECK(back.tau == 2);
    CHECK(*back.R == 12.0);
    CHECK(*back.M == 40);
    CHECK(back.width == 0.5);

    auto g = scheme_from_json(json::parse(R"({"delta": [0.5, 0.1], "tau": [0, 0.3]})"));
    CHECK(g.gamma_delta() == cplx(0.5, 0.1));
    CHECK(g.complex_tau == cplx(0.0, 0.3));
    auto g2 = scheme_from_json(scheme_to_json(g));
    CHECK(g2.gamma_delta() == cplx(0.5, 0.1));
    CHECK(g2.complex_tau == cplx(0.0, 0.3));

    auto mv = scheme_from_json(json::parse(R"({"delta_vec": [0.1, 0.2], "shift_vecs": [[0.3, -0.1]]})"));
    CHECK(mv.dim == 2);
    CHECK(mv.shift_vecs.size() == 1);
    auto mv2 = scheme_from_json(scheme_to_json(mv));
    CHECK(mv2.delta_vec == mv.delta_vec);
    CHECK(mv2.shift_vecs == mv.shift_vecs);

    expect_schema([] { scheme_from_json(json::parse(R"({"sigma": 2})")); });
    expect_schema([] { scheme_from_json(json::parse(R"({"delta": 0.1, "sigma": "two"})")); });
    expect_schema([] { scheme_from_json(json::parse(R"({"delta": 0.1, "width": -1})")); });
}

TEST_CASE("sample CSV round trip is exact")
{
    Case c = random_case(Family::Exponential, 5, 3);
    SampleSet data = case_samples(c);
    std::stringstream ss;
    write_samples_csv(ss, data);
    SampleSet back = read_samples_csv(ss, c.scheme);
    CHECK(back.values() == data.values());

    Case m = random_case(Family::MultiExponential, 2, 2);
    MultiSampleSet md = case_multi_samples(m);
    std::stringstream ms;
    write_multi_csv(ms, md);
    MultiSampleSet mback = read_multi_csv(ms, m.scheme);
    REQUIRE(mback.lines.size() == md.lines.size());
    for (const auto& [k, set] : md.lines)
        CHECK(mback.lines.at(k).values() == set.values());
}

TEST_CASE("malformed sample CSV")
{
    SamplingScheme s;
    const char* bad[] = {
        "i,re,im\n0,1,0\n",
        "index,re,im\n0,1\n",
        "index,re,im\n0,abc,0\n",
        "index,re,im\n0.5,1,0\n",
        "index,re,im\n1,1,0\n1,2,0\n",
    };
    for (const char* text : bad) {
        INFO(text);
        std::stringstream ss(text);
        expect_schema([&] { read_samples_csv(ss, s); });
    }
    std::stringstream ok("index,re,im\r\n-2,1.5,0\r\n\r\n3,-1e-3,2\r\n");
    auto data = read_samples_csv(ok, s);
    CHECK(data.size() == 2);
    CHECK(data.at(-2) == cplx(1.5, 0.0));

    SamplingScheme mv;
    mv.dim = 2;
    std::stringstream line_out("line,index,re,im\n3,0,1,0\n");
    expect_schema([&] { read_multi_csv(line_out, mv); });
}

TEST_CASE("reports serialize non-finite values as null")
{
    RecoveryResult r;
    r.model.family = Family::Cosine;
    r.model.terms.push_back(term(1.0, 2.0));
    r.residual_max = std::numeric_limits<double>::quiet_NaN();
    r.consumed = {{0, 1}, {0, 2}};
    r.escalated = true;
    r.rho = 5;
    json j = report_to_json(r);
    CHECK(j["residual_max"].is_null());
    CHECK(j["consumed"] == json::array({1, 2}));
    CHECK(j["consumed_count"] == 2);
    CHECK(j["rho"] == 5);
    CHECK(j["model"]["terms"].size() == 1);

    RecoveryResult m;
    m.model.family = Family::MultiExponential;
    m.consumed = {{1, 0}, {2, 3}};
    CHECK(report_to_json(m)["consumed"] == json::parse("[[1, 0], [2, 3]]"));

    CHECK(profile_csv({2.0, 0.5}) == "k,singular_value\n1,2\n2,0.5\n");
}
