#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sparsefit/analyzers.hpp"

namespace sparsefit {

using json = nlohmann::json;

// Complex numbers are a plain number or a [re, im] pair.
cplx complex_from_json(const json& j);
json complex_to_json(cplx z);

// All parsing failures raise Schema.
json load_json_file(const std::string& path);
SparseModel model_from_json(const json& j);
json model_to_json(const SparseModel& m);
SamplingScheme scheme_from_json(const json& j);
json scheme_to_json(const SamplingScheme& s);

// header "index,re,im"
SampleSet read_samples_csv(std::istream& in, const SamplingScheme& scheme);
void write_samples_csv(std::ostream& out, const SampleSet& samples);

// header "line,index,re,im"
MultiSampleSet read_multi_csv(std::istream& in, const SamplingScheme& scheme);
void write_multi_csv(std::ostream& out, const MultiSampleSet& samples);

json report_to_json(const RecoveryResult& r);

// "k,singular_value" rows
std::string profile_csv(const std::vector<double>& sv);

}  // namespace sparsefit
