#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sparsefit {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReproReport {
    std::string name;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, std::string>> csv;   // file name, contents
    double seconds = 0.0;

    bool passed() const;
};

// gauss, sinc, chebyshev, appendix1, appendix2
std::vector<std::string> repro_cases();

// InvalidArgument for an unknown case name.
ReproReport run_repro(const std::string& name);

}  // namespace sparsefit
