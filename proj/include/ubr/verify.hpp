#pragma once
#include <string>
#include <vector>

namespace ubr {

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
};

// suites: moves, surfaces, series, sandwich; max_degree bounds the heavier loops
std::vector<Check> verify_suite(const std::string& suite, int max_degree);

}  // namespace ubr
