#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ubr/reduce.hpp"

namespace ubr {

struct UbrConfig {
    Algorithm algorithm = Algorithm::A;
    int degree = 2;
    int characteristic = 2;
    int block_width = 64;
    int threads = 1;
    std::string export_path;   // empty: no export
    uint64_t memory_budget = uint64_t(4) << 30;
    void validate() const;
};

struct UbrReport {
    uint64_t universe = 0;
    uint64_t irreducible = 0;
    uint64_t output = 0;   // nullity of rho-bar
    int characteristic = 2;
    double seconds = 0;
};

struct Census {
    uint64_t universe = 0;
    uint64_t irreducible = 0;
};

Census census(Algorithm alg, int m);

using Progress = std::function<void(const std::string&)>;
UbrReport output_upper(const UbrConfig& cfg, const Progress& progress = {});

struct TorsionVerdict {
    uint64_t output = 0;
    uint64_t reference = 0;   // a lower bound for rk P_m
    int characteristic = 2;
    bool no_torsion = false;   // output == reference
};
// output over F_p equal to a lower bound for the rank rules out p-torsion in degree m
TorsionVerdict torsion_probe(Algorithm alg, int m, int p, uint64_t lower_bound);

// known primitive ranks rk P_m, m = 1..12 (0 when unknown)
uint64_t known_primitive_rank(int m);

const char* algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

}  // namespace ubr
