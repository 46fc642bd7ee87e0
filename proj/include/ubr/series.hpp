#pragma once
#include <cstdint>
#include <vector>

namespace ubr {

struct RankTable {
    std::vector<uint64_t> primitive;   // by degree, entry 0 unused
    std::vector<uint64_t> algebra;     // rk A_m
    std::vector<uint64_t> reduced;     // rk A_m^r
};

// coefficients of prod_{d>=1} (1-q^d)^{-p_d} up to q^max_degree; primitive[0] is ignored
std::vector<uint64_t> symmetric_algebra_dims(const std::vector<long long>& primitive, int max_degree);

// rk A (p_1 as given) and rk A^r (p_1 := 0)
RankTable algebra_ranks(const std::vector<long long>& primitive, int max_degree);

}  // namespace ubr
