#include "ubr/series.hpp"

#include <stdexcept>

namespace ubr {

std::vector<uint64_t> symmetric_algebra_dims(const std::vector<long long>& prim, int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("max degree must be >= 0");
    for (long long x : prim)
        if (x < 0) throw std::invalid_argument("primitive ranks must be non-negative");
    std::vector<uint64_t> a(max_degree + 1, 0);
    a[0] = 1;
    for (int d = 1; d <= max_degree && d < (int)prim.size(); d++) {
        // multiply by 1/(1-q^d), p_d times
        for (long long t = 0; t < prim[d]; t++)
            for (int i = d; i <= max_degree; i++)
                if (__builtin_add_overflow(a[i], a[i - d], &a[i])) throw std::overflow_error("series coefficient overflow");
    }
    return a;
}

RankTable algebra_ranks(const std::vector<long long>& prim, int max_degree) {
    RankTable t;
    for (long long x : prim) {
        if (x < 0) throw std::invalid_argument("primitive ranks must be non-negative");
        t.primitive.push_back((uint64_t)x);
    }
    t.primitive.resize(max_degree + 1, 0);
    t.algebra = symmetric_algebra_dims(prim, max_degree);
    auto p = prim;
    if (p.size() > 1) p[1] = 0;
    t.reduced = symmetric_algebra_dims(p, max_degree);
    return t;
}

}  // namespace ubr
