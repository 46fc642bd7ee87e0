#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ubr/perm.hpp"

namespace ubr {

enum class Algorithm { A, B };

struct Move {
    enum Kind { I, II, III, Iprime, IIprime } kind;
    int index = 0;   // II: i; III: position in the (q,p,r) scan, data below
    // move III configuration: strand pair (p,p+1), rung end r, third strand q, height step d
    int p = 0, r = 0, q = 0, d = 0;
    std::string str() const;
};

// H-relation through pi for one move III configuration; empty optional if the
// configuration does not match pi
std::optional<LinComb> h_relation(const Perm& pi, int p, int r, int q, int d);

std::optional<Move> smallest_reducing_move_A(const Perm& pi);
std::optional<Move> smallest_reducing_move_B(const Perm& pi);
LinComb apply_move(const Perm& pi, const Move& mv);
// delta; returns pi itself for irreducibles
LinComb delta(Algorithm alg, const Perm& pi);
bool is_irreducible(Algorithm alg, const Perm& pi);

// all permutations the algorithm works with, in ascending order
class Universe {
public:
    Universe(Algorithm alg, int m);
    Algorithm algorithm() const { return alg_; }
    int degree() const { return m_; }
    uint64_t size() const { return total_; }
    int min_n() const { return lo_; }
    int max_n() const { return hi_; }
    uint64_t index(const Perm& p) const;   // throws if outside
    bool contains(const Perm& p) const { return p.n >= lo_ && p.n <= hi_; }
    Perm at(uint64_t idx) const;

private:
    Algorithm alg_;
    int m_, lo_, hi_;
    uint64_t total_ = 0;
    std::vector<uint64_t> offset_;   // by size
};

// delta of every permutation of a universe, stored compactly; irreducibles
// are numbered in ascending order
class DeltaCache {
public:
    explicit DeltaCache(const Universe& u);
    const Universe& universe() const { return u_; }
    uint64_t irreducible_count() const { return irr_.size(); }
    const std::vector<uint64_t>& irreducibles() const { return irr_; }   // universe indices
    bool irreducible(uint64_t idx) const { return irr_id_[idx] >= 0; }
    int64_t irreducible_id(uint64_t idx) const { return irr_id_[idx]; }
    // terms of delta(idx) for reducibles; each strictly below idx
    std::pair<const uint32_t*, const int8_t*> terms(uint64_t idx, int& len) const {
        len = (int)(off_[idx + 1] - off_[idx]);
        return {tidx_.data() + off_[idx], tcoef_.data() + off_[idx]};
    }

private:
    const Universe& u_;
    std::vector<uint64_t> irr_;
    std::vector<int32_t> irr_id_;
    std::vector<uint64_t> off_;
    std::vector<uint32_t> tidx_;
    std::vector<int8_t> tcoef_;
};

// Delta restricted to irreducible ids [block_lo, block_lo + width)
// entries over F_p; p = 2 is bit packed (width <= 64)
class NormalFormTable {
public:
    NormalFormTable(const DeltaCache& dc, int p, uint64_t block_lo, int width,
                    uint64_t memory_budget = uint64_t(4) << 30);
    int characteristic() const { return p_; }
    uint64_t block_lo() const { return lo_; }
    int width() const { return w_; }
    uint64_t bits(uint64_t idx) const { return bits_[idx]; }                  // p = 2
    const uint8_t* digits(uint64_t idx) const { return &dig_[idx * w_]; }   // p odd
    // coordinates of a combination over this block, reduced mod p
    std::vector<uint8_t> reduce(const LinComb& c, const Universe& u) const;
    uint64_t reduce_bits(const LinComb& c, const Universe& u) const;

private:
    int p_;
    uint64_t lo_;
    int w_;
    std::vector<uint64_t> bits_;
    std::vector<uint8_t> dig_;
};

}  // namespace ubr
