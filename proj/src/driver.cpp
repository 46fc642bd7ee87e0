#include "ubr/driver.hpp"

#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ubr/linalg.hpp"
#include "ubr/rho.hpp"

namespace ubr {

const char* algorithm_name(Algorithm a) { return a == Algorithm::A ? "A" : "B"; }

Algorithm parse_algorithm(const std::string& s) {
    if (s == "A" || s == "a") return Algorithm::A;
    if (s == "B" || s == "b") return Algorithm::B;
    throw std::invalid_argument("unknown algorithm " + s);
}

uint64_t known_primitive_rank(int m) {
    static const uint64_t r[] = {0, 1, 1, 1, 2, 3, 5, 8, 12, 18, 27, 39, 55};
    return m >= 1 && m <= 12 ? r[m] : 0;
}

void UbrConfig::validate() const {
    if (algorithm == Algorithm::A && degree < 2) throw std::invalid_argument("algorithm A needs degree >= 2");
    if (algorithm == Algorithm::B && degree < 3) throw std::invalid_argument("algorithm B needs degree >= 3");
    FieldSpec f(characteristic);
    if (characteristic < 2 || characteristic > 251) throw std::invalid_argument("field must be F_p with p < 256");
    if (block_width < 1 || (characteristic == 2 && block_width > 64))
        throw std::invalid_argument("block width must be 1..64 over F_2");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

Census census(Algorithm alg, int m) {
    Universe u(alg, m);
    uint64_t irr = 0;
    for (int n = u.min_n(); n <= u.max_n(); n++) {
        Perm p = Perm::identity(n);
        do {
            if (is_irreducible(alg, p)) irr++;
        } while (std::next_permutation(p.v.begin(), p.v.begin() + n));
    }
    return {u.size(), irr};
}

namespace {

struct SparseRow {
    std::vector<uint32_t> idx;
    std::vector<int> coef;
};

}  // namespace

UbrReport output_upper(const UbrConfig& cfg, const Progress& progress) {
    cfg.validate();
    auto t0 = std::chrono::steady_clock::now();
    const int p = cfg.characteristic;
    FieldSpec field(p);
    Universe u(cfg.algorithm, cfg.degree);
    DeltaCache dc(u);
    const uint64_t R = dc.irreducible_count();
    if (progress) progress("universe " + std::to_string(u.size()) + ", irreducibles " + std::to_string(R));

    // rho of every irreducible, as universe indices
    std::vector<SparseRow> rho(R);
    for (uint64_t r = 0; r < R; r++) {
        Perm pi = u.at(dc.irreducibles()[r]);
        LinComb c = cfg.algorithm == Algorithm::A ? rho_A(pi) : rho_B(cfg.degree, pi);
        for (auto& [t, x] : c.terms()) {
            long long y = field.reduce(x);
            if (!y) continue;
            rho[r].idx.push_back((uint32_t)u.index(t));
            rho[r].coef.push_back((int)y);
        }
    }

    const int W = cfg.block_width;
    const uint64_t blocks = (R + W - 1) / W;
    BitMatrix bits;
    PrimeMatrix digs;
    if (p == 2) bits = BitMatrix(R, R);
    else digs = PrimeMatrix(R, R, (uint32_t)p);

    std::mutex mu;
    auto run_block = [&](uint64_t b) {
        uint64_t lo = b * W;
        int w = (int)std::min<uint64_t>(W, R - lo);
        NormalFormTable tab(dc, p, lo, w, cfg.memory_budget);
        if (p == 2) {
            std::vector<uint64_t> out(R);
            for (uint64_t r = 0; r < R; r++) {
                uint64_t acc = 0;
                for (size_t k = 0; k < rho[r].idx.size(); k++)
                    if (rho[r].coef[k] & 1) acc ^= tab.bits(rho[r].idx[k]);
                out[r] = acc;
            }
            std::lock_guard<std::mutex> g(mu);
            for (uint64_t r = 0; r < R; r++) bits.put_word(r, lo, out[r]);
        } else {
            std::vector<uint32_t> out(R * w, 0);
            for (uint64_t r = 0; r < R; r++) {
                std::vector<long long> acc(w, 0);
                for (size_t k = 0; k < rho[r].idx.size(); k++) {
                    const uint8_t* d = tab.digits(rho[r].idx[k]);
                    for (int j = 0; j < w; j++) acc[j] += (long long)rho[r].coef[k] * d[j];
                }
                for (int j = 0; j < w; j++) out[r * w + j] = (uint32_t)(acc[j] % p);
            }
            std::lock_guard<std::mutex> g(mu);
            for (uint64_t r = 0; r < R; r++)
                for (int j = 0; j < w; j++) digs.set(r, lo + j, out[r * w + j]);
        }
        if (progress) progress("block " + std::to_string(b + 1) + "/" + std::to_string(blocks));
    };

    if (cfg.threads <= 1 || blocks <= 1) {
        for (uint64_t b = 0; b < blocks; b++) run_block(b);
    } else {
        std::vector<std::thread> pool;
        std::mutex qm;
        uint64_t next = 0;
        std::exception_ptr err;
        for (int t = 0; t < cfg.threads; t++)
            pool.emplace_back([&] {
                for (;;) {
                    uint64_t b;
                    {
                        std::lock_guard<std::mutex> g(qm);
                        if (next >= blocks || err) return;
                        b = next++;
                    }
                    try {
                        run_block(b);
                    } catch (...) {
                        std::lock_guard<std::mutex> g(qm);
                        err = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }

    UbrReport rep;
    rep.universe = u.size();
    rep.irreducible = R;
    rep.characteristic = p;
    if (p == 2) {
        rep.output = rank_nullity(bits).nullity;
        if (!cfg.export_path.empty()) save(bits, cfg.export_path);
    } else {
        rep.output = rank_nullity(digs).nullity;
        if (!cfg.export_path.empty()) save(digs, cfg.export_path);
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

TorsionVerdict torsion_probe(Algorithm alg, int m, int p, uint64_t lower_bound) {
    UbrConfig cfg;
    cfg.algorithm = alg;
    cfg.degree = m;
    cfg.characteristic = p;
    if (p != 2) cfg.block_width = 32;
    auto rep = output_upper(cfg);
    return {rep.output, lower_bound, p, rep.output == lower_bound};
}

}  // namespace ubr
