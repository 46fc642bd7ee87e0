#include "ubr/reduce.hpp"

#include <algorithm>
#include <stdexcept>

namespace ubr {

std::string Move::str() const {
    switch (kind) {
    case I: return "I";
    case Iprime: return "I'";
    case II: return "II_" + std::to_string(index);
    case IIprime: return "II'_" + std::to_string(index);
    case III:
        return "III(q=" + std::to_string(q) + ",p=" + std::to_string(p) + ",r=" + std::to_string(r) +
               ",d=" + std::to_string(d) + ")";
    }
    return "?";
}

namespace {

// all terms strictly below pi
bool descends(const LinComb& c, const Perm& pi) {
    for (auto& t : c.terms())
        if (!(t.first < pi)) return false;
    return true;
}

std::optional<LinComb> move_I(const Perm& pi) {
    int n = pi.n;
    if (pi(n) != n) return std::nullopt;
    Perm psi;
    psi.n = pi.n;
    psi.v[0] = 1;
    for (int i = 1; i < n; i++) psi.v[i] = (uint8_t)(pi.v[i - 1] + 1);
    return LinComb(psi);
}

// tau_i pi - tau_1..tau_{i-1} pi tau_{pi(i)-1}..tau_1
std::optional<LinComb> move_II(const Perm& pi, int i) {
    int n = pi.n;
    if (pi(i) != pi(i + 1) + 1) return std::nullopt;
    Perm a = compose(transposition(i, n), pi);
    Perm l = Perm::identity(n);
    for (int j = 1; j < i; j++) l = compose(l, transposition(j, n));
    Perm r = Perm::identity(n);
    for (int j = pi(i) - 1; j >= 1; j--) r = compose(r, transposition(j, n));
    LinComb c(a);
    c.add(compose(compose(l, pi), r), -1);
    return c;
}

// drop strand i+1 after pi(i) = pi(i+1)+1; lands in S_{n-1}
Perm merge(const Perm& pi, int i) {
    int n = pi.n;
    int lo = pi(i + 1);
    Perm r;
    r.n = (uint8_t)(n - 1);
    int w = 0;
    for (int k = 1; k <= n; k++) {
        if (k == i + 1) continue;
        int x = pi(k);
        if (k == i) x = lo;
        else if (x > lo + 1) x -= 1;
        r.v[w++] = (uint8_t)x;
    }
    return r;
}

// the eight terms of the H-relation: sigma in S_n with strands i < j, result in S_{n+1}
LinComb h_terms(const Perm& sigma, int i, int j) {
    int n = sigma.n;
    int a = sigma(i), b = sigma(j);
    auto mk = [&](int sl, int sr, int fk, int fval, int lo, int hi) {
        Perm p;
        p.n = (uint8_t)(n + 1);
        for (int k = 1; k <= n; k++) {
            if (k == sl) continue;
            int nk = k < sl ? k : k + 1;
            int x;
            if (k == fk) x = fval;
            else {
                int c = sigma(k);
                x = c < sr ? c : c + 1;
            }
            p.v[nk - 1] = (uint8_t)x;
        }
        p.v[sl - 1] = (uint8_t)lo;
        p.v[sl] = (uint8_t)hi;
        return p;
    };
    LinComb out;
    int bb = b < a ? b : b + 1;
    const int s1v[2] = {1, -1};
    for (int t1 = 0; t1 < 2; t1++) {
        int vi = t1 ? a + 1 : a, rung = t1 ? a : a + 1;
        for (int t2 = 0; t2 < 2; t2++) {
            int lo = t2 ? bb : rung, hi = t2 ? rung : bb;
            out.add(mk(j, a, i, vi, lo, hi), s1v[t1] * s1v[t2]);
        }
    }
    int aa = a < b ? a : a + 1;
    for (int t1 = 0; t1 < 2; t1++) {
        int rung = t1 ? b + 1 : b, vj = t1 ? b : b + 1;
        for (int t2 = 0; t2 < 2; t2++) {
            int lo = t2 ? rung : aa, hi = t2 ? aa : rung;
            out.add(mk(i, b, j, vj, lo, hi), -s1v[t1] * s1v[t2]);
        }
    }
    return out;
}

}  // namespace

std::optional<LinComb> h_relation(const Perm& pi, int p, int r, int q, int d) {
    int N = pi.n;
    int o = r == p ? p + 1 : p;
    if (pi(q) != pi(r) + d) return std::nullopt;
    Perm sigma;
    sigma.n = (uint8_t)(N - 1);
    int w = 0, i, j;
    if (q < p) {
        int a = std::min(pi(q), pi(r)), bv = pi(o);
        int b = bv < a ? bv : bv - 1;
        for (int k = 1; k <= N; k++) {
            if (k == p + 1) continue;
            int x;
            if (k == p) x = b;
            else if (k == q) x = a;
            else x = pi(k) < a ? pi(k) : pi(k) - 1;
            sigma.v[w++] = (uint8_t)x;
        }
        i = q, j = p;
    } else {
        int b = std::min(pi(q), pi(r)), av = pi(o);
        int a = av < b ? av : av - 1;
        for (int k = 1; k <= N; k++) {
            if (k == p + 1) continue;
            int x;
            if (k == p) x = a;
            else if (k == q) x = b;
            else x = pi(k) < b ? pi(k) : pi(k) - 1;
            sigma.v[w++] = (uint8_t)x;
        }
        i = p, j = q - 1;
    }
    return h_terms(sigma, i, j);
}

namespace {

// first move III (scan q, p, r) whose relation has pi as its largest term with unit coefficient
std::optional<Move> first_move_III(const Perm& pi, LinComb* out) {
    int N = pi.n;
    for (int q = 1; q <= N; q++) {
        for (int p = 1; p < N; p++) {
            if (p <= q && q <= p + 1) continue;
            int d = q < p ? 1 : -1;
            for (int r = p; r <= p + 1; r++) {
                if (pi(q) != pi(r) + d) continue;
                auto rel = h_relation(pi, p, r, q, d);
                if (!rel) continue;
                long long c = rel->coeff(pi);
                if (c != 1 && c != -1) continue;
                if (!(rel->terms().back().first == pi)) continue;
                if (out) {
                    LinComb res;
                    for (auto& [t, x] : rel->terms())
                        if (!(t == pi)) res.add(t, -x * c);
                    *out = res;
                }
                Move mv{Move::III};
                mv.p = p, mv.r = r, mv.q = q, mv.d = d;
                return mv;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Move> smallest_reducing_move_A(const Perm& pi) {
    int n = pi.n;
    if (auto c = move_I(pi); c && descends(*c, pi)) return Move{Move::I};
    for (int i = 1; i < n; i++)
        if (auto c = move_II(pi, i); c && descends(*c, pi)) return Move{Move::II, i};
    return first_move_III(pi, nullptr);
}

std::optional<Move> smallest_reducing_move_B(const Perm& pi) {
    int n = pi.n;
    if (n < 3) throw std::invalid_argument("algorithm B needs n >= 3");
    auto om = orbit_minimize(pi);
    if (om.perm < pi) return Move{Move::Iprime};
    if (n >= 4)
        for (int i = 1; i < n; i++)
            if (pi(i) == pi(i + 1) + 1) return Move{Move::IIprime, i};
    return first_move_III(pi, nullptr);
}

LinComb apply_move(const Perm& pi, const Move& mv) {
    switch (mv.kind) {
    case Move::I: {
        auto c = move_I(pi);
        if (!c) throw std::invalid_argument("move I not applicable");
        return *c;
    }
    case Move::II: {
        if (mv.index < 1 || mv.index >= pi.n) throw std::invalid_argument("move II index out of range");
        auto c = move_II(pi, mv.index);
        if (!c) throw std::invalid_argument("move II not applicable");
        return *c;
    }
    case Move::Iprime: {
        auto om = orbit_minimize(pi);
        return LinComb(om.perm, om.sign);
    }
    case Move::IIprime: {
        int i = mv.index;
        if (pi.n < 4 || i < 1 || i >= pi.n || pi(i) != pi(i + 1) + 1)
            throw std::invalid_argument("move II' not applicable");
        LinComb c(compose(transposition(i, pi.n), pi));
        c.add(merge(pi, i), -1);
        return c;
    }
    case Move::III: {
        auto rel = h_relation(pi, mv.p, mv.r, mv.q, mv.d);
        if (!rel) throw std::invalid_argument("move III not applicable");
        long long c = rel->coeff(pi);
        if (c != 1 && c != -1) throw std::invalid_argument("move III not applicable");
        LinComb res;
        for (auto& [t, x] : rel->terms())
            if (!(t == pi)) res.add(t, -x * c);
        return res;
    }
    }
    throw std::logic_error("bad move");
}

LinComb delta(Algorithm alg, const Perm& pi) {
    auto mv = alg == Algorithm::A ? smallest_reducing_move_A(pi) : smallest_reducing_move_B(pi);
    if (!mv) return LinComb(pi);
    return apply_move(pi, *mv);
}

bool is_irreducible(Algorithm alg, const Perm& pi) {
    return !(alg == Algorithm::A ? smallest_reducing_move_A(pi) : smallest_reducing_move_B(pi));
}

// ---- Universe

Universe::Universe(Algorithm alg, int m) : alg_(alg), m_(m) {
    if (alg == Algorithm::A) {
        if (m < 2) throw std::invalid_argument("algorithm A needs m >= 2");
        lo_ = hi_ = m - 1;
    } else {
        if (m < 3) throw std::invalid_argument("algorithm B needs m >= 3");
        lo_ = 3, hi_ = m;
    }
    if (hi_ > 13) throw std::invalid_argument("degree too large for this build");
    offset_.assign(hi_ + 2, 0);
    uint64_t acc = 0;
    for (int n = lo_; n <= hi_; n++) {
        offset_[n] = acc;
        acc += factorial(n);
    }
    total_ = acc;
}

uint64_t Universe::index(const Perm& p) const {
    if (!contains(p)) throw std::out_of_range("permutation " + p.str() + " outside the universe");
    return offset_[p.n] + perm_rank(p);
}

Perm Universe::at(uint64_t idx) const {
    for (int n = hi_; n >= lo_; n--)
        if (idx >= offset_[n]) return perm_unrank(idx - offset_[n], n);
    throw std::out_of_range("universe index");
}

// ---- DeltaCache

DeltaCache::DeltaCache(const Universe& u) : u_(u) {
    uint64_t N = u.size();
    if (N >= (uint64_t(1) << 32)) throw std::length_error("universe too large for 32-bit term indices");
    irr_id_.assign(N, -1);
    off_.reserve(N + 1);
    off_.push_back(0);
    uint64_t idx = 0;
    for (int n = u.min_n(); n <= u.max_n(); n++) {
        // walk S_n in lexicographic order
        Perm p = Perm::identity(n);
        uint64_t cnt = factorial(n);
        for (uint64_t k = 0; k < cnt; k++, idx++) {
            auto mv = u.algorithm() == Algorithm::A ? smallest_reducing_move_A(p) : smallest_reducing_move_B(p);
            if (!mv) {
                irr_id_[idx] = (int32_t)irr_.size();
                irr_.push_back(idx);
            } else if (mv->kind == Move::Iprime) {
                // skip the LinComb machinery for the common case
                auto om = orbit_minimize(p);
                tidx_.push_back((uint32_t)u.index(om.perm));
                tcoef_.push_back((int8_t)om.sign);
            } else {
                LinComb img = apply_move(p, *mv);
                for (auto& [t, c] : img.terms()) {
                    if (c < -127 || c > 127) throw std::overflow_error("delta coefficient");
                    tidx_.push_back((uint32_t)u.index(t));
                    tcoef_.push_back((int8_t)c);
                }
            }
            off_.push_back(tidx_.size());
            std::next_permutation(p.v.begin(), p.v.begin() + n);
        }
    }
}

// ---- NormalFormTable

NormalFormTable::NormalFormTable(const DeltaCache& dc, int p, uint64_t block_lo, int width,
                                 uint64_t memory_budget)
    : p_(p), lo_(block_lo), w_(width) {
    if (p < 2 || p > 251) throw std::invalid_argument("table characteristic must be a prime below 256");
    if (width < 1 || (p == 2 && width > 64)) throw std::invalid_argument("bad block width");
    uint64_t N = dc.universe().size();
    uint64_t need = p == 2 ? N * 8 : N * (uint64_t)width;
    if (need > memory_budget) {
        uint64_t fit = p == 2 ? 0 : memory_budget / N;
        throw std::length_error("normal-form table needs " + std::to_string(need >> 20) +
                                " MiB; largest block width that fits: " + std::to_string(fit));
    }
    if (p == 2) {
        bits_.assign(N, 0);
        for (uint64_t i = 0; i < N; i++) {
            int64_t id = dc.irreducible_id(i);
            if (id >= 0) {
                if ((uint64_t)id >= lo_ && (uint64_t)id < lo_ + (uint64_t)w_) bits_[i] = uint64_t(1) << (id - lo_);
                continue;
            }
            int len;
            auto [ti, tc] = dc.terms(i, len);
            uint64_t acc = 0;
            for (int k = 0; k < len; k++)
                if (tc[k] & 1) acc ^= bits_[ti[k]];
            bits_[i] = acc;
        }
    } else {
        dig_.assign(N * (uint64_t)w_, 0);
        std::vector<int> acc(w_);
        for (uint64_t i = 0; i < N; i++) {
            int64_t id = dc.irreducible_id(i);
            uint8_t* row = &dig_[i * w_];
            if (id >= 0) {
                if ((uint64_t)id >= lo_ && (uint64_t)id < lo_ + (uint64_t)w_) row[id - lo_] = 1;
                continue;
            }
            int len;
            auto [ti, tc] = dc.terms(i, len);
            std::fill(acc.begin(), acc.end(), 0);
            for (int k = 0; k < len; k++) {
                int c = ((tc[k] % p) + p) % p;
                if (!c) continue;
                const uint8_t* src = &dig_[(uint64_t)ti[k] * w_];
                for (int j = 0; j < w_; j++) acc[j] += c * src[j];
            }
            for (int j = 0; j < w_; j++) row[j] = (uint8_t)(acc[j] % p);
        }
    }
}

uint64_t NormalFormTable::reduce_bits(const LinComb& c, const Universe& u) const {
    uint64_t acc = 0;
    for (auto& [t, x] : c.terms())
        if (x & 1) acc ^= bits_[u.index(t)];
    return acc;
}

std::vector<uint8_t> NormalFormTable::reduce(const LinComb& c, const Universe& u) const {
    std::vector<uint8_t> out(w_, 0);
    if (p_ == 2) {
        uint64_t b = reduce_bits(c, u);
        for (int j = 0; j < w_; j++) out[j] = b >> j & 1;
        return out;
    }
    std::vector<long long> acc(w_, 0);
    for (auto& [t, x] : c.terms()) {
        long long f = ((x % p_) + p_) % p_;
        if (!f) continue;
        const uint8_t* src = digits(u.index(t));
        for (int j = 0; j < w_; j++) acc[j] += f * src[j];
    }
    for (int j = 0; j < w_; j++) out[j] = (uint8_t)(acc[j] % p_);
    return out;
}

}  // namespace ubr
