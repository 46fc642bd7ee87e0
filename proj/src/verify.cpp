#include "ubr/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "ubr/driver.hpp"
#include "ubr/series.hpp"
#include "ubr/thicken.hpp"

namespace ubr {

namespace {

std::string num(uint64_t x) { return std::to_string(x); }

void moves_suite(std::vector<Check>& out, int maxn) {
    for (Algorithm alg : {Algorithm::A, Algorithm::B}) {
        int lo = alg == Algorithm::A ? 2 : 3;
        for (int n = lo; n <= maxn; n++) {
            uint64_t bad = 0, red = 0;
            Perm p = Perm::identity(n);
            do {
                LinComb d = delta(alg, p);
                if (d.size() == 1 && d.terms()[0].first == p && d.terms()[0].second == 1) continue;
                red++;
                for (auto& [t, c] : d.terms())
                    if (!(t < p)) bad++;
            } while (std::next_permutation(p.v.begin(), p.v.begin() + n));
            out.push_back({std::string("descent ") + algorithm_name(alg) + " S_" + std::to_string(n), bad == 0,
                           num(red) + " reducible, " + num(bad) + " bad terms"});
        }
        // table entries of irreducibles are unit vectors, so Delta is idempotent
        int m = alg == Algorithm::A ? maxn + 1 : maxn;
        Universe u(alg, m);
        DeltaCache dc(u);
        bool ok = true;
        for (uint64_t lo_id = 0; lo_id < dc.irreducible_count(); lo_id += 64) {
            NormalFormTable tab(dc, 2, lo_id, 64);
            for (uint64_t r = 0; r < dc.irreducible_count(); r++) {
                uint64_t want = r >= lo_id && r < lo_id + 64 ? uint64_t(1) << (r - lo_id) : 0;
                if (tab.bits(dc.irreducibles()[r]) != want) ok = false;
            }
        }
        out.push_back({std::string("idempotence ") + algorithm_name(alg) + " m=" + std::to_string(m), ok, ""});
    }
}

void surfaces_suite(std::vector<Check>& out, int maxm) {
    PhiOptions brute;
    brute.brute_force = true;
    // euler characteristic and fast path against the reference enumeration
    bool chi_ok = true, fast_ok = true;
    for (int m = 2; m <= std::min(maxm, 5); m++)
        for (auto& c : enumerate_caterpillars(m, std::nullopt, true)) {
            auto g = build_caterpillar(c);
            auto b = phi_tilde(g, brute);
            for (auto& [s, x] : b)
                if (s.euler != c.u() - m) chi_ok = false;
            if (phi_tilde(g) != b) fast_ok = false;
        }
    out.push_back({"euler characteristic u-m", chi_ok, ""});
    out.push_back({"fast trace equals full enumeration", fast_ok, ""});
    // antisymmetry at every trivalent vertex
    for (auto parts : {std::vector<int>{2}, std::vector<int>{4}, std::vector<int>{1, 1}}) {
        Composition c{parts};
        auto g = build_caterpillar(c);
        auto base = phi_tilde(g);
        bool ok = !base.empty();
        for (int v = 0; v < g.vertices(); v++) {
            if (g.rot[v].size() != 3) continue;
            auto r = phi_tilde(g.reflected_at(v));
            for (auto& [s, x] : base)
                if (r[s] != -x) ok = false;
            if (r.size() != base.size()) ok = false;
        }
        out.push_back({"AS " + c.str(), ok, ""});
    }
    // IHX on every edge between two trivalent vertices: with the darts at the
    // ends of e read counterclockwise as (e,a1,a2) and (e,b1,b2), I = H + X where
    // H swaps a2 with b2 and X swaps a2 with b1
    bool ihx_ok = true;
    int ihx_n = 0;
    for (int m = 3; m <= std::min(maxm, 5); m++)
        for (auto& c : enumerate_caterpillars(m)) {
            auto g = build_caterpillar(c);
            std::vector<int> owner(g.darts);
            for (int v = 0; v < g.vertices(); v++)
                for (int d : g.rot[v]) owner[d] = v;
            auto I = phi_tilde(g);
            for (auto [d1, d2] : g.edges) {
                int v = owner[d1], w = owner[d2];
                if (v == w || g.rot[v].size() != 3 || g.rot[w].size() != 3) continue;
                auto at = [&](int x, int d, int k) {
                    auto& r = g.rot[x];
                    int i = (int)(std::find(r.begin(), r.end(), d) - r.begin());
                    return r[(i + k) % 3];
                };
                int a2 = at(v, d1, 2), b1 = at(w, d2, 1), b2 = at(w, d2, 2);
                SurfaceVector sum = phi_tilde(g.swap_ends(a2, b2));
                for (auto& [s, x] : phi_tilde(g.swap_ends(a2, b1))) sum[s] += x;
                std::erase_if(sum, [](auto& e) { return e.second == 0; });
                if (sum != I) ihx_ok = false;
                ihx_n++;
            }
        }
    out.push_back({"IHX", ihx_ok, num(ihx_n) + " edges"});
    bool odd_ok = true, rev_ok = true;
    for (int m = 2; m <= std::min(maxm, 7); m++)
        for (auto& c : enumerate_caterpillars(m, std::nullopt, true)) {
            if (c.u() % 2 && !phi_tilde(c).empty()) odd_ok = false;
            if (m <= 6 && c.u() % 2 == 0) {
                Composition r{{c.parts.rbegin(), c.parts.rend()}};
                if (phi_tilde(build_caterpillar(r)) != phi_tilde(c)) rev_ok = false;
            }
        }
    out.push_back({"odd u vanishes", odd_ok, ""});
    out.push_back({"reversal symmetry", rev_ok, ""});
}

void series_suite(std::vector<Check>& out) {
    std::vector<long long> prim = {0};
    for (int m = 1; m <= 12; m++) prim.push_back((long long)known_primitive_rank(m));
    auto t = algebra_ranks(prim, 12);
    const std::vector<uint64_t> a = {1, 1, 2, 3, 6, 10, 19, 33, 60, 104, 184, 316, 548};
    const std::vector<uint64_t> r = {1, 0, 1, 1, 3, 4, 9, 14, 27, 44, 80, 132, 232};
    out.push_back({"rk A_m, m=0..12", t.algebra == a, ""});
    out.push_back({"rk A^r_m, m=0..12", t.reduced == r, ""});
    bool cum = true;
    uint64_t s = 0;
    for (int m = 0; m <= 12; m++) {
        s += t.reduced[m];
        if (s != t.algebra[m]) cum = false;
    }
    out.push_back({"cumulative identity", cum, ""});
}

void sandwich_suite(std::vector<Check>& out, int maxm) {
    for (int m = 2; m <= maxm; m++) {
        auto lb = lower_bound(m);
        UbrConfig ca;
        ca.degree = m;
        uint64_t oa = output_upper(ca).output;
        bool ok = lb.total <= oa;
        std::string d = "O_C=" + num(lb.total) + " O_A=" + num(oa);
        if (m >= 3) {
            UbrConfig cb = ca;
            cb.algorithm = Algorithm::B;
            uint64_t ob = output_upper(cb).output;
            ok = ok && lb.total <= ob;
            d += " O_B=" + num(ob);
        }
        if (lb.total == oa) d += " (rank determined, no 2-torsion)";
        out.push_back({"sandwich m=" + std::to_string(m), ok, d});
    }
}

}  // namespace

std::vector<Check> verify_suite(const std::string& suite, int max_degree) {
    std::vector<Check> out;
    if (suite == "moves") moves_suite(out, std::min(max_degree, 7));
    else if (suite == "surfaces") surfaces_suite(out, max_degree);
    else if (suite == "series") series_suite(out);
    else if (suite == "sandwich") sandwich_suite(out, max_degree);
    else throw std::invalid_argument("unknown suite " + suite);
    return out;
}

}  // namespace ubr
