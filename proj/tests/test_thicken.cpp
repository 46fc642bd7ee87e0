#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "ubr/thicken.hpp"

using namespace ubr;

namespace {

Composition C(std::vector<int> v) { return Composition{v}; }

SurfaceVector negate(SurfaceVector v) {
    for (auto& [s, c] : v) c = -c;
    return v;
}

// independent boundary walk on a single marking: sides of dart d are 2d (left) and 2d+1 (right);
// counts boundary cycles, orientability via a BFS two-colouring of vertex orientations
struct Walk {
    int components = 0;
    bool orientable = true;
};
Walk walk(const RibbonGraph& g, const Marking& mk) {
    int D = g.darts;
    std::vector<int> mate(D), edge_of(D), owner(D);
    for (int e = 0; e < (int)g.edges.size(); e++) {
        auto [a, b] = g.edges[e];
        mate[a] = b, mate[b] = a, edge_of[a] = edge_of[b] = e;
    }
    for (int v = 0; v < g.vertices(); v++)
        for (int d : g.rot[v]) owner[d] = v;
    // union-find on sides
    std::vector<int> uf(2 * D);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    auto join = [&](int a, int b) { uf[find(a)] = find(b); };
    for (auto& r : g.rot) {
        int k = (int)r.size();
        for (int i = 0; i < k; i++) join(2 * r[i], 2 * r[(i + 1) % k] + 1);
    }
    for (int e = 0; e < (int)g.edges.size(); e++) {
        auto [a, b] = g.edges[e];
        if (mk[e] == 0) join(2 * a, 2 * b + 1), join(2 * a + 1, 2 * b);
        else join(2 * a, 2 * b), join(2 * a + 1, 2 * b + 1);
    }
    Walk w;
    std::set<int> roots;
    for (int s = 0; s < 2 * D; s++) roots.insert(find(s));
    w.components = (int)roots.size();
    std::vector<int> col(g.vertices(), 0);
    std::vector<int> st = {0};
    col[0] = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int d : g.rot[v]) {
            int x = owner[mate[d]];
            int want = mk[edge_of[d]] ? -col[v] : col[v];
            if (!col[x]) col[x] = want, st.push_back(x);
            else if (col[x] != want) w.orientable = false;
        }
    }
    return w;
}

}  // namespace

TEST_CASE("enumerating caterpillars") {
    auto two = enumerate_caterpillars(2);
    REQUIRE(two.size() == 1);
    CHECK(two[0] == C({2}));
    auto four = enumerate_caterpillars(4);
    std::set<Composition> got, want;
    for (auto& c : four) got.insert(c.canonical_form());
    for (auto& c : {C({4}), C({2, 0, 0}), C({0, 2, 0}), C({1, 1, 0}), C({1, 0, 1})}) want.insert(c.canonical_form());
    CHECK(four.size() == 5);
    CHECK(got == want);
    // brute force: compositions of u into k parts modulo reversal
    for (int m = 3; m <= 9; m++) {
        std::set<Composition> want;
        for (int k = 1; k <= m - 1; k++) {
            int u = m - k + 1;
            if (u % 2) continue;
            std::vector<int> parts(k, 0);
            std::function<void(int, int)> rec = [&](int j, int rem) {
                if (j == k - 1) {
                    parts[j] = rem;
                    std::vector<int> r(parts.rbegin(), parts.rend());
                    want.insert(C(std::min(parts, r)));
                    return;
                }
                for (int x = 0; x <= rem; x++) parts[j] = x, rec(j + 1, rem - x);
            };
            rec(0, u);
        }
        std::set<Composition> have;
        for (auto& c : enumerate_caterpillars(m)) have.insert(c.canonical_form());
        CHECK(have == want);
        CHECK(enumerate_caterpillars(m).size() == want.size());
    }
}

TEST_CASE("building ladders") {
    auto w2 = build_caterpillar(C({2}));
    CHECK(w2.vertices() == 4);
    CHECK(w2.edges.size() == 4);
    CHECK(w2.vertices() - (int)w2.edges.size() == 0);
    auto w = build_caterpillar(C({3, 0, 2}));
    CHECK(w.degree() == 7);
    CHECK(w.univalent() == 5);
    CHECK(w.trivalent() == 9);
    CHECK(w.edges.size() == 16);
    for (auto& c : enumerate_caterpillars(8, std::nullopt, true)) {
        auto g = build_caterpillar(c);
        CHECK(g.degree() == c.m());
        CHECK(g.univalent() == c.u());
        CHECK(g.vertices() - (int)g.edges.size() == c.u() - c.m());
    }
}

TEST_CASE("tracing single markings") {
    auto w2 = build_caterpillar(C({2}));
    auto s = trace_surface(w2, Marking(4, 0));
    REQUIRE(s.has_value());
    CHECK(s->orientable);
    CHECK(s->euler == 0);
    CHECK(s->marks == std::vector<int>{0, 2});
    // every marking: euler characteristic u - m and the independent walk's component count
    for (auto c : {C({2}), C({1, 1}), C({4}), C({2, 0, 0}), C({1, 0, 1}), C({3})}) {
        auto g = build_caterpillar(c);
        int E = (int)g.edges.size();
        for (uint32_t bits = 0; bits < (1u << E); bits++) {
            Marking mk(E);
            for (int e = 0; e < E; e++) mk[e] = bits >> e & 1;
            auto t = trace_surface(g, mk);
            if (!t) continue;
            auto wk = walk(g, mk);
            CHECK(t->euler == c.u() - c.m());
            CHECK(t->orientable == wk.orientable);
            CHECK((int)t->marks.size() == wk.components);
            int total = 0;
            for (int x : t->marks) total += x;
            CHECK(total == c.u());
        }
    }
}

TEST_CASE("phi: fast path, odd u, antisymmetry, reversal") {
    PhiOptions brute;
    brute.brute_force = true;
    for (int m = 2; m <= 5; m++)
        for (auto& c : enumerate_caterpillars(m, std::nullopt, true)) CHECK(phi_tilde(c) == phi_tilde(c, brute));
    for (int m = 2; m <= 7; m++)
        for (auto& c : enumerate_caterpillars(m, std::nullopt, true)) {
            if (c.u() % 2) CHECK(phi_tilde(c).empty());
            else {
                CHECK_FALSE(phi_tilde(c).empty());
                Composition r{{c.parts.rbegin(), c.parts.rend()}};
                CHECK(phi_tilde(r) == phi_tilde(c));
            }
        }
    auto g = build_caterpillar(C({2, 0, 2}));
    auto base = phi_tilde(g);
    for (int v = 0; v < g.vertices(); v++)
        if (g.rot[v].size() == 3) CHECK(phi_tilde(g.reflected_at(v)) == negate(base));
}

TEST_CASE("resource guard") {
    PhiOptions tiny;
    tiny.max_edges = 5;
    CHECK_THROWS_WITH_AS(phi_tilde(C({2, 2}), tiny), doctest::Contains("degree too large"), std::length_error);
}

TEST_CASE("joining legs") {
    auto h = build_caterpillar(C({4}));
    auto j = join_legs(h, 0, 2);
    CHECK(j.univalent() == 2);
    CHECK(j.degree() == 3);
    CHECK(j.betti() == h.betti() + 1);
    CHECK_THROWS(join_legs(h, 1, 1));
    CHECK_THROWS(join_legs(h, 0, 4));
    for (int m = 3; m <= 6; m++)
        for (int u : {2, 4})
            for (auto& g : closed_caterpillars(m, u)) {
                CHECK(g.degree() == m);
                CHECK(g.univalent() == u);
                auto v = phi_tilde(g);
                for (auto& [s, c] : v) CHECK(s.euler == u - m);
            }
}

TEST_CASE("lower bounds") {
    CHECK(lower_bound(2).total == 1);
    auto six = lower_bound(6);
    CHECK(six.total == 5);
    CHECK(six.per_u == std::map<int, uint64_t>{{2, 2}, {4, 2}, {6, 1}});
    // ladders alone only reach one dimension with two legs
    LowerOptions bare;
    bare.closures = false;
    CHECK(lower_bound(6, bare).per_u.at(2) == 1);
    // odd strata contribute nothing
    LowerOptions odd;
    odd.include_odd = true;
    auto o = lower_bound(6, odd);
    CHECK(o.per_u.at(3) == 0);
    CHECK(o.per_u.at(5) == 0);
    CHECK(o.total == 5);
    // exact and modular ranks agree
    LowerOptions mod;
    mod.mode = RankMode::Modular;
    CHECK(lower_bound(7, mod).per_u == lower_bound(7).per_u);
}
