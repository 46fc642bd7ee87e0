#include "ubr/thicken.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace ubr {

// ---- compositions

int Composition::u() const { return std::accumulate(parts.begin(), parts.end(), 0); }

bool Composition::canonical() const {
    std::vector<int> r(parts.rbegin(), parts.rend());
    return parts <= r;
}

Composition Composition::canonical_form() const {
    std::vector<int> r(parts.rbegin(), parts.rend());
    return {std::min(parts, r)};
}

std::string Composition::str() const {
    std::string s = "w(";
    for (size_t i = 0; i < parts.size(); i++) s += (i ? "," : "") + std::to_string(parts[i]);
    return s + ")";
}

std::vector<Composition> enumerate_caterpillars(int m, std::optional<int> u_only, bool include_odd) {
    if (m < 2) throw std::invalid_argument("caterpillars need degree >= 2");
    std::vector<Composition> out;
    for (int k = 1; k <= m - 1; k++) {
        int u = m - k + 1;
        if (u < 2) continue;
        if (u_only && u != *u_only) continue;
        if (!u_only && u % 2 && !include_odd) continue;
        std::vector<int> parts(k, 0);
        std::function<void(int, int)> rec = [&](int j, int rem) {
            if (j == k - 1) {
                parts[j] = rem;
                Composition c{parts};
                if (c.canonical()) out.push_back(c);
                return;
            }
            for (int x = 0; x <= rem; x++) {
                parts[j] = x;
                rec(j + 1, rem - x);
            }
        };
        rec(0, u);
    }
    return out;
}

// ladder: the outline cycle carries the bottom rung ends, then for each segment from the
// last to the first its legs followed by the top rung end; rungs close the k-1 inner faces
RibbonGraph build_caterpillar(const Composition& c) {
    int k = c.k();
    if (k < 1 || c.u() < 1) throw std::invalid_argument("bad composition");
    for (int x : c.parts)
        if (x < 0) throw std::invalid_argument("negative part");
    RibbonGraph g;
    auto add_vertex = [&](int deg) {
        std::vector<int> ds;
        for (int i = 0; i < deg; i++) ds.push_back(g.darts++);
        g.rot.push_back(ds);
        return ds;
    };
    struct Slot {
        char kind;
        int seg;
    };
    std::vector<Slot> seq;
    for (int j = 0; j < k - 1; j++) seq.push_back({'b', j});
    for (int j = k - 1; j >= 0; j--) {
        for (int l = 0; l < c.parts[j]; l++) seq.push_back({'l', j});
        if (j > 0) seq.push_back({'t', j - 1});
    }
    int r = (int)seq.size();
    std::vector<std::pair<int, int>> ring;   // (prev dart, next dart) per outline vertex
    std::vector<std::vector<int>> rung(k);
    for (auto [kind, j] : seq) {
        if (kind == 'l') {
            auto ds = add_vertex(3);   // prev, out, next
            auto w = add_vertex(1);
            g.uni.push_back((int)g.rot.size() - 1);
            g.edges.push_back({ds[1], w[0]});
            ring.push_back({ds[0], ds[2]});
        } else {
            auto ds = add_vertex(3);   // prev, next, in
            ring.push_back({ds[0], ds[1]});
            rung[j].push_back(ds[2]);
        }
    }
    if (r == 1) throw std::invalid_argument("degenerate caterpillar");
    for (int i = 0; i < r; i++) g.edges.push_back({ring[i].second, ring[(i + 1) % r].first});
    for (int j = 0; j < k - 1; j++) g.edges.push_back({rung[j][0], rung[j][1]});
    return g;
}

// ---- ribbon graphs

int RibbonGraph::trivalent() const {
    int t = 0;
    for (auto& r : rot) t += r.size() == 3;
    return t;
}

int RibbonGraph::betti() const { return (int)edges.size() - vertices() + 1; }

void RibbonGraph::validate() const {
    std::vector<int> seen(darts, 0);
    for (auto& r : rot) {
        if (r.size() != 1 && r.size() != 3) throw std::invalid_argument("vertex degree must be 1 or 3");
        for (int d : r) {
            if (d < 0 || d >= darts || seen[d]++) throw std::invalid_argument("bad dart in rotation");
        }
    }
    std::vector<int> used(darts, 0);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= darts || b >= darts || a == b || used[a]++ || used[b]++)
            throw std::invalid_argument("bad edge");
    }
    for (int d = 0; d < darts; d++)
        if (!seen[d] || !used[d]) throw std::invalid_argument("dart not covered");
    int nuni = 0;
    for (auto& r : rot) nuni += r.size() == 1;
    if (nuni != (int)uni.size()) throw std::invalid_argument("univalent list mismatch");
    for (int w : uni)
        if (w < 0 || w >= vertices() || rot[w].size() != 1) throw std::invalid_argument("bad univalent vertex");
    // connected
    std::vector<int> vof(darts), mate(darts);
    for (int v = 0; v < vertices(); v++)
        for (int d : rot[v]) vof[d] = v;
    for (auto [a, b] : edges) mate[a] = b, mate[b] = a;
    std::vector<char> vis(vertices(), 0);
    std::vector<int> st = {0};
    vis[0] = 1;
    int cnt = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int d : rot[v]) {
            int w = vof[mate[d]];
            if (!vis[w]) vis[w] = 1, cnt++, st.push_back(w);
        }
    }
    if (cnt != vertices()) throw std::invalid_argument("graph not connected");
}

RibbonGraph RibbonGraph::reflected_at(int v) const {
    RibbonGraph g = *this;
    std::reverse(g.rot[v].begin(), g.rot[v].end());
    return g;
}

RibbonGraph RibbonGraph::swap_ends(int d1, int d2) const {
    RibbonGraph g = *this;
    for (auto& [a, b] : g.edges) {
        auto f = [&](int x) { return x == d1 ? d2 : x == d2 ? d1 : x; };
        a = f(a), b = f(b);
    }
    return g;
}

std::string NormalizedSurface::str() const {
    std::string s = orientable ? "O" : "N";
    s += " chi=" + std::to_string(euler) + " [";
    for (size_t i = 0; i < marks.size(); i++) s += (i ? "," : "") + std::to_string(marks[i]);
    return s + "]";
}

// ---- tracing

namespace {

// side points: 2d left of dart d, 2d+1 right; at a vertex left(d_i) meets right(d_{i+1})
struct Frame {
    int V, E, nd;
    std::vector<int> vof, mate, corner, eof;
    std::vector<char> leaf;   // vertex is univalent

    explicit Frame(const RibbonGraph& g) : V(g.vertices()), E((int)g.edges.size()), nd(g.darts) {
        vof.assign(nd, 0), mate.assign(nd, 0), corner.assign(2 * nd, 0), eof.assign(nd, 0);
        leaf.assign(V, 0);
        for (int v = 0; v < V; v++) {
            int r = (int)g.rot[v].size();
            leaf[v] = r == 1;
            for (int i = 0; i < r; i++) {
                int d = g.rot[v][i];
                vof[d] = v;
                int a = 2 * d, b = 2 * g.rot[v][(i + 1) % r] + 1;
                corner[a] = b, corner[b] = a;
            }
        }
        for (int e = 0; e < E; e++) {
            auto [a, b] = g.edges[e];
            mate[a] = b, mate[b] = a, eof[a] = eof[b] = e;
        }
    }
    // partner side point across the band of side point s
    int across(int s, bool twisted) const {
        int d2 = mate[s >> 1];
        return 2 * d2 + ((s & 1) ^ (twisted ? 0 : 1));
    }
};

}  // namespace

std::optional<NormalizedSurface> trace_surface(const RibbonGraph& g, const Marking& mk) {
    if ((int)mk.size() != (int)g.edges.size()) throw std::invalid_argument("marking length mismatch");
    Frame f(g);
    // orientation of each vertex relative to vertex 0
    std::vector<int> o(f.V, 0);
    o[0] = 1;
    bool orient = true;
    std::vector<int> st = {0};
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int d : g.rot[v]) {
            int w = f.vof[f.mate[d]];
            int want = mk[f.eof[d]] ? -o[v] : o[v];
            if (!o[w]) o[w] = want, st.push_back(w);
            else if (o[w] != want) orient = false;
        }
    }
    std::vector<char> seen(2 * f.nd, 0);
    std::vector<std::vector<int>> words;
    for (int s = 0; s < 2 * f.nd; s++) {
        if (seen[s]) continue;
        std::vector<int> word;
        int cur = s, dirn = 0;
        for (;;) {
            seen[cur] = 1;
            int b = f.corner[cur];
            seen[b] = 1;
            int v = f.vof[cur >> 1];
            int sg = cur & 1 ? -1 : 1;
            if (!dirn) dirn = sg * o[v];
            if (f.leaf[v]) word.push_back(sg);
            cur = f.across(b, mk[f.eof[b >> 1]]);
            if (cur == s) break;
        }
        if (orient && dirn < 0) {
            std::reverse(word.begin(), word.end());
            for (int& x : word) x = -x;
        }
        words.push_back(word);
    }
    if (orient) {
        int seen_sign = 0;
        for (auto& w : words)
            for (int x : w) {
                if (!seen_sign) seen_sign = x;
                else if (x != seen_sign) return std::nullopt;
            }
    } else {
        for (auto& w : words)
            for (int x : w)
                if (x != w[0]) return std::nullopt;
    }
    NormalizedSurface ns;
    ns.orientable = orient;
    ns.euler = f.V - f.E;
    for (auto& w : words) ns.marks.push_back((int)w.size());
    std::sort(ns.marks.begin(), ns.marks.end());
    return ns;
}

namespace {

SurfaceVector phi_brute(const RibbonGraph& g) {
    int E = (int)g.edges.size();
    SurfaceVector out;
    Marking mk(E, 0);
    for (uint64_t mask = 0; mask < (uint64_t(1) << E); mask++) {
        for (int e = 0; e < E; e++) mk[e] = mask >> e & 1;
        auto s = trace_surface(g, mk);
        if (!s) continue;
        out[*s] += __builtin_popcountll(mask) & 1 ? -1 : 1;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second ? std::next(it) : out.erase(it);
    return out;
}

// histogram of mark counts per boundary component, 6 bits per count class, plus orientability
using Key = unsigned __int128;

struct KeyMap {
    std::vector<Key> keys;
    std::vector<long long> vals;
    std::vector<char> used;
    size_t n = 0;
    KeyMap() { resize(256); }
    void resize(size_t cap) {
        keys.assign(cap, 0), vals.assign(cap, 0), used.assign(cap, 0);
    }
    static size_t hash(Key k) {
        uint64_t h = (uint64_t)k * 0x9E3779B97F4A7C15ull ^ (uint64_t)(k >> 64) * 0xC2B2AE3D27D4EB4Full;
        return h ^ (h >> 29);
    }
    void add(Key k, long long v) {
        if (2 * (n + 1) > keys.size()) {
            auto ok = keys;
            auto ov = vals;
            auto ou = used;
            resize(keys.size() * 2);
            n = 0;
            for (size_t i = 0; i < ok.size(); i++)
                if (ou[i]) add(ok[i], ov[i]);
        }
        size_t m = keys.size() - 1, i = hash(k) & m;
        while (used[i] && keys[i] != k) i = (i + 1) & m;
        if (!used[i]) used[i] = 1, keys[i] = k, n++;
        vals[i] += v;
    }
};

SurfaceVector phi_fast(const RibbonGraph& g) {
    Frame f(g);
    const int u = g.univalent();
    // internal edges join trivalent vertices; leg edges carry a univalent end
    std::vector<int> internal, eidx(f.E, -1);
    for (int e = 0; e < f.E; e++) {
        auto [a, b] = g.edges[e];
        bool la = f.leaf[f.vof[a]], lb = f.leaf[f.vof[b]];
        if (la && lb) return phi_brute(g);
        if (!la && !lb) eidx[e] = (int)internal.size(), internal.push_back(e);
    }
    const int I = (int)internal.size();
    if (I > 62) throw std::length_error("too many internal edges");
    if (u + 1 > 20) throw std::length_error("too many legs for the surface key");
    // spanning tree over trivalent vertices: path masks and fundamental cycles
    int root = -1;
    for (int v = 0; v < f.V; v++)
        if (!f.leaf[v]) {
            root = v;
            break;
        }
    if (root < 0) return phi_brute(g);
    std::vector<uint64_t> path(f.V, 0);
    std::vector<char> vis(f.V, 0), tree(f.E, 0);
    std::vector<int> st = {root};
    vis[root] = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int d : g.rot[v]) {
            int e = f.eof[d];
            if (eidx[e] < 0) continue;
            int w = f.vof[f.mate[d]];
            if (vis[w]) continue;
            vis[w] = 1, tree[e] = 1;
            path[w] = path[v] | (uint64_t(1) << eidx[e]);
            st.push_back(w);
        }
    }
    std::vector<uint64_t> cycles;
    for (int e : internal)
        if (!tree[e]) {
            auto [a, b] = g.edges[e];
            cycles.push_back(path[f.vof[a]] ^ path[f.vof[b]] ^ (uint64_t(1) << eidx[e]));
        }
    // per leaf: parent vertex
    std::vector<int> parent(u);
    for (int i = 0; i < u; i++) parent[i] = f.vof[f.mate[g.rot[g.uni[i]][0]]];
    // per side point: the internal-edge bit deciding its band, or -1 for legs
    const int S = 2 * f.nd;
    std::vector<int> sbit(S);
    std::vector<int> leafcorner(S, 0);   // +1/-1 if entering a leaf corner here
    for (int s = 0; s < S; s++) {
        sbit[s] = eidx[f.eof[s >> 1]];
        if (f.leaf[f.vof[s >> 1]]) leafcorner[s] = s & 1 ? -1 : 1;
    }
    std::vector<int> untw(S);
    for (int s = 0; s < S; s++) untw[s] = f.across(s, false);

    KeyMap acc;
    std::vector<uint32_t> seen(S, 0);
    uint32_t stamp = 0;
    const int euler = f.V - f.E;
    uint64_t mask = 0;
    const uint64_t total = uint64_t(1) << I;
    for (uint64_t it = 0; it < total; it++) {
        if (it) mask ^= uint64_t(1) << __builtin_ctzll(it);
        bool orient = true;
        for (uint64_t c : cycles)
            if (__builtin_popcountll(mask & c) & 1) {
                orient = false;
                break;
            }
        int legsign;   // (-1)^{|y|} times the number of valid leg patterns, 0 if none
        Key key = 0;
        if (++stamp == 0) std::fill(seen.begin(), seen.end(), 0), stamp = 1;
        long long factor = 1;
        for (int s = 0; s < S; s++) {
            if (seen[s] == stamp) continue;
            int cnt = 0, neg = 0, cur = s;
            for (;;) {
                seen[cur] = stamp;
                int b = f.corner[cur];
                seen[b] = stamp;
                if (int lc = leafcorner[cur]) cnt++, neg += lc < 0;
                int eb = sbit[b];
                int nx = untw[b];
                if (eb >= 0 && (mask >> eb & 1)) nx ^= 1;
                cur = nx;
                if (cur == s) break;
            }
            if (!orient) {
                // leaf twists must make the word constant: 2 choices with sign (-1)^neg (1+(-1)^cnt)
                if (cnt & 1) factor = 0;
                else if (cnt) factor *= neg & 1 ? -2 : 2;
            }
            key += Key(1) << (6 * cnt);
        }
        if (orient) {
            if (u & 1) continue;
            // all leaf orientations must agree: two complementary patterns
            int y = 0;
            for (int i = 0; i < u; i++) y += __builtin_popcountll(mask & path[parent[i]]) & 1;
            legsign = y & 1 ? -2 : 2;
            factor = legsign;
            key |= Key(1) << 126;
        }
        if (!factor) continue;
        acc.add(key, __builtin_popcountll(mask) & 1 ? -factor : factor);
    }
    SurfaceVector out;
    for (size_t i = 0; i < acc.keys.size(); i++) {
        if (!acc.used[i] || !acc.vals[i]) continue;
        Key k = acc.keys[i];
        NormalizedSurface ns;
        ns.orientable = (k >> 126) & 1;
        ns.euler = euler;
        for (int c = 0; c <= u; c++) {
            int h = (int)((k >> (6 * c)) & 63);
            for (int j = 0; j < h; j++) ns.marks.push_back(c);
        }
        out[ns] = acc.vals[i];
    }
    return out;
}

}  // namespace

SurfaceVector phi_tilde(const RibbonGraph& g, const PhiOptions& opt) {
    g.validate();
    int E = (int)g.edges.size();
    if (opt.brute_force) {
        if (E > opt.max_edges) throw std::length_error("degree too large: " + std::to_string(E) + " edges");
        return phi_brute(g);
    }
    // only internal edges are enumerated; leg twists are summed in closed form
    if (E - g.univalent() > opt.max_edges) throw std::length_error("degree too large: " + std::to_string(E) + " edges");
    return phi_fast(g);
}

SurfaceVector phi_tilde(const Composition& c, const PhiOptions& opt) { return phi_tilde(build_caterpillar(c), opt); }

// ---- ranks

namespace {

std::vector<std::vector<long long>> to_matrix(const std::vector<SurfaceVector>& vs) {
    std::map<NormalizedSurface, size_t> col;
    for (auto& v : vs)
        for (auto& [s, c] : v) col.emplace(s, 0);
    size_t n = 0;
    for (auto& [s, i] : col) i = n++;
    std::vector<std::vector<long long>> M;
    for (auto& v : vs) {
        std::vector<long long> row(n, 0);
        for (auto& [s, c] : v) row[col[s]] = c;
        M.push_back(row);
    }
    return M;
}

uint64_t rank_mod(const std::vector<std::vector<long long>>& A, uint64_t p) {
    std::vector<std::vector<uint64_t>> M;
    for (auto& r : A) {
        std::vector<uint64_t> x;
        for (long long c : r) x.push_back((uint64_t)(((c % (long long)p) + (long long)p) % (long long)p));
        M.push_back(x);
    }
    size_t rows = M.size(), cols = rows ? M[0].size() : 0, rk = 0;
    auto pw = [&](unsigned __int128 b, uint64_t e) {
        unsigned __int128 x = 1;
        while (e) {
            if (e & 1) x = x * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return (uint64_t)x;
    };
    for (size_t c = 0; c < cols && rk < rows; c++) {
        size_t piv = rk;
        while (piv < rows && !M[piv][c]) piv++;
        if (piv == rows) continue;
        std::swap(M[piv], M[rk]);
        uint64_t iv = pw(M[rk][c], p - 2);
        for (auto& x : M[rk]) x = (uint64_t)((unsigned __int128)x * iv % p);
        for (size_t r = 0; r < rows; r++) {
            if (r == rk || !M[r][c]) continue;
            uint64_t fct = M[r][c];
            for (size_t j = c; j < cols; j++)
                M[r][j] = (uint64_t)((M[r][j] + (unsigned __int128)(p - fct) * M[rk][j]) % p);
        }
        rk++;
    }
    return rk;
}

// fraction-free (Bareiss) elimination over the integers
uint64_t rank_exact(const std::vector<std::vector<long long>>& A) {
    using boost::multiprecision::cpp_int;
    std::vector<std::vector<cpp_int>> M;
    for (auto& r : A) M.emplace_back(r.begin(), r.end());
    size_t rows = M.size(), cols = rows ? M[0].size() : 0, rk = 0;
    cpp_int prev = 1;
    for (size_t c = 0; c < cols && rk < rows; c++) {
        size_t piv = rk;
        while (piv < rows && M[piv][c] == 0) piv++;
        if (piv == rows) continue;
        std::swap(M[piv], M[rk]);
        for (size_t r = rk + 1; r < rows; r++) {
            for (size_t j = c + 1; j < cols; j++) M[r][j] = (M[rk][c] * M[r][j] - M[r][c] * M[rk][j]) / prev;
            M[r][c] = 0;
        }
        prev = M[rk][c];
        rk++;
    }
    return rk;
}

}  // namespace

uint64_t rank_of(const std::vector<SurfaceVector>& vs, RankMode mode) {
    auto M = to_matrix(vs);
    if (mode == RankMode::Exact) return rank_exact(M);
    uint64_t a = rank_mod(M, 2147483647ull), b = rank_mod(M, 2147483629ull);
    if (a != b) throw std::runtime_error("modular ranks disagree; use exact mode");
    return a;
}

}  // namespace ubr

// ---- closures and the lower bound

namespace ubr {

RibbonGraph join_legs(const RibbonGraph& h, int i, int j) {
    h.validate();
    if (i == j || i < 0 || j < 0 || i >= h.univalent() || j >= h.univalent())
        throw std::invalid_argument("join_legs: bad leg index");
    std::vector<int> mate(h.darts, -1);
    for (auto [a, b] : h.edges) mate[a] = b, mate[b] = a;
    int wi = h.uni[i], wj = h.uni[j];
    int di = h.rot[wi][0], dj = h.rot[wj][0];
    int pi = mate[di], pj = mate[dj];
    if (pi == dj) throw std::invalid_argument("join_legs: legs form a single edge");

    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : h.edges)
        if (a != di && b != di && a != dj && b != dj) edges.push_back({a, b});
    edges.push_back({pi, pj});

    RibbonGraph g;
    std::vector<int> vmap(h.vertices(), -1);
    for (int x = 0; x < h.vertices(); x++)
        if (x != wi && x != wj) {
            vmap[x] = (int)g.rot.size();
            g.rot.push_back(h.rot[x]);
        }
    for (int w : h.uni)
        if (w != wi && w != wj) g.uni.push_back(vmap[w]);
    std::vector<int> dm(h.darts, -1);
    int nd = 0;
    for (auto& r : g.rot)
        for (int& d : r) {
            if (dm[d] < 0) dm[d] = nd++;
            d = dm[d];
        }
    for (auto& [a, b] : edges) a = dm[a], b = dm[b];
    g.edges = edges;
    g.darts = nd;
    g.validate();
    return g;
}

// joining the first and third legs already reaches the full span in every
// degree we could check; the other pairs add nothing
std::vector<RibbonGraph> closed_caterpillars(int m, int u) {
    if (u < 1) throw std::invalid_argument("closed caterpillars need u >= 1");
    std::vector<RibbonGraph> out;
    for (auto& c : enumerate_caterpillars(m + 1, u + 2)) out.push_back(join_legs(build_caterpillar(c), 0, 2));
    return out;
}

LowerBound lower_bound(int m, const LowerOptions& opt) {
    if (m < 1) throw std::invalid_argument("degree must be positive");
    std::map<int, std::vector<SurfaceVector>> strata;
    LowerBound lb;
    if (m < 2) return lb;
    for (auto& c : enumerate_caterpillars(m, std::nullopt, opt.include_odd)) {
        strata[c.u()].push_back(phi_tilde(c, opt.phi));
        lb.diagrams[c.u()]++;
    }
    if (opt.closures)
        for (int u = 2; u <= m; u += 2)
            for (auto& g : closed_caterpillars(m, u)) {
                strata[u].push_back(phi_tilde(g, opt.phi));
                lb.diagrams[u]++;
            }
    for (auto& [u, vs] : strata) {
        uint64_t r = rank_of(vs, opt.mode);
        lb.per_u[u] = r;
        lb.total += r;
    }
    return lb;
}

}  // namespace ubr
