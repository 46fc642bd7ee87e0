#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ubr {

// parts (i_1..i_k); u = sum, m = u + k - 1
struct Composition {
    std::vector<int> parts;
    int u() const;
    int k() const { return (int)parts.size(); }
    int m() const { return u() + k() - 1; }
    bool canonical() const;
    Composition canonical_form() const;
    std::string str() const;
    bool operator==(const Composition&) const = default;
    auto operator<=>(const Composition&) const = default;
};

// ribbon graph: vertices of degree 1 or 3, darts listed counterclockwise,
// edges as dart pairs; univalent vertices in label order
struct RibbonGraph {
    std::vector<std::vector<int>> rot;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> uni;
    int darts = 0;

    int vertices() const { return (int)rot.size(); }
    int trivalent() const;
    int univalent() const { return (int)uni.size(); }
    int degree() const { return (trivalent() + univalent()) / 2; }   // 2m = #tri + u
    int betti() const;
    void validate() const;   // throws on malformed input
    // reversed cyclic order at one vertex
    RibbonGraph reflected_at(int v) const;
    // exchanges the far ends of the edges through darts d1 and d2
    RibbonGraph swap_ends(int d1, int d2) const;
};

// "=" is 0, "x" is 1
using Marking = std::vector<uint8_t>;

// orientable flag, euler characteristic and the sorted marked-point counts of
// the boundary components (zeros included)
struct NormalizedSurface {
    bool orientable = true;
    int euler = 0;
    std::vector<int> marks;
    std::string str() const;
    auto operator<=>(const NormalizedSurface&) const = default;
};

using SurfaceVector = std::map<NormalizedSurface, long long>;

std::vector<Composition> enumerate_caterpillars(int m, std::optional<int> u = std::nullopt,
                                                bool include_odd = false);
RibbonGraph build_caterpillar(const Composition& c);

// the thickened surface of one marking; nullopt when not normalized
std::optional<NormalizedSurface> trace_surface(const RibbonGraph& g, const Marking& mk);

struct PhiOptions {
    int max_edges = 26;
    bool brute_force = false;   // enumerate leg markings too (reference path)
};
// sum over all markings of (-1)^x times the normalized surfaces
SurfaceVector phi_tilde(const RibbonGraph& g, const PhiOptions& opt = {});
SurfaceVector phi_tilde(const Composition& c, const PhiOptions& opt = {});

enum class RankMode { Exact, Modular };
// rank of the span over Q
uint64_t rank_of(const std::vector<SurfaceVector>& vs, RankMode mode = RankMode::Exact);

// joins univalent vertices i and j (label order) into one edge
RibbonGraph join_legs(const RibbonGraph& g, int i, int j);
// diagrams of degree m with u legs: (u+2)-leg caterpillars of degree m+1 with two legs joined
std::vector<RibbonGraph> closed_caterpillars(int m, int u = 2);

struct LowerBound {
    std::map<int, uint64_t> per_u;
    std::map<int, uint64_t> diagrams;
    uint64_t total = 0;
};
struct LowerOptions {
    bool include_odd = false;
    bool closures = true;   // add closed caterpillars to every even stratum
    RankMode mode = RankMode::Exact;
    PhiOptions phi;
};
LowerBound lower_bound(int m, const LowerOptions& opt = {});

}  // namespace ubr
