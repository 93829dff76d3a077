#pragma once

#include <arcpath/geometry.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace arcpath {

using ArcIndex = std::size_t;

/// The arc collection of a circular-arc graph; arc i is vertex i. Proper arcs
/// have integer endpoints that are pairwise distinct across the family.
class ArcFamily {
public:
    ArcFamily(Circle circle, std::vector<Arc> arcs);

    const Circle & circle() const noexcept { return circle_; }
    const std::vector<Arc> & arcs() const noexcept { return arcs_; }
    const Arc & arc(ArcIndex i) const { return arcs_.at(i); }
    std::size_t size() const noexcept { return arcs_.size(); }

    Region region(ArcIndex i) const { return Region::of(circle_, arcs_.at(i)); }

    friend bool operator==(const ArcFamily &, const ArcFamily &) = default;

private:
    Circle circle_;
    std::vector<Arc> arcs_;
};

class IntersectionGraph {
public:
    explicit IntersectionGraph(std::size_t vertices);

    std::size_t size() const noexcept { return neighbours_.size(); }
    bool adjacent(std::size_t u, std::size_t w) const { return matrix_[u * size() + w]; }
    const std::vector<std::size_t> & neighbours(std::size_t u) const { return neighbours_.at(u); }
    std::size_t edge_count() const;

    void add_edge(std::size_t u, std::size_t w);

private:
    std::vector<std::vector<std::size_t>> neighbours_;
    std::vector<char> matrix_;
};

IntersectionGraph build_graph(const ArcFamily & family);
bool is_connected(const IntersectionGraph & graph);
bool covers_circle(const ArcFamily & family);

/// Minimum circle cover K_0..K_{n-1}, cyclically ordered by left endpoint,
/// with no member contained in another arc of the family.
class Cover {
public:
    explicit Cover(std::vector<ArcIndex> arcs);

    std::size_t n() const noexcept { return arcs_.size(); }
    const std::vector<ArcIndex> & arcs() const noexcept { return arcs_; }
    /// K_i with i read modulo n.
    ArcIndex at(std::int64_t i) const;
    /// Cover position of an arc, or n() when the arc is not in the cover.
    std::size_t position_of(ArcIndex arc) const;

    friend bool operator==(const Cover &, const Cover &) = default;

private:
    std::vector<ArcIndex> arcs_;
};

/// Throws NotCovering when the family leaves part of the circle bare.
Cover minimal_cover(const ArcFamily & family);

/// ΔK_i = open arc (ℓ(K_{i+1}), r(K_i)); i taken modulo n. Needs n >= 2.
Region delta_k(const ArcFamily & family, const Cover & cover, std::int64_t i);

struct GenerateParams {
    std::size_t arcs = 3;
    std::int64_t ticks = 12;
    std::uint64_t seed = 0;
    bool require_cover = false;
    bool require_connected = false;
    std::size_t max_attempts = 10000;
    /// When nonzero, arcs are drawn one at a time with clockwise length at
    /// most this many ticks instead of by pairing shuffled endpoints.
    std::int64_t max_span = 0;
    /// With max_span set, this many arcs are still drawn with any length.
    std::size_t long_arcs = 0;
};

/// Draws 2m distinct ticks and pairs them into arcs by a seeded shuffle (or
/// draws short arcs, see max_span), rejecting until the requested flags hold.
ArcFamily generate(const GenerateParams & params);

} // namespace arcpath
