#pragma once

// Exponential, exact longest-path solvers for desk-scale graphs. Two
// independent routes: a subset DP over (vertex set, endpoint) states and a
// plain backtracking enumeration. Each checks the other.

#include <arcpath/arc_family.hpp>
#include <arcpath/chain.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace arcpath {

using VertexMask = std::uint32_t;

constexpr std::size_t default_vertex_bound = 16;
/// Hard ceiling for the DP table (2^24 entries).
constexpr std::size_t max_vertex_bound = 24;
constexpr std::uint64_t default_path_cap = 1'000'000;

/// Maximum number of vertices on a simple path, by subset DP.
std::size_t longest_path_length(const IntersectionGraph & graph, std::size_t bound = default_vertex_bound);

/// Vertex sets of all longest paths, by subset DP, ascending.
std::vector<VertexMask> longest_path_vertex_sets(const IntersectionGraph & graph,
                                                 std::size_t bound = default_vertex_bound);

/// Maximum path length by backtracking alone.
std::size_t backtracking_longest_length(const IntersectionGraph & graph, std::size_t bound = default_vertex_bound);

/// Calls `visit` once per simple path on exactly `length` vertices, in the
/// orientation that is lexicographically smaller than its reverse.
void for_each_path_of_length(const IntersectionGraph & graph, std::size_t length,
                             const std::function<void(std::span<const std::size_t>)> & visit,
                             std::size_t bound = default_vertex_bound);

struct LongestPathResult {
    std::size_t length = 0;
    /// Canonical orientation, discovery order; at most `cap` entries.
    std::vector<std::vector<std::size_t>> paths;
    /// Vertices on every longest path; exact even when `paths` is truncated.
    std::vector<std::size_t> common_vertices;
    std::uint64_t count = 0;
    bool truncated = false;
};

struct EnumerateOptions {
    std::size_t bound = default_vertex_bound;
    std::uint64_t cap = default_path_cap;
};

LongestPathResult enumerate_longest(const IntersectionGraph & graph, const EnumerateOptions & options = {});

/// A longest path meeting the fewest cover arcs, ties broken by the
/// lexicographically smallest canonical sequence. Sweeps the graph again
/// when the stored list was truncated.
std::pair<Chain, CoverTrace> select_min_cover_longest(const IntersectionGraph & graph,
                                                      const LongestPathResult & result, const Cover & cover);

} // namespace arcpath
