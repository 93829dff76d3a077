#include <arcpath/error.hpp>
#include <arcpath/path_solver.hpp>

#include <algorithm>
#include <bit>

namespace arcpath {

namespace {

void check_bound(const IntersectionGraph & graph, std::size_t bound)
{
    if (bound > max_vertex_bound)
        throw TooLarge("vertex bound " + std::to_string(bound) + " exceeds the ceiling of "
                       + std::to_string(max_vertex_bound));
    if (graph.size() > bound)
        throw TooLarge("graph has " + std::to_string(graph.size()) + " vertices, bound is " + std::to_string(bound));
}

std::vector<VertexMask> adjacency_masks(const IntersectionGraph & graph)
{
    std::vector<VertexMask> adj(graph.size(), 0);
    for (std::size_t u = 0; u < graph.size(); ++u)
        for (auto w : graph.neighbours(u))
            adj[u] |= VertexMask{1} << w;
    return adj;
}

// ends[mask] = vertices v such that some path visits exactly `mask` and ends at v.
std::vector<VertexMask> path_endpoints(const IntersectionGraph & graph)
{
    const auto m = graph.size();
    const auto adj = adjacency_masks(graph);
    std::vector<VertexMask> ends(std::size_t{1} << m, 0);
    for (std::size_t v = 0; v < m; ++v)
        ends[std::size_t{1} << v] = VertexMask{1} << v;
    for (std::size_t mask = 1; mask < ends.size(); ++mask) {
        VertexMask e = ends[mask];
        while (e) {
            auto v = static_cast<std::size_t>(std::countr_zero(e));
            e &= e - 1;
            VertexMask out = adj[v] & ~static_cast<VertexMask>(mask);
            while (out) {
                auto w = static_cast<std::size_t>(std::countr_zero(out));
                out &= out - 1;
                ends[mask | (std::size_t{1} << w)] |= VertexMask{1} << w;
            }
        }
    }
    return ends;
}

} // namespace

std::size_t longest_path_length(const IntersectionGraph & graph, std::size_t bound)
{
    check_bound(graph, bound);
    if (graph.size() == 0)
        return 0;
    const auto ends = path_endpoints(graph);
    int best = 0;
    for (std::size_t mask = 1; mask < ends.size(); ++mask)
        if (ends[mask])
            best = std::max(best, std::popcount(mask));
    return static_cast<std::size_t>(best);
}

std::vector<VertexMask> longest_path_vertex_sets(const IntersectionGraph & graph, std::size_t bound)
{
    check_bound(graph, bound);
    std::vector<VertexMask> out;
    if (graph.size() == 0)
        return out;
    const auto ends = path_endpoints(graph);
    int best = 0;
    for (std::size_t mask = 1; mask < ends.size(); ++mask)
        if (ends[mask]) {
            int c = std::popcount(mask);
            if (c > best) {
                best = c;
                out.clear();
            }
            if (c == best)
                out.push_back(static_cast<VertexMask>(mask));
        }
    return out;
}

namespace {

struct Walker {
    const std::vector<VertexMask> & adj;
    std::size_t target;
    std::vector<std::size_t> path;
    VertexMask used = 0;

    // Returns true to stop early.
    template <typename AtLeaf>
    bool extend(AtLeaf & at_leaf)
    {
        if (at_leaf(path))
            return true;
        if (path.size() == target)
            return false;
        VertexMask out = adj[path.back()] & ~used;
        while (out) {
            auto w = static_cast<std::size_t>(std::countr_zero(out));
            out &= out - 1;
            path.push_back(w);
            used |= VertexMask{1} << w;
            if (extend(at_leaf))
                return true;
            used &= ~(VertexMask{1} << w);
            path.pop_back();
        }
        return false;
    }
};

} // namespace

std::size_t backtracking_longest_length(const IntersectionGraph & graph, std::size_t bound)
{
    check_bound(graph, bound);
    const auto m = graph.size();
    const auto adj = adjacency_masks(graph);
    std::size_t best = 0;
    auto at_leaf = [&](const std::vector<std::size_t> & path) {
        best = std::max(best, path.size());
        return best == m;
    };
    for (std::size_t s = 0; s < m && best < m; ++s) {
        Walker w{adj, m, {s}, VertexMask{1} << s};
        w.extend(at_leaf);
    }
    return best;
}

void for_each_path_of_length(const IntersectionGraph & graph, std::size_t length,
                             const std::function<void(std::span<const std::size_t>)> & visit, std::size_t bound)
{
    check_bound(graph, bound);
    const auto m = graph.size();
    if (length == 0 || length > m)
        return;
    const auto adj = adjacency_masks(graph);
    auto at_leaf = [&](const std::vector<std::size_t> & path) {
        if (path.size() == length && (length == 1 || path.front() < path.back()))
            visit(std::span<const std::size_t>(path));
        return false;
    };
    for (std::size_t s = 0; s < m; ++s) {
        Walker w{adj, length, {s}, VertexMask{1} << s};
        w.extend(at_leaf);
    }
}

LongestPathResult enumerate_longest(const IntersectionGraph & graph, const EnumerateOptions & options)
{
    LongestPathResult r;
    r.length = backtracking_longest_length(graph, options.bound);
    if (r.length == 0)
        return r;
    VertexMask common = ~VertexMask{0};
    for_each_path_of_length(
        graph, r.length,
        [&](std::span<const std::size_t> path) {
            VertexMask mask = 0;
            for (auto v : path)
                mask |= VertexMask{1} << v;
            common &= mask;
            ++r.count;
            if (r.paths.size() < options.cap)
                r.paths.emplace_back(path.begin(), path.end());
            else
                r.truncated = true;
        },
        options.bound);
    for (std::size_t v = 0; v < graph.size(); ++v)
        if (common & (VertexMask{1} << v))
            r.common_vertices.push_back(v);
    return r;
}

std::pair<Chain, CoverTrace> select_min_cover_longest(const IntersectionGraph & graph,
                                                      const LongestPathResult & result, const Cover & cover)
{
    if (result.length == 0)
        throw PreconditionViolated("no longest path to select from");
    std::optional<std::vector<std::size_t>> best;
    std::size_t best_hits = 0;
    auto consider = [&](std::span<const std::size_t> path) {
        std::size_t hits = 0;
        for (auto v : path)
            if (cover.position_of(v) < cover.n())
                ++hits;
        if (!best || hits < best_hits
            || (hits == best_hits && std::lexicographical_compare(path.begin(), path.end(), best->begin(), best->end()))) {
            best.emplace(path.begin(), path.end());
            best_hits = hits;
        }
    };
    if (result.truncated)
        for_each_path_of_length(graph, result.length, consider, std::max(graph.size(), default_vertex_bound));
    else
        for (const auto & p : result.paths)
            consider(p);
    Chain chain(std::move(*best));
    auto trace = cover_trace(chain, cover);
    return {std::move(chain), std::move(trace)};
}

} // namespace arcpath
