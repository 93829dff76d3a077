#include <arcpath/arc_family.hpp>
#include <arcpath/error.hpp>
#include <arcpath/rng.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

namespace arcpath {

namespace {

std::int64_t tick_of(const Point & p) { return p.value().numerator(); }

bool is_tick(const Point & p) { return p.value().denominator() == 1; }

std::int64_t arc_length(const Circle & circle, const Arc & a)
{
    if (a.is_full())
        return circle.ticks();
    auto d = tick_of(a.right()) - tick_of(a.left());
    return d < 0 ? d + circle.ticks() : d;
}

} // namespace

ArcFamily::ArcFamily(Circle circle, std::vector<Arc> arcs) : circle_(circle), arcs_(std::move(arcs))
{
    if (arcs_.empty())
        throw PreconditionViolated("arc family needs at least one arc");
    std::set<std::int64_t> seen;
    for (const auto & a : arcs_) {
        if (a.is_full())
            continue;
        for (const auto & p : {a.left(), a.right()}) {
            if (!is_tick(p) || !circle_.holds(p))
                throw PreconditionViolated("arc endpoint " + to_string(p) + " is not a tick in [0, "
                                           + std::to_string(circle_.ticks()) + ")");
            if (!seen.insert(tick_of(p)).second)
                throw PreconditionViolated("duplicate arc endpoint " + to_string(p));
        }
    }
}

IntersectionGraph::IntersectionGraph(std::size_t vertices)
    : neighbours_(vertices), matrix_(vertices * vertices, 0)
{
}

void IntersectionGraph::add_edge(std::size_t u, std::size_t w)
{
    if (u == w)
        throw PreconditionViolated("intersection graphs have no loops");
    if (matrix_[u * size() + w])
        return;
    matrix_[u * size() + w] = matrix_[w * size() + u] = 1;
    neighbours_[u].push_back(w);
    neighbours_[w].push_back(u);
    std::sort(neighbours_[u].begin(), neighbours_[u].end());
    std::sort(neighbours_[w].begin(), neighbours_[w].end());
}

std::size_t IntersectionGraph::edge_count() const
{
    std::size_t twice = 0;
    for (const auto & n : neighbours_)
        twice += n.size();
    return twice / 2;
}

IntersectionGraph build_graph(const ArcFamily & family)
{
    IntersectionGraph g(family.size());
    for (std::size_t u = 0; u < family.size(); ++u)
        for (std::size_t w = u + 1; w < family.size(); ++w)
            if (intersects(family.arc(u), family.arc(w)))
                g.add_edge(u, w);
    return g;
}

bool is_connected(const IntersectionGraph & graph)
{
    if (graph.size() == 0)
        return true;
    std::vector<char> seen(graph.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto w : graph.neighbours(u))
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == graph.size();
}

bool covers_circle(const ArcFamily & family)
{
    Region u = Region::empty(family.circle());
    for (std::size_t i = 0; i < family.size(); ++i)
        u = u.unite(family.region(i));
    return u.is_full();
}

Cover::Cover(std::vector<ArcIndex> arcs) : arcs_(std::move(arcs))
{
    if (arcs_.empty())
        throw PreconditionViolated("empty cover");
}

ArcIndex Cover::at(std::int64_t i) const
{
    auto n = static_cast<std::int64_t>(arcs_.size());
    return arcs_[static_cast<std::size_t>(((i % n) + n) % n)];
}

std::size_t Cover::position_of(ArcIndex arc) const
{
    auto it = std::find(arcs_.begin(), arcs_.end(), arc);
    return static_cast<std::size_t>(it - arcs_.begin());
}

namespace {

// Greedy clockwise extension from `seed`: repeatedly take the arc that
// contains the first uncovered point and reaches furthest.
std::optional<std::vector<ArcIndex>> greedy_from(const ArcFamily & family, ArcIndex seed)
{
    const auto & circle = family.circle();
    const auto T = circle.ticks();
    const auto & s = family.arc(seed);
    const std::int64_t start = tick_of(s.left());
    std::int64_t reach = start + arc_length(circle, s);
    std::vector<ArcIndex> chosen{seed};
    while (reach <= start + T) {
        if (chosen.size() > family.size())
            return std::nullopt;
        Point p(reach % T);
        std::optional<ArcIndex> best;
        std::int64_t best_reach = reach;
        for (ArcIndex i = 0; i < family.size(); ++i) {
            const auto & a = family.arc(i);
            if (a.is_full() || !contains(a, p))
                continue;
            auto r = reach + circle.cw_distance(p, a.right()).numerator();
            if (r > best_reach) {
                best_reach = r;
                best = i;
            }
        }
        if (!best)
            return std::nullopt;
        chosen.push_back(*best);
        reach = best_reach;
    }
    return chosen;
}

std::vector<ArcIndex> normalize_cover(const ArcFamily & family, std::vector<ArcIndex> arcs)
{
    const auto & circle = family.circle();
    for (auto & k : arcs) {
        // replace by a longest arc strictly containing it; a longest one
        // cannot itself sit inside another arc
        std::optional<ArcIndex> best;
        for (ArcIndex i = 0; i < family.size(); ++i) {
            if (i == k || !contains(circle, family.arc(i), family.arc(k)))
                continue;
            if (contains(circle, family.arc(k), family.arc(i)))
                continue; // equal as sets
            if (!best || arc_length(circle, family.arc(i)) > arc_length(circle, family.arc(*best)))
                best = i;
        }
        if (best)
            k = *best;
    }
    std::sort(arcs.begin(), arcs.end(), [&](ArcIndex x, ArcIndex y) {
        return family.arc(x).left() < family.arc(y).left();
    });
    if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end())
        throw InternalError("cover normalization produced a duplicate arc");
    return arcs;
}

} // namespace

Cover minimal_cover(const ArcFamily & family)
{
    for (ArcIndex i = 0; i < family.size(); ++i)
        if (family.arc(i).is_full())
            return Cover({i});

    std::vector<std::vector<ArcIndex>> found;
    for (ArcIndex seed = 0; seed < family.size(); ++seed)
        if (auto g = greedy_from(family, seed))
            found.push_back(std::move(*g));
    if (found.empty())
        throw NotCovering();
    std::size_t n = found.front().size();
    for (const auto & g : found)
        n = std::min(n, g.size());

    // only minimum covers are normalized; a larger greedy result may hold
    // nested arcs and would collapse
    std::optional<std::vector<ArcIndex>> best;
    for (auto & g : found) {
        if (g.size() != n)
            continue;
        auto cover = normalize_cover(family, std::move(g));
        if (!best || cover < *best)
            best = std::move(cover);
    }
    return Cover(std::move(*best));
}

Region delta_k(const ArcFamily & family, const Cover & cover, std::int64_t i)
{
    if (cover.n() < 2)
        throw PreconditionViolated("ΔK_i is undefined for a cover of size " + std::to_string(cover.n()));
    const auto & here = family.arc(cover.at(i));
    const auto & next = family.arc(cover.at(i + 1));
    return Region::of(family.circle(), Arc::proper(next.left(), here.right()));
}

ArcFamily generate(const GenerateParams & params)
{
    if (params.arcs < 1)
        throw PreconditionViolated("generate needs at least one arc");
    if (params.ticks < static_cast<std::int64_t>(2 * params.arcs))
        throw PreconditionViolated("generate needs ticks >= 2 * arcs");
    Circle circle(params.ticks);
    Rng rng(params.seed);
    std::vector<std::int64_t> pool(static_cast<std::size_t>(params.ticks));
    auto paired = [&] {
        std::iota(pool.begin(), pool.end(), 0);
        const auto want = 2 * params.arcs;
        for (std::size_t i = 0; i < want; ++i)
            std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
        std::vector<std::int64_t> ends(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
        std::sort(ends.begin(), ends.end());
        rng.shuffle(ends);
        std::vector<Arc> arcs;
        arcs.reserve(params.arcs);
        for (std::size_t i = 0; i < params.arcs; ++i)
            arcs.push_back(Arc::proper(ends[2 * i], ends[2 * i + 1]));
        return arcs;
    };
    auto short_arcs = [&]() -> std::optional<std::vector<Arc>> {
        std::vector<char> taken(static_cast<std::size_t>(params.ticks), 0);
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i < params.arcs; ++i) {
            const auto span = i < params.long_arcs ? params.ticks - 1 : std::min(params.max_span, params.ticks - 1);
            bool placed = false;
            for (int tries = 0; tries < 64 && !placed; ++tries) {
                auto l = rng.between(0, params.ticks - 1);
                auto r = (l + rng.between(1, span)) % params.ticks;
                if (taken[static_cast<std::size_t>(l)] || taken[static_cast<std::size_t>(r)])
                    continue;
                taken[static_cast<std::size_t>(l)] = taken[static_cast<std::size_t>(r)] = 1;
                arcs.push_back(Arc::proper(l, r));
                placed = true;
            }
            if (!placed)
                return std::nullopt;
        }
        return arcs;
    };

    for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
        std::vector<Arc> arcs;
        if (params.max_span > 0) {
            auto drawn = short_arcs();
            if (!drawn)
                continue;
            arcs = std::move(*drawn);
        }
        else
            arcs = paired();
        ArcFamily family(circle, std::move(arcs));
        if (params.require_cover && !covers_circle(family))
            continue;
        if (params.require_connected && !is_connected(build_graph(family)))
            continue;
        return family;
    }
    throw GenerationExhausted("no family satisfied the requested flags after "
                              + std::to_string(params.max_attempts) + " attempts");
}

} // namespace arcpath
