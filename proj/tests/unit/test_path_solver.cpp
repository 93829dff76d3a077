#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include <arcpath/path_solver.hpp>
#include <arcpath/rng.hpp>

#include <numeric>
#include <set>

using namespace arcpath;

namespace {

ArcFamily fam(std::int64_t T, std::vector<std::pair<int, int>> ends)
{
    std::vector<Arc> arcs;
    for (auto [l, r] : ends)
        arcs.push_back(Arc::proper(l, r));
    return ArcFamily(Circle(T), arcs);
}

const ArcFamily FAM3 = fam(12, {{0, 5}, {4, 9}, {8, 1}});
const ArcFamily FAM4 = fam(12, {{0, 5}, {4, 9}, {8, 1}, {3, 6}});

IntersectionGraph random_graph(Rng & rng, std::size_t n, std::uint64_t density)
{
    IntersectionGraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t w = u + 1; w < n; ++w)
            if (rng.below(100) < density)
                g.add_edge(u, w);
    return g;
}

oracle::Graph as_oracle(const IntersectionGraph & g)
{
    oracle::Graph o;
    o.n = g.size();
    o.adj.assign(o.n, std::vector<char>(o.n, 0));
    for (std::size_t u = 0; u < o.n; ++u)
        for (auto w : g.neighbours(u))
            o.adj[u][w] = 1;
    return o;
}

} // namespace

TEST_CASE("small examples")
{
    auto g3 = build_graph(FAM3);
    CHECK(longest_path_length(g3) == 3);
    auto r3 = enumerate_longest(g3);
    CHECK(r3.length == 3);
    CHECK(r3.count == 3);
    CHECK(r3.paths.size() == 3);
    CHECK(r3.common_vertices == std::vector<std::size_t>{0, 1, 2});

    auto g4 = build_graph(FAM4);
    CHECK(longest_path_length(g4) == 4);
    auto r4 = enumerate_longest(g4);
    CHECK(r4.common_vertices == std::vector<std::size_t>{0, 1, 2, 3});
    bool witness = false;
    for (const auto & p : r4.paths)
        witness = witness || p == std::vector<std::size_t>{1, 3, 0, 2};
    CHECK(witness);

    auto g1 = build_graph(fam(12, {{3, 7}}));
    CHECK(longest_path_length(g1) == 1);
    CHECK(backtracking_longest_length(g1) == 1);
    CHECK(enumerate_longest(g1).paths == std::vector<std::vector<std::size_t>>{{0}});

    auto p3 = enumerate_longest(build_graph(fam(12, {{0, 3}, {2, 5}, {4, 7}})));
    CHECK(p3.count == 1);
    CHECK(p3.paths.front() == std::vector<std::size_t>{0, 1, 2});
    CHECK(p3.common_vertices == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("bounds and caps")
{
    IntersectionGraph big(20);
    CHECK_THROWS_AS(longest_path_length(big), TooLarge);
    CHECK_NOTHROW(longest_path_length(big, 20));
    CHECK_THROWS_AS(longest_path_length(big, 30), TooLarge);

    IntersectionGraph k5(5);
    for (std::size_t u = 0; u < 5; ++u)
        for (std::size_t w = u + 1; w < 5; ++w)
            k5.add_edge(u, w);
    EnumerateOptions o;
    o.cap = 7;
    auto r = enumerate_longest(k5, o);
    CHECK(r.truncated);
    CHECK(r.paths.size() == 7);
    CHECK(r.count == 60);
    CHECK(r.common_vertices.size() == 5);
}

TEST_CASE("solvers agree with each other and with the oracle")
{
    Rng rng(4);
    for (int k = 0; k < 300; ++k) {
        auto n = static_cast<std::size_t>(rng.between(1, 9));
        auto g = random_graph(rng, n, rng.below(100));
        auto dp = longest_path_length(g);
        CHECK(dp == backtracking_longest_length(g));
        auto ref = oracle::all_longest(as_oracle(g));
        auto r = enumerate_longest(g);
        CHECK(r.length == dp);
        CHECK(ref.front().size() == dp);
        auto listed = r.paths;
        std::sort(listed.begin(), listed.end());
        CHECK(listed == ref);
        CHECK(r.count == ref.size());

        std::set<VertexMask> masks;
        for (const auto & p : ref) {
            VertexMask m = 0;
            for (auto v : p)
                m |= VertexMask{1} << v;
            masks.insert(m);
        }
        auto sets = longest_path_vertex_sets(g);
        CHECK(std::set<VertexMask>(sets.begin(), sets.end()) == masks);
        CHECK(std::is_sorted(sets.begin(), sets.end()));
    }
}

TEST_CASE("longest paths of connected graphs pairwise meet")
{
    Rng rng(6);
    std::size_t connected = 0;
    while (connected < 200) {
        auto g = random_graph(rng, static_cast<std::size_t>(rng.between(2, 9)), 35);
        if (!is_connected(g))
            continue;
        ++connected;
        auto r = enumerate_longest(g);
        for (std::size_t i = 0; i < r.paths.size(); ++i)
            for (std::size_t j = i + 1; j < r.paths.size(); ++j) {
                bool meet = false;
                for (auto v : r.paths[i])
                    meet = meet || std::count(r.paths[j].begin(), r.paths[j].end(), v);
                CHECK(meet);
            }
    }
}

TEST_CASE("relabeling")
{
    Rng rng(12);
    for (int k = 0; k < 100; ++k) {
        auto n = static_cast<std::size_t>(rng.between(2, 9));
        auto g = random_graph(rng, n, 45);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        IntersectionGraph h(n);
        for (std::size_t u = 0; u < n; ++u)
            for (auto w : g.neighbours(u))
                if (u < w)
                    h.add_edge(perm[u], perm[w]);
        auto a = enumerate_longest(g), b = enumerate_longest(h);
        CHECK(a.length == b.length);
        CHECK(a.count == b.count);
        std::vector<std::size_t> mapped;
        for (auto v : a.common_vertices)
            mapped.push_back(perm[v]);
        std::sort(mapped.begin(), mapped.end());
        CHECK(mapped == b.common_vertices);
    }
}

TEST_CASE("minimum cover selection")
{
    auto r3 = enumerate_longest(build_graph(FAM3));
    auto [c3, t3] = select_min_cover_longest(build_graph(FAM3), r3, minimal_cover(FAM3));
    CHECK(t3.members.size() == 3);
    CHECK(c3.size() == 3);

    auto single = ArcFamily(Circle(12), {Arc::full()});
    auto g1 = build_graph(single);
    auto [c1, t1] = select_min_cover_longest(g1, enumerate_longest(g1), minimal_cover(single));
    CHECK(c1 == Chain({0}));
    CHECK(t1.members.size() == 1);

    auto pendant = fam(24, {{0, 7}, {6, 13}, {12, 19}, {18, 1}, {2, 4}, {3, 5}, {14, 16}, {15, 17}});
    auto gp = build_graph(pendant);
    auto full = enumerate_longest(gp);
    auto [cp, tp] = select_min_cover_longest(gp, full, minimal_cover(pendant));
    CHECK(tp.proper());
    CHECK(cp.size() == 7);

    // a truncated list gives the same answer
    EnumerateOptions o;
    o.cap = 1;
    auto cut = enumerate_longest(gp, o);
    REQUIRE(cut.truncated);
    auto [cq, tq] = select_min_cover_longest(gp, cut, minimal_cover(pendant));
    CHECK(cq == cp);
}
