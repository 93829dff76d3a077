#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "samples.hpp"

#include <arcpath/reorder.hpp>
#include <arcpath/rng.hpp>

using namespace arcpath;

namespace {

ArcFamily fam(std::int64_t T, std::vector<std::pair<int, int>> ends)
{
    std::vector<Arc> arcs;
    for (auto [l, r] : ends)
        arcs.push_back(Arc::proper(l, r));
    return ArcFamily(Circle(T), arcs);
}

Point half(std::int64_t twice) { return Point(Rational(twice, 2)); }

// x_k in J_{k-1} and J_k wherever those exist
bool witnesses_hold(const Chain & c, const PointAssignment & pa, const ArcFamily & f)
{
    if (pa.points.size() != c.size() + 1)
        return false;
    for (std::size_t k = 0; k <= c.size(); ++k) {
        if (k > 0 && !f.region(c[k - 1]).contains(pa.points[k]))
            return false;
        if (k < c.size() && !f.region(c[k]).contains(pa.points[k]))
            return false;
    }
    return true;
}

const ArcFamily FAM3 = fam(12, {{0, 5}, {4, 9}, {8, 1}});
const ArcFamily PENDANT =
    fam(24, {{0, 7}, {6, 13}, {12, 19}, {18, 1}, {2, 4}, {3, 5}, {14, 16}, {15, 17}});

// swap figure on T=20: J_{p-1}=(1,5), J_p=(2,8), a middle arc (4,7),
// J_q=(3,10), J_{q+1}=(6,11)
const ArcFamily FIGURE = fam(20, {{1, 5}, {2, 8}, {4, 7}, {3, 10}, {6, 11}});
const Chain FIGURE_CHAIN({0, 1, 2, 3, 4});
const PointAssignment FIGURE_POINTS{{half(5), half(7), half(9), half(13), half(15), half(21)}, Point(0)};

} // namespace

TEST_CASE("swap figure")
{
    REQUIRE(assignment_fits(FIGURE_CHAIN, FIGURE_POINTS, FIGURE));
    CHECK(can_swap(FIGURE_CHAIN, FIGURE_POINTS, FIGURE, 1, 3));
    CHECK_FALSE(can_swap(FIGURE_CHAIN, FIGURE_POINTS, FIGURE, 0, 3));
    CHECK_THROWS_AS(can_swap(FIGURE_CHAIN, FIGURE_POINTS, FIGURE, 2, 2), PreconditionViolated);
    CHECK_THROWS_AS(can_swap(FIGURE_CHAIN, FIGURE_POINTS, FIGURE, 3, 1), PreconditionViolated);

    auto swapped = swap(FIGURE_CHAIN, FIGURE_POINTS, FIGURE, 1, 3);
    CHECK(swapped == Chain({0, 3, 2, 1, 4}));
    CHECK(is_valid_chain(swapped, FIGURE));
    CHECK(assignment_fits(swapped, FIGURE_POINTS, FIGURE));
    CHECK(swap(swapped, FIGURE_POINTS, FIGURE, 1, 3) == FIGURE_CHAIN);
    CHECK_THROWS_AS(swap(FIGURE_CHAIN, FIGURE_POINTS, FIGURE, 0, 3), SwapIllegal);
}

TEST_CASE("keil on the swap figure")
{
    // the same points handed over in reverse chain order
    Chain rev = FIGURE_CHAIN.reversed();
    PointAssignment pa = FIGURE_POINTS;
    std::reverse(pa.points.begin(), pa.points.end());
    REQUIRE(witnesses_hold(rev, pa, FIGURE));
    auto k = keil_reorder(rev, pa, FIGURE);
    CHECK(assignment_fits(k.chain, k.points, FIGURE));
    CHECK(k.points.points == FIGURE_POINTS.points);
}

TEST_CASE("witness points")
{
    auto k3 = minimal_cover(FAM3);
    auto tr = cover_trace(Chain({0, 1, 2}), k3);
    CHECK_THROWS_AS(assign_points(Chain({0, 1, 2}), FAM3, k3, tr), PreconditionViolated);

    auto k = minimal_cover(PENDANT);
    Chain c({4, 5, 0, 1, 2, 6, 7});
    auto trace = cover_trace(c, k);
    auto pa = assign_points(c, PENDANT, k, trace);
    REQUIRE(pa.points.size() == 8);
    CHECK(witnesses_hold(c, pa, PENDANT));
    // cut is the midpoint of K_a = (18,1)
    CHECK(pa.cut == half(43));
    auto sorted = pa.points;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    // x_1 lies in (2,4) ∩ (3,5) and is the first half tick after the cut
    CHECK(pa.points[1] == half(7));
}

TEST_CASE("keil against the permutation oracle")
{
    auto chains = samples::proper_chains(3, 150);
    REQUIRE(chains.size() == 150);
    std::size_t fallback = 0;
    for (auto & s : chains) {
        auto pa = assign_points(s.chain, s.family, s.cover, s.trace);
        CHECK(witnesses_hold(s.chain, pa, s.family));
        auto k = keil_reorder(s.chain, pa, s.family);
        fallback += k.used_fallback;
        CHECK(assignment_fits(k.chain, k.points, s.family));
        auto a = s.chain.arcs(), b = k.chain.arcs();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
        const auto & c = s.family.circle();
        for (std::size_t i = 1; i < k.points.points.size(); ++i)
            CHECK(c.cw_distance(pa.cut, k.points.points[i - 1]) < c.cw_distance(pa.cut, k.points.points[i]));
        if (s.chain.size() <= 8)
            CHECK(oracle::fitting_order(s.family, s.chain.arcs(), k.points.points));
        // a sorted input is a fixed point
        auto again = keil_reorder(k.chain, k.points, s.family);
        CHECK(again.chain == k.chain);
    }
    CHECK(fallback == 0);
}

TEST_CASE("random swaps keep chains valid")
{
    Rng rng(8);
    auto chains = samples::proper_chains(5, 80);
    std::size_t legal = 0;
    for (auto & s : chains) {
        auto pa = assign_points(s.chain, s.family, s.cover, s.trace);
        auto k = keil_reorder(s.chain, pa, s.family);
        Chain cur = k.chain;
        for (int probe = 0; probe < 40 && cur.size() >= 2; ++probe) {
            auto p = rng.below(cur.size()), q = rng.below(cur.size());
            if (p == q)
                continue;
            if (p > q)
                std::swap(p, q);
            if (!can_swap(cur, k.points, s.family, p, q))
                continue;
            ++legal;
            auto next = swap(cur, k.points, s.family, p, q);
            CHECK(is_valid_chain(next, s.family));
            CHECK(next.size() == cur.size());
            CHECK(assignment_fits(next, k.points, s.family));
            CHECK(swap(next, k.points, s.family, p, q) == cur);
            cur = next;
        }
    }
    CHECK(legal > 0);
}

TEST_CASE("phase sets")
{
    // K0=(0,8), K1=(7,14), K2=(13,1); X=(19,3) holds ΔK_2 = (0,1)
    auto f = fam(20, {{0, 8}, {7, 14}, {13, 1}, {19, 3}, {5, 10}});
    auto k = minimal_cover(f);
    REQUIRE(k.arcs() == std::vector<ArcIndex>{0, 1, 2});

    auto none = phase1_sets(Chain({2, 0, 1}), f, k, 2);
    CHECK(none.violators_empty());
    CHECK(none.f() == 0);

    auto one = phase1_sets(Chain({0, 3}), f, k, 2);
    CHECK(one.gamma == 0);
    CHECK(one.after == std::vector<std::size_t>{1});
    CHECK(one.before.empty());
    CHECK(one.f() == 1);

    auto both = phase1_sets(Chain({1, 0, 3}), f, k, 2);
    CHECK(both.before == std::vector<std::size_t>{0});
    CHECK(both.after == std::vector<std::size_t>{2});
    CHECK(both.f() == 2);
    CHECK(both.alpha() == 0);
    CHECK(both.beta() == 2);

    CHECK_THROWS_AS(phase1_sets(Chain({1, 3}), f, k, 2), PreconditionViolated);

    // second phase around K_{b-1} = K0 with b = 1: (5,10) holds ΔK_0 = (7,8)
    auto p2 = phase2_sets(Chain({4, 0}), f, k, 1);
    CHECK(p2.before == std::vector<std::size_t>{0});
    CHECK(p2.after.empty());
}

TEST_CASE("phase sets with a two-arc cover")
{
    // K0=(0,7), K1=(6,1); (5,8) straddles ΔK_0 = (6,7), (2,3) does not
    auto f = fam(12, {{0, 7}, {6, 1}, {5, 8}, {2, 3}});
    auto k = minimal_cover(f);
    REQUIRE(k.arcs() == std::vector<ArcIndex>{0, 1});
    auto s = phase1_sets(Chain({2, 3, 0}), f, k, 1);
    CHECK(s.gamma == 2);
    CHECK(s.before == std::vector<std::size_t>{0});
}

TEST_CASE("property checker")
{
    auto f = fam(20, {{0, 8}, {7, 14}, {13, 1}, {19, 3}, {5, 10}});
    auto k = minimal_cover(f);
    auto lone = check_properties(Chain({0}), f, k, 2, 1);
    CHECK(lone.all());

    auto r = check_properties(Chain({4, 0}), f, k, 2, 1);
    CHECK_FALSE(r.b);
    bool witnessed = false;
    for (const auto & w : r.witnesses)
        witnessed = witnessed || (w.property == 'b' && w.position == 0 && w.arc == 4);
    CHECK(witnessed);

    auto e = check_properties(Chain({0, 3}), f, k, 2, 1);
    CHECK_FALSE(e.e);
    CHECK_FALSE(e.d);

    CHECK_THROWS_AS(check_properties(Chain({1}), f, k, 2, 1), PreconditionViolated);
}

TEST_CASE("canonicalization on the pendant instance")
{
    auto k = minimal_cover(PENDANT);
    CanonicalizeOptions opts;
    opts.paranoid = true;
    opts.compare_verbatim = true;
    for (Chain c : {Chain({4, 5, 0, 1, 2, 6, 7}), Chain({7, 6, 2, 3, 0, 5, 4}), Chain({5, 4, 0, 1, 2, 7, 6})}) {
        auto tr = cover_trace(c, k);
        auto run = canonicalize(c, PENDANT, k, tr, opts);
        CHECK(run.ok());
        CHECK(run.arcs_preserved);
        CHECK(run.result.size() == c.size());
        auto again = canonicalize(run.result, PENDANT, k, cover_trace(run.result, k), opts);
        CHECK(again.ok());
        CHECK(again.result == run.result);
    }
    auto k3 = minimal_cover(FAM3);
    CHECK_THROWS_AS(canonicalize(Chain({0, 1, 2}), FAM3, k3, cover_trace(Chain({0, 1, 2}), k3)),
                    PreconditionViolated);
}

TEST_CASE("canonicalization on sampled chains")
{
    auto chains = samples::proper_chains(11, 600, 8);
    std::size_t swaps = 0;
    for (auto & s : chains) {
        CanonicalizeOptions opts;
        opts.paranoid = true;
        auto run = canonicalize(s.chain, s.family, s.cover, s.trace, opts);
        CHECK(run.ok());
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            opts.scramble_swaps = 2 * s.chain.size();
            opts.scramble_seed = seed;
            auto mixed = canonicalize(s.chain, s.family, s.cover, s.trace, opts);
            CHECK(mixed.ok());
            CHECK(assignment_fits(mixed.start_chain, mixed.points, s.family));
            swaps += mixed.steps.size();
            for (const auto & step : mixed.steps)
                CHECK(step.p < step.q);
        }
    }
    MESSAGE("phase swaps after scrambling: " << swaps);
    CHECK(swaps > 0);
}

TEST_CASE("fault injection is visible")
{
    auto chains = samples::proper_chains(11, 600, 8);
    std::size_t caught = 0;
    for (auto & s : chains)
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            CanonicalizeOptions opts;
            opts.skip_pivot_swaps = true;
            opts.scramble_swaps = 2 * s.chain.size();
            opts.scramble_seed = seed;
            caught += !canonicalize(s.chain, s.family, s.cover, s.trace, opts).ok();
        }
    MESSAGE("runs caught without pivot swaps: " << caught);
    CHECK(caught > 0);
}
