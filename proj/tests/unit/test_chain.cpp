#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include <arcpath/chain.hpp>
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

const ArcFamily FAM3 = fam(12, {{0, 5}, {4, 9}, {8, 1}});
const ArcFamily FAM4 = fam(12, {{0, 5}, {4, 9}, {8, 1}, {3, 6}});
// cover (0,7) (6,13) (12,19) (18,1); two-arc blocks inside K0 and K2
const ArcFamily PENDANT =
    fam(24, {{0, 7}, {6, 13}, {12, 19}, {18, 1}, {2, 4}, {3, 5}, {14, 16}, {15, 17}});

Region reg(const ArcFamily & f, int l, int r) { return Region::of(f.circle(), Arc::proper(l, r)); }

ChainDefect::Kind defect_kind(std::vector<ArcIndex> v, const ArcFamily & f)
{
    try {
        validate_chain(std::move(v), f);
    }
    catch (const InvalidChain & e) {
        return e.defect().kind;
    }
    FAIL("chain unexpectedly valid");
    return ChainDefect::Kind::empty;
}

} // namespace

TEST_CASE("validation")
{
    CHECK(is_valid_chain(Chain({0, 1, 2}), FAM3));
    CHECK(is_valid_chain(Chain({0, 2, 1}), FAM3));
    auto d = find_chain_defect(std::vector<ArcIndex>{3, 2}, FAM4);
    REQUIRE(d);
    CHECK(d->kind == ChainDefect::Kind::disjoint_pair);
    CHECK(d->position == 0);
    CHECK(defect_kind({0, 0}, FAM3) == ChainDefect::Kind::duplicate_arc);
    CHECK(defect_kind({0, 9}, FAM3) == ChainDefect::Kind::out_of_range);
    CHECK(defect_kind({}, FAM3) == ChainDefect::Kind::empty);
}

TEST_CASE("chain value type")
{
    Chain c({4, 1, 7});
    CHECK(c.reversed() == Chain({7, 1, 4}));
    CHECK(c.with_swapped(0, 2) == Chain({7, 1, 4}));
    CHECK(c.position_of(7) == 2);
    CHECK(c.position_of(3) == 3);
    CHECK(c.contains(1));
}

TEST_CASE("support")
{
    CHECK(support(Chain({0, 1, 2}), FAM3) == reg(FAM3, 8, 5));
    CHECK(support(Chain({0}), FAM3) == reg(FAM3, 0, 5));
    CHECK(support(Chain({0, 3, 1, 2}), FAM4) == reg(FAM4, 8, 6));
    CHECK(support(Chain({0, 3, 1, 2}).reversed(), FAM4) == support(Chain({0, 3, 1, 2}), FAM4));
}

TEST_CASE("extension")
{
    auto grown = try_extend(Chain({0, 2}), FAM3);
    REQUIRE(grown);
    CHECK(grown->size() == 3);
    CHECK(is_valid_chain(*grown, FAM3));
    CHECK_FALSE(try_extend(Chain({0, 1, 2}), FAM3));
    auto with3 = try_extend(Chain({0, 1, 2}), FAM4);
    REQUIRE(with3);
    CHECK(with3->contains(3));
    CHECK(is_valid_chain(*with3, FAM4));
}

TEST_CASE("membership")
{
    CHECK(longest_chain_membership_check(Chain({0, 1, 2}), FAM3));
    CHECK(longest_chain_membership_check(Chain({2, 0, 3, 1}), FAM4));
    CHECK_FALSE(longest_chain_membership_check(Chain({0, 1}), FAM3));
    CHECK(membership_violation(Chain({0, 1}), FAM3) == ArcIndex{2});
}

TEST_CASE("cover traces")
{
    auto k3 = minimal_cover(FAM3);
    auto full = cover_trace(Chain({0, 1, 2}), k3);
    CHECK(full.full());
    CHECK(full.contiguous);
    CHECK_FALSE(full.proper());

    auto k = minimal_cover(PENDANT);
    REQUIRE(k.arcs() == std::vector<ArcIndex>{0, 1, 2, 3});
    auto tr = cover_trace(Chain({4, 5, 0, 1, 2, 6, 7}), k);
    CHECK(tr.proper());
    CHECK(tr.members == std::vector<std::size_t>{0, 1, 2});
    CHECK(*tr.a == 3);
    CHECK(*tr.b == 3);

    auto wrap = cover_trace(Chain({4, 5, 0, 3, 2, 6, 7}), k);
    CHECK(wrap.proper());
    CHECK(*wrap.a == 1);
    CHECK(*wrap.b == 1);

    auto gap = cover_trace(std::vector<ArcIndex>{0, 2}, k);
    CHECK_FALSE(gap.contiguous);
    CHECK(cover_trace(std::vector<ArcIndex>{4}, k).members.empty());

    auto single = ArcFamily(Circle(12), {Arc::full()});
    auto t1 = cover_trace(Chain({0}), minimal_cover(single));
    CHECK(t1.members == std::vector<std::size_t>{0});
    CHECK(t1.full());
}

TEST_CASE("longest chains on the pendant instance")
{
    auto g = oracle::graph_of(PENDANT);
    auto paths = oracle::all_longest(g);
    REQUIRE_FALSE(paths.empty());
    CHECK(paths.front().size() == 7);
    auto k = minimal_cover(PENDANT);
    for (const auto & p : paths) {
        Chain c(std::vector<ArcIndex>(p.begin(), p.end()));
        auto tr = cover_trace(c, k);
        CHECK(tr.proper());
        CHECK(c.contains(0));
        CHECK(c.contains(2));
        CHECK_FALSE(try_extend(c, PENDANT));
        CHECK(longest_chain_membership_check(c, PENDANT));
    }
}

TEST_CASE("random families: longest chains and extension")
{
    Rng rng(77);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        GenerateParams p;
        p.arcs = 3 + seed % 5;
        p.ticks = 4 * static_cast<std::int64_t>(p.arcs);
        p.seed = seed;
        p.require_connected = true;
        auto f = generate(p);
        bool covering = covers_circle(f);
        std::optional<Cover> k;
        if (covering)
            k = minimal_cover(f);
        auto g = oracle::graph_of(f);
        for (const auto & path : oracle::all_longest(g)) {
            Chain c(std::vector<ArcIndex>(path.begin(), path.end()));
            CHECK(is_valid_chain(c, f));
            CHECK_FALSE(try_extend(c, f));
            CHECK(longest_chain_membership_check(c, f));
            CHECK(support(c.reversed(), f) == support(c, f));
            Region u = Region::empty(f.circle());
            for (auto a : c)
                u = u.unite(f.region(a));
            CHECK(u.contains(support(c, f)));
            if (k) {
                auto tr = cover_trace(c, *k);
                CHECK(tr.nonempty());
                CHECK(tr.contiguous);
            }
        }
        // random short chains: any extension is a valid chain one longer
        for (int walk = 0; walk < 5; ++walk) {
            std::vector<ArcIndex> arcs{static_cast<ArcIndex>(rng.below(f.size()))};
            for (int step = 0; step < 3; ++step) {
                auto last = arcs.back();
                std::vector<ArcIndex> next;
                for (ArcIndex w = 0; w < f.size(); ++w)
                    if (g.adj[last][w] && std::find(arcs.begin(), arcs.end(), w) == arcs.end())
                        next.push_back(w);
                if (next.empty())
                    break;
                arcs.push_back(next[rng.below(next.size())]);
            }
            Chain c(arcs);
            if (auto longer = try_extend(c, f)) {
                CHECK(longer->size() == c.size() + 1);
                CHECK(is_valid_chain(*longer, f));
            }
            else {
                CHECK_FALSE(membership_violation(c, f));
            }
        }
    }
}
