#include <arcpath/chain.hpp>

#include <algorithm>

namespace arcpath {

bool Chain::contains(ArcIndex arc) const { return std::find(arcs_.begin(), arcs_.end(), arc) != arcs_.end(); }

std::size_t Chain::position_of(ArcIndex arc) const
{
    return static_cast<std::size_t>(std::find(arcs_.begin(), arcs_.end(), arc) - arcs_.begin());
}

Chain Chain::reversed() const { return Chain(std::vector<ArcIndex>(arcs_.rbegin(), arcs_.rend())); }

Chain Chain::with_swapped(std::size_t p, std::size_t q) const
{
    auto arcs = arcs_;
    std::swap(arcs.at(p), arcs.at(q));
    return Chain(std::move(arcs));
}

std::string to_string(const ChainDefect & d)
{
    switch (d.kind) {
    case ChainDefect::Kind::out_of_range:
        return "arc index out of range at position " + std::to_string(d.position);
    case ChainDefect::Kind::duplicate_arc:
        return "arc repeated at position " + std::to_string(d.position);
    case ChainDefect::Kind::disjoint_pair:
        return "arcs at positions " + std::to_string(d.position) + " and " + std::to_string(d.position + 1)
               + " do not intersect";
    case ChainDefect::Kind::empty:
        return "empty chain";
    }
    return "unknown defect";
}

std::optional<ChainDefect> find_chain_defect(std::span<const ArcIndex> arcs, const ArcFamily & family)
{
    if (arcs.empty())
        return ChainDefect{ChainDefect::Kind::empty, 0};
    std::vector<char> used(family.size(), 0);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i] >= family.size())
            return ChainDefect{ChainDefect::Kind::out_of_range, i};
        if (used[arcs[i]])
            return ChainDefect{ChainDefect::Kind::duplicate_arc, i};
        used[arcs[i]] = 1;
        if (i > 0 && !intersects(family.arc(arcs[i - 1]), family.arc(arcs[i])))
            return ChainDefect{ChainDefect::Kind::disjoint_pair, i - 1};
    }
    return std::nullopt;
}

Chain validate_chain(std::vector<ArcIndex> arcs, const ArcFamily & family)
{
    if (auto d = find_chain_defect(arcs, family))
        throw InvalidChain(*d);
    return Chain(std::move(arcs));
}

bool is_valid_chain(const Chain & chain, const ArcFamily & family)
{
    return !find_chain_defect(chain.arcs(), family);
}

Region support(const Chain & chain, const ArcFamily & family)
{
    if (chain.empty())
        return Region::empty(family.circle());
    const auto t = chain.size();
    Region s = family.region(chain[0]).unite(family.region(chain[t - 1]));
    // middle terms J_i ∩ J_{i+1} for 2 <= i <= t-2 (1-based)
    for (std::size_t i = 1; i + 2 < t; ++i)
        s = s.unite(family.region(chain[i]).intersect(family.region(chain[i + 1])));
    return s;
}

std::optional<Chain> try_extend(const Chain & chain, const ArcFamily & family)
{
    if (chain.empty())
        return std::nullopt;
    const auto t = chain.size();
    const auto supp = support(chain, family);
    for (ArcIndex a = 0; a < family.size(); ++a) {
        if (chain.contains(a))
            continue;
        const auto region = family.region(a);
        if (!region.intersects(supp))
            continue;
        std::vector<ArcIndex> out = chain.arcs();
        if (intersects(family.arc(a), family.arc(chain[0]))) {
            out.insert(out.begin(), a);
            return Chain(std::move(out));
        }
        if (intersects(family.arc(a), family.arc(chain[t - 1]))) {
            out.push_back(a);
            return Chain(std::move(out));
        }
        for (std::size_t i = 1; i + 2 < t; ++i) {
            auto lens = family.region(chain[i]).intersect(family.region(chain[i + 1]));
            if (region.intersects(lens)) {
                out.insert(out.begin() + static_cast<std::ptrdiff_t>(i + 1), a);
                return Chain(std::move(out));
            }
        }
        throw InternalError("arc meets the support but no insertion point was found");
    }
    return std::nullopt;
}

std::optional<ArcIndex> membership_violation(const Chain & chain, const ArcFamily & family)
{
    const auto supp = support(chain, family);
    for (ArcIndex a = 0; a < family.size(); ++a)
        if (chain.contains(a) != family.region(a).intersects(supp))
            return a;
    return std::nullopt;
}

bool longest_chain_membership_check(const Chain & chain, const ArcFamily & family)
{
    return !membership_violation(chain, family);
}

CoverTrace cover_trace(std::span<const ArcIndex> arcs, const Cover & cover)
{
    CoverTrace trace;
    trace.n = cover.n();
    std::vector<char> in(cover.n(), 0);
    for (auto a : arcs) {
        auto pos = cover.position_of(a);
        if (pos < cover.n())
            in[pos] = 1;
    }
    for (std::size_t i = 0; i < cover.n(); ++i)
        if (in[i])
            trace.members.push_back(i);

    if (trace.members.empty())
        return trace;
    if (trace.full()) {
        trace.contiguous = true;
        return trace;
    }
    const auto n = cover.n();
    std::size_t starts = 0;
    std::size_t first = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (in[i] && !in[(i + n - 1) % n]) {
            ++starts;
            first = i;
        }
    trace.contiguous = starts == 1;
    if (trace.contiguous) {
        auto last = first;
        while (in[(last + 1) % n])
            last = (last + 1) % n;
        trace.a = static_cast<std::int64_t>((first + n - 1) % n);
        trace.b = static_cast<std::int64_t>((last + 1) % n);
    }
    return trace;
}

} // namespace arcpath
