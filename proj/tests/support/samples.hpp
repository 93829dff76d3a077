#pragma once

#include "oracles.hpp"

#include <arcpath/verifier.hpp>

#include <optional>
#include <vector>

namespace samples {

using namespace arcpath;

struct ProperChain {
    ArcFamily family;
    Cover cover;
    Chain chain;
    CoverTrace trace;
};

/// Hunt parameters that make proper cover traces common: two free arcs and
/// the rest at most four ticks long.
inline HuntParams clustered(std::uint64_t seed, std::size_t max_arcs = 10)
{
    HuntParams p;
    p.seed = seed;
    p.min_arcs = 4;
    p.max_arcs = max_arcs;
    p.ticks_factor = 3;
    p.max_span = 4;
    p.long_arcs = 2;
    return p;
}

/// Longest chains with proper trace, found by the oracle, up to `want` of
/// them and at most `per_family` per family.
inline std::vector<ProperChain> proper_chains(std::uint64_t seed, std::size_t want, std::size_t per_family = 4,
                                              std::size_t max_arcs = 10)
{
    std::vector<ProperChain> out;
    auto params = clustered(seed, max_arcs);
    for (std::size_t trial = 0; out.size() < want && trial < 200 * want; ++trial) {
        std::optional<ArcFamily> drawn;
        try {
            drawn = hunt_instance(params, trial);
        }
        catch (const GenerationExhausted &) {
            continue;
        }
        const ArcFamily & f = *drawn;
        auto k = minimal_cover(f);
        auto paths = oracle::all_longest(oracle::graph_of(f));
        std::size_t taken = 0;
        for (const auto & p : paths) {
            if (taken == per_family || out.size() == want)
                break;
            Chain c(std::vector<ArcIndex>(p.begin(), p.end()));
            auto tr = cover_trace(c, k);
            if (!tr.proper())
                continue;
            out.push_back({f, k, c, tr});
            ++taken;
        }
    }
    return out;
}

} // namespace samples
