#pragma once

#include <arcpath/arc_family.hpp>
#include <arcpath/error.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace arcpath {

/// Ordered tuple (J_1, ..., J_t) of arc indices. Holding one does not imply
/// validity; see validate_chain.
class Chain {
public:
    Chain() = default;
    explicit Chain(std::vector<ArcIndex> arcs) : arcs_(std::move(arcs)) {}

    std::size_t size() const noexcept { return arcs_.size(); }
    bool empty() const noexcept { return arcs_.empty(); }
    ArcIndex operator[](std::size_t pos) const { return arcs_[pos]; }
    const std::vector<ArcIndex> & arcs() const noexcept { return arcs_; }
    auto begin() const { return arcs_.begin(); }
    auto end() const { return arcs_.end(); }

    bool contains(ArcIndex arc) const;
    /// size() when absent.
    std::size_t position_of(ArcIndex arc) const;
    Chain reversed() const;
    /// Exchanges the arcs at two positions, nothing else.
    Chain with_swapped(std::size_t p, std::size_t q) const;

    friend bool operator==(const Chain &, const Chain &) = default;
    friend auto operator<=>(const Chain &, const Chain &) = default;

private:
    std::vector<ArcIndex> arcs_;
};

struct ChainDefect {
    enum class Kind { out_of_range, duplicate_arc, disjoint_pair, empty };
    Kind kind;
    /// Offending position; for disjoint_pair the pair is (position, position + 1).
    std::size_t position;
};

std::string to_string(const ChainDefect & d);

class InvalidChain : public Error {
public:
    explicit InvalidChain(ChainDefect defect) : Error(to_string(defect)), defect_(defect) {}
    const ChainDefect & defect() const noexcept { return defect_; }

private:
    ChainDefect defect_;
};

/// First defect in reading order, if any.
std::optional<ChainDefect> find_chain_defect(std::span<const ArcIndex> arcs, const ArcFamily & family);
/// Throws InvalidChain.
Chain validate_chain(std::vector<ArcIndex> arcs, const ArcFamily & family);
bool is_valid_chain(const Chain & chain, const ArcFamily & family);

/// J_1 ∪ (J_2∩J_3) ∪ ... ∪ (J_{t-2}∩J_{t-1}) ∪ J_t. For t <= 3 the middle
/// terms vanish and the support is J_1 ∪ J_t.
Region support(const Chain & chain, const ArcFamily & family);

/// If an unused arc meets the support, the chain grows by one: prepended when
/// the arc meets J_1, appended when it meets J_t, inserted between J_i and
/// J_{i+1} when it meets J_i ∩ J_{i+1}.
std::optional<Chain> try_extend(const Chain & chain, const ArcFamily & family);

/// An arc that breaks "A ∈ chain ⟺ A meets Supp(chain)", if any.
std::optional<ArcIndex> membership_violation(const Chain & chain, const ArcFamily & family);
bool longest_chain_membership_check(const Chain & chain, const ArcFamily & family);

/// P ∩ K as cover positions, with a and b such that the positions are
/// {a+1, ..., b-1} modulo n whenever the trace is contiguous and not all of K.
struct CoverTrace {
    std::vector<std::size_t> members;
    std::size_t n = 0;
    bool contiguous = false;
    std::optional<std::int64_t> a;
    std::optional<std::int64_t> b;

    bool nonempty() const noexcept { return !members.empty(); }
    bool full() const noexcept { return members.size() == n; }
    /// Nonempty, contiguous and missing some cover arc.
    bool proper() const noexcept { return nonempty() && contiguous && !full(); }
};

CoverTrace cover_trace(std::span<const ArcIndex> arcs, const Cover & cover);
inline CoverTrace cover_trace(const Chain & chain, const Cover & cover) { return cover_trace(chain.arcs(), cover); }

} // namespace arcpath
