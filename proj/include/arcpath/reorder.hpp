#pragma once

// Reordering machinery for longest chains whose cover trace is proper
// (P ∩ K = {K_{a+1}, ..., K_{b-1}} ≠ K): witness points, the Keil
// permutation that makes them consecutive clockwise, the swap rule, and the
// two-phase canonicalization enforcing properties (a)-(e).
//
// Positions are 0-based throughout: the arc at position k carries witness
// points k and k+1.

#include <arcpath/chain.hpp>

#include <optional>
#include <string>
#include <vector>

namespace arcpath {

struct PointAssignment {
    std::vector<Point> points;
    /// Linearizes the circle; lies in K_a and therefore outside the support.
    Point cut;
};

/// Precondition or runtime-assertion failure while choosing witness points.
class AssignmentFailed : public InternalError {
public:
    using InternalError::InternalError;
};

class NoPermutationFound : public InternalError {
public:
    using InternalError::InternalError;
};

class SwapIllegal : public Error {
public:
    using Error::Error;
};

/// Witness points for a longest chain with proper trace: x_0 ∈ J_0,
/// x_{k+1} ∈ J_k ∩ J_{k+1}, x_t ∈ J_{t-1}, pairwise distinct. Each point is
/// the clockwise-first (from the cut) unused dyadic tick + odd/2^j of the
/// required region with j minimal.
PointAssignment assign_points(const Chain & chain, const ArcFamily & family, const Cover & cover,
                              const CoverTrace & trace);

/// True iff every consecutive pair of points spans a closed arc inside the
/// arc at that position.
bool assignment_fits(const Chain & chain, const PointAssignment & pa, const ArcFamily & family);

struct KeilResult {
    Chain chain;
    PointAssignment points;
    bool used_fallback = false;
};

/// Sorts the points clockwise from the cut and permutes the arcs so that
/// each sorted consecutive pair lies in its arc. Greedy by earliest right
/// endpoint, exhaustive matching as a fallback.
KeilResult keil_reorder(const Chain & chain, const PointAssignment & pa, const ArcFamily & family);

/// [x_p, x_{p+1}] and [x_q, x_{q+1}] both inside J_p ∩ J_q; needs p < q < t.
bool can_swap(const Chain & chain, const PointAssignment & pa, const ArcFamily & family, std::size_t p,
              std::size_t q);
/// Throws SwapIllegal unless can_swap holds.
Chain swap(const Chain & chain, const PointAssignment & pa, const ArcFamily & family, std::size_t p,
           std::size_t q);

/// Violator bookkeeping around a pivot arc: `before` holds positions ahead of
/// the pivot breaking the "predecessor" rule, `after` positions behind it
/// breaking the "successor" rule.
struct PhaseState {
    std::size_t gamma = 0;
    std::vector<std::size_t> before; // R
    std::vector<std::size_t> after;  // L

    bool violators_empty() const noexcept { return before.empty() && after.empty(); }
    std::size_t alpha() const noexcept { return before.empty() ? gamma : before.front(); }
    std::size_t beta() const noexcept { return after.empty() ? gamma : after.back(); }
    std::size_t f() const noexcept { return beta() - alpha(); }

    friend bool operator==(const PhaseState &, const PhaseState &) = default;
};

/// Sets for the first phase, pivot K_{a+1}: L collects successors A with
/// ΔK_a ⊆ A, R collects predecessors breaking property (c).
PhaseState phase1_sets(const Chain & chain, const ArcFamily & family, const Cover & cover, std::int64_t a);

/// Sets for the second phase, pivot K_{b-1}: L collects successors of the
/// pivot breaking property (d), R predecessors containing ΔK_{b-1}.
PhaseState phase2_sets(const Chain & chain, const ArcFamily & family, const Cover & cover, std::int64_t b);

struct PropertyWitness {
    char property; // 'a' .. 'e'
    std::size_t position;
    ArcIndex arc;
};

struct CanonicalReport {
    bool a = true, b = true, c = true, d = true, e = true;
    std::vector<PropertyWitness> witnesses;

    bool all() const noexcept { return a && b && c && d && e; }
};

std::string to_string(const CanonicalReport & r);

/// Evaluates properties (a)-(e) literally against K_{a+1} and K_{b-1}.
/// Throws PreconditionViolated when either pivot is missing from the chain.
CanonicalReport check_properties(const Chain & chain, const ArcFamily & family, const Cover & cover, std::int64_t a,
                                 std::int64_t b);

enum class SwapRule { claim1, claim2, claim3, phase2_claim1, phase2_claim2, phase2_claim3 };

std::string to_string(SwapRule rule);

struct SwapStep {
    SwapRule rule;
    std::size_t p;
    std::size_t q;
    /// Potential after the swap.
    std::size_t f;
};

struct CanonicalizeOptions {
    /// Re-derive the violator sets after every swap and compare against the
    /// effect each claim predicts.
    bool paranoid = false;
    /// Also evaluate the literal "A ⊄ ΔK_{b-1}" reading of the second-phase
    /// successor rule and count where it disagrees with the mirrored rule.
    bool compare_verbatim = false;
    /// Fault injection for harness self-tests: never perform pivot swaps.
    bool skip_pivot_swaps = false;
    /// Random legal swaps applied to the Keil order before the phases start,
    /// so the phases run from orders other than the greedy one.
    std::size_t scramble_swaps = 0;
    std::uint64_t scramble_seed = 0;
};

struct Canonicalization {
    Chain input;
    Chain keil_chain;
    /// Order the phases started from; keil_chain unless scrambled.
    Chain start_chain;
    PointAssignment points;
    std::vector<SwapStep> steps;
    Chain result;
    CanonicalReport report;
    /// Proof-step assertions that failed (claim effects, potential descent,
    /// pivot separation, swap legality).
    std::vector<std::string> proof_violations;
    std::size_t verbatim_divergences = 0;
    bool arcs_preserved = true;

    bool ok() const noexcept { return report.all() && proof_violations.empty() && arcs_preserved; }
};

/// Reorders a longest chain with proper trace into one satisfying (a)-(e).
/// Never throws for property failures; they land in the returned record.
Canonicalization canonicalize(const Chain & chain, const ArcFamily & family, const Cover & cover,
                              const CoverTrace & trace, const CanonicalizeOptions & options = {});

} // namespace arcpath
