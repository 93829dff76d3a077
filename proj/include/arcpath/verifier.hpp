#pragma once

#include <arcpath/arc_family.hpp>
#include <arcpath/chain.hpp>
#include <arcpath/path_solver.hpp>
#include <arcpath/reorder.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace arcpath {

enum class Branch {
    disconnected, // not verified
    interval,     // arcs miss part of the circle
    single_cover, // n = 1
    full_trace,   // some longest chain meeting fewest cover arcs still meets all of them
    proper_trace, // the K_{b-1} argument applies
};

std::string to_string(Branch b);

/// One property violation, replayable from the instance plus `chain`.
struct Failure {
    std::string flag;
    std::string detail;
    std::vector<ArcIndex> chain;
};

struct VerificationReport {
    std::size_t m = 0;
    std::int64_t ticks = 0;
    std::size_t n = 0;
    bool connected = false;
    bool covering = false;
    Branch branch = Branch::disconnected;

    std::size_t longest_length = 0;
    std::uint64_t longest_count = 0;
    std::size_t distinct_vertex_sets = 0;
    std::vector<std::size_t> common_vertices;

    // Unset when the check does not apply to the branch.
    std::optional<bool> gallai_ok;
    std::optional<bool> oracle_ok;
    std::optional<bool> lemma1_ok;
    std::optional<bool> membership_ok;
    std::optional<bool> lemma3_ok;
    std::optional<bool> kb1_ok;

    std::size_t min_cover_hits = 0;
    std::optional<Chain> extremal;
    std::optional<CoverTrace> trace;
    /// Arc every longest chain must contain: K_{b-1}, or K_0 when n = 1.
    std::optional<ArcIndex> witness;
    std::optional<Canonicalization> canonical;
    std::size_t lemma3_chains = 0;
    /// Swaps over every canonicalized chain.
    std::size_t swap_steps = 0;
    std::size_t scrambled_runs = 0;
    std::size_t tied_traces = 0;
    std::size_t verbatim_divergences = 0;

    std::vector<Failure> failures;

    bool ok() const noexcept { return failures.empty(); }
};

struct VerifyOptions {
    bool paranoid = false;
    EnumerateOptions enumerate{};
    /// Extra longest chains with proper trace to canonicalize in paranoid mode.
    std::size_t extra_canonicalizations = 32;
    /// Extra longest chains to run the membership check on in paranoid mode.
    std::size_t extra_membership_checks = 32;
    /// Extra runs per canonicalized chain starting from a randomly
    /// scrambled order (paranoid mode only).
    std::size_t scrambled_runs = 4;
    CanonicalizeOptions canonicalize{};
};

/// Runs every structural check on one instance. Only resource problems
/// (TooLarge) throw; violations are collected in the report.
VerificationReport verify_instance(const ArcFamily & family, const VerifyOptions & options = {});

enum class ReportFormat { text, machine };

std::string format_report(const VerificationReport & report, ReportFormat format);

struct SurgeryResult {
    std::vector<ArcIndex> c1;
    std::vector<ArcIndex> c2;
    bool c1_is_chain = false;
    bool c2_is_chain = false;
    std::size_t p_length = 0;
    std::size_t q_length = 0;
    /// |C1| + |C2| - (|P| + |Q| + 2); never negative when preconditions hold.
    std::int64_t length_slack = 0;
};

/// Splits P* = P1 K_{b-1} P2 and Q* = Q1 K_{l+1} Q2 and builds
/// C1 = P1 K_{b-1} R K_{l+1} reverse(Q1), C2 = reverse(P2) K_{b-1} R K_{l+1} Q2
/// with R = (K_b, ..., K_l). Throws PreconditionViolated naming the clause
/// when the disjointness hypotheses fail. Canonicity of the inputs is the
/// caller's obligation.
SurgeryResult build_surgery(const Chain & p_star, const Chain & q_star, const ArcFamily & family,
                            const Cover & cover, const CoverTrace & trace_p, const CoverTrace & trace_q);

/// False exactly when C1 and C2 are both chains, the length bound holds,
/// both inputs have the maximum length, and neither output exceeds it; that
/// conjunction is contradictory.
bool surgery_consistent(const SurgeryResult & s, std::size_t longest_length);

struct HuntParams {
    std::size_t trials = 100;
    std::size_t min_arcs = 3;
    std::size_t max_arcs = 6;
    std::int64_t ticks_factor = 4;
    /// Passed through to GenerateParams::max_span; 0 pairs shuffled endpoints.
    std::int64_t max_span = 0;
    std::size_t long_arcs = 0;
    std::uint64_t seed = 1;
    bool paranoid = false;
    bool require_cover = true;
    bool require_connected = true;
    std::optional<std::filesystem::path> out_dir;
    CanonicalizeOptions canonicalize{};
};

struct FlagTally {
    std::size_t checked = 0;
    std::size_t failed = 0;
};

struct HuntSummary {
    std::size_t trials = 0;
    std::size_t generation_exhausted = 0;
    std::size_t disconnected = 0;
    std::size_t interval = 0;
    std::size_t single_cover = 0;
    std::size_t full_trace = 0;
    std::size_t proper_trace = 0;
    FlagTally gallai, oracle, lemma1, membership, lemma3, kb1;
    std::size_t lemma3_chains = 0;
    std::size_t swap_steps = 0;
    std::size_t scrambled_runs = 0;
    std::size_t verbatim_divergences = 0;
    std::size_t failed_trials = 0;
    std::vector<std::string> failure_files;

    bool ok() const noexcept { return failed_trials == 0; }
};

/// Seeded stream of instances for the given parameters; trial i depends only
/// on (seed, i).
ArcFamily hunt_instance(const HuntParams & params, std::size_t trial);

HuntSummary hunt(const HuntParams & params);

std::string format_summary(const HuntSummary & summary, ReportFormat format);

} // namespace arcpath
