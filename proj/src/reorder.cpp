#include <arcpath/reorder.hpp>
#include <arcpath/rng.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace arcpath {

namespace {

// Dyadic candidates of denominator exactly 2^j, in clockwise order from `from`.
std::vector<Point> dyadic_ring(const Circle & circle, const Point & from, int j)
{
    const std::int64_t denom = std::int64_t{1} << j;
    const std::int64_t count = circle.ticks() * denom / 2;
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k)
        out.emplace_back(Rational(2 * k + 1, denom));
    std::sort(out.begin(), out.end(), [&](const Point & x, const Point & y) {
        return circle.cw_distance(from, x) < circle.cw_distance(from, y);
    });
    return out;
}

constexpr int max_dyadic_level = 12;

Point pick_point(const Region & region, const Point & from, const std::vector<Point> & used,
                 std::map<int, std::vector<Point>> & rings)
{
    for (int j = 1; j <= max_dyadic_level; ++j) {
        auto it = rings.find(j);
        if (it == rings.end())
            it = rings.emplace(j, dyadic_ring(region.circle(), from, j)).first;
        for (const auto & p : it->second)
            if (region.contains(p) && std::find(used.begin(), used.end(), p) == used.end())
                return p;
    }
    throw AssignmentFailed("no free dyadic point in region " + to_string(region));
}

Point midpoint(const Circle & circle, const Arc & arc)
{
    if (arc.is_full())
        return Point(0);
    return circle.advance(arc.left(), circle.cw_distance(arc.left(), arc.right()) / 2);
}

// Distance from `x` clockwise to the right end of `arc`; full arcs never end.
Rational exit_distance(const Circle & circle, const Point & x, const Arc & arc)
{
    if (arc.is_full())
        return Rational(2 * circle.ticks());
    return circle.cw_distance(x, arc.right());
}

bool gap_inside(const Circle & circle, const Point & x, const Point & y, const Arc & arc)
{
    if (x == y)
        return contains(arc, x);
    return Region::of(circle, arc).contains(Region::closed_span(circle, x, y));
}

} // namespace

PointAssignment assign_points(const Chain & chain, const ArcFamily & family, const Cover & cover,
                              const CoverTrace & trace)
{
    if (!trace.proper())
        throw PreconditionViolated("witness points need a proper cover trace");
    if (chain.empty())
        throw PreconditionViolated("witness points need a nonempty chain");
    const auto & circle = family.circle();
    const auto t = chain.size();
    const Arc & ka = family.arc(cover.at(*trace.a));
    const Arc & kb = family.arc(cover.at(*trace.b));

    PointAssignment pa;
    pa.cut = midpoint(circle, ka);

    std::map<int, std::vector<Point>> rings;
    auto regions = std::vector<Region>{};
    regions.reserve(t + 1);
    regions.push_back(family.region(chain[0]));
    for (std::size_t k = 0; k + 1 < t; ++k)
        regions.push_back(family.region(chain[k]).intersect(family.region(chain[k + 1])));
    regions.push_back(family.region(chain[t - 1]));

    for (const auto & r : regions) {
        if (r.is_empty())
            throw AssignmentFailed("required witness region is empty");
        pa.points.push_back(pick_point(r, pa.cut, pa.points, rings));
    }

    const auto supp = support(chain, family);
    for (const auto & x : pa.points) {
        if (contains(ka, x) || contains(kb, x))
            throw AssignmentFailed("witness point " + to_string(x) + " falls inside K_a ∪ K_b; chain is not longest");
        if (!supp.contains(x))
            throw AssignmentFailed("witness point " + to_string(x) + " lies outside the support");
    }
    return pa;
}

bool assignment_fits(const Chain & chain, const PointAssignment & pa, const ArcFamily & family)
{
    if (pa.points.size() != chain.size() + 1)
        return false;
    for (std::size_t k = 0; k < chain.size(); ++k)
        if (!gap_inside(family.circle(), pa.points[k], pa.points[k + 1], family.arc(chain[k])))
            return false;
    return true;
}

KeilResult keil_reorder(const Chain & chain, const PointAssignment & pa, const ArcFamily & family)
{
    const auto & circle = family.circle();
    const auto t = chain.size();
    if (pa.points.size() != t + 1)
        throw PreconditionViolated("point assignment size does not match chain");

    KeilResult out;
    out.points.cut = pa.cut;
    out.points.points = pa.points;
    std::sort(out.points.points.begin(), out.points.points.end(), [&](const Point & x, const Point & y) {
        return circle.cw_distance(pa.cut, x) < circle.cw_distance(pa.cut, y);
    });
    const auto & ys = out.points.points;

    // fits[k][i]: chain arc i covers the k-th sorted gap
    std::vector<std::vector<char>> fits(t, std::vector<char>(t, 0));
    for (std::size_t k = 0; k < t; ++k)
        for (std::size_t i = 0; i < t; ++i)
            fits[k][i] = gap_inside(circle, ys[k], ys[k + 1], family.arc(chain[i]));

    std::vector<std::size_t> pick(t);
    std::vector<char> used(t, 0);
    bool greedy_ok = true;
    for (std::size_t k = 0; k < t && greedy_ok; ++k) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < t; ++i) {
            if (used[i] || !fits[k][i])
                continue;
            if (!best
                || exit_distance(circle, ys[k + 1], family.arc(chain[i]))
                       < exit_distance(circle, ys[k + 1], family.arc(chain[*best])))
                best = i;
        }
        if (!best)
            greedy_ok = false;
        else {
            pick[k] = *best;
            used[*best] = 1;
        }
    }

    if (!greedy_ok) {
        out.used_fallback = true;
        std::fill(used.begin(), used.end(), 0);
        std::function<bool(std::size_t)> match = [&](std::size_t k) {
            if (k == t)
                return true;
            for (std::size_t i = 0; i < t; ++i) {
                if (used[i] || !fits[k][i])
                    continue;
                used[i] = 1;
                pick[k] = i;
                if (match(k + 1))
                    return true;
                used[i] = 0;
            }
            return false;
        };
        if (!match(0))
            throw NoPermutationFound("no arc permutation fits the sorted witness points");
    }

    std::vector<ArcIndex> arcs(t);
    for (std::size_t k = 0; k < t; ++k)
        arcs[k] = chain[pick[k]];
    out.chain = Chain(std::move(arcs));
    return out;
}

bool can_swap(const Chain & chain, const PointAssignment & pa, const ArcFamily & family, std::size_t p,
              std::size_t q)
{
    if (!(p < q) || q >= chain.size())
        throw PreconditionViolated("can_swap needs positions p < q < t, got " + std::to_string(p) + ", "
                                   + std::to_string(q));
    if (pa.points.size() != chain.size() + 1)
        throw PreconditionViolated("point assignment size does not match chain");
    const auto & circle = family.circle();
    const auto lens = family.region(chain[p]).intersect(family.region(chain[q]));
    auto span_inside = [&](std::size_t k) {
        const auto & x = pa.points[k];
        const auto & y = pa.points[k + 1];
        if (x == y)
            return lens.contains(x);
        return lens.contains(Region::closed_span(circle, x, y));
    };
    return span_inside(p) && span_inside(q);
}

Chain swap(const Chain & chain, const PointAssignment & pa, const ArcFamily & family, std::size_t p, std::size_t q)
{
    if (!can_swap(chain, pa, family, p, q))
        throw SwapIllegal("positions " + std::to_string(p) + " and " + std::to_string(q) + " cannot be swapped");
    return chain.with_swapped(p, q);
}

namespace {

// Geometry of the cover boundary used by both phases and the checker.
struct Boundary {
    const ArcFamily & family;
    const Cover & cover;

    Region k(std::int64_t i) const { return family.region(cover.at(i)); }
    Region delta(std::int64_t i) const { return delta_k(family, cover, i); }

    // A ⊆ K_i ∪ K_{i+1} and A \ ΔK_{i+1} connected
    bool hugs(const Region & arc, std::int64_t i) const
    {
        return k(i).unite(k(i + 1)).contains(arc) && arc.subtract(delta(i + 1)).is_connected();
    }
};

std::size_t pivot_position(const Chain & chain, ArcIndex pivot, const char * which)
{
    auto pos = chain.position_of(pivot);
    if (pos == chain.size())
        throw PreconditionViolated(std::string("pivot ") + which + " missing from chain");
    return pos;
}

template <typename Before, typename After>
PhaseState collect(const Chain & chain, std::size_t gamma, Before before, After after)
{
    PhaseState s;
    s.gamma = gamma;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i < gamma && before(chain[i]))
            s.before.push_back(i);
        else if (i > gamma && after(chain[i]))
            s.after.push_back(i);
    }
    return s;
}

struct PhaseRules {
    ArcIndex pivot;
    std::function<bool(ArcIndex)> before;
    std::function<bool(ArcIndex)> after;
    SwapRule claim1, claim2, claim3;
    const char * name;
};

PhaseRules phase1_rules(const ArcFamily & family, const Cover & cover, std::int64_t a)
{
    Boundary g{family, cover};
    auto ka_delta = g.delta(a);
    auto hull = g.k(a).unite(g.k(a + 1));
    auto pivot_delta = g.delta(a + 1);
    const bool two = cover.n() == 2;
    PhaseRules r;
    r.pivot = cover.at(a + 1);
    r.name = "K_{a+1}";
    // (ii): predecessor with A ⊄ K_a ∪ K_{a+1} (n >= 3), A \ ΔK_{a+1} disconnected (n = 2)
    r.before = [&family, hull, pivot_delta, two](ArcIndex arc) {
        auto reg = family.region(arc);
        if (two)
            return !reg.subtract(pivot_delta).is_connected();
        return !hull.contains(reg);
    };
    // (i): successor with ΔK_a ⊆ A
    r.after = [&family, ka_delta](ArcIndex arc) { return family.region(arc).contains(ka_delta); };
    r.claim1 = SwapRule::claim1;
    r.claim2 = SwapRule::claim2;
    r.claim3 = SwapRule::claim3;
    return r;
}

PhaseRules phase2_rules(const ArcFamily & family, const Cover & cover, std::int64_t b)
{
    Boundary g{family, cover};
    auto pivot_delta = g.delta(b - 1);
    auto hull = g.k(b - 1).unite(g.k(b));
    auto kb_delta = g.delta(b);
    PhaseRules r;
    r.pivot = cover.at(b - 1);
    r.name = "K_{b-1}";
    // (ii'): predecessor with ΔK_{b-1} ⊆ A
    r.before = [&family, pivot_delta](ArcIndex arc) { return family.region(arc).contains(pivot_delta); };
    // (i'), mirrored: successor breaking A ⊆ K_{b-1} ∪ K_b with A \ ΔK_b connected
    r.after = [&family, hull, kb_delta](ArcIndex arc) {
        auto reg = family.region(arc);
        return !(hull.contains(reg) && reg.subtract(kb_delta).is_connected());
    };
    r.claim1 = SwapRule::phase2_claim1;
    r.claim2 = SwapRule::phase2_claim2;
    r.claim3 = SwapRule::phase2_claim3;
    return r;
}

PhaseState sets_for(const Chain & chain, const PhaseRules & rules)
{
    return collect(chain, pivot_position(chain, rules.pivot, rules.name), rules.before, rules.after);
}

std::vector<std::size_t> without(std::vector<std::size_t> v, std::size_t x)
{
    v.erase(std::remove(v.begin(), v.end(), x), v.end());
    return v;
}

// One phase of the canonicalization. Returns false when it had to stop early.
bool run_phase(Chain & chain, const PointAssignment & pa, const ArcFamily & family, const PhaseRules & rules,
               const CanonicalizeOptions & options, Canonicalization & out)
{
    const std::string tag = std::string("[") + rules.name + "] ";
    auto fail = [&](const std::string & what) { out.proof_violations.push_back(tag + what); };

    PhaseState s = sets_for(chain, rules);
    const std::size_t bound = s.f();
    std::size_t pivot_rounds = 0;

    auto do_swap = [&](SwapRule rule, std::size_t p, std::size_t q) {
        if (!can_swap(chain, pa, family, p, q)) {
            fail(to_string(rule) + " swap of positions " + std::to_string(p) + "," + std::to_string(q)
                 + " is illegal");
            return false;
        }
        chain = chain.with_swapped(p, q);
        return true;
    };

    for (;;) {
        // pair off a predecessor violator with a successor violator.
        while (!s.before.empty() && !s.after.empty()) {
            const auto p = s.before.front();
            const auto q = s.after.back();
            if (!do_swap(rules.claim1, p, q))
                return false;
            PhaseState next = sets_for(chain, rules);
            if (next.alpha() < s.alpha() || next.beta() > s.beta())
                fail("claim1 moved the window outward");
            if (options.paranoid) {
                if (next.gamma != s.gamma || next.before != without(s.before, p) || next.after != without(s.after, q))
                    fail("claim1 did not remove exactly positions " + std::to_string(p) + " and "
                         + std::to_string(q));
            }
            s = std::move(next);
            out.steps.push_back({rules.claim1, p, q, s.f()});
        }
        if (s.violators_empty())
            break;
        if (options.skip_pivot_swaps)
            return false;
        if (++pivot_rounds > bound) {
            fail("pivot swaps exceeded the initial window " + std::to_string(bound));
            return false;
        }
        const auto before_f = s.f();
        SwapRule rule;
        std::size_t p, q;
        if (s.before.empty()) {
            // case I: pivot leads, swap it with the last successor violator
            rule = rules.claim3;
            p = s.gamma;
            q = s.beta();
        }
        else {
            // case II: pivot trails, swap it with the first predecessor violator
            rule = rules.claim2;
            p = s.alpha();
            q = s.gamma;
        }
        if (!do_swap(rule, p, q))
            return false;
        PhaseState next = sets_for(chain, rules);
        if (next.f() >= before_f)
            fail("potential did not decrease after " + to_string(rule) + " (" + std::to_string(before_f) + " -> "
                 + std::to_string(next.f()) + ")");
        if (next.alpha() < s.alpha() || next.beta() > s.beta())
            fail(to_string(rule) + " moved the window outward");
        if (options.paranoid) {
            bool ok = rule == rules.claim3 ? next.after.empty() : next.before.empty();
            if (!ok)
                fail(to_string(rule) + " left violators on the pivot's far side");
        }
        s = std::move(next);
        out.steps.push_back({rule, p, q, s.f()});
    }
    return true;
}

} // namespace

PhaseState phase1_sets(const Chain & chain, const ArcFamily & family, const Cover & cover, std::int64_t a)
{
    return sets_for(chain, phase1_rules(family, cover, a));
}

PhaseState phase2_sets(const Chain & chain, const ArcFamily & family, const Cover & cover, std::int64_t b)
{
    return sets_for(chain, phase2_rules(family, cover, b));
}

std::string to_string(const CanonicalReport & r)
{
    std::string out;
    auto flag = [&](char name, bool v) {
        out += name;
        out += v ? "=ok " : "=FAIL ";
    };
    flag('a', r.a);
    flag('b', r.b);
    flag('c', r.c);
    flag('d', r.d);
    flag('e', r.e);
    out.pop_back();
    return out;
}

CanonicalReport check_properties(const Chain & chain, const ArcFamily & family, const Cover & cover, std::int64_t a,
                                 std::int64_t b)
{
    Boundary g{family, cover};
    const auto first = pivot_position(chain, cover.at(a + 1), "K_{a+1}");
    const auto last = pivot_position(chain, cover.at(b - 1), "K_{b-1}");
    CanonicalReport r;
    auto miss = [&](char prop, std::size_t pos) {
        switch (prop) {
        case 'a': r.a = false; break;
        case 'b': r.b = false; break;
        case 'c': r.c = false; break;
        case 'd': r.d = false; break;
        case 'e': r.e = false; break;
        }
        r.witnesses.push_back({prop, pos, chain[pos]});
    };

    if (first != last && first > last)
        miss('a', first);

    const auto delta_last = g.delta(b - 1);
    const auto delta_a = g.delta(a);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto reg = family.region(chain[i]);
        if (i < last && reg.contains(delta_last))
            miss('b', i);
        if (i < first && !g.hugs(reg, a))
            miss('c', i);
        if (i > last && !g.hugs(reg, b - 1))
            miss('d', i);
        if (i > first && reg.contains(delta_a))
            miss('e', i);
    }
    return r;
}

std::string to_string(SwapRule rule)
{
    switch (rule) {
    case SwapRule::claim1: return "claim1";
    case SwapRule::claim2: return "claim2";
    case SwapRule::claim3: return "claim3";
    case SwapRule::phase2_claim1: return "phase2-claim1";
    case SwapRule::phase2_claim2: return "phase2-claim2";
    case SwapRule::phase2_claim3: return "phase2-claim3";
    }
    return "unknown";
}

Canonicalization canonicalize(const Chain & chain, const ArcFamily & family, const Cover & cover,
                              const CoverTrace & trace, const CanonicalizeOptions & options)
{
    if (!trace.proper())
        throw PreconditionViolated("canonicalize needs a proper cover trace");
    const auto a = *trace.a;
    const auto b = *trace.b;

    Canonicalization out;
    out.input = chain;
    auto pa = assign_points(chain, family, cover, trace);
    auto keil = keil_reorder(chain, pa, family);
    out.keil_chain = keil.chain;
    out.points = keil.points;
    if (!assignment_fits(keil.chain, keil.points, family))
        out.proof_violations.push_back("keil reorder output does not fit its points");

    Chain work = keil.chain;
    if (options.scramble_swaps > 0 && work.size() >= 2) {
        Rng rng(options.scramble_seed);
        std::size_t done = 0;
        for (std::size_t tries = 0; done < options.scramble_swaps && tries < 32 * options.scramble_swaps; ++tries) {
            auto p = rng.below(work.size());
            auto q = rng.below(work.size());
            if (p == q)
                continue;
            if (p > q)
                std::swap(p, q);
            if (can_swap(work, out.points, family, p, q)) {
                work = work.with_swapped(p, q);
                ++done;
            }
        }
    }
    out.start_chain = work;
    bool finished = run_phase(work, out.points, family, phase1_rules(family, cover, a), options, out);

    if (finished && cover.at(a + 1) != cover.at(b - 1)) {
        const auto rules = phase2_rules(family, cover, b);
        const auto gamma = work.position_of(cover.at(a + 1));
        const auto tilde = sets_for(work, rules);
        if (!(gamma < tilde.alpha()))
            out.proof_violations.push_back("phase 2 window starts at " + std::to_string(tilde.alpha())
                                           + ", not after the phase 1 pivot at " + std::to_string(gamma));
        if (options.compare_verbatim) {
            const auto pivot_delta = delta_k(family, cover, b - 1);
            for (std::size_t i = tilde.gamma + 1; i < work.size(); ++i) {
                bool literal = !pivot_delta.contains(family.region(work[i]));
                bool mirrored = rules.after(work[i]);
                if (literal != mirrored)
                    ++out.verbatim_divergences;
            }
        }
        const auto ce_before = check_properties(work, family, cover, a, b);
        run_phase(work, out.points, family, rules, options, out);
        const auto ce_after = check_properties(work, family, cover, a, b);
        if ((ce_before.c && !ce_after.c) || (ce_before.e && !ce_after.e))
            out.proof_violations.push_back("phase 2 broke property (c) or (e)");
    }

    out.result = work;
    out.report = check_properties(work, family, cover, a, b);
    auto sorted_in = chain.arcs();
    auto sorted_out = work.arcs();
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    out.arcs_preserved = sorted_in == sorted_out && is_valid_chain(work, family);
    return out;
}

} // namespace arcpath
