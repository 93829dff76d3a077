#include <arcpath/error.hpp>
#include <arcpath/geometry.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace arcpath {

namespace {

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

Rational floor_of(const Rational & r)
{
    auto q = r.numerator() / r.denominator();
    if (r.numerator() < 0 && q * r.denominator() != r.numerator())
        --q;
    return Rational(q);
}

} // namespace

std::string to_string(const Point & p)
{
    const auto & v = p.value();
    if (v.denominator() == 1)
        return std::to_string(v.numerator());
    if (!is_power_of_two(v.denominator()) || v.denominator() > (std::int64_t{1} << 30)) {
        return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
    }
    // dyadic: exact decimal expansion
    auto whole = floor_of(v);
    Rational frac = v - whole;
    std::string out = std::to_string(whole.numerator()) + ".";
    while (frac != Rational(0)) {
        frac *= Rational(10);
        auto digit = floor_of(frac);
        out += static_cast<char>('0' + digit.numerator());
        frac -= digit;
    }
    return out;
}

std::ostream & operator<<(std::ostream & os, const Point & p) { return os << to_string(p); }

Circle::Circle(std::int64_t ticks) : ticks_(ticks)
{
    if (ticks < 2)
        throw PreconditionViolated("circle needs at least 2 ticks, got " + std::to_string(ticks));
}

Point Circle::wrap(const Rational & r) const
{
    Rational t(ticks_);
    Rational reduced = r - floor_of(r / t) * t;
    return Point(reduced);
}

bool Circle::holds(const Point & p) const { return p.value() >= 0 && p.value() < Rational(ticks_); }

Rational Circle::cw_distance(const Point & from, const Point & to) const
{
    Rational d = to.value() - from.value();
    if (d < 0)
        d += Rational(ticks_);
    return d;
}

Point Circle::advance(const Point & from, const Rational & delta) const { return wrap(from.value() + delta); }

Arc Arc::proper(Point left, Point right)
{
    if (left == right)
        throw PreconditionViolated("proper arc needs distinct endpoints, got " + to_string(left) + " twice");
    return Arc(left, right);
}

std::string to_string(const Arc & a)
{
    if (a.is_full())
        return "full";
    return "(" + to_string(a.left()) + "," + to_string(a.right()) + ")";
}

std::ostream & operator<<(std::ostream & os, const Arc & a) { return os << to_string(a); }

bool clockwise_between(const Point & a, const Point & x, const Point & b)
{
    if (a == b)
        throw PreconditionViolated("clockwise_between needs distinct ends");
    if (a < b)
        return a < x && x < b;
    return x > a || x < b;
}

bool contains(const Arc & arc, const Point & x)
{
    return arc.is_full() || clockwise_between(arc.left(), x, arc.right());
}

bool intersects(const Arc & a, const Arc & b)
{
    if (a.is_full() || b.is_full())
        return true;
    // Walking counterclockwise from a common point reaches one of the two
    // left endpoints first, and that endpoint lies inside the other arc.
    return a.left() == b.left() || contains(a, b.left()) || contains(b, a.left());
}

std::string to_string(const Component & c)
{
    if (c.full)
        return "full";
    std::string out;
    out += c.left_closed ? "[" : "(";
    out += to_string(c.left) + "," + to_string(c.right);
    out += c.right_closed ? "]" : ")";
    return out;
}

Region Region::empty(const Circle & circle) { return Region(circle); }

Region Region::whole(const Circle & circle)
{
    Region r(circle);
    r.whole_ = true;
    return r;
}

Region Region::of(const Circle & circle, const Arc & arc)
{
    if (arc.is_full())
        return whole(circle);
    if (!circle.holds(arc.left()) || !circle.holds(arc.right()))
        throw PreconditionViolated("arc " + to_string(arc) + " outside circle of " + std::to_string(circle.ticks()));
    Region r(circle);
    if (arc.left() < arc.right()) {
        r.cuts_ = {arc.left(), arc.right()};
        r.after_cut_ = {1, 0};
    }
    else {
        r.cuts_ = {arc.right(), arc.left()};
        r.after_cut_ = {0, 1};
    }
    r.on_cut_ = {0, 0};
    return r;
}

Region Region::closed_span(const Circle & circle, const Point & x, const Point & y)
{
    if (x == y)
        throw PreconditionViolated("closed span needs distinct ends");
    Region r = of(circle, Arc::proper(x, y));
    r.on_cut_ = {1, 1};
    return r;
}

Point Region::gap_sample(std::size_t i) const
{
    const auto k = cuts_.size();
    if (i + 1 < k)
        return Point((cuts_[i].value() + cuts_[i + 1].value()) / 2);
    Rational span = cuts_[0].value() + Rational(circle_.ticks()) - cuts_[k - 1].value();
    return circle_.advance(cuts_[k - 1], span / 2);
}

bool Region::contains(const Point & x) const
{
    if (cuts_.empty())
        return whole_;
    auto it = std::lower_bound(cuts_.begin(), cuts_.end(), x);
    if (it != cuts_.end() && *it == x)
        return on_cut_[static_cast<std::size_t>(it - cuts_.begin())];
    if (it == cuts_.begin())
        return after_cut_.back();
    return after_cut_[static_cast<std::size_t>(it - cuts_.begin()) - 1];
}

template <typename Op>
Region Region::combine(const Region & other, Op op) const
{
    if (!(circle_ == other.circle_))
        throw PreconditionViolated("region operands live on different circles");
    Region out(circle_);
    std::vector<Point> merged;
    merged.reserve(cuts_.size() + other.cuts_.size());
    std::set_union(cuts_.begin(), cuts_.end(), other.cuts_.begin(), other.cuts_.end(), std::back_inserter(merged));
    if (merged.empty()) {
        out.whole_ = op(whole_, other.whole_);
        return out;
    }
    out.cuts_ = std::move(merged);
    const auto k = out.cuts_.size();
    out.on_cut_.resize(k);
    out.after_cut_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.on_cut_[i] = op(contains(out.cuts_[i]), other.contains(out.cuts_[i]));
        Point s = out.gap_sample(i);
        out.after_cut_[i] = op(contains(s), other.contains(s));
    }
    out.canonicalize();
    return out;
}

void Region::canonicalize()
{
    const auto k = cuts_.size();
    std::vector<Point> cuts;
    std::vector<char> on, after;
    for (std::size_t i = 0; i < k; ++i) {
        char before = after_cut_[(i + k - 1) % k];
        if (on_cut_[i] == before && after_cut_[i] == before)
            continue;
        cuts.push_back(cuts_[i]);
        on.push_back(on_cut_[i]);
        after.push_back(after_cut_[i]);
    }
    if (cuts.empty())
        whole_ = after_cut_.empty() ? whole_ : static_cast<bool>(after_cut_[0]);
    else
        whole_ = false;
    cuts_ = std::move(cuts);
    on_cut_ = std::move(on);
    after_cut_ = std::move(after);
}

Region Region::unite(const Region & other) const
{
    return combine(other, [](bool a, bool b) { return a || b; });
}

Region Region::intersect(const Region & other) const
{
    return combine(other, [](bool a, bool b) { return a && b; });
}

Region Region::subtract(const Region & other) const
{
    return combine(other, [](bool a, bool b) { return a && !b; });
}

Region Region::complement() const { return whole(circle_).subtract(*this); }

bool Region::contains(const Region & other) const { return other.subtract(*this).is_empty(); }

std::vector<Component> Region::components() const
{
    std::vector<Component> out;
    if (cuts_.empty()) {
        if (whole_)
            {
            Component c;
            c.full = true;
            out.push_back(c);
        }
        return out;
    }
    // Pieces alternate cut, gap, cut, gap, ... cyclically; rotate so that
    // the walk starts on an excluded piece, then collect runs of members.
    const auto k = cuts_.size();
    const auto pieces = 2 * k;
    auto member = [&](std::size_t piece) {
        return piece % 2 == 0 ? on_cut_[piece / 2] : after_cut_[piece / 2];
    };
    std::size_t start = 0;
    while (start < pieces && member(start))
        ++start;
    for (std::size_t step = 1; step <= pieces; ++step) {
        auto piece = (start + step) % pieces;
        if (!member(piece))
            continue;
        auto prev = (piece + pieces - 1) % pieces;
        if (member(prev))
            continue;
        // a run begins at `piece`
        Component c;
        if (piece % 2 == 0) {
            c.left = cuts_[piece / 2];
            c.left_closed = true;
        }
        else {
            c.left = cuts_[piece / 2];
            c.left_closed = false;
        }
        auto last = piece;
        while (member((last + 1) % pieces))
            last = (last + 1) % pieces;
        if (last % 2 == 0) {
            c.right = cuts_[last / 2];
            c.right_closed = true;
        }
        else {
            c.right = cuts_[(last / 2 + 1) % k];
            c.right_closed = false;
        }
        out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const Component & a, const Component & b) { return a.left < b.left; });
    return out;
}

bool Region::is_connected() const { return components().size() <= 1; }

std::string to_string(const Region & r)
{
    auto comps = r.components();
    if (comps.empty())
        return "{}";
    std::string out = "{";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i)
            out += ",";
        out += to_string(comps[i]);
    }
    return out + "}";
}

std::ostream & operator<<(std::ostream & os, const Region & r) { return os << to_string(r); }

Region intersect(const Circle & circle, const Arc & a, const Arc & b)
{
    return Region::of(circle, a).intersect(Region::of(circle, b));
}

bool contains(const Circle & circle, const Arc & outer, const Arc & inner)
{
    if (outer.is_full())
        return true;
    if (inner.is_full())
        return false;
    return Region::of(circle, outer).contains(Region::of(circle, inner));
}

Region closed_span(const Circle & circle, const Point & x, const Point & y)
{
    return Region::closed_span(circle, x, y);
}

} // namespace arcpath
