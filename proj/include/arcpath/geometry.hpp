#pragma once

// Exact geometry on a discrete circle of T ticks. Positions are rationals in
// [0, T); arcs are open; regions are finite unions of arcs, points and
// closed/half-open pieces, kept in a canonical cell decomposition.

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace arcpath {

using Rational = boost::rational<std::int64_t>;

class Point {
public:
    constexpr Point() = default;
    Point(std::int64_t tick) : value_(tick) {}
    Point(Rational value) : value_(value) {}

    const Rational & value() const noexcept { return value_; }

    friend bool operator==(const Point & a, const Point & b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Point & a, const Point & b)
    {
        if (a.value_ < b.value_)
            return std::strong_ordering::less;
        if (b.value_ < a.value_)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    Rational value_{0};
};

/// Dyadic points print as exact decimals ("7.5"), anything else as "p/q".
std::string to_string(const Point & p);
std::ostream & operator<<(std::ostream & os, const Point & p);

class Circle {
public:
    explicit Circle(std::int64_t ticks);

    std::int64_t ticks() const noexcept { return ticks_; }

    /// Reduces any rational into [0, T).
    Point wrap(const Rational & r) const;
    bool holds(const Point & p) const;
    /// Clockwise distance travelled from `from` to `to`; 0 when equal.
    Rational cw_distance(const Point & from, const Point & to) const;
    /// Point reached by walking `delta` clockwise from `from`.
    Point advance(const Point & from, const Rational & delta) const;

    friend bool operator==(const Circle &, const Circle &) = default;

private:
    std::int64_t ticks_;
};

/// Open clockwise arc (left, right), or the whole circle.
class Arc {
public:
    static Arc full() { return Arc{}; }
    static Arc proper(Point left, Point right);

    bool is_full() const noexcept { return full_; }
    /// Only meaningful for proper arcs.
    const Point & left() const noexcept { return left_; }
    const Point & right() const noexcept { return right_; }

    friend bool operator==(const Arc &, const Arc &) = default;

private:
    Arc() = default;
    Arc(Point l, Point r) : full_(false), left_(l), right_(r) {}

    bool full_ = true;
    Point left_;
    Point right_;
};

std::string to_string(const Arc & a);
std::ostream & operator<<(std::ostream & os, const Arc & a);

/// True iff x lies strictly inside the clockwise open arc from a to b.
bool clockwise_between(const Point & a, const Point & x, const Point & b);

bool contains(const Arc & arc, const Point & x);

/// Fast nonemptiness test for the intersection of two arcs.
bool intersects(const Arc & a, const Arc & b);

/// One maximal connected piece of a region. left == right encodes either a
/// single point (both ends closed) or the circle minus one point (both open).
struct Component {
    Point left;
    Point right;
    bool left_closed = false;
    bool right_closed = false;
    bool full = false;

    friend bool operator==(const Component &, const Component &) = default;
};

std::string to_string(const Component & c);

class Region {
public:
    static Region empty(const Circle & circle);
    static Region whole(const Circle & circle);
    static Region of(const Circle & circle, const Arc & arc);
    /// Closed clockwise arc [x, y].
    static Region closed_span(const Circle & circle, const Point & x, const Point & y);

    const Circle & circle() const noexcept { return circle_; }

    bool contains(const Point & x) const;
    /// Superset test.
    bool contains(const Region & other) const;
    bool is_empty() const noexcept { return cuts_.empty() && !whole_; }
    bool is_full() const noexcept { return cuts_.empty() && whole_; }
    /// True for zero or one components.
    bool is_connected() const;
    bool intersects(const Region & other) const { return !intersect(other).is_empty(); }

    Region unite(const Region & other) const;
    Region intersect(const Region & other) const;
    Region subtract(const Region & other) const;
    Region complement() const;

    /// Clockwise order, starting from the component with the smallest left end.
    std::vector<Component> components() const;

    friend bool operator==(const Region &, const Region &) = default;

private:
    explicit Region(const Circle & circle) : circle_(circle) {}

    template <typename Op>
    Region combine(const Region & other, Op op) const;
    Point gap_sample(std::size_t i) const;
    void canonicalize();

    Circle circle_;
    // Sorted cut points, membership at each cut, and membership of the open
    // gap following each cut (cyclically). With no cuts, whole_ decides.
    std::vector<Point> cuts_;
    std::vector<char> on_cut_;
    std::vector<char> after_cut_;
    bool whole_ = false;
};

std::string to_string(const Region & r);
std::ostream & operator<<(std::ostream & os, const Region & r);

Region intersect(const Circle & circle, const Arc & a, const Arc & b);
/// Set inclusion inner ⊆ outer.
bool contains(const Circle & circle, const Arc & outer, const Arc & inner);
Region closed_span(const Circle & circle, const Point & x, const Point & y);

} // namespace arcpath
