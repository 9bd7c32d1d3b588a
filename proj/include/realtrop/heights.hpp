#pragma once

// Exact-rational height vectors: induced regular subdivisions, secondary-cone
// inequalities, regularity certificates and forced-equality queries.

#include "realtrop/lattice.hpp"
#include "realtrop/lp.hpp"
#include "realtrop/result.hpp"
#include "realtrop/triangulation.hpp"

#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace realtrop {

/// One rational height per lattice point, indexed by point index.
using HeightVector = std::vector<Rational>;

/// min: lower hull of the lifted points (tropical polynomial with min);
/// max: upper hull.
enum class Convention { min, max };

inline const char* convention_name(Convention c) { return c == Convention::min ? "min" : "max"; }

/// coefficients . h + constant
struct LinearFunctional
{
    std::vector<Rational> coefficients;
    Rational constant;

    LinearFunctional() = default;
    explicit LinearFunctional(std::size_t n) : coefficients(n) {}

    Rational operator()(std::span<const Rational> h) const
    {
        Rational s = constant;
        for (std::size_t i = 0; i < coefficients.size(); ++i)
            if (sgn(coefficients[i]) != 0)
                s += coefficients[i] * h[i];
        return s;
    }

    bool is_zero() const
    {
        if (sgn(constant) != 0)
            return false;
        for (const Rational& c : coefficients)
            if (sgn(c) != 0)
                return false;
        return true;
    }

    LinearFunctional operator-() const
    {
        LinearFunctional r(*this);
        for (Rational& c : r.coefficients)
            c = -c;
        r.constant = -r.constant;
        return r;
    }
    LinearFunctional& operator+=(const LinearFunctional& o)
    {
        if (coefficients.size() < o.coefficients.size())
            coefficients.resize(o.coefficients.size());
        for (std::size_t i = 0; i < o.coefficients.size(); ++i)
            coefficients[i] += o.coefficients[i];
        constant += o.constant;
        return *this;
    }
    LinearFunctional& operator-=(const LinearFunctional& o) { return *this += -o; }
    LinearFunctional& operator*=(const Rational& s)
    {
        for (Rational& c : coefficients)
            c *= s;
        constant *= s;
        return *this;
    }
    friend LinearFunctional operator+(LinearFunctional a, const LinearFunctional& b) { return a += b; }
    friend LinearFunctional operator-(LinearFunctional a, const LinearFunctional& b) { return a -= b; }
    friend LinearFunctional operator*(const Rational& s, LinearFunctional a) { return a *= s; }
    friend bool operator==(const LinearFunctional&, const LinearFunctional&) = default;
};

/// Comma-separated rationals: `6,3,1` or `5/2,-1,0`.
inline Result<HeightVector> parse_heights(std::string_view text)
{
    HeightVector h;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t[]");
        const auto last = item.find_last_not_of(" \t[]");
        if (first == std::string::npos)
            return Error{"empty height entry"};
        item = item.substr(first, last - first + 1);
        Rational q;
        if (q.set_str(item, 10) != 0)
            return Error{"not a rational number: '" + item + "'"};
        if (sgn(q.get_den()) == 0)
            return Error{"zero denominator in '" + item + "'"};
        q.canonicalize();
        h.push_back(q);
    }
    if (h.empty())
        return Error{"no heights given"};
    return h;
}

/// Degree d with L(d) == n, if any.
inline std::optional<int> degree_for_point_count(std::size_t n)
{
    for (int d = 1; d <= kMaxDegree; ++d)
        if (static_cast<std::size_t>(num_points(d)) == n)
            return d;
    return std::nullopt;
}

namespace detail {

// Sign of the lifted point s relative to the plane through the lifted
// p, q, r (p, q, r counter-clockwise): positive when s lies above.
inline int side_of_plane(LatticePoint p, LatticePoint q, LatticePoint r, LatticePoint s, const Rational& hp,
                         const Rational& hq, const Rational& hr, const Rational& hs)
{
    const long a1 = q.x - p.x, a2 = q.y - p.y;
    const long b1 = r.x - p.x, b2 = r.y - p.y;
    const long c1 = s.x - p.x, c2 = s.y - p.y;
    // det [[a1 a2 dq], [b1 b2 dr], [c1 c2 ds]]
    const Rational det = (hq - hp) * (b1 * c2 - b2 * c1) - (hr - hp) * (a1 * c2 - a2 * c1) + (hs - hp) * (a1 * b2 - a2 * b1);
    return sgn(det);
}

}  // namespace detail

/// Regular subdivision induced by lifting each lattice point to its height.
/// Fails unless that subdivision is a unimodular triangulation.
inline Result<Triangulation> induced_subdivision(std::span<const Rational> h, Convention conv = Convention::min)
{
    const auto deg = degree_for_point_count(h.size());
    if (!deg)
        return Error{"height vector length " + std::to_string(h.size()) + " is not a triangular number (d+1)(d+2)/2"};
    const int d = *deg;
    const int n = num_points(d);
    HeightVector lift(h.begin(), h.end());
    if (conv == Convention::max)
        for (Rational& v : lift)
            v = -v;

    // A unimodular lower facet is a unimodular triangle with every other
    // lifted point strictly above its plane; a unimodular triangulation is
    // exactly d^2 such facets.
    std::vector<Cell> cells;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                LatticePoint p = point_at(a), q = point_at(b), r = point_at(c);
                const long long o = orientation(p, q, r);
                if (o != 1 && o != -1)
                    continue;
                int ia = a, ib = b, ic = c;
                if (o < 0) {
                    std::swap(q, r);
                    std::swap(ib, ic);
                }
                bool facet = true;
                for (int s = 0; s < n && facet; ++s) {
                    if (s == a || s == b || s == c)
                        continue;
                    facet = detail::side_of_plane(p, q, r, point_at(s), lift[ia], lift[ib], lift[ic], lift[s]) > 0;
                }
                if (facet)
                    cells.push_back(make_cell(a, b, c));
            }
    if (static_cast<int>(cells.size()) != d * d)
        return Error{"heights do not induce a unimodular triangulation (" + std::to_string(cells.size()) +
                     " unimodular facets, expected " + std::to_string(d * d) + ")"};
    Triangulation t(d, std::move(cells));
    if (auto v = validate(t))
        return Error{"induced subdivision invalid: " + v->message};
    return t;
}

/// Local folding functional of an interior edge {v1, v2} with opposite
/// vertices a1, a2: h(a1) + h(a2) - (2 - alpha) h(v1) - alpha h(v2), where
/// a1 + a2 = (2 - alpha) v1 + alpha v2. Positive iff the fold is convex from
/// below (min convention); negated for max.
inline LinearFunctional fold_functional(int d, const Edge& e, Convention conv = Convention::min)
{
    const LatticePoint v1 = point_at(e.a), v2 = point_at(e.b);
    const LatticePoint s = point_at(e.opposite[0]) + point_at(e.opposite[1]) - v1 - v1;
    const LatticePoint dir = v2 - v1;
    const int alpha = dir.x != 0 ? s.x / dir.x : s.y / dir.y;
    LinearFunctional f(num_points(d));
    f.coefficients[e.opposite[0]] += 1;
    f.coefficients[e.opposite[1]] += 1;
    f.coefficients[e.a] -= 2 - alpha;
    f.coefficients[e.b] -= alpha;
    if (conv == Convention::max)
        f = -f;
    return f;
}

/// One strict inequality f(h) > 0 per interior edge.
inline std::vector<LinearFunctional> secondary_cone(const Triangulation& t, Convention conv = Convention::min)
{
    std::vector<LinearFunctional> out;
    for (const Edge& e : edges(t))
        if (e.interior)
            out.push_back(fold_functional(t.degree(), e, conv));
    return out;
}

inline bool in_open_cone(std::span<const LinearFunctional> cone, std::span<const Rational> h)
{
    for (const LinearFunctional& f : cone)
        if (sgn(f(h)) <= 0)
            return false;
    return true;
}

/// Finds h with f(h) > 0 for every functional, or nullopt if none exists.
/// Maximizes a slack s with f(h) >= s, 0 <= s <= 1 and h = h+ - h- free.
inline std::optional<HeightVector> strictly_feasible_point(std::span<const LinearFunctional> system)
{
    std::size_t n = 0;
    for (const LinearFunctional& f : system)
        n = std::max(n, f.coefficients.size());
    if (system.empty())
        return HeightVector(n);
    const std::size_t cols = 2 * n + 1;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    A.reserve(system.size() + 1);
    for (const LinearFunctional& f : system) {
        std::vector<Rational> row(cols);
        for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
            row[i] = -f.coefficients[i];
            row[n + i] = f.coefficients[i];
        }
        row[2 * n] = 1;
        A.push_back(std::move(row));
        b.push_back(f.constant);
    }
    std::vector<Rational> cap(cols);
    cap[2 * n] = 1;
    A.push_back(std::move(cap));
    b.push_back(1);
    std::vector<Rational> c(cols);
    c[2 * n] = 1;

    const lp::Result res = lp::maximize(A, b, c);
    if (res.status != lp::Status::optimal || sgn(res.value) <= 0)
        return std::nullopt;
    HeightVector h(n);
    for (std::size_t i = 0; i < n; ++i)
        h[i] = res.x[i] - res.x[n + i];
    return h;
}

struct Regularity
{
    bool regular = false;
    HeightVector certificate;  // induces the triangulation (min convention) when regular
};

inline Regularity is_regular(const Triangulation& t)
{
    const auto cone = secondary_cone(t, Convention::min);
    if (cone.empty())
        return {true, HeightVector(num_points(t.degree()))};
    if (auto h = strictly_feasible_point(cone))
        return {true, std::move(*h)};
    return {false, {}};
}

/// True iff g vanishes identically on the open cone {f > 0 : f in cone}.
inline bool lp_forced_equality(std::span<const LinearFunctional> cone, const LinearFunctional& g)
{
    std::vector<LinearFunctional> sys(cone.begin(), cone.end());
    sys.push_back(g);
    if (strictly_feasible_point(sys))
        return false;
    sys.back() = -g;
    return !strictly_feasible_point(sys);
}

/// True iff g >= 0 on the whole open cone, i.e. {cone, g < 0} is infeasible.
inline bool lp_nonnegative_on_cone(std::span<const LinearFunctional> cone, const LinearFunctional& g)
{
    std::vector<LinearFunctional> sys(cone.begin(), cone.end());
    sys.push_back(-g);
    return !strictly_feasible_point(sys);
}

/// x^2 + xy + y^2 at each lattice point; induces the staircase triangulation.
inline HeightVector staircase_heights(int d)
{
    HeightVector h;
    for (const LatticePoint& p : lattice_points(d))
        h.emplace_back(p.x * p.x + p.x * p.y + p.y * p.y);
    return h;
}

inline std::string format_heights(std::span<const Rational> h)
{
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i)
            out += ',';
        out += h[i].get_str();
    }
    return out;
}

}  // namespace realtrop
