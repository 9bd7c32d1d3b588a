#pragma once

// Concrete tropical curve geometry from heights: vertex coordinates and edge
// lattice lengths as exact linear functionals of the heights, the motif
// cell {(1,1),(2,1),(1,2)} behind bitangent shape (C), its three edge-length
// functionals and the non-genericity tests built on them.

#include "realtrop/heights.hpp"
#include "realtrop/lattice.hpp"
#include "realtrop/result.hpp"
#include "realtrop/triangulation.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace realtrop {

/// Exact rational point in the plane of the tropical curve.
struct RationalPoint
{
    Rational x;
    Rational y;
    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

struct EmbeddedCurve
{
    struct BoundedEdge
    {
        int from = 0;  // cell indices
        int to = 0;
        int a = 0;  // dual edge endpoints
        int b = 0;
        LatticePoint direction;  // primitive, from -> to
        Rational length;         // lattice length
    };
    struct Ray
    {
        int cell = 0;
        int a = 0;
        int b = 0;
        Side side = Side::bottom;
        LatticePoint direction;  // primitive, pointing to infinity
    };

    int degree = 0;
    Convention convention = Convention::min;
    std::vector<RationalPoint> vertices;  // one per cell, indexed like Triangulation::cells()
    std::vector<BoundedEdge> bounded;     // order of interior_edges()
    std::vector<Ray> rays;
};

namespace detail {

// Vertex of cell {p, q, r} as two functionals of the heights: the point where
// <x,p> + h(p) = <x,q> + h(q) = <x,r> + h(r).
inline std::array<LinearFunctional, 2> vertex_functionals(int d, const Cell& c)
{
    const LatticePoint p = point_at(c[0]), q = point_at(c[1]), r = point_at(c[2]);
    const long m11 = q.x - p.x, m12 = q.y - p.y, m21 = r.x - p.x, m22 = r.y - p.y;
    const long det = m11 * m22 - m12 * m21;  // +-1, so 1/det == det
    LinearFunctional u(num_points(d)), w(num_points(d));
    // rhs1 = h(p) - h(q), rhs2 = h(p) - h(r)
    u.coefficients[c[0]] = 1;
    u.coefficients[c[1]] = -1;
    w.coefficients[c[0]] = 1;
    w.coefficients[c[2]] = -1;
    LinearFunctional x = Rational(m22 * det) * u - Rational(m12 * det) * w;
    LinearFunctional y = Rational(m11 * det) * w - Rational(m21 * det) * u;
    return {x, y};
}

// Primitive normal to the dual edge {a, b}, pointing towards the vertex of the
// cell whose opposite vertex is `to_opp`.
inline LatticePoint edge_direction(int a, int b, int to_opp, Convention conv)
{
    const LatticePoint v1 = point_at(a), v2 = point_at(b), o = point_at(to_opp) - v1;
    LatticePoint u{-(v2.y - v1.y), v2.x - v1.x};
    const long s = static_cast<long>(u.x) * o.x + static_cast<long>(u.y) * o.y;
    const bool towards = conv == Convention::max ? s > 0 : s < 0;
    if (!towards)
        u = {-u.x, -u.y};
    return u;
}

}  // namespace detail

/// Length of the bounded edge dual to interior edge e, as a functional of
/// the heights. Positive exactly on the open secondary cone side.
inline LinearFunctional edge_length_functional(int d, const Triangulation& t, const Edge& e, Convention conv = Convention::min)
{
    const auto va = detail::vertex_functionals(d, t.cells()[e.cells[0]]);
    const auto vb = detail::vertex_functionals(d, t.cells()[e.cells[1]]);
    const LatticePoint u = detail::edge_direction(e.a, e.b, e.opposite[1], conv);
    const Rational norm = u.x * u.x + u.y * u.y;
    LinearFunctional len = Rational(u.x) * (vb[0] - va[0]) + Rational(u.y) * (vb[1] - va[1]);
    len *= 1 / norm;
    return len;
}

/// Curve dual to t with heights h. Fails when h is not in the open secondary
/// cone of t for the given convention.
inline Result<EmbeddedCurve> embed_curve(const Triangulation& t, std::span<const Rational> h, Convention conv = Convention::min)
{
    const int d = t.degree();
    if (static_cast<int>(h.size()) != num_points(d))
        return Error{"height vector has " + std::to_string(h.size()) + " entries, expected " + std::to_string(num_points(d))};
    const auto cone = secondary_cone(t, conv);
    if (!in_open_cone(cone, h))
        return Error{"heights do not induce the given triangulation"};

    EmbeddedCurve curve;
    curve.degree = d;
    curve.convention = conv;
    for (const Cell& c : t.cells()) {
        const auto v = detail::vertex_functionals(d, c);
        curve.vertices.push_back({v[0](h), v[1](h)});
    }
    for (const Edge& e : edges(t)) {
        if (e.interior) {
            const LatticePoint u = detail::edge_direction(e.a, e.b, e.opposite[1], conv);
            const RationalPoint& A = curve.vertices[e.cells[0]];
            const RationalPoint& B = curve.vertices[e.cells[1]];
            const Rational len = (u.x * (B.x - A.x) + u.y * (B.y - A.y)) / Rational(u.x * u.x + u.y * u.y);
            curve.bounded.push_back({e.cells[0], e.cells[1], e.a, e.b, u, len});
        } else {
            // Away from the cell: the reverse of the direction towards its opposite vertex.
            LatticePoint u = detail::edge_direction(e.a, e.b, e.opposite[0], conv);
            u = {-u.x, -u.y};
            curve.rays.push_back({e.cells[0], e.a, e.b, e.side, u});
        }
    }
    return curve;
}

/// Motif of bitangent shape (C): the cell {(1,1),(2,1),(1,2)} seen through an
/// S3 orientation, with the indices of the boundary points (0,i), (j,0),
/// (k,4-k) of the three adjacent cells (in the oriented frame).
struct MotifC
{
    S3Element orientation;
    int i = 1;
    int j = 1;
    int k = 1;
    bool derived = true;  // indices read off the adjacent cells rather than supplied

    /// Point of the standard frame mapped into the triangulation's frame.
    int index(LatticePoint standard) const { return orientation.apply_index(4, point_index(standard)); }
};

inline const Cell& motif_cell()
{
    static const Cell c{4, 7, 8};  // (1,1), (2,1), (1,2)
    return c;
}

namespace detail {

inline int opposite_across(const Triangulation& t, int a, int b, int exclude)
{
    for (const Cell& c : t.cells()) {
        const bool hasA = c[0] == a || c[1] == a || c[2] == a;
        const bool hasB = c[0] == b || c[1] == b || c[2] == b;
        if (!hasA || !hasB)
            continue;
        for (int v : c)
            if (v != a && v != b && v != exclude)
                return v;
    }
    return -1;
}

}  // namespace detail

/// One motif per S3 orientation when t (degree 4) contains the motif cell;
/// empty otherwise. Indices are taken from the cells adjacent to the motif
/// cell: across (1,1)-(1,2) lies (0,i), across (1,1)-(2,1) lies (j,0),
/// across (2,1)-(1,2) lies (k,4-k).
inline std::vector<MotifC> find_motif_c(const Triangulation& t)
{
    std::vector<MotifC> out;
    if (t.degree() != 4 || !t.has_cell(motif_cell()))
        return out;
    for (const S3Element& g : s3_elements()) {
        MotifC m;
        m.orientation = g;
        const S3Element inv = g.inverse();
        const int p11 = m.index({1, 1}), p21 = m.index({2, 1}), p12 = m.index({1, 2});
        const LatticePoint oi = inv.apply(4, point_at(detail::opposite_across(t, p11, p12, p21)));
        const LatticePoint oj = inv.apply(4, point_at(detail::opposite_across(t, p11, p21, p12)));
        const LatticePoint ok = inv.apply(4, point_at(detail::opposite_across(t, p21, p12, p11)));
        m.i = oi.y;
        m.j = oj.x;
        m.k = ok.x;
        out.push_back(m);
    }
    return out;
}

/// mu1, mu2, mu3: lattice lengths of the curve edges dual to the motif edges
/// (1,1)-(1,2), (1,1)-(2,1) and (2,1)-(1,2) (directions -e1, -e2, e1+e2 in the
/// max convention).
inline Result<std::array<LinearFunctional, 3>> mu_functionals(const Triangulation& t, const MotifC& m,
                                                              Convention conv = Convention::min)
{
    if (t.degree() != 4 || !t.has_cell(motif_cell()))
        return Error{"triangulation does not contain the shape (C) motif cell"};
    const int p11 = m.index({1, 1}), p21 = m.index({2, 1}), p12 = m.index({1, 2});
    const std::array<std::pair<int, int>, 3> motifEdges{{{p11, p12}, {p11, p21}, {p21, p12}}};
    const std::vector<Edge> all = edges(t);
    std::array<LinearFunctional, 3> mu;
    for (int r = 0; r < 3; ++r) {
        auto [a, b] = motifEdges[r];
        if (a > b)
            std::swap(a, b);
        for (const Edge& e : all)
            if (e.a == a && e.b == b) {
                if (!e.interior)
                    return Error{"motif edge lies on the boundary"};
                mu[r] = edge_length_functional(4, t, e, conv);
            }
    }
    return mu;
}

/// Which shortest-edge tie occurs at the motif vertex.
enum class NongenericLocus {
    none,           // unique shortest edge
    mu3_gt_mu2_eq_mu1,
    mu2_gt_mu1_eq_mu3,
    mu1_gt_mu3_eq_mu2,
    all_equal,
};

inline const char* locus_name(NongenericLocus l)
{
    switch (l) {
    case NongenericLocus::none: return "none";
    case NongenericLocus::mu3_gt_mu2_eq_mu1: return "{mu3 > mu2 = mu1}";
    case NongenericLocus::mu2_gt_mu1_eq_mu3: return "{mu2 > mu1 = mu3}";
    case NongenericLocus::mu1_gt_mu3_eq_mu2: return "{mu1 > mu3 = mu2}";
    case NongenericLocus::all_equal: return "{mu1 = mu2 = mu3}";
    }
    return "?";
}

inline NongenericLocus classify_mu(const Rational& m1, const Rational& m2, const Rational& m3)
{
    if (m1 == m2 && m2 == m3)
        return NongenericLocus::all_equal;
    if (m1 == m2 && m3 > m1)
        return NongenericLocus::mu3_gt_mu2_eq_mu1;
    if (m1 == m3 && m2 > m1)
        return NongenericLocus::mu2_gt_mu1_eq_mu3;
    if (m2 == m3 && m1 > m2)
        return NongenericLocus::mu1_gt_mu3_eq_mu2;
    return NongenericLocus::none;
}

inline Result<NongenericLocus> nongeneric_locus(const Triangulation& t, const MotifC& m, std::span<const Rational> h,
                                                Convention conv = Convention::min)
{
    if (!in_open_cone(secondary_cone(t, conv), h))
        return Error{"heights are not in the open secondary cone"};
    auto mu = mu_functionals(t, m, conv);
    if (!mu)
        return mu.error();
    return classify_mu((*mu)[0](h), (*mu)[1](h), (*mu)[2](h));
}

struct NongenericWitness
{
    int equal_a = 0;  // mu indices (1-based) forced equal
    int equal_b = 0;
    int other = 0;  // never shorter than them
};

/// A tie {mu_a = mu_b <= mu_c} forced on the whole secondary cone, if any.
inline std::optional<NongenericWitness> nongeneric_witness(const Triangulation& t)
{
    const auto motifs = find_motif_c(t);
    if (motifs.empty())
        return std::nullopt;
    const auto cone = secondary_cone(t, Convention::min);
    const auto mu = mu_functionals(t, motifs.front(), Convention::min).value();
    constexpr std::array<std::array<int, 3>, 3> pairs{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    for (const auto& [a, b, c] : pairs) {
        if (!lp_forced_equality(cone, mu[a] - mu[b]))
            continue;
        if (lp_nonnegative_on_cone(cone, mu[c] - mu[a]))
            return NongenericWitness{a + 1, b + 1, c + 1};
    }
    return std::nullopt;
}

/// True iff every curve dual to t has a non-unique shortest edge at the motif vertex.
inline bool is_nongeneric_triangulation(const Triangulation& t) { return nongeneric_witness(t).has_value(); }

}  // namespace realtrop
