#pragma once

// Unimodular triangulations of d*Delta_2: validation, edge classification,
// the dual curve graph with its cycle basis, bistellar flips and S3
// canonical forms.

#include "realtrop/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace realtrop {

/// Sorted index triple.
using Cell = std::array<int, 3>;

inline Cell make_cell(int a, int b, int c)
{
    Cell cell{a, b, c};
    std::sort(cell.begin(), cell.end());
    return cell;
}

class Triangulation
{
public:
    Triangulation() = default;

    /// Cells are sorted internally; no validity check (see validate()).
    Triangulation(int degree, std::vector<Cell> cells) : degree_(degree), cells_(std::move(cells))
    {
        for (Cell& c : cells_)
            std::sort(c.begin(), c.end());
        std::sort(cells_.begin(), cells_.end());
    }

    int degree() const { return degree_; }
    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }

    bool has_cell(const Cell& c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

    /// Image under an S3 element, re-sorted.
    Triangulation transformed(const S3Element& g) const
    {
        const std::vector<int> map = g.relabeling(degree_);
        std::vector<Cell> out;
        out.reserve(cells_.size());
        for (const Cell& c : cells_)
            out.push_back(make_cell(map[c[0]], map[c[1]], map[c[2]]));
        return Triangulation(degree_, std::move(out));
    }

    friend bool operator==(const Triangulation&, const Triangulation&) = default;
    friend auto operator<=>(const Triangulation& a, const Triangulation& b)
    {
        if (auto c = a.degree_ <=> b.degree_; c != 0)
            return c;
        return a.cells_ <=> b.cells_;
    }

private:
    int degree_ = 0;
    std::vector<Cell> cells_;
};

/// Which side of d*Delta_2 a segment lies on, if any.
inline std::optional<Side> side_of_segment(int d, LatticePoint p, LatticePoint q)
{
    if (p.y == 0 && q.y == 0)
        return Side::bottom;
    if (p.x == 0 && q.x == 0)
        return Side::left;
    if (p.x + p.y == d && q.x + q.y == d)
        return Side::hypotenuse;
    return std::nullopt;
}

struct Violation
{
    std::string message;
};

namespace detail {

inline std::string cell_str(const Cell& c)
{
    return "{" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + "}";
}

inline std::uint64_t edge_key(int a, int b) { return a < b ? (std::uint64_t(a) << 32) | unsigned(b) : (std::uint64_t(b) << 32) | unsigned(a); }

}  // namespace detail

/// Checks every structural invariant; reports the first violation found.
inline std::optional<Violation> validate(const Triangulation& t)
{
    const int d = t.degree();
    if (d < 1 || d > kMaxDegree)
        return Violation{"degree " + std::to_string(d) + " out of range"};
    const int npts = num_points(d);
    if (static_cast<int>(t.size()) != d * d)
        return Violation{"expected " + std::to_string(d * d) + " cells, found " + std::to_string(t.size())};

    std::map<std::uint64_t, std::vector<int>> incidence;
    std::vector<bool> used(npts, false);
    for (std::size_t ci = 0; ci < t.size(); ++ci) {
        const Cell& c = t.cells()[ci];
        for (int v : c)
            if (v < 0 || v >= npts)
                return Violation{"cell " + detail::cell_str(c) + " has index out of range"};
        if (c[0] == c[1] || c[1] == c[2])
            return Violation{"cell " + detail::cell_str(c) + " repeats a vertex"};
        if (ci > 0 && t.cells()[ci - 1] == c)
            return Violation{"cell " + detail::cell_str(c) + " listed twice"};
        const long long det = orientation(point_at(c[0]), point_at(c[1]), point_at(c[2]));
        if (det != 1 && det != -1)
            return Violation{"cell " + detail::cell_str(c) + " is not unimodular (|det| = " + std::to_string(std::llabs(det)) + ")"};
        for (int v : c)
            used[v] = true;
        incidence[detail::edge_key(c[0], c[1])].push_back(static_cast<int>(ci));
        incidence[detail::edge_key(c[0], c[2])].push_back(static_cast<int>(ci));
        incidence[detail::edge_key(c[1], c[2])].push_back(static_cast<int>(ci));
    }
    for (const auto& [key, cells] : incidence) {
        const int a = static_cast<int>(key >> 32);
        const int b = static_cast<int>(key & 0xffffffffu);
        const std::string name = "edge {" + std::to_string(a) + "," + std::to_string(b) + "}";
        const bool on_boundary = side_of_segment(d, point_at(a), point_at(b)).has_value();
        const std::size_t want = on_boundary ? 1 : 2;
        if (cells.size() != want)
            return Violation{name + " lies in " + std::to_string(cells.size()) + " cells, expected " + std::to_string(want)};
        if (!on_boundary) {
            // The two cells must lie on opposite sides of the edge.
            auto opposite = [&](const Cell& c) {
                for (int v : c)
                    if (v != a && v != b)
                        return v;
                return -1;
            };
            const LatticePoint pa = point_at(a), pb = point_at(b);
            const long long s1 = orientation(pa, pb, point_at(opposite(t.cells()[cells[0]])));
            const long long s2 = orientation(pa, pb, point_at(opposite(t.cells()[cells[1]])));
            if ((s1 > 0) == (s2 > 0))
                return Violation{name + ": both incident cells lie on the same side"};
        }
    }
    for (int v = 0; v < npts; ++v)
        if (!used[v])
            return Violation{"lattice point " + std::to_string(v) + " is not a vertex of any cell"};
    return std::nullopt;
}

struct Edge
{
    int a = 0;  // a < b
    int b = 0;
    bool interior = false;
    Side side = Side::bottom;        // meaningful for boundary edges only
    std::array<int, 2> cells{-1, -1};     // incident cell indices into Triangulation::cells()
    std::array<int, 2> opposite{-1, -1};  // vertex of each incident cell not on the edge
};

/// All edges of a valid triangulation, sorted by endpoints.
inline std::vector<Edge> edges(const Triangulation& t)
{
    std::map<std::pair<int, int>, Edge> byKey;
    for (std::size_t ci = 0; ci < t.size(); ++ci) {
        const Cell& c = t.cells()[ci];
        const std::array<std::array<int, 3>, 3> sides{{{c[0], c[1], c[2]}, {c[0], c[2], c[1]}, {c[1], c[2], c[0]}}};
        for (const auto& s : sides) {
            Edge& e = byKey[{s[0], s[1]}];
            e.a = s[0];
            e.b = s[1];
            const int slot = e.cells[0] < 0 ? 0 : 1;
            e.cells[slot] = static_cast<int>(ci);
            e.opposite[slot] = s[2];
        }
    }
    std::vector<Edge> out;
    out.reserve(byKey.size());
    for (auto& [key, e] : byKey) {
        const auto side = side_of_segment(t.degree(), point_at(e.a), point_at(e.b));
        e.interior = !side.has_value();
        if (side)
            e.side = *side;
        out.push_back(e);
    }
    return out;
}

inline std::vector<Edge> interior_edges(const Triangulation& t)
{
    std::vector<Edge> all = edges(t);
    std::erase_if(all, [](const Edge& e) { return !e.interior; });
    return all;
}

/// Dual graph of the tropical curve: one node per cell, one bounded edge per
/// interior edge, one ray per boundary edge.
struct CurveGraph
{
    struct Bounded
    {
        int from = 0;
        int to = 0;
        int a = 0;  // dual subdivision edge
        int b = 0;
    };
    struct Ray
    {
        int cell = 0;
        Side side = Side::bottom;
        int a = 0;
        int b = 0;
    };

    int num_nodes = 0;
    std::vector<Bounded> bounded;  // same order as interior_edges()
    std::vector<Ray> rays;

    int betti() const { return static_cast<int>(bounded.size()) - num_nodes + 1; }
};

inline CurveGraph curve_graph(const Triangulation& t)
{
    CurveGraph g;
    g.num_nodes = static_cast<int>(t.size());
    for (const Edge& e : edges(t)) {
        if (e.interior)
            g.bounded.push_back({e.cells[0], e.cells[1], e.a, e.b});
        else
            g.rays.push_back({e.cells[0], e.side, e.a, e.b});
    }
    return g;
}

/// Fundamental cycles as bit masks over CurveGraph::bounded. With an empty
/// `edge_order` the spanning tree is a breadth-first tree from node 0;
/// otherwise edges are offered to the tree in the given order.
inline std::vector<std::uint64_t> cycle_basis(const CurveGraph& g, std::span<const int> edge_order = {})
{
    const int n = g.num_nodes;
    const int m = static_cast<int>(g.bounded.size());
    std::vector<bool> inTree(m, false);

    if (edge_order.empty()) {
        std::vector<std::vector<std::pair<int, int>>> adj(n);
        for (int i = 0; i < m; ++i) {
            adj[g.bounded[i].from].push_back({g.bounded[i].to, i});
            adj[g.bounded[i].to].push_back({g.bounded[i].from, i});
        }
        std::vector<bool> seen(n, false);
        std::queue<int> q;
        if (n > 0) {
            q.push(0);
            seen[0] = true;
        }
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (auto [v, ei] : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    inTree[ei] = true;
                    q.push(v);
                }
        }
    } else {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int ei : edge_order) {
            const int ra = find(g.bounded[ei].from), rb = find(g.bounded[ei].to);
            if (ra != rb) {
                parent[ra] = rb;
                inTree[ei] = true;
            }
        }
    }

    // Mask of tree edges on the path from each node to the root.
    std::vector<std::vector<std::pair<int, int>>> treeAdj(n);
    for (int i = 0; i < m; ++i)
        if (inTree[i]) {
            treeAdj[g.bounded[i].from].push_back({g.bounded[i].to, i});
            treeAdj[g.bounded[i].to].push_back({g.bounded[i].from, i});
        }
    std::vector<std::uint64_t> rootPath(n, 0);
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    if (n > 0)
        seen[0] = true;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (auto [v, ei] : treeAdj[u])
            if (!seen[v]) {
                seen[v] = true;
                rootPath[v] = rootPath[u] | (std::uint64_t{1} << ei);
                stack.push_back(v);
            }
    }

    std::vector<std::uint64_t> basis;
    for (int i = 0; i < m; ++i)
        if (!inTree[i])
            basis.push_back((std::uint64_t{1} << i) ^ rootPath[g.bounded[i].from] ^ rootPath[g.bounded[i].to]);
    return basis;
}

/// Replaces interior edge {a, b} by the other diagonal of its quadrilateral.
/// Returns nullopt when {a, b} is not an interior edge or the quadrilateral is
/// not strictly convex.
inline std::optional<Triangulation> flip(const Triangulation& t, int a, int b)
{
    if (a > b)
        std::swap(a, b);
    int found = 0;
    std::array<int, 2> cellIdx{};
    std::array<int, 2> opp{};
    for (std::size_t ci = 0; ci < t.size() && found < 3; ++ci) {
        const Cell& c = t.cells()[ci];
        const bool hasA = std::find(c.begin(), c.end(), a) != c.end();
        const bool hasB = std::find(c.begin(), c.end(), b) != c.end();
        if (hasA && hasB) {
            if (found == 2)
                return std::nullopt;
            cellIdx[found] = static_cast<int>(ci);
            for (int v : c)
                if (v != a && v != b)
                    opp[found] = v;
            ++found;
        }
    }
    if (found != 2)
        return std::nullopt;
    const LatticePoint pa = point_at(a), pb = point_at(b), p1 = point_at(opp[0]), p2 = point_at(opp[1]);
    const long long s1 = orientation(p1, p2, pa);
    const long long s2 = orientation(p1, p2, pb);
    if (s1 == 0 || s2 == 0 || (s1 > 0) == (s2 > 0))
        return std::nullopt;

    std::vector<Cell> cells;
    cells.reserve(t.size());
    for (std::size_t ci = 0; ci < t.size(); ++ci)
        if (static_cast<int>(ci) != cellIdx[0] && static_cast<int>(ci) != cellIdx[1])
            cells.push_back(t.cells()[ci]);
    cells.push_back(make_cell(opp[0], opp[1], a));
    cells.push_back(make_cell(opp[0], opp[1], b));
    return Triangulation(t.degree(), std::move(cells));
}

struct CanonicalForm
{
    Triangulation triangulation;
    int orbit_size = 1;
    int aut_order = 1;
};

/// Lexicographically smallest sorted cell list over the S3 orbit.
inline CanonicalForm canonical_form(const Triangulation& t)
{
    CanonicalForm out{t, 1, 0};
    for (const S3Element& g : s3_elements()) {
        Triangulation img = t.transformed(g);
        if (img == t)
            ++out.aut_order;
        if (img.cells() < out.triangulation.cells())
            out.triangulation = std::move(img);
    }
    out.orbit_size = 6 / out.aut_order;
    return out;
}

/// Unit up-triangles and down-triangles; regular, induced by x^2 + xy + y^2.
inline Triangulation staircase(int d)
{
    check_degree(d);
    std::vector<Cell> cells;
    for (int a = 0; a < d; ++a)
        for (int b = 0; a + b < d; ++b) {
            cells.push_back(make_cell(point_index({a, b}), point_index({a + 1, b}), point_index({a, b + 1})));
            if (a + b + 2 <= d)
                cells.push_back(make_cell(point_index({a + 1, b}), point_index({a, b + 1}), point_index({a + 1, b + 1})));
        }
    return Triangulation(d, std::move(cells));
}

/// `[[0,1,2],[1,2,4],...]`
inline std::string format_cells(const Triangulation& t)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Cell& c = t.cells()[i];
        os << (i ? "," : "") << '[' << c[0] << ',' << c[1] << ',' << c[2] << ']';
    }
    os << ']';
    return os.str();
}

/// Parses the cell-list format. The degree is inferred from the cell count
/// (d^2 cells); throws std::invalid_argument on malformed text.
inline Triangulation parse_cells(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("cell list: ") + e.what());
    }
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("cell list must be a nonempty array of index triples");
    std::vector<Cell> cells;
    for (const auto& c : j) {
        if (!c.is_array() || c.size() != 3)
            throw std::invalid_argument("each cell must have exactly three indices");
        Cell cell{};
        for (int k = 0; k < 3; ++k) {
            if (!c[k].is_number_integer())
                throw std::invalid_argument("cell indices must be integers");
            cell[k] = c[k].get<int>();
        }
        cells.push_back(cell);
    }
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cells.size()))));
    if (d * d != static_cast<int>(cells.size()))
        throw std::invalid_argument("cell count " + std::to_string(cells.size()) + " is not a perfect square");
    return Triangulation(d, std::move(cells));
}

}  // namespace realtrop
