#pragma once

// SVG rendering of the real part in the four reflected charts. Without
// heights the picture is the patchwork: in each triangle copy the curve is a
// segment between midpoints of its two sign-changing edges. With heights the
// real edge copies of the embedded tropical curve are drawn instead.

#include "realtrop/curvegeom.hpp"
#include "realtrop/heights.hpp"
#include "realtrop/lattice.hpp"
#include "realtrop/patchwork.hpp"
#include "realtrop/result.hpp"
#include "realtrop/triangulation.hpp"
#include "realtrop/twist.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace realtrop {

namespace detail {

struct Point2
{
    double x = 0;
    double y = 0;
};

inline std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline const char* oval_colour(int k)
{
    static constexpr std::array<const char*, 6> palette{"#c0392b", "#2471a3", "#1e8449", "#b9770e", "#7d3c98", "#117a65"};
    return palette[k % palette.size()];
}

// Component label per node id of the real part.
inline std::vector<int> component_labels(const RealPartGraph& g, int& count)
{
    const int n = 4 * g.num_cells;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& l : g.links)
        parent[find(RealPartGraph::node_id(g.num_cells, l.from))] = find(RealPartGraph::node_id(g.num_cells, l.to));
    std::vector<int> label(n, -1);
    count = 0;
    for (const auto& node : g.nodes) {
        const int root = find(RealPartGraph::node_id(g.num_cells, node));
        if (label[root] < 0)
            label[root] = count++;
    }
    for (int id = 0; id < n; ++id)
        label[id] = label[find(id)];
    return label;
}

}  // namespace detail

/// SVG document with one `<g class="oval">` per connected component of the
/// real part. `h`, when given, must induce t under `conv`.
inline Result<std::string> render_svg(const Triangulation& t, const SignDistribution& delta,
                                      std::optional<std::span<const Rational>> h = std::nullopt,
                                      Convention conv = Convention::min)
{
    if (delta.degree() != t.degree())
        return Error{"sign vector degree does not match the triangulation"};
    const int d = t.degree();
    const PatchworkTables tables(t);
    const RealPartGraph g = tables.real_part(delta.mask());
    int ovals = 0;
    const std::vector<int> label = detail::component_labels(g, ovals);

    std::optional<EmbeddedCurve> curve;
    if (h) {
        auto c = embed_curve(t, *h, conv);
        if (!c)
            return c.error();
        curve = std::move(*c);
    }

    constexpr double kScale = 60;
    std::string body;
    std::vector<std::vector<std::string>> groups(ovals);
    auto line = [](detail::Point2 a, detail::Point2 b, const std::string& attrs) {
        return "<line x1=\"" + detail::fmt(a.x) + "\" y1=\"" + detail::fmt(a.y) + "\" x2=\"" + detail::fmt(b.x) + "\" y2=\"" +
               detail::fmt(b.y) + "\" " + attrs + "/>\n";
    };
    double extent = 0;

    if (!curve) {
        // Lattice point p in quadrant e sits at ((-1)^e1 x, (-1)^e2 y), y up.
        auto at = [&](double x, double y, Parity q) {
            return detail::Point2{(q.first() ? -x : x) * kScale, -(q.second() ? -y : y) * kScale};
        };
        extent = (d + 0.5) * kScale;
        for (Parity q : Parity::all()) {
            for (const Edge& e : edges(t)) {
                const LatticePoint a = point_at(e.a), b = point_at(e.b);
                body += line(at(a.x, a.y, q), at(b.x, b.y, q), "stroke=\"#bbbbbb\" stroke-width=\"1\"");
            }
            const std::uint32_t m = tables.quadrant_mask(delta.mask(), q);
            for (int i = 0; i < num_points(d); ++i) {
                const LatticePoint p = point_at(i);
                const detail::Point2 c = at(p.x, p.y, q);
                const bool neg = (m >> i) & 1u;
                body += "<circle cx=\"" + detail::fmt(c.x) + "\" cy=\"" + detail::fmt(c.y) + "\" r=\"4\" " +
                        (neg ? "fill=\"white\" stroke=\"black\"" : "fill=\"black\"") + "/>\n";
            }
        }
        for (const auto& node : g.nodes) {
            const Cell& c = t.cells()[node.cell];
            const std::uint32_t m = tables.quadrant_mask(delta.mask(), node.quadrant);
            std::vector<detail::Point2> mids;
            for (int s = 0; s < 3; ++s) {
                const int a = c[s], b = c[(s + 1) % 3];
                if (((m >> a) ^ (m >> b)) & 1u) {
                    const LatticePoint pa = point_at(a), pb = point_at(b);
                    mids.push_back(at((pa.x + pb.x) / 2.0, (pa.y + pb.y) / 2.0, node.quadrant));
                }
            }
            if (mids.size() != 2)
                return Error{"triangle copy without exactly two sign changes"};
            const int k = label[RealPartGraph::node_id(g.num_cells, node)];
            groups[k].push_back(line(mids[0], mids[1], ""));
        }
    } else {
        // Each quadrant gets a mirrored panel; rays are cut at a fixed length.
        double lo = 0, hi = 0;
        bool first = true;
        for (const RationalPoint& v : curve->vertices)
            for (double c : {v.x.get_d(), v.y.get_d()}) {
                lo = first ? c : std::min(lo, c);
                hi = first ? c : std::max(hi, c);
                first = false;
            }
        const double mid = (lo + hi) / 2, half = std::max(1.0, (hi - lo) / 2);
        const double ray = half * 0.5;
        const double panel = (half + ray * 1.5);
        const double unit = kScale * d / panel;
        extent = 2 * panel * unit;
        auto at = [&](double x, double y, Parity q) {
            const double sx = q.first() ? -1 : 1, sy = q.second() ? -1 : 1;
            return detail::Point2{(sx * panel + sx * (x - mid)) * unit, -(sy * panel + sy * (y - mid)) * unit};
        };
        for (Parity q : Parity::all()) {
            const detail::Point2 corner = at(mid - panel, mid - panel, q), opposite = at(mid + panel, mid + panel, q);
            body += "<rect x=\"" + detail::fmt(std::min(corner.x, opposite.x)) + "\" y=\"" +
                    detail::fmt(std::min(corner.y, opposite.y)) + "\" width=\"" + detail::fmt(std::abs(opposite.x - corner.x)) +
                    "\" height=\"" + detail::fmt(std::abs(opposite.y - corner.y)) + "\" fill=\"none\" stroke=\"#dddddd\"/>\n";
        }
        auto vertex = [&](int cell, Parity q) {
            const RationalPoint& v = curve->vertices[cell];
            return at(v.x.get_d(), v.y.get_d(), q);
        };
        for (const auto& l : g.links) {
            const int k = label[RealPartGraph::node_id(g.num_cells, l.from)];
            if (!l.ray) {
                groups[k].push_back(line(vertex(l.from.cell, l.from.quadrant), vertex(l.to.cell, l.to.quadrant), ""));
                continue;
            }
            LatticePoint dir{};
            for (const auto& r : curve->rays)
                if (r.cell == l.from.cell && r.a == l.a && r.b == l.b)
                    dir = r.direction;
            const RationalPoint& v = curve->vertices[l.from.cell];
            for (const Parity q : {l.from.quadrant, l.to.quadrant}) {
                const double len = ray / std::hypot(double(dir.x), double(dir.y));
                groups[k].push_back(line(vertex(l.from.cell, q), at(v.x.get_d() + dir.x * len, v.y.get_d() + dir.y * len, q), ""));
            }
        }
    }

    const double pad = 20;
    const double size = 2 * (extent + pad);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::fmt(size) + "\" height=\"" +
           detail::fmt(size) + "\" viewBox=\"" + detail::fmt(-extent - pad) + " " + detail::fmt(-extent - pad) + " " +
           detail::fmt(size) + " " + detail::fmt(size) + "\">\n";
    out += "<g class=\"charts\">\n" + body + "</g>\n";
    for (int k = 0; k < ovals; ++k) {
        out += "<g class=\"oval\" id=\"oval-" + std::to_string(k + 1) + "\" stroke=\"" + detail::oval_colour(k) +
               "\" stroke-width=\"3\" fill=\"none\">\n";
        for (const std::string& s : groups[k])
            out += s;
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace realtrop
