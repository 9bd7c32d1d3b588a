#pragma once

// Real part of a real tropical curve in the real tropical plane: the
// combinatorial patchwork graph on (cell, quadrant) pairs, oval counting,
// nesting and the real bitangent count.

#include "realtrop/lattice.hpp"
#include "realtrop/triangulation.hpp"
#include "realtrop/twist.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace realtrop {

/// Node = (cell, quadrant). A bounded link joins the two cells of a
/// sign-changing interior edge copy inside one quadrant; a ray link joins a
/// cell to itself across the glued quadrants of a sign-changing boundary edge.
struct RealPartGraph
{
    struct Node
    {
        int cell = 0;
        Parity quadrant;
        friend bool operator==(const Node&, const Node&) = default;
    };
    struct Link
    {
        Node from;
        Node to;
        int a = 0;  // dual edge endpoints
        int b = 0;
        bool ray = false;
    };

    int num_cells = 0;
    std::vector<Node> nodes;
    std::vector<Link> links;

    static int node_id(int numCells, const Node& n) { return n.quadrant.bits * numCells + n.cell; }
};

/// Per-triangulation tables for the patchwork; evaluation per sign vector is
/// bit arithmetic plus a union-find over at most 4 * d^2 nodes.
class PatchworkTables
{
public:
    explicit PatchworkTables(const Triangulation& t) : degree_(t.degree()), num_cells_(static_cast<int>(t.size()))
    {
        const int n = num_points(degree_);
        for (Parity e : Parity::all()) {
            std::uint32_t m = 0;
            for (int i = 0; i < n; ++i) {
                const LatticePoint p = point_at(i);
                if ((e.first() * p.x + e.second() * p.y) & 1)
                    m |= std::uint32_t{1} << i;
            }
            quadrant_flip_[e.bits] = m;
        }
        for (const Cell& c : t.cells())
            cells_.push_back(c);
        for (const Edge& e : edges(t)) {
            if (e.interior) {
                interior_.push_back({e.a, e.b, e.cells[0], e.cells[1]});
            } else {
                const Parity g = glue_offset(e.side);
                for (Parity q : Parity::all())
                    if (q.bits < (q + g).bits)
                        boundary_.push_back({e.a, e.b, q.bits * num_cells_ + e.cells[0], (q + g).bits * num_cells_ + e.cells[0]});
            }
        }
    }

    int degree() const { return degree_; }
    int num_cells() const { return num_cells_; }

    /// Sign mask of the extended distribution in quadrant q.
    std::uint32_t quadrant_mask(std::uint32_t negative, Parity q) const { return negative ^ quadrant_flip_[q.bits]; }

    /// Number of connected components of the real part.
    int count_components(std::uint32_t negative) const
    {
        std::array<std::uint8_t, 4 * kMaxDegree * kMaxDegree> parent;
        int nodes = 0;
        std::array<std::uint32_t, 4> qm;
        for (int q = 0; q < 4; ++q) {
            qm[q] = negative ^ quadrant_flip_[q];
            for (int c = 0; c < num_cells_; ++c) {
                const int id = q * num_cells_ + c;
                parent[id] = static_cast<std::uint8_t>(id);
                const std::uint32_t bits = ((qm[q] >> cells_[c][0]) & 1u) | (((qm[q] >> cells_[c][1]) & 1u) << 1) |
                                           (((qm[q] >> cells_[c][2]) & 1u) << 2);
                nodes += (bits != 0 && bits != 7);
            }
        }
        auto find = [&](int x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        int merges = 0;
        auto unite = [&](int a, int b) {
            const int ra = find(a), rb = find(b);
            if (ra != rb) {
                parent[ra] = static_cast<std::uint8_t>(rb);
                ++merges;
            }
        };
        for (int q = 0; q < 4; ++q) {
            const std::uint32_t m = qm[q];
            const int base = q * num_cells_;
            for (const Link& l : interior_)
                if (((m >> l.a) ^ (m >> l.b)) & 1u)
                    unite(base + l.u, base + l.v);
        }
        for (const Link& l : boundary_) {
            const std::uint32_t m = qm[l.u / num_cells_];
            if (((m >> l.a) ^ (m >> l.b)) & 1u)
                unite(l.u, l.v);
        }
        return nodes - merges;
    }

    RealPartGraph real_part(std::uint32_t negative) const
    {
        RealPartGraph g;
        g.num_cells = num_cells_;
        auto present = [&](Parity q, int a, int b) {
            const std::uint32_t m = negative ^ quadrant_flip_[q.bits];
            return (((m >> a) ^ (m >> b)) & 1u) != 0;
        };
        std::vector<bool> used(4 * num_cells_, false);
        for (Parity q : Parity::all())
            for (const Link& l : interior_)
                if (present(q, l.a, l.b)) {
                    g.links.push_back({{l.u, q}, {l.v, q}, l.a, l.b, false});
                    used[q.bits * num_cells_ + l.u] = used[q.bits * num_cells_ + l.v] = true;
                }
        for (const Link& l : boundary_) {
            const Parity q = quadrant_of(l.u), q2 = quadrant_of(l.v);
            if (present(q, l.a, l.b)) {
                if (!present(q2, l.a, l.b))
                    throw std::logic_error("boundary edge copy not glued consistently");
                g.links.push_back({{l.u % num_cells_, q}, {l.v % num_cells_, q2}, l.a, l.b, true});
                used[l.u] = used[l.v] = true;
            }
        }
        for (int id = 0; id < 4 * num_cells_; ++id)
            if (used[id])
                g.nodes.push_back({id % num_cells_, quadrant_of(id)});
        return g;
    }

private:
    struct Link
    {
        int a, b;  // dual edge endpoints
        int u, v;  // cells (interior) or node ids (boundary)
    };

    Parity quadrant_of(int nodeId) const
    {
        Parity p;
        p.bits = static_cast<std::uint8_t>(nodeId / num_cells_);
        return p;
    }

    int degree_;
    int num_cells_;
    std::array<std::uint32_t, 4> quadrant_flip_{};
    std::vector<Cell> cells_;
    std::vector<Link> interior_;
    std::vector<Link> boundary_;
};

inline RealPartGraph real_part(const Triangulation& t, const SignDistribution& delta)
{
    return PatchworkTables(t).real_part(delta.mask());
}

inline int count_ovals(const Triangulation& t, const SignDistribution& delta)
{
    return PatchworkTables(t).count_components(delta.mask());
}

struct RealTopology
{
    int ovals = 0;
    bool nested = false;  // only for two ovals
    friend bool operator==(const RealTopology&, const RealTopology&) = default;
};

/// Both tables for one triangulation; the census hot path.
class QuarticEvaluator
{
public:
    explicit QuarticEvaluator(const Triangulation& t) : patch_(t), twist_(t) {}

    struct Evaluation
    {
        int ovals = 0;
        bool dividing = false;
        std::uint64_t twisted = 0;
    };

    Evaluation evaluate(std::uint32_t negative) const
    {
        Evaluation e;
        e.ovals = patch_.count_components(negative);
        e.twisted = twist_.twisted(negative);
        e.dividing = twist_.dividing(e.twisted);
        return e;
    }

    RealTopology topology(std::uint32_t negative) const
    {
        const Evaluation e = evaluate(negative);
        return {e.ovals, e.ovals == 2 && e.dividing};
    }

    const PatchworkTables& patchwork() const { return patch_; }
    const TwistTables& twist() const { return twist_; }

private:
    PatchworkTables patch_;
    TwistTables twist_;
};

/// Two ovals are nested exactly when the curve is dividing.
inline RealTopology topology(const Triangulation& t, const SignDistribution& delta)
{
    return QuarticEvaluator(t).topology(delta.mask());
}

/// 1 oval or 2 nested: 4; 2 non-nested: 8; 3: 16; 4: 28.
inline int real_bitangent_count(const RealTopology& rt)
{
    switch (rt.ovals) {
    case 1: return 4;
    case 2: return rt.nested ? 4 : 8;
    case 3: return 16;
    case 4: return 28;
    default: throw std::domain_error("a smooth real quartic has 1 to 4 ovals, got " + std::to_string(rt.ovals));
    }
}

/// Each lifting bitangent class contributes 4 real bitangents.
inline int lifting_class_count(const RealTopology& rt) { return real_bitangent_count(rt) / 4; }

}  // namespace realtrop
