#pragma once

// Exhaustive enumeration of regular unimodular triangulations of d*Delta_2 up
// to S3 by breadth-first search over the flip graph.

#include "realtrop/heights.hpp"
#include "realtrop/triangulation.hpp"

#include <deque>
#include <set>
#include <vector>

namespace realtrop {

struct EnumeratedTriangulation
{
    Triangulation triangulation;  // canonical representative
    int orbit_size = 1;
    int aut_order = 6;
    HeightVector certificate;  // min-convention heights inducing it
};

struct EnumerationStats
{
    int flip_classes = 0;  // canonical classes reached, regular or not
    int non_regular = 0;
};

/// All flip-graph neighbours of t, canonicalized.
inline std::vector<Triangulation> flip_neighbours(const Triangulation& t)
{
    std::vector<Triangulation> out;
    for (const Edge& e : edges(t))
        if (e.interior)
            if (auto f = flip(t, e.a, e.b))
                out.push_back(canonical_form(*f).triangulation);
    return out;
}

/// Canonical classes of unimodular triangulations reachable from the
/// staircase, in breadth-first discovery order (deterministic).
inline std::vector<CanonicalForm> flip_graph_classes(int d)
{
    check_degree(d);
    std::vector<CanonicalForm> order;
    std::set<Triangulation> seen;
    std::deque<Triangulation> queue;
    CanonicalForm start = canonical_form(staircase(d));
    seen.insert(start.triangulation);
    queue.push_back(start.triangulation);
    order.push_back(std::move(start));
    while (!queue.empty()) {
        const Triangulation cur = std::move(queue.front());
        queue.pop_front();
        for (Triangulation& nb : flip_neighbours(cur)) {
            if (!seen.insert(nb).second)
                continue;
            queue.push_back(nb);
            order.push_back(canonical_form(nb));
        }
    }
    return order;
}

/// Regular unimodular triangulations up to S3, in discovery order. Each comes
/// with its orbit size and a regularity certificate.
inline std::vector<EnumeratedTriangulation> enumerate_all(int d, EnumerationStats* stats = nullptr)
{
    std::vector<EnumeratedTriangulation> out;
    const std::vector<CanonicalForm> classes = flip_graph_classes(d);
    int nonRegular = 0;
    for (const CanonicalForm& cf : classes) {
        Regularity reg = is_regular(cf.triangulation);
        if (!reg.regular) {
            ++nonRegular;
            continue;
        }
        out.push_back({cf.triangulation, cf.orbit_size, cf.aut_order, std::move(reg.certificate)});
    }
    if (stats) {
        stats->flip_classes = static_cast<int>(classes.size());
        stats->non_regular = nonRegular;
    }
    return out;
}

}  // namespace realtrop
