#include "fixtures.hpp"

#include "realtrop/curvegeom.hpp"
#include "realtrop/patchwork.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <string>

using namespace realtrop;

namespace {

// Oval count from the embedded curve: every real edge copy is a segment
// between exact vertex coordinates in its quadrant; a ray copy ends at a
// point at infinity shared with the quadrant shifted by its direction mod 2.
// Components are counted by walking the resulting graph.
int geometric_ovals(const Triangulation& t, const HeightVector& h, const SignDistribution& s)
{
    const EmbeddedCurve c = embed_curve(t, h).value();
    std::map<std::string, int> key;
    std::vector<std::vector<int>> adj;
    auto node = [&](const std::string& k) {
        auto [it, inserted] = key.try_emplace(k, static_cast<int>(adj.size()));
        if (inserted)
            adj.emplace_back();
        return it->second;
    };
    auto at = [&](Parity q, const RationalPoint& p) {
        return std::to_string(q.bits) + ":" + p.x.get_str() + "," + p.y.get_str();
    };
    auto sign = [&](Parity q, int i) {
        const LatticePoint p = point_at(i);
        return s[i] * (((q.first() * p.x + q.second() * p.y) & 1) ? -1 : 1);
    };
    auto link = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (Parity q : Parity::all()) {
        for (const auto& e : c.bounded)
            if (sign(q, e.a) != sign(q, e.b))
                link(node(at(q, c.vertices[e.from])), node(at(q, c.vertices[e.to])));
        for (const auto& r : c.rays) {
            if (sign(q, r.a) == sign(q, r.b))
                continue;
            const RationalPoint& v = c.vertices[r.cell];
            const Parity q2 = q + Parity(r.direction.x & 1, r.direction.y & 1);
            const Rational offset = r.direction.x * v.y - r.direction.y * v.x;
            const std::string inf = "inf:" + std::to_string(std::min(q.bits, q2.bits)) + "/" +
                                    std::to_string(std::max(q.bits, q2.bits)) + ":" + std::to_string(r.direction.x) + "," +
                                    std::to_string(r.direction.y) + ":" + offset.get_str();
            link(node(at(q, v)), node(inf));
        }
    }
    std::vector<bool> seen(adj.size(), false);
    int components = 0;
    for (std::size_t start = 0; start < adj.size(); ++start) {
        if (seen[start])
            continue;
        ++components;
        std::vector<int> stack{static_cast<int>(start)};
        seen[start] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
    }
    return components;
}

void expect_two_regular(const RealPartGraph& g)
{
    std::map<int, int> degree;
    for (const auto& l : g.links) {
        ++degree[RealPartGraph::node_id(g.num_cells, l.from)];
        ++degree[RealPartGraph::node_id(g.num_cells, l.to)];
    }
    EXPECT_EQ(degree.size(), g.nodes.size());
    for (auto [id, d] : degree)
        EXPECT_EQ(d, 2) << id;
}

}  // namespace

TEST(Patchwork, RealLine)
{
    const Triangulation line(1, {make_cell(0, 1, 2)});
    const SignDistribution s = SignDistribution::all_positive(1);
    const RealPartGraph g = real_part(line, s);
    EXPECT_EQ(count_ovals(line, s), 1);
    EXPECT_EQ(g.links.size(), 3u);  // one copy of each ray, glued across quadrants
    for (const auto& l : g.links)
        EXPECT_TRUE(l.ray);
    expect_two_regular(g);
}

TEST(Patchwork, ListingExampleHasThreeOvals)
{
    const Triangulation t = parse_cells(fixtures::kListingCells);
    const SignDistribution s = SignDistribution::all_positive(4);
    EXPECT_EQ(count_ovals(t, s), 3);
    const RealTopology rt = topology(t, s);
    EXPECT_EQ(rt, (RealTopology{3, false}));
    EXPECT_EQ(real_bitangent_count(rt), 16);
    EXPECT_EQ(lifting_class_count(rt), 4);
}

TEST(Patchwork, ZeuthenCounts)
{
    EXPECT_EQ(real_bitangent_count({1, false}), 4);
    EXPECT_EQ(real_bitangent_count({2, true}), 4);
    EXPECT_EQ(real_bitangent_count({2, false}), 8);
    EXPECT_EQ(real_bitangent_count({3, false}), 16);
    EXPECT_EQ(real_bitangent_count({4, false}), 28);
    EXPECT_THROW(real_bitangent_count({5, false}), std::domain_error);
    EXPECT_THROW(real_bitangent_count({0, false}), std::domain_error);
}

TEST(Patchwork, GeometricOracleAgrees)
{
    auto& gen = fixtures::rng();
    const auto& qs = fixtures::quartics();
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& e = qs[gen() % qs.size()];
        const SignDistribution s(4, static_cast<std::uint32_t>(gen()) & 0x7fffu);
        EXPECT_EQ(count_ovals(e.triangulation, s), geometric_ovals(e.triangulation, e.certificate, s))
            << format_cells(e.triangulation) << " " << format_signs(s, ",");
    }
}

TEST(Patchwork, RealPartIsTwoRegularAndNegationInvariant)
{
    auto& gen = fixtures::rng();
    const auto& qs = fixtures::quartics();
    for (int trial = 0; trial < 2000; ++trial) {
        const Triangulation& t = qs[gen() % qs.size()].triangulation;
        const SignDistribution s(4, static_cast<std::uint32_t>(gen()) & 0x7fffu);
        const RealPartGraph g = real_part(t, s);
        expect_two_regular(g);
        const int ovals = count_ovals(t, s);
        EXPECT_GE(ovals, 1);
        EXPECT_LE(ovals, 4);
        EXPECT_EQ(ovals, count_ovals(t, s.negated()));
        const RealTopology rt = topology(t, s);
        EXPECT_TRUE(!rt.nested || rt.ovals == 2);
    }
}

TEST(Patchwork, S3Equivariance)
{
    auto& gen = fixtures::rng();
    const auto& qs = fixtures::quartics();
    for (int trial = 0; trial < 500; ++trial) {
        const Triangulation& t = qs[gen() % qs.size()].triangulation;
        const SignDistribution s(4, static_cast<std::uint32_t>(gen()) & 0x7fffu);
        const S3Element& g = s3_elements()[gen() % 6];
        EXPECT_EQ(topology(t.transformed(g), s.transformed(g)), topology(t, s));
    }
}
