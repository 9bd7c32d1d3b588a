#include "realtrop/lattice.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace realtrop;

TEST(Lattice, IndexRoundTrip)
{
    for (int d = 1; d <= kMaxDegree; ++d) {
        const auto pts = lattice_points(d);
        ASSERT_EQ(static_cast<int>(pts.size()), num_points(d));
        for (int i = 0; i < num_points(d); ++i) {
            EXPECT_EQ(point_index(pts[i]), i);
            EXPECT_EQ(point_at(i), pts[i]);
            EXPECT_TRUE(contains(d, pts[i]));
        }
    }
}

TEST(Lattice, QuarticIndexOrder)
{
    // Graded by x + y, then by y.
    EXPECT_EQ(point_at(0), (LatticePoint{0, 0}));
    EXPECT_EQ(point_at(1), (LatticePoint{1, 0}));
    EXPECT_EQ(point_at(2), (LatticePoint{0, 1}));
    EXPECT_EQ(point_at(4), (LatticePoint{1, 1}));
    EXPECT_EQ(point_at(7), (LatticePoint{2, 1}));
    EXPECT_EQ(point_at(8), (LatticePoint{1, 2}));
    EXPECT_EQ(point_at(14), (LatticePoint{0, 4}));
}

TEST(Lattice, InteriorPointsOfQuartic)
{
    int interior = 0;
    for (const LatticePoint& p : lattice_points(4))
        interior += is_interior(4, p);
    EXPECT_EQ(interior, 3);  // genus
}

TEST(Lattice, S3IsAGroupOfOrderSix)
{
    const auto& g = s3_elements();
    for (int d = 1; d <= 4; ++d) {
        std::set<std::vector<int>> images;
        for (const S3Element& a : g) {
            images.insert(a.relabeling(d));
            bool hasInverse = false;
            for (const S3Element& b : g) {
                const S3Element ab = a * b;
                bool closed = false;
                for (const S3Element& c : g)
                    closed = closed || c == ab;
                EXPECT_TRUE(closed);
                if ((a * b).is_identity())
                    hasInverse = true;
                for (int i = 0; i < num_points(d); ++i)
                    EXPECT_EQ(ab.apply_index(d, i), a.apply_index(d, b.apply_index(d, i)));
            }
            EXPECT_TRUE(hasInverse);
            for (int i = 0; i < num_points(d); ++i)
                EXPECT_EQ(a.inverse().apply_index(d, a.apply_index(d, i)), i);
        }
        EXPECT_EQ(images.size(), 6u);
    }
}

TEST(Lattice, S3MapsPreserveTheTriangleAndUnimodularity)
{
    for (const S3Element& g : s3_elements())
        for (int d = 1; d <= 4; ++d)
            for (const LatticePoint& p : lattice_points(d)) {
                EXPECT_TRUE(contains(d, g.apply(d, p)));
                const LatticePoint q = p + LatticePoint{1, 0}, r = p + LatticePoint{0, 1};
                if (contains(d, q) && contains(d, r))
                    EXPECT_EQ(std::abs(orientation(g.apply(d, p), g.apply(d, q), g.apply(d, r))), 1);
            }
}

TEST(Lattice, ParityAndGlueOffsets)
{
    EXPECT_EQ(parity({3, 2}), Parity(1, 0));
    EXPECT_EQ(Parity(1, 0) + Parity(1, 1), Parity(0, 1));
    EXPECT_EQ(glue_offset(Side::bottom), Parity(0, 1));
    EXPECT_EQ(glue_offset(Side::left), Parity(1, 0));
    EXPECT_EQ(glue_offset(Side::hypotenuse), Parity(1, 1));
    // Boundary points keep their extended sign across the glued quadrants.
    for (int x = 0; x <= 4; ++x) {
        const LatticePoint bottom{x, 0}, left{0, x}, hyp{x, 4 - x};
        auto flip = [](Parity e, LatticePoint v) { return (e.first() * v.x + e.second() * v.y) & 1; };
        EXPECT_EQ(flip(glue_offset(Side::bottom), bottom), 0);
        EXPECT_EQ(flip(glue_offset(Side::left), left), 0);
        EXPECT_EQ(flip(glue_offset(Side::hypotenuse), hyp), 0);
    }
}
