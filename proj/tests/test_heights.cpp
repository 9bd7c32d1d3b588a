#include "fixtures.hpp"

#include "realtrop/heights.hpp"

#include <gtest/gtest.h>

using namespace realtrop;

TEST(Heights, ParseRationals)
{
    const auto h = parse_heights("5/2, -1,0,[3]");
    ASSERT_TRUE(h.has_value());
    ASSERT_EQ(h->size(), 4u);
    EXPECT_EQ((*h)[0], Rational(5, 2));
    EXPECT_EQ((*h)[1], -1);
    EXPECT_FALSE(parse_heights("1,x").has_value());
    EXPECT_FALSE(parse_heights("1/0").has_value());
    EXPECT_FALSE(parse_heights("").has_value());
}

TEST(Heights, ListingExampleInducesItsCells)
{
    const auto t = induced_subdivision(parse_heights(fixtures::kListingWeights).value(), Convention::min);
    ASSERT_TRUE(t.has_value()) << t.error().message;
    EXPECT_EQ(format_cells(*t), fixtures::kListingCells);
}

TEST(Heights, LookupExampleInducesItsCells)
{
    const auto t = induced_subdivision(parse_heights(fixtures::kLookupWeights).value());
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(format_cells(*t), fixtures::kLookupCells);
}

TEST(Heights, StaircaseCertificate)
{
    for (int d = 1; d <= 5; ++d) {
        const auto t = induced_subdivision(staircase_heights(d));
        ASSERT_TRUE(t.has_value()) << d;
        EXPECT_EQ(*t, staircase(d));
    }
}

TEST(Heights, SumOfSquaresIsDegenerate)
{
    // x^2 + y^2 lifts every unit square onto one plane.
    HeightVector h;
    for (const LatticePoint& p : lattice_points(4))
        h.emplace_back(p.x * p.x + p.y * p.y);
    EXPECT_FALSE(induced_subdivision(h).has_value());
}

TEST(Heights, WrongLengthAndFlatHeightsRejected)
{
    EXPECT_FALSE(induced_subdivision(HeightVector(7)).has_value());
    EXPECT_FALSE(induced_subdivision(HeightVector(15)).has_value());
}

TEST(Heights, MaxIsMinOfNegatedHeights)
{
    auto& gen = fixtures::rng();
    // Perturbed convex heights; plain random heights rarely lift every point.
    std::uniform_int_distribution<int> dist(-5, 5);
    const HeightVector base = staircase_heights(4);
    int induced = 0;
    for (int trial = 0; trial < 300; ++trial) {
        HeightVector h(15);
        for (std::size_t i = 0; i < h.size(); ++i)
            h[i] = -4 * base[i] + Rational(dist(gen), 2);
        HeightVector neg(h);
        for (Rational& v : neg)
            v = -v;
        const auto a = induced_subdivision(h, Convention::max);
        const auto b = induced_subdivision(neg, Convention::min);
        ASSERT_EQ(a.has_value(), b.has_value());
        if (a) {
            ++induced;
            EXPECT_EQ(*a, *b);
            EXPECT_TRUE(in_open_cone(secondary_cone(*a, Convention::max), h));
            EXPECT_TRUE(in_open_cone(secondary_cone(*a, Convention::min), neg));
        }
    }
    EXPECT_GT(induced, 100);
}

TEST(Heights, SecondaryConeCharacterisesInduction)
{
    // Heights induce t exactly when they lie in t's open cone.
    auto& gen = fixtures::rng();
    std::uniform_int_distribution<int> dist(-10, 10);
    const Triangulation target = parse_cells(fixtures::kListingCells);
    const auto cone = secondary_cone(target);
    for (int trial = 0; trial < 300; ++trial) {
        HeightVector h = parse_heights(fixtures::kListingWeights).value();
        for (Rational& v : h)
            v += dist(gen) / Rational(4);
        const auto t = induced_subdivision(h);
        EXPECT_EQ(t.has_value() && *t == target, in_open_cone(cone, h));
    }
}

TEST(Heights, RegularityCertificateRoundTrip)
{
    const Triangulation t = parse_cells(fixtures::kFanCells);
    const Regularity r = is_regular(t);
    ASSERT_TRUE(r.regular);
    const auto back = induced_subdivision(r.certificate);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, t);
}
