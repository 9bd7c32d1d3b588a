#pragma once

#include "realtrop/enumerate.hpp"
#include "realtrop/heights.hpp"
#include "realtrop/triangulation.hpp"

#include <random>
#include <vector>

namespace fixtures {

// Coefficients of the worked quartic example, min convention.
inline constexpr const char* kListingWeights = "5,1,2,2,0,0,4,0,1,16,7,9,12,16,33";
inline constexpr const char* kListingCells =
    "[[0,1,2],[1,2,5],[1,3,7],[1,4,5],[1,4,7],[3,6,7],[4,5,7],[5,7,8],[5,8,13],[5,9,13],[6,7,10],[7,8,10],[8,10,11],"
    "[8,11,12],[8,12,13],[9,13,14]]";
inline constexpr const char* kListingTwisted = "(1 4) (1 5) (1 7) (4 5) (4 7) (5 7) (5 8) (5 13) (8 10)";

// Triangulation given by its cells in the database example.
inline constexpr const char* kFanCells =
    "[[0,1,2],[1,2,4],[2,4,12],[4,7,12],[2,8,12],[2,8,13],[8,12,13],[2,5,13],[5,9,13],[9,13,14],[7,11,12],[7,10,11],"
    "[4,7,10],[4,6,10],[3,4,6],[1,3,4]]";
inline constexpr const char* kFanTwisted = "(1 2) (1 4) (2 4) (2 8) (2 12) (2 13) (4 10) (8 12) (8 13)";

// Heights used for the database lookup example.
inline constexpr const char* kLookupWeights = "6,3,1,1,0,0,3,0,1,3,14,10,8,7,7";
inline constexpr const char* kLookupCells =
    "[[0,1,2],[1,2,3],[2,3,4],[2,4,5],[3,4,7],[3,6,7],[4,5,7],[5,7,8],[5,8,9],[6,7,11],[6,10,11],[7,8,14],[7,11,12],"
    "[7,12,13],[7,13,14],[8,9,14]]";

// A non-generic quartic triangulation.
inline constexpr const char* kNongenericCells =
    "[[0,1,2],[1,2,4],[1,3,4],[2,4,5],[3,4,6],[4,5,9],[4,6,10],[4,7,8],[4,7,10],[4,8,14],[4,9,14],[7,8,10],[8,10,11],"
    "[8,11,12],[8,12,13],[8,13,14]]";

/// Enumeration of the quartic triangulations, computed once per process.
inline const std::vector<realtrop::EnumeratedTriangulation>& quartics()
{
    static const std::vector<realtrop::EnumeratedTriangulation> all = realtrop::enumerate_all(4);
    return all;
}

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240917);
    return gen;
}

/// Random point of the open secondary cone near a scaled certificate.
inline realtrop::HeightVector random_cone_point(const std::vector<realtrop::LinearFunctional>& cone,
                                                const realtrop::HeightVector& certificate, std::mt19937_64& gen, int radius = 6)
{
    using realtrop::Rational;
    std::uniform_int_distribution<int> dist(-radius, radius);
    realtrop::HeightVector noise(certificate.size());
    for (Rational& v : noise)
        v = dist(gen);
    // Scale the certificate so every fold stays positive whatever the noise.
    Rational scale = 1;
    for (const auto& f : cone) {
        Rational bound = 0;
        for (const Rational& c : f.coefficients)
            bound += abs(c) * radius;
        const Rational need = bound / f(certificate) + 1;
        if (need > scale)
            scale = need;
    }
    realtrop::HeightVector h(certificate.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = scale * certificate[i] + noise[i];
    return h;
}

}  // namespace fixtures
