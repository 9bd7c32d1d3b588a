#pragma once

// Lattice points of the dilated standard triangle d*Delta_2, their graded
// indexing, mod-2 parities and the S3 symmetry action.

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace realtrop {

/// Largest degree supported by the bit-packed tables (28 points, 45 interior edges).
inline constexpr int kMaxDegree = 6;

struct LatticePoint
{
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

constexpr LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
constexpr LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }

/// 2x2 determinant of the column vectors a, b.
constexpr long long cross(LatticePoint a, LatticePoint b)
{
    return static_cast<long long>(a.x) * b.y - static_cast<long long>(a.y) * b.x;
}

/// Twice the signed area of the triangle pqr.
constexpr long long orientation(LatticePoint p, LatticePoint q, LatticePoint r)
{
    return cross(q - p, r - p);
}

inline void check_degree(int d)
{
    if (d < 1 || d > kMaxDegree)
        throw std::invalid_argument("degree must lie in [1, " + std::to_string(kMaxDegree) + "]");
}

/// L(d) = (d+1)(d+2)/2.
constexpr int num_points(int d) { return (d + 1) * (d + 2) / 2; }

/// Graded index: level k = x + y, inside a level the x-power descends.
constexpr int point_index(LatticePoint p)
{
    const int k = p.x + p.y;
    return k * (k + 1) / 2 + p.y;
}

constexpr LatticePoint point_at(int index)
{
    int k = 0;
    while ((k + 1) * (k + 2) / 2 <= index)
        ++k;
    const int y = index - k * (k + 1) / 2;
    return {k - y, y};
}

constexpr bool contains(int d, LatticePoint p) { return p.x >= 0 && p.y >= 0 && p.x + p.y <= d; }

constexpr bool is_interior(int d, LatticePoint p) { return p.x > 0 && p.y > 0 && p.x + p.y < d; }

inline std::vector<LatticePoint> lattice_points(int d)
{
    check_degree(d);
    std::vector<LatticePoint> pts;
    pts.reserve(num_points(d));
    for (int k = 0; k <= d; ++k)
        for (int y = 0; y <= k; ++y)
            pts.push_back({k - y, y});
    return pts;
}

/// Sides of d*Delta_2.
enum class Side : std::uint8_t { bottom, left, hypotenuse };  // y = 0, x = 0, x + y = d

inline const char* side_name(Side s)
{
    switch (s) {
    case Side::bottom: return "y=0";
    case Side::left: return "x=0";
    case Side::hypotenuse: return "x+y=d";
    }
    return "?";
}

/// Element of Z2 x Z2, stored as two bits (bit 0 = first coordinate).
struct Parity
{
    std::uint8_t bits = 0;

    constexpr Parity() = default;
    constexpr Parity(int e1, int e2) : bits(static_cast<std::uint8_t>((e1 & 1) | ((e2 & 1) << 1))) {}

    constexpr int first() const { return bits & 1; }
    constexpr int second() const { return (bits >> 1) & 1; }
    constexpr Parity operator+(Parity o) const
    {
        Parity r;
        r.bits = static_cast<std::uint8_t>(bits ^ o.bits);
        return r;
    }
    friend constexpr bool operator==(Parity, Parity) = default;

    static constexpr std::array<Parity, 4> all() { return {Parity(0, 0), Parity(1, 0), Parity(0, 1), Parity(1, 1)}; }
};

constexpr Parity parity(LatticePoint p) { return Parity(p.x & 1, p.y & 1); }

/// Reflection epsilon(x, y) = ((-1)^e1 x, (-1)^e2 y).
constexpr LatticePoint reflect(Parity e, LatticePoint p)
{
    return {e.first() ? -p.x : p.x, e.second() ? -p.y : p.y};
}

/// Quadrant offset glued across a side of the real tropical plane.
constexpr Parity glue_offset(Side s)
{
    switch (s) {
    case Side::bottom: return Parity(0, 1);
    case Side::left: return Parity(1, 0);
    case Side::hypotenuse: return Parity(1, 1);
    }
    return {};
}

/// An element of S3 acting on d*Delta_2 by permuting barycentric coordinates
/// (x, y, d - x - y). The image point takes its first two coordinates from
/// positions perm[0], perm[1] of the barycentric triple.
class S3Element
{
public:
    constexpr S3Element() = default;
    constexpr explicit S3Element(std::array<int, 3> perm) : perm_(perm) {}

    constexpr LatticePoint apply(int d, LatticePoint p) const
    {
        const std::array<int, 3> bary{p.x, p.y, d - p.x - p.y};
        return {bary[perm_[0]], bary[perm_[1]]};
    }

    constexpr int apply_index(int d, int index) const { return point_index(apply(d, point_at(index))); }

    /// (a * b)(p) = a(b(p)).
    constexpr S3Element operator*(const S3Element& b) const
    {
        return S3Element({b.perm_[perm_[0]], b.perm_[perm_[1]], b.perm_[perm_[2]]});
    }

    constexpr S3Element inverse() const
    {
        std::array<int, 3> inv{};
        for (int i = 0; i < 3; ++i)
            inv[perm_[i]] = i;
        return S3Element(inv);
    }

    constexpr const std::array<int, 3>& permutation() const { return perm_; }
    constexpr bool is_identity() const { return perm_ == std::array<int, 3>{0, 1, 2}; }

    friend constexpr bool operator==(const S3Element&, const S3Element&) = default;

    /// Index permutation on lattice_points(d): result[i] = index of the image of point i.
    std::vector<int> relabeling(int d) const
    {
        std::vector<int> out(num_points(d));
        for (int i = 0; i < num_points(d); ++i)
            out[i] = apply_index(d, i);
        return out;
    }

private:
    std::array<int, 3> perm_{0, 1, 2};
};

/// The six maps: id, (y,x), (x,z), (z,y), (y,z), (z,x) with z = d - x - y.
inline const std::array<S3Element, 6>& s3_elements()
{
    static const std::array<S3Element, 6> elems{
        S3Element({0, 1, 2}), S3Element({1, 0, 2}), S3Element({0, 2, 1}),
        S3Element({2, 1, 0}), S3Element({1, 2, 0}), S3Element({2, 0, 1}),
    };
    return elems;
}

}  // namespace realtrop
