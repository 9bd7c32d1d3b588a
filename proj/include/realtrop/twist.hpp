#pragma once

// Sign distributions, twisted edges, twist-admissibility and the dividing
// criterion (every cycle of the curve meets the twisted set evenly).

#include "realtrop/lattice.hpp"
#include "realtrop/result.hpp"
#include "realtrop/triangulation.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace realtrop {

/// One sign per lattice point, bit-packed: bit i set iff the sign at point i is -1.
class SignDistribution
{
public:
    SignDistribution() = default;
    SignDistribution(int degree, std::uint32_t negative_mask) : degree_(degree), negative_(negative_mask & full_mask(degree)) {}

    static SignDistribution all_positive(int degree) { return {degree, 0}; }

    /// Entries must be +1 or -1; the length fixes the degree.
    static Result<SignDistribution> from_signs(std::span<const int> signs)
    {
        int d = 0;
        for (int k = 1; k <= kMaxDegree; ++k)
            if (num_points(k) == static_cast<int>(signs.size()))
                d = k;
        if (d == 0)
            return Error{"sign vector length " + std::to_string(signs.size()) + " is not (d+1)(d+2)/2"};
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < signs.size(); ++i) {
            if (signs[i] == -1)
                mask |= std::uint32_t{1} << i;
            else if (signs[i] != 1)
                return Error{"signs must be +1 or -1, got " + std::to_string(signs[i])};
        }
        return SignDistribution(d, mask);
    }

    int degree() const { return degree_; }
    std::uint32_t mask() const { return negative_; }
    int operator[](int index) const { return (negative_ >> index) & 1u ? -1 : 1; }

    SignDistribution negated() const { return {degree_, ~negative_}; }
    /// Representative with sign +1 at point 0.
    SignDistribution normalized() const { return (negative_ & 1u) ? negated() : *this; }

    /// delta'(g(p)) = delta(p).
    SignDistribution transformed(const S3Element& g) const
    {
        std::uint32_t out = 0;
        for (int i = 0; i < num_points(degree_); ++i)
            if ((negative_ >> i) & 1u)
                out |= std::uint32_t{1} << g.apply_index(degree_, i);
        return {degree_, out};
    }

    std::vector<int> to_vector() const
    {
        std::vector<int> v(num_points(degree_));
        for (int i = 0; i < num_points(degree_); ++i)
            v[i] = (*this)[i];
        return v;
    }

    friend bool operator==(const SignDistribution&, const SignDistribution&) = default;

    static std::uint32_t full_mask(int degree)
    {
        const int n = num_points(degree);
        return n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    }

private:
    int degree_ = 0;
    std::uint32_t negative_ = 0;
};

/// Comma- or space-separated list of +1/-1 entries.
inline Result<SignDistribution> parse_signs(std::string_view text)
{
    std::string s(text);
    for (char& c : s)
        if (c == ',' || c == '[' || c == ']')
            c = ' ';
    std::istringstream is(s);
    std::vector<int> v;
    std::string tok;
    while (is >> tok) {
        if (tok == "+1" || tok == "1" || tok == "+")
            v.push_back(1);
        else if (tok == "-1" || tok == "-")
            v.push_back(-1);
        else
            return Error{"bad sign entry '" + tok + "'"};
    }
    return SignDistribution::from_signs(v);
}

inline std::string format_signs(const SignDistribution& s, const char* sep = " ")
{
    std::string out;
    for (int i = 0; i < num_points(s.degree()); ++i) {
        if (i)
            out += sep;
        out += s[i] < 0 ? "-1" : "1";
    }
    return out;
}

/// delta(eps(v)) = (-1)^(eps1 v1 + eps2 v2) delta(v).
inline int extended_sign(const SignDistribution& delta, Parity eps, LatticePoint v)
{
    const int flip = (eps.first() * v.x + eps.second() * v.y) & 1;
    const int s = delta[point_index(v)];
    return flip ? -s : s;
}

/// Per-triangulation tables for the twist criterion and the cycle space.
/// Interior edges are numbered as in interior_edges(t).
class TwistTables
{
public:
    explicit TwistTables(const Triangulation& t) : interior_(interior_edges(t)), cycles_(cycle_basis(curve_graph(t)))
    {
        for (const Edge& e : interior_) {
            const LatticePoint a1 = point_at(e.opposite[0]), a2 = point_at(e.opposite[1]);
            const std::uint32_t opp = (std::uint32_t{1} << e.opposite[0]) | (std::uint32_t{1} << e.opposite[1]);
            if (parity(a1) != parity(a2)) {
                // twisted iff delta(v1)delta(v2)delta(a1)delta(a2) = +1: an even number of minus signs
                masks_.push_back(opp | (std::uint32_t{1} << e.a) | (std::uint32_t{1} << e.b));
                odd_means_twisted_.push_back(0);
            } else {
                // twisted iff delta(a1)delta(a2) = -1
                masks_.push_back(opp);
                odd_means_twisted_.push_back(1);
            }
            const LatticePoint dir = point_at(e.b) - point_at(e.a);
            // Curve edge direction is the rotation (-dy, dx); mod 2 that swaps coordinates.
            direction_mod2_.push_back(Parity(dir.y & 1, dir.x & 1));
        }
    }

    const std::vector<Edge>& interior() const { return interior_; }
    const std::vector<std::uint64_t>& cycles() const { return cycles_; }

    /// Twisted-edge bit mask for the sign mask `negative`.
    std::uint64_t twisted(std::uint32_t negative) const
    {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < masks_.size(); ++i)
            if (static_cast<std::uint32_t>(std::popcount(negative & masks_[i]) & 1) == odd_means_twisted_[i])
                out |= std::uint64_t{1} << i;
        return out;
    }

    bool dividing(std::uint64_t twistedMask) const { return dividing(twistedMask, cycles_); }

    static bool dividing(std::uint64_t twistedMask, std::span<const std::uint64_t> cycles)
    {
        for (std::uint64_t c : cycles)
            if (std::popcount(c & twistedMask) & 1)
                return false;
        return true;
    }

    bool admissible(std::uint64_t twistedMask) const
    {
        for (std::uint64_t c : cycles_) {
            Parity sum;
            for (std::uint64_t bits = c & twistedMask; bits; bits &= bits - 1)
                sum = sum + direction_mod2_[std::countr_zero(bits)];
            if (sum != Parity())
                return false;
        }
        return true;
    }

private:
    std::vector<Edge> interior_;
    std::vector<std::uint64_t> cycles_;
    std::vector<std::uint32_t> masks_;
    std::vector<std::uint32_t> odd_means_twisted_;
    std::vector<Parity> direction_mod2_;
};

/// Subset of the interior edges of a triangulation.
struct TwistedEdgeSet
{
    std::uint64_t mask = 0;                    // over interior_edges(t)
    std::vector<std::pair<int, int>> edges;    // endpoint pairs, sorted

    bool contains(int a, int b) const
    {
        if (a > b)
            std::swap(a, b);
        return std::binary_search(edges.begin(), edges.end(), std::pair{a, b});
    }
    friend bool operator==(const TwistedEdgeSet&, const TwistedEdgeSet&) = default;
};

inline TwistedEdgeSet make_twisted_set(const std::vector<Edge>& interior, std::uint64_t mask)
{
    TwistedEdgeSet out;
    out.mask = mask;
    for (std::size_t i = 0; i < interior.size(); ++i)
        if ((mask >> i) & 1u)
            out.edges.push_back({interior[i].a, interior[i].b});
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

inline TwistedEdgeSet twisted_edges(const Triangulation& t, const SignDistribution& delta)
{
    const TwistTables tables(t);
    return make_twisted_set(tables.interior(), tables.twisted(delta.mask()));
}

/// Twisted edge set from explicit endpoint pairs; pairs that are not interior
/// edges of t are rejected.
inline Result<TwistedEdgeSet> twisted_set_from_pairs(const Triangulation& t, std::span<const std::pair<int, int>> pairs)
{
    const std::vector<Edge> interior = interior_edges(t);
    std::uint64_t mask = 0;
    for (auto [a, b] : pairs) {
        if (a > b)
            std::swap(a, b);
        bool found = false;
        for (std::size_t i = 0; i < interior.size(); ++i)
            if (interior[i].a == a && interior[i].b == b) {
                mask |= std::uint64_t{1} << i;
                found = true;
            }
        if (!found)
            return Error{"(" + std::to_string(a) + " " + std::to_string(b) + ") is not an interior edge"};
    }
    return make_twisted_set(interior, mask);
}

inline bool is_admissible(const Triangulation& t, const TwistedEdgeSet& T) { return TwistTables(t).admissible(T.mask); }

inline bool is_dividing(const Triangulation& t, const SignDistribution& delta)
{
    const TwistTables tables(t);
    return tables.dividing(tables.twisted(delta.mask()));
}

/// `(a b) (c d) ...`
inline std::string format_twisted_edges(const TwistedEdgeSet& T)
{
    std::string out;
    for (std::size_t i = 0; i < T.edges.size(); ++i) {
        if (i)
            out += ' ';
        out += "(" + std::to_string(T.edges[i].first) + " " + std::to_string(T.edges[i].second) + ")";
    }
    return out;
}

}  // namespace realtrop
