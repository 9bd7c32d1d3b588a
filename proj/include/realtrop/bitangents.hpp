#pragma once

// Lifting conditions of bitangent classes: the closed-form sign condition of
// shape (C), opaque sign conditions for the other six classes (loaded from an
// external file), and the consistency check that recovers shape (C) from the
// real topology of non-generic quartics.

#include "realtrop/curvegeom.hpp"
#include "realtrop/lattice.hpp"
#include "realtrop/patchwork.hpp"
#include "realtrop/result.hpp"
#include "realtrop/triangulation.hpp"
#include "realtrop/twist.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace realtrop {

/// Holds iff, for every index set, the product of the signs over it is +1.
/// Every set has even size, so a condition never distinguishes delta from -delta.
class SignCondition
{
public:
    SignCondition() = default;

    static Result<SignCondition> make(std::vector<std::vector<int>> sets, int degree = 4)
    {
        for (const auto& s : sets) {
            if (s.size() % 2 != 0)
                return Error{"sign condition set of odd size " + std::to_string(s.size())};
            for (int i : s)
                if (i < 0 || i >= num_points(degree))
                    return Error{"sign condition index " + std::to_string(i) + " out of range"};
        }
        SignCondition c;
        c.sets_ = std::move(sets);
        for (const auto& s : c.sets_) {
            std::uint32_t m = 0;
            for (int i : s)
                m ^= std::uint32_t{1} << i;  // repeated indices cancel
            c.masks_.push_back(m);
        }
        return c;
    }

    /// Never holds; `null` in class data files.
    static SignCondition never()
    {
        SignCondition c;
        c.never_ = true;
        return c;
    }

    bool holds(const SignDistribution& delta) const
    {
        if (never_)
            return false;
        for (std::uint32_t m : masks_)
            if (std::popcount(delta.mask() & m) & 1)
                return false;
        return true;
    }

    const std::vector<std::vector<int>>& sets() const { return sets_; }
    bool is_never() const { return never_; }

private:
    std::vector<std::vector<int>> sets_;
    std::vector<std::uint32_t> masks_;
    bool never_ = false;
};

inline bool evaluate_condition(const SignCondition& c, const SignDistribution& delta) { return c.holds(delta); }

/// Both sign products of the shape (C) lifting condition, evaluated in the
/// motif's orientation:
///   (-d11)^(i+j) d12^i d21^j d0i dj0 > 0   and   (-d21)^(k+j) d12^k d11^j d(k,4-k) dj0 > 0.
inline bool shape_c_lifts(const SignDistribution& delta, const MotifC& m)
{
    auto s = [&](int x, int y) { return delta[m.index({x, y})]; };
    auto pow = [](int base, int e) { return (e % 2 == 0) ? 1 : base; };
    const int first = pow(-s(1, 1), m.i + m.j) * pow(s(1, 2), m.i) * pow(s(2, 1), m.j) * s(0, m.i) * s(m.j, 0);
    const int second = pow(-s(2, 1), m.k + m.j) * pow(s(1, 2), m.k) * pow(s(1, 1), m.j) * s(m.k, 4 - m.k) * s(m.j, 0);
    return first > 0 && second > 0;
}

/// Lifting conditions of the six non-(C) bitangent classes, per triangulation,
/// keyed by canonical form. Conditions are written in the canonical frame.
struct ExternalClassData
{
    std::map<Triangulation, std::vector<SignCondition>> records;

    const std::vector<SignCondition>* find(const Triangulation& canonical) const
    {
        auto it = records.find(canonical);
        return it == records.end() ? nullptr : &it->second;
    }
};

/// JSON layout:
///   {"records": [{"cells": [[0,1,2], ...], "classes": [[[5,10]], [], ...]}, ...]}
/// Each class is a list of index sets; `null` marks a class that never lifts.
inline Result<ExternalClassData> parse_class_data(const nlohmann::json& doc)
{
    ExternalClassData out;
    if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_array())
        return Error{"class data: expected an object with a 'records' array"};
    int n = 0;
    for (const auto& rec : doc["records"]) {
        const std::string where = "class data record " + std::to_string(n++);
        if (!rec.contains("cells") || !rec.contains("classes") || !rec["classes"].is_array())
            return Error{where + ": needs 'cells' and 'classes'"};
        Triangulation t;
        try {
            t = parse_cells(rec["cells"].dump());
        } catch (const std::exception& e) {
            return Error{where + ": " + e.what()};
        }
        if (auto v = validate(t))
            return Error{where + ": " + v->message};
        if (rec["classes"].size() > 6)
            return Error{where + ": at most 6 non-(C) classes, got " + std::to_string(rec["classes"].size())};
        std::vector<SignCondition> conds;
        for (const auto& cls : rec["classes"]) {
            if (cls.is_null()) {
                conds.push_back(SignCondition::never());
                continue;
            }
            std::vector<std::vector<int>> sets;
            try {
                sets = cls.get<std::vector<std::vector<int>>>();
            } catch (const std::exception& e) {
                return Error{where + ": malformed condition: " + e.what()};
            }
            auto c = SignCondition::make(std::move(sets), t.degree());
            if (!c)
                return Error{where + ": " + c.error().message};
            conds.push_back(std::move(*c));
        }
        const CanonicalForm cf = canonical_form(t);
        if (t != cf.triangulation)
            return Error{where + ": cells are not in canonical form"};
        out.records[cf.triangulation] = std::move(conds);
    }
    return out;
}

inline Result<ExternalClassData> load_class_data(std::istream& in)
{
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        return Error{std::string("class data: ") + e.what()};
    }
    return parse_class_data(doc);
}

/// N - n outside {0, 4}: the supplied conditions contradict the real topology.
class DataIntegrityError : public std::runtime_error
{
public:
    DataIntegrityError(std::uint32_t mask, int N, int n)
        : std::runtime_error("class data inconsistent at sign mask " + std::to_string(mask) + ": topology gives " +
                             std::to_string(N) + " real bitangents, other classes give " + std::to_string(n)),
          mask_(mask), N_(N), n_(n)
    {
    }
    std::uint32_t mask() const { return mask_; }
    int topology_count() const { return N_; }
    int class_count() const { return n_; }

private:
    std::uint32_t mask_;
    int N_;
    int n_;
};

struct Algorithm1Result
{
    std::vector<std::uint32_t> collected;   // sign masks (delta(0) = +1) where (C) lifts, ascending
    std::vector<std::uint32_t> violations;  // N - n outside {0, 4}; empty in strict mode
};

/// For every sign class of t: n = 4 * #(non-(C) classes that lift), N from the
/// real topology; collect the class iff n != N. Strict mode throws
/// DataIntegrityError on the first N - n outside {0, 4}.
inline Result<Algorithm1Result> algorithm1(const Triangulation& t, const ExternalClassData& data, bool strict = true)
{
    if (t.degree() != 4)
        return Error{"algorithm 1 needs a quartic triangulation"};
    if (!is_nongeneric_triangulation(t))
        return Error{"triangulation is not non-generic"};
    const CanonicalForm cf = canonical_form(t);
    const auto* conds = data.find(cf.triangulation);
    if (!conds)
        return Error{"no class data for this triangulation"};
    S3Element toCanonical;
    for (const S3Element& g : s3_elements())
        if (t.transformed(g) == cf.triangulation) {
            toCanonical = g;
            break;
        }

    const QuarticEvaluator ev(t);
    Algorithm1Result out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << num_points(4)); mask += 2) {
        const SignDistribution v(4, mask);
        const SignDistribution vc = v.transformed(toCanonical);
        int n = 0;
        for (const SignCondition& c : *conds)
            n += c.holds(vc) ? 4 : 0;
        const int N = real_bitangent_count(ev.topology(mask));
        const int diff = N - n;
        if (diff != 0 && diff != 4) {
            if (strict)
                throw DataIntegrityError(mask, N, n);
            out.violations.push_back(mask);
        }
        if (n != N)
            out.collected.push_back(mask);
    }
    return out;
}

struct TheoremACheck
{
    int collected = 0;
    int predicted = 0;      // sign classes where the closed form says (C) lifts
    int disagreements = 0;  // symmetric difference
};

/// Compares the classes collected by algorithm1 with the shape (C) closed form for motif m.
inline Result<TheoremACheck> verify_theorem_a(const Triangulation& t, const ExternalClassData& data, const MotifC& m)
{
    auto res = algorithm1(t, data, true);
    if (!res)
        return res.error();
    TheoremACheck out;
    out.collected = static_cast<int>(res->collected.size());
    std::size_t pos = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << num_points(4)); mask += 2) {
        const bool predicted = shape_c_lifts(SignDistribution(4, mask), m);
        const bool collected = pos < res->collected.size() && res->collected[pos] == mask;
        if (collected)
            ++pos;
        out.predicted += predicted;
        out.disagreements += predicted != collected;
    }
    return out;
}

}  // namespace realtrop
