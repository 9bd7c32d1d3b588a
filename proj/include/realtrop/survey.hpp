#pragma once

// Census engine: sweeps every sign class of every quartic triangulation and
// aggregates the real-topology tables.

#include "realtrop/enumerate.hpp"
#include "realtrop/patchwork.hpp"
#include "realtrop/triangulation.hpp"
#include "realtrop/twist.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace realtrop {

/// Column order of the oval table.
enum class TopologyClass { one_oval, two_nested, two_ovals, three_ovals, four_ovals };

inline constexpr int kTopologyClasses = 5;
inline constexpr std::uint32_t kQuarticSignClasses = 1u << 14;

inline TopologyClass classify(const RealTopology& rt)
{
    switch (rt.ovals) {
    case 1: return TopologyClass::one_oval;
    case 2: return rt.nested ? TopologyClass::two_nested : TopologyClass::two_ovals;
    case 3: return TopologyClass::three_ovals;
    case 4: return TopologyClass::four_ovals;
    default: throw std::domain_error("oval count " + std::to_string(rt.ovals) + " out of range");
    }
}

inline const char* class_name(TopologyClass c)
{
    switch (c) {
    case TopologyClass::one_oval: return "1 oval";
    case TopologyClass::two_nested: return "2 nested";
    case TopologyClass::two_ovals: return "2 ovals";
    case TopologyClass::three_ovals: return "3 ovals";
    case TopologyClass::four_ovals: return "4 ovals";
    }
    return "?";
}

inline int bitangents_of(TopologyClass c)
{
    constexpr std::array<int, kTopologyClasses> n{4, 4, 8, 16, 28};
    return n[static_cast<int>(c)];
}

/// A sweep found a combination the theory rules out.
class InvariantViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

struct SweepRecord
{
    Triangulation triangulation;
    int orbit_size = 1;
    std::array<std::int64_t, kTopologyClasses> counts{};
    std::array<std::optional<std::uint32_t>, kTopologyClasses> representative;  // smallest negative-mask per class

    std::int64_t count(TopologyClass c) const { return counts[static_cast<int>(c)]; }

    /// Bit 0: 4 bitangents, 1: 8, 2: 16, 3: 28.
    unsigned bitangent_set() const
    {
        unsigned s = 0;
        if (count(TopologyClass::one_oval) + count(TopologyClass::two_nested) > 0)
            s |= 1;
        if (count(TopologyClass::two_ovals) > 0)
            s |= 2;
        if (count(TopologyClass::three_ovals) > 0)
            s |= 4;
        if (count(TopologyClass::four_ovals) > 0)
            s |= 8;
        return s;
    }
};

/// All 2^14 sign classes (delta(0) = +1) of a quartic triangulation, checking
/// on each: 1..4 ovals, dividing only for 2 or 4 ovals, 4 ovals dividing, and
/// an admissible twisted-edge set.
inline SweepRecord sweep(const Triangulation& t, int orbit_size = 1)
{
    if (t.degree() != 4)
        throw std::invalid_argument("sweep needs a quartic triangulation");
    const QuarticEvaluator ev(t);
    SweepRecord rec;
    rec.triangulation = t;
    rec.orbit_size = orbit_size;
    for (std::uint32_t mask = 0; mask < 2 * kQuarticSignClasses; mask += 2) {
        const auto e = ev.evaluate(mask);
        const bool ok = e.ovals >= 1 && e.ovals <= 4 && (!e.dividing || e.ovals % 2 == 0) && (e.ovals != 4 || e.dividing) &&
                        ev.twist().admissible(e.twisted);
        if (!ok)
            throw InvariantViolation("sign mask " + std::to_string(mask) + " on " + format_cells(t) + ": " +
                                     std::to_string(e.ovals) + " ovals, dividing " + (e.dividing ? "true" : "false"));
        const int c = static_cast<int>(classify({e.ovals, e.ovals == 2 && e.dividing}));
        if (rec.counts[c]++ == 0)
            rec.representative[c] = mask;
    }
    return rec;
}

/// Sweeps every regular quartic triangulation up to S3; records follow the
/// enumeration order whatever the number of workers.
inline std::vector<SweepRecord> census(const std::vector<EnumeratedTriangulation>& classes, int jobs = 1,
                                       const std::function<void(int done, int total)>& progress = {})
{
    const int total = static_cast<int>(classes.size());
    std::vector<SweepRecord> out(total);
    std::atomic<int> next{0};
    std::atomic<int> done{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&](bool reports) {
        for (int i = next++; i < total && !failed; i = next++) {
            try {
                out[i] = sweep(classes[i].triangulation, classes[i].orbit_size);
            } catch (...) {
                if (!failed.exchange(true))
                    failure = std::current_exception();
                return;
            }
            const int d = ++done;
            if (reports && progress)
                progress(d, total);
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int w = 1; w < jobs; ++w)
        pool.emplace_back(worker, false);
    worker(true);
    for (std::thread& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

struct CensusTables
{
    std::array<std::int64_t, kTopologyClasses> mod_s3{};
    std::array<std::int64_t, kTopologyClasses> total{};
};

inline CensusTables table1(const std::vector<SweepRecord>& records)
{
    CensusTables t;
    for (const SweepRecord& r : records)
        for (int c = 0; c < kTopologyClasses; ++c) {
            t.mod_s3[c] += r.counts[c];
            t.total[c] += r.counts[c] * r.orbit_size;
        }
    return t;
}

/// The seven achievable bitangent-number sets, in table order.
inline constexpr std::array<unsigned, 7> kTable3Sets{0b1111, 0b1011, 0b1101, 0b1110, 0b1001, 0b1010, 0b1100};

inline std::string format_bitangent_set(unsigned s)
{
    constexpr std::array<int, 4> n{4, 8, 16, 28};
    std::string out = "{";
    for (int b = 0; b < 4; ++b)
        if ((s >> b) & 1u)
            out += (out.size() > 1 ? "," : "") + std::to_string(n[b]);
    return out + "}";
}

/// Triangulations per achieved bitangent-number set; throws InvariantViolation
/// for a set outside the seven.
inline std::array<int, 7> table3(const std::vector<SweepRecord>& records)
{
    std::array<int, 7> out{};
    for (const SweepRecord& r : records) {
        const auto it = std::find(kTable3Sets.begin(), kTable3Sets.end(), r.bitangent_set());
        if (it == kTable3Sets.end())
            throw InvariantViolation("unexpected bitangent set " + format_bitangent_set(r.bitangent_set()) + " for " +
                                     format_cells(r.triangulation));
        ++out[it - kTable3Sets.begin()];
    }
    return out;
}

}  // namespace realtrop
