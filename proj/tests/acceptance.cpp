// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "fixtures.hpp"

#include "realtrop/bitangents.hpp"
#include "realtrop/datastore.hpp"
#include "realtrop/survey.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>

using namespace realtrop;

namespace {

// Pinned expectations.
constexpr std::size_t kQuarticClasses = 1278;
constexpr int kOrbitSum = 7422;
constexpr int kNongeneric = 8;
constexpr std::array<int, 7> kTable3{1207, 15, 27, 18, 6, 3, 2};
constexpr std::array<std::int64_t, kTopologyClasses> kTable1ModS3{6003712, 2161920, 6771456, 4294912, 1706752};
constexpr std::array<std::int64_t, kTopologyClasses> kTable1Total{34899968, 12547584, 39316992, 24961536, 9875968};
constexpr std::int64_t kFourOvalQuery = 442;
constexpr int kFuzzInstances = 100000;
constexpr int kConePointsPerTriangulation = 100;
constexpr int kRandomDataSets = 4;

struct Outcome
{
    bool pass = false;
    std::string detail;
};

template <class T, std::size_t N>
std::string join(const std::array<T, N>& a)
{
    std::string s;
    for (std::size_t i = 0; i < N; ++i)
        s += (i ? "," : "") + std::to_string(a[i]);
    return s;
}

struct Shared
{
    std::vector<EnumeratedTriangulation> quartics;
    std::vector<SweepRecord> census;
    std::vector<Triangulation> nongeneric;
};

Outcome enumeration(Shared& sh)
{
    EnumerationStats stats;
    sh.quartics = enumerate_all(4, &stats);
    int orbitSum = 0, bad = 0;
    std::set<Triangulation> distinct;
    for (const auto& e : sh.quartics) {
        orbitSum += e.orbit_size;
        bad += validate(e.triangulation).has_value() || !is_regular(e.triangulation).regular ||
               canonical_form(e.triangulation).triangulation != e.triangulation;
        distinct.insert(e.triangulation);
    }
    const bool pass = sh.quartics.size() == kQuarticClasses && distinct.size() == kQuarticClasses && bad == 0 &&
                      orbitSum == kOrbitSum;
    return {pass, std::to_string(sh.quartics.size()) + " regular classes, orbit sum " + std::to_string(orbitSum) + ", " +
                      std::to_string(bad) + " invalid, non-canonical or non-regular; " +
                      std::to_string(stats.non_regular) + " of " + std::to_string(stats.flip_classes) +
                      " flip-graph classes excluded as non-regular"};
}

Outcome nongenericity(Shared& sh)
{
    for (const auto& e : sh.quartics)
        if (is_nongeneric_triangulation(e.triangulation))
            sh.nongeneric.push_back(e.triangulation);
    return {static_cast<int>(sh.nongeneric.size()) == kNongeneric,
            std::to_string(sh.nongeneric.size()) + " non-generic triangulations"};
}

Outcome table3_criterion(Shared& sh)
{
    const int jobs = std::max(1u, std::thread::hardware_concurrency());
    sh.census = census(sh.quartics, jobs);
    const auto t3 = table3(sh.census);
    bool all28 = true;
    for (const SweepRecord& r : sh.census)
        all28 = all28 && (r.bitangent_set() & 8u);
    return {t3 == kTable3 && all28, "buckets (" + join(t3) + ")" + (all28 ? "" : ", a set without 28")};
}

Outcome table1_criterion(Shared& sh)
{
    const CensusTables t = table1(sh.census);
    std::int64_t modSum = 0, totalSum = 0;
    for (int c = 0; c < kTopologyClasses; ++c) {
        modSum += t.mod_s3[c];
        totalSum += t.total[c];
    }
    const bool pass = t.mod_s3 == kTable1ModS3 && t.total == kTable1Total &&
                      modSum == static_cast<std::int64_t>(kQuarticClasses) * kQuarticSignClasses && totalSum == 121602048;
    return {pass, "mod S3 (" + join(t.mod_s3) + ") sum " + std::to_string(modSum) + "; total (" + join(t.total) + ") sum " +
                      std::to_string(totalSum)};
}

Outcome database_query(Shared& sh)
{
    std::vector<QuarticRecord> records;
    for (std::size_t i = 0; i < sh.quartics.size(); ++i)
        records.push_back(make_record(static_cast<int>(i), sh.quartics[i], sh.census[i]));
    const std::string archive = export_records(records);
    const auto back = import_records(archive);
    if (!back)
        return {false, "archive import failed: " + back.error().message};
    int badReps = 0;
    for (const QuarticRecord& r : *back)
        badReps += verify_representatives(r).has_value();
    const std::int64_t n = query_count(*back, RecordQuery::parse("OVALS.COUNT.3=1024").value());
    return {n == kFourOvalQuery && *back == records && badReps == 0,
            std::to_string(n) + " records with exactly 1024 four-oval sign classes; archive " +
                std::to_string(archive.size()) + " bytes, " + std::to_string(badReps) + " bad representatives"};
}

Outcome point_checks(Shared&)
{
    const auto listing = induced_subdivision(parse_heights(fixtures::kListingWeights).value(), Convention::min);
    if (!listing)
        return {false, "listing heights do not induce a triangulation"};
    const SignDistribution plus = SignDistribution::all_positive(4);
    const RealTopology rt = topology(*listing, plus);
    const int N = real_bitangent_count(rt);
    const bool fanDividing = is_dividing(parse_cells(fixtures::kFanCells), plus);
    const bool pass = rt.ovals == 3 && N == 16 && lifting_class_count(rt) == 4 && !fanDividing;
    return {pass, "listing: " + std::to_string(rt.ovals) + " ovals, " + std::to_string(N) + " bitangents, " +
                      std::to_string(lifting_class_count(rt)) + " classes; fan dividing " + (fanDividing ? "true" : "false")};
}

Outcome properties(Shared& sh)
{
    auto& gen = fixtures::rng();
    int failures = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
        if (failures++ == 0)
            first = what;
    };

    // Twist and real part on random (triangulation, signs, symmetry).
    for (int trial = 0; trial < kFuzzInstances; ++trial) {
        const Triangulation& t = sh.quartics[gen() % sh.quartics.size()].triangulation;
        const SignDistribution s(4, static_cast<std::uint32_t>(gen()) & SignDistribution::full_mask(4));
        const S3Element& g = s3_elements()[gen() % 6];
        const TwistedEdgeSet T = twisted_edges(t, s);
        if (!is_admissible(t, T))
            fail("inadmissible twist set on " + format_cells(t));
        if (!(T == twisted_edges(t, s.negated())))
            fail("twist set changes under negation on " + format_cells(t));
        std::vector<std::pair<int, int>> mapped;
        for (auto [a, b] : T.edges) {
            const int x = g.apply_index(4, a), y = g.apply_index(4, b);
            mapped.push_back({std::min(x, y), std::max(x, y)});
        }
        std::sort(mapped.begin(), mapped.end());
        if (twisted_edges(t.transformed(g), s.transformed(g)).edges != mapped)
            fail("twist set not S3-equivariant on " + format_cells(t));

        const RealPartGraph rp = real_part(t, s);
        std::map<int, int> degree;
        for (const auto& l : rp.links) {
            ++degree[RealPartGraph::node_id(rp.num_cells, l.from)];
            ++degree[RealPartGraph::node_id(rp.num_cells, l.to)];
        }
        bool regular = degree.size() == rp.nodes.size();
        for (auto [id, d] : degree)
            regular = regular && d == 2;
        if (!regular)
            fail("real part not 2-regular on " + format_cells(t));
        const int ovals = count_ovals(t, s);
        const bool dividing = is_dividing(t, s);
        if (ovals < 1 || ovals > 4 || (dividing && ovals % 2 != 0) || (ovals == 4 && !dividing))
            fail("oval/dividing invariant broken on " + format_cells(t) + " " + format_signs(s, ","));
    }

    // Certificates round trip on every triangulation.
    for (const auto& e : sh.quartics) {
        const auto induced = induced_subdivision(e.certificate);
        const Regularity r = is_regular(e.triangulation);
        const auto again = induced_subdivision(r.certificate);
        if (!induced || *induced != e.triangulation || !r.regular || !again || *again != e.triangulation)
            fail("regularity round trip on " + format_cells(e.triangulation));
    }

    // Closed-form motif lengths against the embedded curve.
    int motifBearing = 0;
    for (const auto& e : sh.quartics) {
        const auto motifs = find_motif_c(e.triangulation);
        if (motifs.empty())
            continue;
        ++motifBearing;
        std::vector<std::array<LinearFunctional, 3>> mus;
        for (const MotifC& m : motifs)
            mus.push_back(mu_functionals(e.triangulation, m).value());
        const auto cone = secondary_cone(e.triangulation);
        for (int k = 0; k < kConePointsPerTriangulation; ++k) {
            const HeightVector h = fixtures::random_cone_point(cone, e.certificate, gen);
            const auto curve = embed_curve(e.triangulation, h);
            if (!curve) {
                fail("cone point rejected on " + format_cells(e.triangulation));
                continue;
            }
            std::map<std::pair<int, int>, Rational> length;
            for (const auto& b : curve->bounded)
                length[{b.a, b.b}] = b.length;
            for (std::size_t o = 0; o < motifs.size(); ++o) {
                const MotifC& m = motifs[o];
                const int p11 = m.index({1, 1}), p21 = m.index({2, 1}), p12 = m.index({1, 2});
                const std::array<std::pair<int, int>, 3> dual{{{p11, p12}, {p11, p21}, {p21, p12}}};
                for (int r = 0; r < 3; ++r) {
                    const auto key = std::minmax(dual[r].first, dual[r].second);
                    if (mus[o][r](h) != length.at({key.first, key.second}))
                        fail("mu" + std::to_string(r + 1) + " differs from the embedded length on " +
                             format_cells(e.triangulation));
                }
            }
        }
    }

    // Shape (C) condition never separates delta from -delta.
    MotifC m = find_motif_c(staircase(4)).front();
    m.orientation = S3Element();
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
                m.i = i;
                m.j = j;
                m.k = k;
                for (std::uint32_t mask = 0; mask <= SignDistribution::full_mask(4); ++mask) {
                    const SignDistribution s(4, mask);
                    if (shape_c_lifts(s, m) != shape_c_lifts(s.negated(), m))
                        fail("shape (C) condition not negation invariant");
                }
            }

    std::string detail = std::to_string(kFuzzInstances) + " fuzz instances, " + std::to_string(sh.quartics.size()) +
                         " round trips, " + std::to_string(motifBearing) + " motif triangulations x " +
                         std::to_string(kConePointsPerTriangulation) + " cone points, 27 index triples; " +
                         std::to_string(failures) + " failures";
    if (failures)
        detail += " (first: " + first + ")";
    return {failures == 0, detail};
}

// N - n per sign class computed on the canonical frame, independent of algorithm1.
struct IntegrityTally
{
    int collected = 0;
    int violations = 0;
};

IntegrityTally tally(const Triangulation& canonical, const std::vector<SignCondition>& conds)
{
    IntegrityTally out;
    for (std::uint32_t mask = 0; mask <= SignDistribution::full_mask(4); ++mask) {
        const SignDistribution s(4, mask);
        if (s[0] != 1)
            continue;
        int n = 0;
        for (const SignCondition& c : conds)
            n += 4 * c.holds(s);
        const int N = real_bitangent_count(topology(canonical, s));
        out.collected += N != n;
        out.violations += N - n != 0 && N - n != 4;
    }
    return out;
}

nlohmann::json random_classes(std::mt19937_64& gen)
{
    nlohmann::json classes = nlohmann::json::array();
    for (int c = 0; c < 6; ++c) {
        if (gen() % 4 == 0) {
            classes.push_back(nullptr);
            continue;
        }
        nlohmann::json sets = nlohmann::json::array();
        const int numSets = static_cast<int>(gen() % 3);
        for (int k = 0; k < numSets; ++k) {
            const int a = static_cast<int>(gen() % 15), b = static_cast<int>(gen() % 15);
            sets.push_back({a, b});
        }
        classes.push_back(sets);
    }
    return classes;
}

Outcome algorithm1_integrity(Shared& sh)
{
    auto& gen = fixtures::rng();
    int runs = 0, mismatches = 0, raised = 0;
    std::string first;
    for (const Triangulation& t : sh.nongeneric) {
        const Triangulation canonical = canonical_form(t).triangulation;
        std::vector<nlohmann::json> datasets{nlohmann::json::parse("[null,null,null,null,null,null]"),
                                             nlohmann::json::parse("[[],[],[],[],[],[]]")};
        for (int k = 0; k < kRandomDataSets; ++k)
            datasets.push_back(random_classes(gen));
        for (const nlohmann::json& classes : datasets) {
            const nlohmann::json doc{
                {"records", {{{"cells", nlohmann::json::parse(format_cells(canonical))}, {"classes", classes}}}}};
            const ExternalClassData data = parse_class_data(doc).value();
            const IntegrityTally expected = tally(canonical, *data.find(canonical));
            ++runs;
            const auto lenient = algorithm1(t, data, false).value();
            bool ok = static_cast<int>(lenient.collected.size()) == expected.collected &&
                      static_cast<int>(lenient.violations.size()) == expected.violations;
            bool threw = false;
            try {
                (void)algorithm1(t, data, true);
            } catch (const DataIntegrityError& e) {
                threw = true;
                const int diff = e.topology_count() - e.class_count();
                ok = ok && diff != 0 && diff != 4;
            }
            raised += threw;
            ok = ok && threw == (expected.violations > 0);
            if (!ok && mismatches++ == 0)
                first = format_cells(t) + " with classes " + classes.dump();
        }
    }
    std::string detail = std::to_string(runs) + " data sets on " + std::to_string(sh.nongeneric.size()) +
                         " triangulations, " + std::to_string(raised) + " raised a data error, " + std::to_string(mismatches) +
                         " disagreements with the independent tally";
    if (mismatches)
        detail += " (first: " + first + ")";
    return {mismatches == 0 && runs > 0, detail};
}

}  // namespace

int main()
{
    Shared sh;
    const std::vector<std::pair<std::string, std::function<Outcome(Shared&)>>> criteria{
        {"enumeration", enumeration},
        {"non-generic triangulations", nongenericity},
        {"bitangent sets per triangulation", table3_criterion},
        {"topology census", table1_criterion},
        {"database query", database_query},
        {"point checks", point_checks},
        {"property suites", properties},
        {"class data integrity", algorithm1_integrity},
    };
    bool allPass = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second(sh);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        allPass = allPass && o.pass;
        std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return allPass ? 0 : 1;
}
