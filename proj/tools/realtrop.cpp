// Command-line front end.
//
// Exit codes: 0 success, 1 invalid input, 2 internal invariant violation.

#include "realtrop/bitangents.hpp"
#include "realtrop/curvegeom.hpp"
#include "realtrop/datastore.hpp"
#include "realtrop/enumerate.hpp"
#include "realtrop/heights.hpp"
#include "realtrop/patchwork.hpp"
#include "realtrop/survey.hpp"
#include "realtrop/svg.hpp"
#include "realtrop/triangulation.hpp"
#include "realtrop/twist.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

using namespace realtrop;

namespace {

struct InputError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct CurveInput
{
    std::string cells;
    std::string weights;
    std::string signs;
    std::string convention = "min";
    std::string motif;
};

void add_curve_options(CLI::App* cmd, CurveInput& in, bool withSigns)
{
    cmd->add_option("--cells", in.cells, "Cell list, e.g. [[0,1,2],[1,2,4],...]");
    cmd->add_option("--weights", in.weights, "Comma-separated rational heights, one per lattice point");
    cmd->add_option("--convention", in.convention, "Hull convention for --weights")->check(CLI::IsMember({"min", "max"}));
    if (withSigns)
        cmd->add_option("--signs", in.signs, "Comma-separated +1/-1 per lattice point (default all +1)");
}

Convention convention_of(const CurveInput& in) { return in.convention == "max" ? Convention::max : Convention::min; }

struct Curve
{
    Triangulation triangulation;
    std::optional<HeightVector> heights;
};

Curve read_curve(const CurveInput& in)
{
    if (in.cells.empty() == in.weights.empty())
        throw InputError("give exactly one of --cells and --weights");
    Curve c;
    if (!in.cells.empty()) {
        try {
            c.triangulation = parse_cells(in.cells);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        if (auto v = validate(c.triangulation))
            throw InputError("invalid triangulation: " + v->message);
        return c;
    }
    auto h = parse_heights(in.weights);
    if (!h)
        throw InputError(h.error().message);
    auto t = induced_subdivision(*h, convention_of(in));
    if (!t)
        throw InputError(t.error().message);
    c.triangulation = std::move(*t);
    c.heights = std::move(*h);
    return c;
}

SignDistribution read_signs(const CurveInput& in, int degree)
{
    if (in.signs.empty())
        return SignDistribution::all_positive(degree);
    auto s = parse_signs(in.signs);
    if (!s)
        throw InputError(s.error().message);
    if (s->degree() != degree)
        throw InputError("sign vector has " + std::to_string(num_points(s->degree())) + " entries, expected " +
                         std::to_string(num_points(degree)));
    return *s;
}

std::optional<MotifC> read_motif(const CurveInput& in, const Triangulation& t)
{
    const auto motifs = find_motif_c(t);
    if (in.motif.empty())
        return motifs.empty() ? std::nullopt : std::optional<MotifC>(motifs.front());
    if (motifs.empty())
        throw InputError("--motif given but the triangulation has no shape (C) motif cell");
    MotifC m = motifs.front();
    char c1 = 0, c2 = 0;
    std::istringstream is(in.motif);
    if (!(is >> m.i >> c1 >> m.j >> c2 >> m.k) || c1 != ',' || c2 != ',')
        throw InputError("--motif expects i,j,k");
    for (int v : {m.i, m.j, m.k})
        if (v < 0 || v > 4)
            throw InputError("--motif indices must lie in 0..4");
    m.derived = false;
    return m;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path);
    out << text;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

int run_enumerate(int degree, const std::string& out)
{
    if (degree < 1 || degree > kMaxDegree)
        throw InputError("--degree must lie in 1.." + std::to_string(kMaxDegree));
    EnumerationStats stats;
    const auto all = enumerate_all(degree, &stats);
    long orbitSum = 0;
    for (const auto& e : all) {
        orbitSum += e.orbit_size;
        if (validate(e.triangulation) || !is_regular(e.triangulation).regular)
            throw InvariantViolation("enumerated triangulation fails validation: " + format_cells(e.triangulation));
    }
    std::cout << "DEGREE: " << degree << "\n"
              << "FLIP_CLASSES: " << stats.flip_classes << "\n"
              << "NON_REGULAR: " << stats.non_regular << "\n"
              << "TRIANGULATIONS: " << all.size() << "\n"
              << "ORBIT_SUM: " << orbitSum << "\n";
    if (!out.empty()) {
        nlohmann::json doc = nlohmann::json::array();
        for (std::size_t i = 0; i < all.size(); ++i)
            doc.push_back({{"id", i},
                           {"cells", nlohmann::json::parse(format_cells(all[i].triangulation))},
                           {"orbit_size", all[i].orbit_size},
                           {"aut_order", all[i].aut_order},
                           {"heights", format_heights(all[i].certificate)}});
        write_file(out, doc.dump(1) + "\n");
    }
    return 0;
}

int run_analyze(const CurveInput& in, const std::string& svgPath)
{
    const Curve c = read_curve(in);
    const Triangulation& t = c.triangulation;
    const SignDistribution delta = read_signs(in, t.degree());
    const TwistedEdgeSet twisted = twisted_edges(t, delta);
    const bool dividing = is_dividing(t, delta);
    const int ovals = count_ovals(t, delta);
    std::cout << "CELLS: " << format_cells(t) << "\n"
              << "SIGNS: " << format_signs(delta, ",") << "\n"
              << "N_OVALS: " << ovals << "\n"
              << "IS_DIVIDING: " << yes_no(dividing) << "\n"
              << "TWISTED_EDGES: " << format_twisted_edges(twisted) << "\n"
              << "TWIST_ADMISSIBLE: " << yes_no(is_admissible(t, twisted)) << "\n";
    if (t.degree() == 4) {
        const RealTopology rt = topology(t, delta);
        std::cout << "NESTED: " << yes_no(rt.nested) << "\n"
                  << "N_REAL_BITANGENTS: " << real_bitangent_count(rt) << "\n"
                  << "N_LIFTING_CLASSES: " << lifting_class_count(rt) << "\n";
        if (const auto m = read_motif(in, t)) {
            std::cout << "SHAPE_C_MOTIF: orientation " << m->orientation.permutation()[0] << m->orientation.permutation()[1]
                      << m->orientation.permutation()[2] << ", (i,j,k) = (" << m->i << "," << m->j << "," << m->k << ") "
                      << (m->derived ? "[derived from adjacent cells]" : "[supplied]") << "\n"
                      << "SHAPE_C_LIFTS: " << yes_no(shape_c_lifts(delta, *m)) << "\n"
                      << "NONGENERIC_TRIANGULATION: " << yes_no(is_nongeneric_triangulation(t)) << "\n";
            if (c.heights) {
                const Convention conv = convention_of(in);
                const auto mu = mu_functionals(t, *m, conv).value();
                std::cout << "MU: " << mu[0](*c.heights) << " " << mu[1](*c.heights) << " " << mu[2](*c.heights) << "\n"
                          << "NONGENERIC_LOCUS: " << locus_name(nongeneric_locus(t, *m, *c.heights, conv).value()) << "\n";
            }
        }
    }
    if (!svgPath.empty()) {
        auto svg = c.heights ? render_svg(t, delta, std::span<const Rational>(*c.heights), convention_of(in)) : render_svg(t, delta);
        if (!svg)
            throw InputError(svg.error().message);
        write_file(svgPath, *svg);
    }
    return 0;
}

int run_sweep(const CurveInput& in)
{
    const Curve c = read_curve(in);
    if (c.triangulation.degree() != 4)
        throw InputError("sweep needs a quartic (15 lattice points)");
    const CanonicalForm cf = canonical_form(c.triangulation);
    const SweepRecord r = sweep(c.triangulation, cf.orbit_size);
    std::cout << "CELLS: " << format_cells(c.triangulation) << "\n"
              << "ORBIT_SIZE: " << r.orbit_size << "\n";
    for (int k = 0; k < kTopologyClasses; ++k) {
        const auto cls = static_cast<TopologyClass>(k);
        std::cout << class_name(cls) << " (" << bitangents_of(cls) << " bitangents): " << r.counts[k];
        if (r.representative[k])
            std::cout << "  representative [" << format_signs(SignDistribution(4, *r.representative[k]), ",") << "]";
        std::cout << "\n";
    }
    std::cout << "BITANGENT_NUMBERS: " << format_bitangent_set(r.bitangent_set()) << "\n";
    return 0;
}

std::vector<QuarticRecord> build_records(int jobs, bool printTables)
{
    const auto start = std::chrono::steady_clock::now();
    const auto all = enumerate_all(4);
    std::cerr << "enumerated " << all.size() << " triangulations\n";
    const auto records = census(all, jobs, [](int done, int total) {
        if (done % 100 == 0 || done == total)
            std::cerr << "swept " << done << "/" << total << "\n";
    });
    std::vector<QuarticRecord> out;
    for (std::size_t i = 0; i < all.size(); ++i)
        out.push_back(make_record(static_cast<int>(i), all[i], records[i]));
    if (printTables) {
        const CensusTables t1 = table1(records);
        const auto t3 = table3(records);
        std::int64_t modSum = 0, totalSum = 0;
        for (int k = 0; k < kTopologyClasses; ++k) {
            modSum += t1.mod_s3[k];
            totalSum += t1.total[k];
        }
        std::cout << "TABLE1 columns: 1 oval | 2 nested | 2 ovals | 3 ovals | 4 ovals\n";
        std::cout << "TABLE1 mod S3:";
        for (auto v : t1.mod_s3)
            std::cout << " " << v;
        std::cout << "  (sum " << modSum << ")\nTABLE1 total:";
        for (auto v : t1.total)
            std::cout << " " << v;
        std::cout << "  (sum " << totalSum << ")\nTABLE1 share:";
        const std::array<std::int64_t, 4> byBitangents{t1.total[0] + t1.total[1], t1.total[2], t1.total[3], t1.total[4]};
        for (auto v : byBitangents) {
            char buf[16];
            std::snprintf(buf, sizeof buf, " %.1f%%", 100.0 * static_cast<double>(v) / static_cast<double>(totalSum));
            std::cout << buf;
        }
        std::cout << "\nTABLE3:";
        for (std::size_t k = 0; k < t3.size(); ++k)
            std::cout << " " << format_bitangent_set(kTable3Sets[k]) << "=" << t3[k];
        std::cout << "\nNONGENERIC: " << std::count_if(out.begin(), out.end(), [](const auto& r) { return r.is_nongeneric; })
                  << "\n";
        std::cerr << "census took "
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
    }
    return out;
}

Database load_database(const std::string& path)
{
    auto recs = import_records(read_file(path));
    if (!recs)
        throw InputError(recs.error().message);
    return Database(std::move(*recs));
}

int run_verify_theorem_a(const std::string& classData, const std::string& motif)
{
    std::ifstream in(classData);
    if (!in)
        throw InputError("cannot read " + classData);
    auto data = load_class_data(in);
    if (!data)
        throw InputError(data.error().message);
    int checked = 0;
    for (const auto& [t, conds] : data->records) {
        if (!is_nongeneric_triangulation(t)) {
            std::cout << "SKIP (generic) " << format_cells(t) << "\n";
            continue;
        }
        CurveInput ci;
        ci.motif = motif;
        const MotifC m = *read_motif(ci, t);
        const TheoremACheck r = verify_theorem_a(t, *data, m).value();
        std::cout << (r.disagreements == 0 ? "AGREE " : "DISAGREE ") << format_cells(t) << " collected " << r.collected
                  << " predicted " << r.predicted << " disagreements " << r.disagreements << " (i,j,k) = (" << m.i << ","
                  << m.j << "," << m.k << ")" << (m.derived ? " derived" : " supplied") << "\n";
        ++checked;
    }
    std::cout << "CHECKED: " << checked << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Real topology and real bitangents of tropical quartics"};
    app.require_subcommand(1);

    int degree = 4;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string out, svg, dbPath, query, classData;
    CurveInput in;

    auto* enumerate = app.add_subcommand("enumerate", "Regular unimodular triangulations up to S3");
    enumerate->add_option("--degree", degree, "Degree d of d*Delta_2")->capture_default_str();
    enumerate->add_option("--out", out, "Write the list as JSON");

    auto* analyze = app.add_subcommand("analyze", "Real topology of one real tropical curve");
    add_curve_options(analyze, in, true);
    analyze->add_option("--motif", in.motif, "Shape (C) indices i,j,k (default: read off adjacent cells)");
    analyze->add_option("--svg", svg, "Write the real part as SVG");

    auto* sweepCmd = app.add_subcommand("sweep", "All sign classes of one quartic triangulation");
    add_curve_options(sweepCmd, in, false);

    auto* censusCmd = app.add_subcommand("census", "Full quartic census: oval and bitangent tables");
    censusCmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    censusCmd->add_option("--out", out, "Write the record archive");

    auto* render = app.add_subcommand("render", "Draw the real part as SVG");
    add_curve_options(render, in, true);
    render->add_option("--svg", svg, "Output path")->required();

    auto* db = app.add_subcommand("db", "Record archive");
    db->require_subcommand(1);
    auto* dbBuild = db->add_subcommand("build", "Run the census and write the archive");
    dbBuild->add_option("--out", out, "Archive path")->required();
    dbBuild->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    auto* dbFind = db->add_subcommand("find", "Record id of a triangulation");
    dbFind->add_option("--db", dbPath, "Archive path")->required();
    add_curve_options(dbFind, in, false);
    auto* dbCount = db->add_subcommand("count", "Count records matching PATH=VALUE or PATH~VALUE");
    dbCount->add_option("--db", dbPath, "Archive path")->required();
    dbCount->add_option("--query", query, "e.g. OVALS.COUNT.3=1024")->required();

    auto* verify = app.add_subcommand("verify-theorem-a", "Compare collected shape (C) classes with the closed form");
    verify->add_option("--class-data", classData, "Lifting conditions of the other classes (JSON)")->required();
    verify->add_option("--motif", in.motif, "Shape (C) indices i,j,k (default: read off adjacent cells)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*enumerate)
            return run_enumerate(degree, out);
        if (*analyze)
            return run_analyze(in, svg);
        if (*sweepCmd)
            return run_sweep(in);
        if (*censusCmd) {
            const auto recs = build_records(jobs, true);
            if (!out.empty())
                write_file(out, export_records(recs));
            return 0;
        }
        if (*render) {
            const Curve c = read_curve(in);
            const SignDistribution delta = read_signs(in, c.triangulation.degree());
            auto doc = c.heights ? render_svg(c.triangulation, delta, std::span<const Rational>(*c.heights), convention_of(in))
                                 : render_svg(c.triangulation, delta);
            if (!doc)
                throw InputError(doc.error().message);
            write_file(svg, *doc);
            std::cout << "wrote " << svg << "\n";
            return 0;
        }
        if (*dbBuild) {
            write_file(out, export_records(build_records(jobs, false)));
            std::cout << "wrote " << out << "\n";
            return 0;
        }
        if (*dbFind) {
            const Database database = load_database(dbPath);
            auto id = database.find(read_curve(in).triangulation);
            if (!id)
                throw InputError(id.error().message);
            std::cout << "ID: " << *id << "\n";
            return 0;
        }
        if (*dbCount) {
            const Database database = load_database(dbPath);
            auto q = RecordQuery::parse(query);
            if (!q)
                throw InputError(q.error().message);
            std::cout << query_count(database.records(), *q) << "\n";
            return 0;
        }
        if (*verify)
            return run_verify_theorem_a(classData, in.motif);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataIntegrityError& e) {
        std::cerr << "data integrity error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
