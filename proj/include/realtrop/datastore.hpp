#pragma once

// Census archive: one JSON document holding a record per quartic
// triangulation, with lookup by canonical form and dotted-path queries.

#include "realtrop/curvegeom.hpp"
#include "realtrop/enumerate.hpp"
#include "realtrop/result.hpp"
#include "realtrop/survey.hpp"
#include "realtrop/triangulation.hpp"
#include "realtrop/twist.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace realtrop {

struct ShapeCMotifInfo
{
    std::array<int, 3> orientation{0, 1, 2};
    std::array<int, 3> indices{1, 1, 1};  // i, j, k
    bool derived = true;
    friend bool operator==(const ShapeCMotifInfo&, const ShapeCMotifInfo&) = default;
};

/// Field names follow the published collection schema.
struct QuarticRecord
{
    int id = 0;
    Triangulation cells;
    int orbit_size = 1;
    int aut_order = 6;
    bool is_nongeneric = false;
    std::vector<int> pluecker_numbers;                 // ascending subset of {4, 8, 16, 28}
    std::vector<std::vector<int>> sign_representatives;  // aligned with pluecker_numbers
    std::array<std::int64_t, 4> ovals_count{};         // 1..4 non-nested ovals
    std::array<std::vector<int>, 4> ovals_signs;       // empty where the count is 0
    std::int64_t ovals_count_nested = 0;
    std::vector<int> ovals_signs_nested;
    std::optional<ShapeCMotifInfo> shape_c_motif;

    friend bool operator==(const QuarticRecord&, const QuarticRecord&) = default;
};

inline QuarticRecord make_record(int id, const EnumeratedTriangulation& e, const SweepRecord& s)
{
    QuarticRecord r;
    r.id = id;
    r.cells = e.triangulation;
    r.orbit_size = e.orbit_size;
    r.aut_order = e.aut_order;
    r.is_nongeneric = is_nongeneric_triangulation(e.triangulation);
    auto signs = [&](TopologyClass c) {
        const auto& rep = s.representative[static_cast<int>(c)];
        return rep ? SignDistribution(4, *rep).to_vector() : std::vector<int>{};
    };
    constexpr std::array<TopologyClass, 4> plain{TopologyClass::one_oval, TopologyClass::two_ovals, TopologyClass::three_ovals,
                                                 TopologyClass::four_ovals};
    for (int o = 0; o < 4; ++o) {
        r.ovals_count[o] = s.count(plain[o]);
        r.ovals_signs[o] = signs(plain[o]);
    }
    r.ovals_count_nested = s.count(TopologyClass::two_nested);
    r.ovals_signs_nested = signs(TopologyClass::two_nested);
    // 4 bitangents: prefer the one-oval representative.
    const std::array<std::pair<int, std::vector<int>>, 4> achieved{{
        {4, r.ovals_count[0] ? r.ovals_signs[0] : r.ovals_signs_nested},
        {8, r.ovals_signs[1]},
        {16, r.ovals_signs[2]},
        {28, r.ovals_signs[3]},
    }};
    for (const auto& [n, rep] : achieved)
        if (!rep.empty()) {
            r.pluecker_numbers.push_back(n);
            r.sign_representatives.push_back(rep);
        }
    const auto motifs = find_motif_c(e.triangulation);
    if (!motifs.empty()) {
        const MotifC& m = motifs.front();
        r.shape_c_motif = ShapeCMotifInfo{m.orientation.permutation(), {m.i, m.j, m.k}, m.derived};
    }
    return r;
}

inline nlohmann::json to_json(const QuarticRecord& r)
{
    nlohmann::json cells = nlohmann::json::array();
    for (const Cell& c : r.cells.cells())
        cells.push_back({c[0], c[1], c[2]});
    nlohmann::json j{
        {"id", r.id},
        {"MAXIMAL_CELLS", cells},
        {"orbit_size", r.orbit_size},
        {"aut_order", r.aut_order},
        {"is_nongeneric", r.is_nongeneric},
        {"PLUECKER_NUMBERS", r.pluecker_numbers},
        {"SIGN_REPRESENTATIVES", r.sign_representatives},
        {"OVALS",
         {{"COUNT", r.ovals_count},
          {"SIGNS", r.ovals_signs},
          {"COUNT_NESTED", r.ovals_count_nested},
          {"SIGNS_NESTED", r.ovals_signs_nested}}},
    };
    if (r.shape_c_motif)
        j["SHAPE_C_MOTIF"] = {{"ORIENTATION", r.shape_c_motif->orientation},
                              {"INDICES", r.shape_c_motif->indices},
                              {"INDICES_DERIVED", r.shape_c_motif->derived}};
    return j;
}

namespace detail {

inline Result<std::vector<int>> read_sign_vector(const nlohmann::json& j, bool allowEmpty)
{
    if (!j.is_array())
        return Error{"not an array"};
    std::vector<int> v;
    for (const auto& x : j) {
        if (!x.is_number_integer() || (x.get<int>() != 1 && x.get<int>() != -1))
            return Error{"entries must be +1 or -1"};
        v.push_back(x.get<int>());
    }
    if (v.empty() && allowEmpty)
        return v;
    if (v.size() != static_cast<std::size_t>(num_points(4)))
        return Error{"sign vector needs " + std::to_string(num_points(4)) + " entries"};
    return v;
}

}  // namespace detail

/// Parses and validates one record.
inline Result<QuarticRecord> record_from_json(const nlohmann::json& j)
{
    QuarticRecord r;
    std::string field;
    auto fail = [&](const std::string& what) {
        const std::string id = j.contains("id") ? j["id"].dump() : std::string("?");
        return Error{"record " + id + ", field " + field + ": " + what};
    };
    try {
        field = "id";
        r.id = j.at("id").get<int>();
        field = "MAXIMAL_CELLS";
        r.cells = parse_cells(j.at("MAXIMAL_CELLS").dump());
        if (auto v = validate(r.cells))
            return fail(v->message);
        field = "orbit_size";
        r.orbit_size = j.at("orbit_size").get<int>();
        field = "aut_order";
        r.aut_order = j.at("aut_order").get<int>();
        if (r.orbit_size * r.aut_order != 6)
            return fail("orbit_size * aut_order must be 6");
        field = "is_nongeneric";
        r.is_nongeneric = j.at("is_nongeneric").get<bool>();
        field = "PLUECKER_NUMBERS";
        r.pluecker_numbers = j.at("PLUECKER_NUMBERS").get<std::vector<int>>();
        for (int n : r.pluecker_numbers)
            if (n != 4 && n != 8 && n != 16 && n != 28)
                return fail("bitangent count " + std::to_string(n) + " not in {4,8,16,28}");
        if (std::find(r.pluecker_numbers.begin(), r.pluecker_numbers.end(), 28) == r.pluecker_numbers.end())
            return fail("must contain 28");
        field = "SIGN_REPRESENTATIVES";
        const auto& reps = j.at("SIGN_REPRESENTATIVES");
        if (!reps.is_array() || reps.size() != r.pluecker_numbers.size())
            return fail("needs one sign vector per entry of PLUECKER_NUMBERS");
        for (const auto& s : reps) {
            auto v = detail::read_sign_vector(s, false);
            if (!v)
                return fail(v.error().message);
            r.sign_representatives.push_back(*v);
        }
        field = "OVALS.COUNT";
        const auto& ovals = j.at("OVALS");
        r.ovals_count = ovals.at("COUNT").get<std::array<std::int64_t, 4>>();
        field = "OVALS.COUNT_NESTED";
        r.ovals_count_nested = ovals.at("COUNT_NESTED").get<std::int64_t>();
        std::int64_t sum = r.ovals_count_nested;
        for (std::int64_t c : r.ovals_count) {
            if (c < 0)
                return fail("negative count");
            sum += c;
        }
        if (sum != kQuarticSignClasses)
            return fail("counts sum to " + std::to_string(sum) + ", expected " + std::to_string(kQuarticSignClasses));
        field = "OVALS.SIGNS";
        const auto& signs = ovals.at("SIGNS");
        if (!signs.is_array() || signs.size() != 4)
            return fail("needs 4 entries");
        for (int o = 0; o < 4; ++o) {
            auto v = detail::read_sign_vector(signs[o], true);
            if (!v)
                return fail(v.error().message);
            if (v->empty() != (r.ovals_count[o] == 0))
                return fail("representative present iff the count is nonzero");
            r.ovals_signs[o] = *v;
        }
        field = "OVALS.SIGNS_NESTED";
        auto nested = detail::read_sign_vector(ovals.at("SIGNS_NESTED"), true);
        if (!nested)
            return fail(nested.error().message);
        if (nested->empty() != (r.ovals_count_nested == 0))
            return fail("representative present iff the count is nonzero");
        r.ovals_signs_nested = *nested;
        if (j.contains("SHAPE_C_MOTIF")) {
            field = "SHAPE_C_MOTIF";
            const auto& m = j["SHAPE_C_MOTIF"];
            ShapeCMotifInfo info;
            info.orientation = m.at("ORIENTATION").get<std::array<int, 3>>();
            info.indices = m.at("INDICES").get<std::array<int, 3>>();
            info.derived = m.at("INDICES_DERIVED").get<bool>();
            r.shape_c_motif = info;
        }
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    return r;
}

inline constexpr std::string_view kCollectionName = "tropical_quartics";

/// Records sorted by id; keys sorted, so equal inputs give identical bytes.
inline std::string export_records(const std::vector<QuarticRecord>& records)
{
    std::vector<const QuarticRecord*> sorted;
    for (const QuarticRecord& r : records)
        sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    nlohmann::json doc{{"COLLECTION", kCollectionName}, {"DEGREE", 4}, {"RECORDS", nlohmann::json::array()}};
    for (const QuarticRecord* r : sorted)
        doc["RECORDS"].push_back(to_json(*r));
    return doc.dump(1) + "\n";
}

inline Result<std::vector<QuarticRecord>> import_records(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        return Error{std::string("archive: ") + e.what()};
    }
    if (!doc.is_object() || !doc.contains("RECORDS") || !doc["RECORDS"].is_array())
        return Error{"archive: expected an object with a RECORDS array"};
    std::vector<QuarticRecord> out;
    for (const auto& j : doc["RECORDS"]) {
        auto r = record_from_json(j);
        if (!r)
            return r.error();
        out.push_back(std::move(*r));
    }
    return out;
}

/// Re-runs the topology on every stored representative.
inline std::optional<std::string> verify_representatives(const QuarticRecord& r)
{
    const QuarticEvaluator ev(r.cells);
    auto check = [&](const std::vector<int>& signs, int ovals, bool nested) -> std::optional<std::string> {
        if (signs.empty())
            return std::nullopt;
        const SignDistribution delta = SignDistribution::from_signs(signs).value();
        const RealTopology rt = ev.topology(delta.mask());
        if (rt.ovals != ovals || rt.nested != nested)
            return "record " + std::to_string(r.id) + ": representative [" + format_signs(delta, ",") + "] gives " +
                   std::to_string(rt.ovals) + " ovals" + (rt.nested ? " (nested)" : "");
        return std::nullopt;
    };
    for (int o = 0; o < 4; ++o)
        if (auto e = check(r.ovals_signs[o], o + 1, false))
            return e;
    return check(r.ovals_signs_nested, 2, true);
}

class Database
{
public:
    explicit Database(std::vector<QuarticRecord> records) : records_(std::move(records))
    {
        for (std::size_t i = 0; i < records_.size(); ++i)
            index_[canonical_form(records_[i].cells).triangulation] = i;
    }

    const std::vector<QuarticRecord>& records() const { return records_; }

    /// Id of the record for t's S3 class.
    Result<int> find(const Triangulation& t) const
    {
        if (auto v = validate(t))
            return Error{"invalid triangulation: " + v->message};
        auto it = index_.find(canonical_form(t).triangulation);
        if (it == index_.end())
            return Error{"triangulation not in the database"};
        return records_[it->second].id;
    }

private:
    std::vector<QuarticRecord> records_;
    std::map<Triangulation, std::size_t> index_;
};

inline Result<int> find_in_database(const Database& db, const Triangulation& t) { return db.find(t); }

/// `PATH=VALUE` (JSON equality) or `PATH~VALUE` (array contains), with PATH
/// dotted like OVALS.COUNT.3; array steps are 0-based.
class RecordQuery
{
public:
    static Result<RecordQuery> parse(std::string_view text)
    {
        const auto pos = text.find_first_of("=~");
        if (pos == std::string_view::npos || pos == 0)
            return Error{"query must look like PATH=VALUE or PATH~VALUE"};
        RecordQuery q;
        q.contains_ = text[pos] == '~';
        std::string pointer;
        std::string_view path = text.substr(0, pos);
        while (!path.empty()) {
            const auto dot = path.find('.');
            pointer += "/" + std::string(path.substr(0, dot));
            path = dot == std::string_view::npos ? std::string_view{} : path.substr(dot + 1);
        }
        try {
            q.pointer_ = nlohmann::json::json_pointer(pointer);
            q.value_ = nlohmann::json::parse(text.substr(pos + 1));
        } catch (const std::exception& e) {
            return Error{std::string("query: ") + e.what()};
        }
        return q;
    }

    bool matches(const nlohmann::json& record) const
    {
        if (!record.contains(pointer_))
            return false;
        const nlohmann::json& v = record.at(pointer_);
        if (!contains_)
            return v == value_;
        return v.is_array() && std::find(v.begin(), v.end(), value_) != v.end();
    }

private:
    nlohmann::json::json_pointer pointer_;
    nlohmann::json value_;
    bool contains_ = false;
};

inline std::int64_t query_count(const std::vector<QuarticRecord>& records, const RecordQuery& q)
{
    std::int64_t n = 0;
    for (const QuarticRecord& r : records)
        n += q.matches(to_json(r));
    return n;
}

}  // namespace realtrop
