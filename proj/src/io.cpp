#include "mukai/io.hpp"

#include <fstream>
#include <sstream>

#include "mukai/error.hpp"

namespace mukai {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) return parts;
        start = pos + 1;
    }
}

void line_column(std::string_view text, std::size_t offset, std::size_t& line, std::size_t& column) {
    line = 1;
    column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

Integer json_integer(const json& node, const std::string& where) {
    if (node.is_number_integer()) return Integer(node.get<long>());
    if (node.is_string()) {
        try {
            return parse_integer(node.get<std::string>());
        } catch (const Error&) {
        }
    }
    fail(ErrorCode::Parse, where + ": expected an integer");
}

const json& field(const json& doc, const char* name, const std::string& origin) {
    auto it = doc.find(name);
    if (it == doc.end()) fail(ErrorCode::Parse, origin + ": missing field \"" + name + "\"");
    return *it;
}

}  // namespace

SurfaceContext parse_surface(std::string_view text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 0, column = 0;
        line_column(text, e.byte == 0 ? 0 : e.byte - 1, line, column);
        fail(ErrorCode::Parse, origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                   ": malformed fixture");
    }
    if (!doc.is_object()) fail(ErrorCode::Parse, origin + ": fixture must be a JSON object");

    if (doc.contains("schema_version")) {
        const Integer version = json_integer(doc["schema_version"], origin + ": schema_version");
        if (version != kFixtureSchemaVersion) {
            fail(ErrorCode::Parse, origin + ": unsupported schema_version " + to_string(version));
        }
    }
    const Integer rank = json_integer(field(doc, "rank", origin), origin + ": rank");
    const json& gram_node = field(doc, "gram", origin);
    if (!gram_node.is_array()) fail(ErrorCode::Parse, origin + ": gram must be an array of rows");
    if (rank < 1 || rank > static_cast<long>(IntersectionLattice::kMaxRank) ||
        gram_node.size() != rank.get_ui()) {
        fail(ErrorCode::InvalidLattice, origin + ": rank " + to_string(rank) +
                                            " does not match the gram matrix (" +
                                            std::to_string(gram_node.size()) + " rows)");
    }
    std::vector<std::vector<Integer>> gram;
    for (std::size_t i = 0; i < gram_node.size(); ++i) {
        const json& row = gram_node[i];
        const std::string where = origin + ": gram[" + std::to_string(i) + "]";
        if (!row.is_array()) fail(ErrorCode::Parse, where + " must be an array");
        std::vector<Integer> values;
        for (std::size_t j = 0; j < row.size(); ++j) {
            values.push_back(json_integer(row[j], where + "[" + std::to_string(j) + "]"));
        }
        gram.push_back(std::move(values));
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        for (const auto& l : doc["labels"]) {
            if (!l.is_string()) fail(ErrorCode::Parse, origin + ": labels must be strings");
            labels.push_back(l.get<std::string>());
        }
    }
    auto lattice = IntersectionLattice::create(std::move(gram), std::move(labels));

    const json& ample_node = field(doc, "ample", origin);
    if (!ample_node.is_array()) fail(ErrorCode::Parse, origin + ": ample must be an array");
    std::vector<Integer> ample;
    for (std::size_t i = 0; i < ample_node.size(); ++i) {
        ample.push_back(json_integer(ample_node[i], origin + ": ample[" + std::to_string(i) + "]"));
    }
    ConeModel model = ConeModel::UserAsserted;
    if (doc.contains("cone_model")) {
        const std::string m = doc["cone_model"].is_string() ? doc["cone_model"].get<std::string>() : "";
        if (m == "round-cone") {
            model = ConeModel::RoundCone;
        } else if (m != "user-asserted") {
            fail(ErrorCode::Parse, origin + ": cone_model must be \"round-cone\" or \"user-asserted\"");
        }
    }
    return SurfaceContext::create(std::move(lattice), DivisorClass(std::move(ample)), model);
}

SurfaceContext load_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_surface(buffer.str(), path);
}

json surface_to_json(const SurfaceContext& ctx) {
    json gram = json::array();
    for (const auto& row : ctx.lattice.gram()) {
        json r = json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        gram.push_back(std::move(r));
    }
    json doc{{"schema_version", kFixtureSchemaVersion},
             {"rank", ctx.rank()},
             {"gram", std::move(gram)},
             {"ample", json::array()},
             {"cone_model", ctx.cone_model == ConeModel::RoundCone ? "round-cone" : "user-asserted"}};
    for (std::size_t i = 0; i < ctx.ample_ref.size(); ++i) doc["ample"].push_back(to_json(ctx.ample_ref[i]));
    if (!ctx.lattice.labels().empty()) doc["labels"] = ctx.lattice.labels();
    return doc;
}

std::vector<Integer> parse_integer_list(std::string_view text) {
    std::string body = trim(text);
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
        body = body.substr(1, body.size() - 2);
    }
    std::vector<Integer> out;
    std::size_t column = 1;
    for (auto part : split(body, ',')) {
        try {
            out.push_back(parse_integer(part));
        } catch (const Error&) {
            fail(ErrorCode::Parse, "column " + std::to_string(column) + ": expected an integer, got \"" +
                                       std::string(part) + "\"");
        }
        column += part.size() + 1;
    }
    return out;
}

DivisorClass parse_divisor(std::string_view text, std::size_t rank) {
    DivisorClass d(parse_integer_list(text));
    if (d.size() != rank) {
        fail(ErrorCode::DimensionMismatch, "divisor \"" + std::string(text) + "\" has " +
                                               std::to_string(d.size()) + " coordinates, expected " +
                                               std::to_string(rank));
    }
    return d;
}

std::string format_divisor(const DivisorClass& d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out += ",";
        out += to_string(d[i]);
    }
    return out;
}

MukaiVector parse_mukai(std::string_view text, std::size_t rank) {
    const auto parts = split(text, ';');
    if (parts.size() != 3) {
        fail(ErrorCode::Parse, "Mukai vector \"" + std::string(text) +
                                   "\" must have the form \"r; c1,...,c" + std::to_string(rank) + "; a\"");
    }
    auto component = [&](std::size_t index, const char* name) {
        try {
            return parse_integer(parts[index]);
        } catch (const Error&) {
            std::size_t column = 1;
            for (std::size_t i = 0; i < index; ++i) column += parts[i].size() + 1;
            fail(ErrorCode::Parse, "column " + std::to_string(column) + ": " + name +
                                       " is not an integer in \"" + std::string(text) + "\"");
        }
    };
    MukaiVector v;
    v.r = component(0, "r");
    try {
        v.xi = parse_divisor(parts[1], rank);
    } catch (const Error& e) {
        fail(e.code(), "column " + std::to_string(parts[0].size() + 2) + ": " + e.what());
    }
    v.a = component(2, "a");
    return v;
}

std::string format_mukai(const MukaiVector& v) {
    return to_string(v.r) + "; " + format_divisor(v.xi) + "; " + to_string(v.a);
}

json to_json(const Integer& x) {
    if (x.fits_slong_p()) return x.get_si();
    return to_string(x);
}

json to_json(const CohomologyProfile& p) {
    return json::array({to_json(p.h0), to_json(p.h1), to_json(p.h2)});
}

json to_json(const IsotropicDecomposition& dec) {
    return {{"v1", format_mukai(dec.v1)},
            {"v2", format_mukai(dec.v2)},
            {"l1", to_json(dec.l1)},
            {"l2", to_json(dec.l2)}};
}

json to_json(const TranslationTuple& t) {
    return {{"A", format_divisor(t.A)}, {"B", format_divisor(t.B)}, {"r1", to_json(t.r1)}, {"r2", to_json(t.r2)}};
}

json to_json(const WbnVerdict& verdict) {
    json out{{"status", to_string(verdict.status)},
             {"reason", to_string(verdict.reason)},
             {"decisive", verdict.decisive},
             {"dualized", verdict.dualized},
             {"warnings", verdict.warnings}};
    out["profile"] = verdict.profile ? to_json(*verdict.profile) : json(nullptr);
    out["box"] = verdict.box ? to_json(*verdict.box) : json(nullptr);
    json cert = nullptr;
    if (const auto* dec = std::get_if<IsotropicDecomposition>(&verdict.certificate)) {
        cert = to_json(*dec);
        cert["kind"] = "isotropic-decomposition";
    } else if (const auto* tw = std::get_if<TwistedRankR>(&verdict.certificate)) {
        cert = {{"kind", "twisted-rank-r"}, {"eta", format_divisor(tw->eta)}};
    } else if (const auto* one = std::get_if<RankOne>(&verdict.certificate)) {
        cert = {{"kind", "rank-one"}, {"eta", format_divisor(one->eta)}, {"l", to_json(one->l)}};
    }
    out["certificate"] = std::move(cert);
    return out;
}

json to_json(const CounterexampleRecord& rec) {
    json prov{{"kind", to_string(rec.provenance.kind)},
              {"index", rec.provenance.index},
              {"skipped", rec.provenance.skipped}};
    if (rec.provenance.kind == ProvenanceKind::EllipticProduct) {
        prov["t"] = to_json(rec.provenance.pell_t);
        prov["s"] = to_json(rec.provenance.pell_s);
    }
    return {{"tuple", to_json(rec.tuple)},
            {"v1", format_mukai(rec.v1)},
            {"v2", format_mukai(rec.v2)},
            {"v", format_mukai(rec.v)},
            {"polarization", format_divisor(rec.polarization)},
            {"dualized", rec.dualized},
            {"provenance", std::move(prov)}};
}

json to_json(const WallOrbit& orbit) {
    json elements = json::array();
    for (const auto& w : orbit.elements) elements.push_back(format_mukai(w));
    const auto& g = orbit.isometry;
    return {{"v", format_mukai(orbit.v)},
            {"v1", format_mukai(orbit.v1)},
            {"twist", format_divisor(orbit.twist)},
            {"basis", json::array({format_divisor(orbit.basis_p), format_divisor(orbit.basis_q)})},
            {"isometry", json::array({json::array({to_json(g.m11), to_json(g.m12)}),
                                      json::array({to_json(g.m21), to_json(g.m22)})})},
            {"exponent", to_json(orbit.exponent)},
            {"elements", std::move(elements)}};
}

json to_json(const UlrichReport& report) {
    json out{{"candidate_ok", report.candidate_ok},
             {"conclusion", to_string(report.conclusion)},
             {"decisive", report.decisive},
             {"untwisted", format_mukai(report.untwisted)},
             {"conditions",
              {{"rank_at_least_two", report.conditions.rank_at_least_two},
               {"a_part_zero", report.conditions.a_part_zero},
               {"slope", report.conditions.slope_condition},
               {"xi_square_nonnegative", report.conditions.xi_square_nonnegative}}}};
    out["decomposition"] = report.decomposition_found ? to_json(*report.decomposition_found) : json(nullptr);
    return out;
}

}  // namespace mukai
