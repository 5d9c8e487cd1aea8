#include "mukai/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>

#include <CLI11.hpp>

#include "mukai/arith.hpp"
#include "mukai/constructor.hpp"
#include "mukai/error.hpp"
#include "mukai/io.hpp"
#include "mukai/rank2.hpp"

namespace mukai {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultCount = 5;

long default_box() {
    if (const char* env = std::getenv("MUKAI_WBN_BOX")) {
        try {
            const Integer box = parse_integer(env);
            if (box >= 1 && box.fits_slong_p()) return box.get_si();
        } catch (const Error&) {
        }
        fail(ErrorCode::InvalidInput, "MUKAI_WBN_BOX must be a positive integer");
    }
    return SearchBound::kDefaultBox;
}

struct Options {
    std::string surface;
    std::string vector;
    std::string ample;
    std::string candidate;
    std::string twist;
    std::string basis;
    std::string form;
    std::string d;
    std::string m;
    long box = 0;
    std::size_t count = kDefaultCount;
    bool json = false;
    bool text = false;
    bool four = false;
    bool untwisted = false;
};

class Emitter {
public:
    Emitter(std::ostream& out, bool as_json)
        : out_(out), json_(as_json), start_(std::chrono::steady_clock::now()) {}

    bool json_mode() const { return json_; }

    void record(json rec) {
        if (!json_) return;
        const auto now = std::chrono::steady_clock::now();
        rec["timing_ms"] = std::chrono::duration<double, std::milli>(now - start_).count();
        out_ << rec.dump() << "\n";
    }
    void line(const std::string& text) {
        if (!json_) out_ << text << "\n";
    }

private:
    std::ostream& out_;
    bool json_;
    std::chrono::steady_clock::time_point start_;
};

struct Surface {
    SurfaceContext ctx;
    DivisorClass h;
};

Surface surface_from(const Options& o) {
    if (o.surface.empty()) fail(ErrorCode::InvalidInput, "--surface is required");
    SurfaceContext ctx = load_surface(o.surface);
    DivisorClass h = o.ample.empty() ? ctx.ample_ref : parse_divisor(o.ample, ctx.rank());
    if (!in_positive_cone(ctx, h)) {
        fail(ErrorCode::InvalidInput, "polarization " + format_divisor(h) + " is not in the positive cone");
    }
    return {std::move(ctx), std::move(h)};
}

json inputs(const Options& o, const Surface& s, const SearchBound& bound) {
    return {{"surface", o.surface},
            {"vector", o.vector},
            {"polarization", format_divisor(s.h)},
            {"box", to_json(bound.coord_box)}};
}

int exit_code(const WbnVerdict& v) {
    switch (v.status) {
        case VerdictStatus::Holds: return kExitHolds;
        case VerdictStatus::Fails: return kExitFails;
        case VerdictStatus::Undetermined: return kExitUndetermined;
    }
    return kExitInputError;
}

std::string describe(const IsotropicDecomposition& dec) {
    return "v1 = (" + format_mukai(dec.v1) + ")  v2 = (" + format_mukai(dec.v2) +
           ")  l1 = " + to_string(dec.l1) + "  l2 = " + to_string(dec.l2);
}

int cmd_wbn(const Options& o, Emitter& emit) {
    const Surface s = surface_from(o);
    const MukaiVector v = parse_mukai(o.vector, s.ctx.rank());
    SearchBound bound;
    bound.coord_box = o.box;
    const WbnVerdict verdict = decide(s.ctx, v, s.h, bound);

    json rec = to_json(verdict);
    rec["command"] = "wbn";
    rec["inputs"] = inputs(o, s, bound);
    rec["v_square"] = to_json(square(s.ctx.lattice, v));
    emit.record(std::move(rec));

    emit.line(to_string(verdict.status) + " (" + to_string(verdict.reason) + ")" +
              (verdict.decisive ? "" : " [bounded search]"));
    if (verdict.profile) {
        const auto& p = *verdict.profile;
        emit.line("profile: h0=" + to_string(p.h0) + " h1=" + to_string(p.h1) + " h2=" + to_string(p.h2));
    }
    if (const auto* dec = std::get_if<IsotropicDecomposition>(&verdict.certificate)) {
        emit.line("certificate: " + describe(*dec) + (verdict.dualized ? "  (via dual)" : ""));
    } else if (const auto* tw = std::get_if<TwistedRankR>(&verdict.certificate)) {
        emit.line("certificate: v = (r, 0, -1) e^eta with eta = " + format_divisor(tw->eta));
    } else if (const auto* one = std::get_if<RankOne>(&verdict.certificate)) {
        emit.line("certificate: v = (1, 0, -l) e^eta with eta = " + format_divisor(one->eta) +
                  ", l = " + to_string(one->l));
    }
    if (verdict.box) emit.line("box: " + to_string(*verdict.box));
    for (const auto& w : verdict.warnings) emit.line("warning: " + w);
    return exit_code(verdict);
}

int cmd_decompose(const Options& o, Emitter& emit) {
    const Surface s = surface_from(o);
    const MukaiVector v = parse_mukai(o.vector, s.ctx.rank());
    SearchBound bound;
    bound.coord_box = o.box;
    const int side = sign(s.ctx.lattice.dot(v.xi, s.h));
    if (side == 0) fail(ErrorCode::PreconditionViolation, "xi . H = 0: no decomposition can exist");
    // With xi . H < 0 the search runs on the dual and maps back.
    auto found = search_decompositions(s.ctx, side > 0 ? v : dual(v), s.h, bound);
    if (side < 0) {
        for (auto& dec : found) {
            dec.v1 = dual(dec.v1);
            dec.v2 = dual(dec.v2);
        }
    }
    std::size_t index = 0;
    for (const auto& dec : found) {
        json rec = to_json(dec);
        rec["command"] = "decompose";
        rec["index"] = ++index;
        emit.record(std::move(rec));
        emit.line(describe(dec));
    }
    json summary{{"command", "decompose"}, {"inputs", inputs(o, s, bound)}, {"count", found.size()}};
    emit.record(std::move(summary));
    emit.line(std::to_string(found.size()) + " decomposition(s) within box " + to_string(bound.coord_box));
    return 0;
}

int cmd_ulrich(const Options& o, Emitter& emit) {
    const Surface s = surface_from(o);
    MukaiVector v = parse_mukai(o.vector, s.ctx.rank());
    if (o.untwisted) v = twist(s.ctx.lattice, v, s.h);
    SearchBound bound;
    bound.coord_box = o.box;
    const UlrichReport report = ulrich_classify(s.ctx, v, s.h, bound);
    json rec = to_json(report);
    rec["command"] = "ulrich";
    rec["inputs"] = inputs(o, s, bound);
    emit.record(std::move(rec));
    emit.line(to_string(report.conclusion) + (report.decisive || !report.candidate_ok ? "" : " [bounded search]"));
    emit.line("v e^-H = (" + format_mukai(report.untwisted) + ")");
    if (report.decomposition_found) emit.line("certificate: " + describe(*report.decomposition_found));
    return 0;
}

int cmd_counterexamples(const Options& o, Emitter& emit) {
    const int sources = !o.surface.empty() + !o.m.empty() + !o.form.empty();
    if (sources != 1) fail(ErrorCode::InvalidInput, "give exactly one of --surface, --m, --form");
    std::vector<CounterexampleRecord> records;
    std::optional<SurfaceContext> ctx;
    if (!o.surface.empty()) {
        ctx = load_surface(o.surface);
        records = counterexamples_for_surface(*ctx, o.count, o.box);
    } else if (!o.m.empty()) {
        const Integer m = parse_integer(o.m);
        records = elliptic_product_stream(m, o.count);
        ctx = context_from_form({m, 0, -1});
    } else {
        const auto g = parse_integer_list(o.form);
        if (g.size() != 3) fail(ErrorCode::InvalidInput, "--form expects \"2a,b,2c\"");
        const BinaryEvenForm form = form_from_gram(g[0], g[1], g[2]);
        records = rank2_counterexample_stream(form, o.count);
        ctx = context_from_form(form);
    }
    const auto& lat = ctx->lattice;
    for (const auto& rec : records) {
        const Integer a2 = lat.square(rec.tuple.A);
        const Integer b2 = lat.square(rec.tuple.B);
        json j = to_json(rec);
        j["command"] = "counterexamples";
        j["A_square"] = to_json(a2);
        j["B_square"] = to_json(b2);
        emit.record(std::move(j));
        emit.line("A = (" + format_divisor(rec.tuple.A) + ")  B = (" + format_divisor(rec.tuple.B) +
                  ")  r1 = " + to_string(rec.tuple.r1) + "  r2 = " + to_string(rec.tuple.r2) +
                  "  A^2 = " + to_string(a2) + "  B^2 = " + to_string(b2));
        emit.line("  v = (" + format_mukai(rec.v) + ")  H = (" + format_divisor(rec.polarization) + ")" +
                  (rec.dualized ? "  (dualized)" : ""));
    }
    return 0;
}

int cmd_walls(const Options& o, Emitter& emit) {
    const Surface s = surface_from(o);
    const auto& lat = s.ctx.lattice;
    const MukaiVector v = parse_mukai(o.vector, lat.rank());
    if (o.candidate.empty()) fail(ErrorCode::InvalidInput, "--candidate is required");
    const MukaiVector v1 = parse_mukai(o.candidate, lat.rank());
    const DivisorClass d = o.twist.empty() ? lat.zero() : parse_divisor(o.twist, lat.rank());
    DivisorClass p, q;
    if (!o.basis.empty()) {
        const auto pos = o.basis.find(';');
        if (pos == std::string::npos) fail(ErrorCode::Parse, "--basis expects \"P;Q\"");
        p = parse_divisor(std::string_view(o.basis).substr(0, pos), lat.rank());
        q = parse_divisor(std::string_view(o.basis).substr(pos + 1), lat.rank());
    } else if (lat.rank() == 2) {
        p = DivisorClass::unit(2, 0);
        q = DivisorClass::unit(2, 1);
    } else {
        fail(ErrorCode::InvalidInput, "--basis is required when the Picard rank is not 2");
    }
    const bool wall = is_wall(s.ctx, v1, v);
    const bool total = is_totally_semistable_candidate(s.ctx, v1, v);
    const WallOrbit orbit = wall_orbit(s.ctx, v, v1, d, p, q, o.count);
    json rec = to_json(orbit);
    rec["command"] = "walls";
    rec["is_wall"] = wall;
    rec["totally_semistable"] = total;
    emit.record(std::move(rec));
    emit.line(std::string("wall: ") + (wall ? "yes" : "no") +
              "  totally semistable: " + (total ? "yes" : "no"));
    emit.line("isometry: " + to_string(orbit.isometry) + "  exponent: " + to_string(orbit.exponent));
    for (std::size_t n = 0; n < orbit.elements.size(); ++n) {
        emit.line("w_" + std::to_string(n + 1) + " = (" + format_mukai(orbit.elements[n]) + ")");
    }
    return 0;
}

int cmd_pell(const Options& o, Emitter& emit) {
    if (o.d.empty()) fail(ErrorCode::InvalidInput, "--d is required");
    const Integer d = parse_integer(o.d);
    const PellSolution sol = o.four ? pell4_fundamental(d) : pell_fundamental(d);
    emit.record({{"command", "pell"},
                 {"d", to_json(d)},
                 {"n", to_json(sol.n())},
                 {"t", to_json(sol.t())},
                 {"u", to_json(sol.u())}});
    emit.line("t=" + to_string(sol.t()) + " u=" + to_string(sol.u()));
    return 0;
}

int cmd_embed_u(const Options& o, Emitter& emit) {
    const auto g = parse_integer_list(o.form);
    if (g.size() != 3) fail(ErrorCode::InvalidInput, "--form expects \"2a,b,2c\"");
    const BinaryEvenForm form = form_from_gram(g[0], g[1], g[2]);
    json rec{{"command", "embed-u"}, {"form", o.form}, {"delta", to_json(form.delta())}};
    const auto cls = classify(form);
    if (!std::holds_alternative<SquareDiscriminant>(cls)) {
        const bool definite = std::holds_alternative<DefiniteDiscriminant>(cls);
        rec["classification"] = definite ? "definite" : "nonsquare";
        rec["embedding"] = nullptr;
        emit.record(std::move(rec));
        emit.line(std::string(definite ? "definite" : "nonsquare") + " Delta=" + to_string(form.delta()) +
                  ": no embedding into U");
        return 0;
    }
    const UEmbedding e = embed_into_u(form);
    const auto iso = isotropic_vector(form);
    rec["classification"] = "square";
    rec["embedding"] = {{"s", to_json(e.s)}, {"x", to_json(e.x)}, {"t", to_json(e.t)}, {"y", to_json(e.y)}};
    rec["isotropic"] = json::array({to_json(iso->first), to_json(iso->second)});
    emit.record(std::move(rec));
    emit.line("s=" + to_string(e.s) + " x=" + to_string(e.x) + " t=" + to_string(e.t) + " y=" + to_string(e.y));
    emit.line("isotropic: (" + to_string(iso->first) + ", " + to_string(iso->second) + ")");
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weak Brill-Noether oracle and lattice tools for abelian surfaces", "mukai"};
    app.require_subcommand(1);
    Options o;
    long env_box = SearchBound::kDefaultBox;
    try {
        env_box = default_box();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    o.box = env_box;

    auto output_flags = [&](CLI::App* sub) {
        auto* j = sub->add_flag("--json", o.json, "One JSON record per line, keys sorted");
        auto* t = sub->add_flag("--text", o.text, "Human readable output (default)");
        j->excludes(t);
    };
    auto box_option = [&](CLI::App* sub) {
        sub->add_option("--box", o.box, "Sup-norm bound for searched coordinates (env MUKAI_WBN_BOX)")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };
    auto surface_options = [&](CLI::App* sub) {
        sub->add_option("--surface", o.surface, "Surface fixture (JSON)")->required();
        sub->add_option("--ample", o.ample, "Polarization \"c1,...\" (default: the fixture's ample class)");
    };

    std::vector<std::pair<CLI::App*, std::function<int(const Options&, Emitter&)>>> commands;

    auto* wbn = app.add_subcommand("wbn", "Decide weak Brill-Noether; exit 0 Holds, 3 Fails, 4 Undetermined");
    surface_options(wbn);
    wbn->add_option("--vector", o.vector, "Mukai vector \"r; c1,...; a\"")->required();
    box_option(wbn);
    output_flags(wbn);
    commands.emplace_back(wbn, cmd_wbn);

    auto* decompose = app.add_subcommand("decompose", "List isotropic decompositions inside the box");
    surface_options(decompose);
    decompose->add_option("--vector", o.vector, "Mukai vector \"r; c1,...; a\"")->required();
    box_option(decompose);
    output_flags(decompose);
    commands.emplace_back(decompose, cmd_decompose);

    auto* ulrich = app.add_subcommand("ulrich", "Ulrich classification of v with respect to H");
    surface_options(ulrich);
    ulrich->add_option("--vector", o.vector, "Mukai vector \"r; c1,...; a\"")->required();
    ulrich->add_flag("--untwisted", o.untwisted, "The vector is v e^-H; twist by H before classifying");
    box_option(ulrich);
    output_flags(ulrich);
    commands.emplace_back(ulrich, cmd_ulrich);

    auto* counter = app.add_subcommand("counterexamples", "Stream verified counterexample tuples");
    counter->add_option("--surface", o.surface, "Surface fixture (JSON)");
    counter->add_option("--m", o.m, "Elliptic product lattice [[2m,0],[0,-2]]");
    counter->add_option("--form", o.form, "Rank-2 Gram entries \"2a,b,2c\"");
    counter->add_option("--count", o.count, "Number of records")->capture_default_str();
    box_option(counter);
    output_flags(counter);
    commands.emplace_back(counter, cmd_counterexamples);

    auto* walls = app.add_subcommand("walls", "Wall predicates and the Pell orbit of a wall");
    surface_options(walls);
    walls->add_option("--vector", o.vector, "Mukai vector v")->required();
    walls->add_option("--candidate", o.candidate, "Wall candidate v1")->required();
    walls->add_option("--twist", o.twist, "Divisor D with xi + rD in the sublattice (default 0)");
    walls->add_option("--basis", o.basis, "Sublattice basis \"P;Q\" (default: NS when rank 2)");
    walls->add_option("--count", o.count, "Number of orbit elements")->capture_default_str();
    output_flags(walls);
    commands.emplace_back(walls, cmd_walls);

    auto* pell = app.add_subcommand("pell", "Fundamental solution of t^2 - d u^2 = 1 (or 4)");
    pell->add_option("--d", o.d, "Coefficient d")->required();
    pell->add_flag("--four", o.four, "Solve t^2 - d u^2 = 4");
    output_flags(pell);
    commands.emplace_back(pell, cmd_pell);

    auto* embed = app.add_subcommand("embed-u", "Embed an even binary form into the hyperbolic plane");
    embed->add_option("--form", o.form, "Gram entries \"2a,b,2c\"")->required();
    output_flags(embed);
    commands.emplace_back(embed, cmd_embed_u);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitInputError;
    }

    for (const auto& [sub, run] : commands) {
        if (!sub->parsed()) continue;
        Emitter emit(out, o.json);
        try {
            return run(o, emit);
        } catch (const Error& e) {
            err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
            return kExitInputError;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitInputError;
        }
    }
    return kExitInputError;
}

}  // namespace mukai
