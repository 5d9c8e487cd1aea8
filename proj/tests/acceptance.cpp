// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "mukai/arith.hpp"
#include "mukai/cli.hpp"
#include "mukai/constructor.hpp"
#include "mukai/error.hpp"
#include "mukai/io.hpp"
#include "mukai/rank2.hpp"

using namespace mukai;

namespace {

std::mt19937_64 gen(20241016);

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }

SurfaceContext fixture(const std::string& name) {
    return load_surface(std::string(MUKAI_FIXTURE_DIR) + "/" + name + ".json");
}

DivisorClass random_divisor(std::size_t rank, long box) {
    std::vector<Integer> c;
    for (std::size_t i = 0; i < rank; ++i) c.emplace_back(uniform(-box, box));
    return DivisorClass(std::move(c));
}

DivisorClass random_polarization(const SurfaceContext& ctx, long box) {
    for (;;) {
        auto h = random_divisor(ctx.rank(), box);
        if (in_positive_cone(ctx, h)) return h;
    }
}

// Collects the failed checks of one criterion.
struct Checker {
    std::vector<std::string> failures;
    void operator()(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok && failures.size() == 5) failures.push_back("...");
    }
};

using Seconds = std::chrono::duration<double>;

bool report(int id, const std::string& title, const std::function<void(Checker&)>& body,
            double budget_s = 0) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed = Seconds(std::chrono::steady_clock::now() - start).count();
    if (budget_s > 0 && elapsed >= budget_s) {
        check.failures.push_back("took " + std::to_string(elapsed) + " s, budget " + std::to_string(budget_s) + " s");
    }
    const bool ok = check.failures.empty();
    std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << std::fixed;
    std::cout.precision(2);
    std::cout << elapsed << " s)\n";
    for (const auto& f : check.failures) std::cout << "       " << f << "\n";
    return ok;
}

std::int64_t isqrt64(std::int64_t n) {
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

std::int64_t brute_min_u(std::int64_t d, std::int64_t n, std::int64_t limit) {
    for (std::int64_t u = 1; u <= limit; ++u) {
        const std::int64_t rhs = d * u * u + n;
        const std::int64_t t = isqrt64(rhs);
        if (t * t == rhs) return u;
    }
    return 0;
}

void worked_example(Checker& check) {
    const auto exe = fixture("exe");
    const auto& lat = exe.lattice;
    const DivisorClass h{2, 5, 0};
    const MukaiVector v{6, {-5, 18, 7}, 0};
    const MukaiVector v1{3, {-2, 9, 3}, 1};
    const MukaiVector v2{3, {-3, 9, 4}, -1};
    check(lat.square(v.xi) == 2, "xi^2 = 2");
    check(lat.dot(v.xi, h) == 60, "xi . H = 60");
    check(lat.square(h) == 20, "H^2 = 20");
    check(mukai_pairing(lat, v1, v2) == 1, "<v1, v2> = 1");
    SearchBound bound;
    bound.coord_box = 10;
    const auto verdict = decide(exe, v, h, bound);
    check(verdict.status == VerdictStatus::Fails, "verdict Fails");
    const auto* dec = std::get_if<IsotropicDecomposition>(&verdict.certificate);
    check(dec && *dec == IsotropicDecomposition{v1, v2, 1, 1}, "certificate equals the worked one");
    check(verdict.profile == CohomologyProfile{1, 1, 0}, "profile (1, 1, 0)");
    std::ostringstream out, err;
    const int code = run_cli({"wbn", "--surface", std::string(MUKAI_FIXTURE_DIR) + "/exe.json", "--vector",
                              "6; -5,18,7; 0", "--box", "10"},
                             out, err);
    check(code == kExitFails, "CLI exit status 3");
    check(out.str().find("v1 = (3; -2,9,3; 1)  v2 = (3; -3,9,4; -1)") != std::string::npos,
          "CLI prints the certificate");
}

void picard_rank_one(Checker& check) {
    int samples = 0;
    SearchBound tuples;
    tuples.coord_box = 12;
    for (const char* name : {"rank1_h2", "rank1_h4"}) {
        const auto ctx = fixture(name);
        const auto& lat = ctx.lattice;
        check(search_tuples(ctx, tuples).empty(), std::string("tuple search empty on ") + name);
        for (int local = 0; local < 250;) {
            const long r = uniform(1, 12), d = uniform(1, 12);
            const Integer xi2 = lat.square(DivisorClass{d});
            const Integer a = floor_div(xi2, 2 * r) - uniform(0, 20);
            const MukaiVector v{r, {d}, a};
            if (square(lat, v) < 0) continue;
            const auto verdict = decide(ctx, v, ctx.ample_ref);
            check(verdict.status == VerdictStatus::Holds, "Holds for " + to_string(v));
            check(brute_force_oracle(ctx, v, ctx.ample_ref, 12).empty(), "no decomposition for " + to_string(v));
            ++samples;
            ++local;
        }
    }
    check(samples == 500, "500 samples");
}

void square_discriminant(Checker& check) {
    SearchBound box8;
    box8.coord_box = 8;
    for (const char* name : {"square_u", "square_d4", "square_d9"}) {
        const auto ctx = fixture(name);
        const auto& lat = ctx.lattice;
        check(is_perfect_square(-lat.discriminant()).has_value(), std::string(name) + " has square Delta");
        check(search_tuples(ctx, box8).empty(), std::string("tuple search empty on ") + name);
        int decided = 0;
        for (int i = 0; i < 400 && decided < 60; ++i) {
            const DivisorClass h = random_polarization(ctx, 3);
            const Integer r = uniform(2, 8);
            DivisorClass xi = random_divisor(2, 8);
            const int s = sign(lat.dot(xi, h));
            if (s == 0) continue;
            if (s < 0) xi = -xi;
            const Integer a = floor_div(lat.square(xi) - 2, 2 * r);
            const MukaiVector v{r, xi, a};
            const Integer v2 = square(lat, v);
            if (v2 < 2 || v2 + 2 > 2 * r || !is_primitive(v)) continue;
            const auto verdict = decide(ctx, v, h, box8);
            check(verdict.status == VerdictStatus::Holds && verdict.decisive &&
                      verdict.reason == ReasonTag::SquareDiscriminantNS,
                  "decisive Holds for " + to_string(v) + " on " + name);
            ++decided;
        }
        check(decided >= 20, std::string("enough searched samples on ") + name);
    }
}

void five_conditions(Checker& check, const IntersectionLattice& lat, const TranslationTuple& t) {
    const Integer a2 = lat.square(t.A), b2 = lat.square(t.B);
    check(a2 > 0, "A^2 > 0");
    check(b2 < 0, "B^2 < 0");
    check(divides(2 * t.r2, a2), "2 r2 | A^2");
    check(divides(2 * t.r1, b2), "2 r1 | B^2");
    check(lat.square(t.r1 * t.A - t.r2 * t.B) == -2 * t.r1 * t.r2, "(r1 A - r2 B)^2 = -2 r1 r2");
}

void nonsquare_streams(Checker& check) {
    const auto ex = fixture("ex46_m2");
    const auto elliptic = elliptic_product_stream(2, 1);
    check(elliptic.size() == 1, "one elliptic record");
    if (!elliptic.empty()) {
        const auto& t = elliptic[0].tuple;
        check(ex.lattice.square(t.B) == -14, "B^2 = -14");
        check(ex.lattice.square(t.A) == 4, "A^2 = 4");
        check(ex.lattice.square(t.A - t.B) == -2, "(A - B)^2 = -2");
        five_conditions(check, ex.lattice, t);
    }
    const BinaryEvenForm form{1, 0, -2};
    const auto ctx = context_from_form(form);
    const auto recs = rank2_counterexample_stream(form, 3);
    check(recs.size() >= 3, "at least three records");
    for (const auto& rec : recs) {
        five_conditions(check, ctx.lattice, rec.tuple);
        check(verify_decomposition(ctx, rec.v, rec.polarization, rec.decomposition), "record decomposition verifies");
    }
}

void brute_force_equivalence(Checker& check) {
    const char* names[] = {"rank1_h2", "rank1_h4", "exe",      "ex46_m2",  "u_minus2",
                           "u_minus4", "square_u", "square_d4", "square_d9"};
    int samples = 0, nonempty = 0;
    for (int round = 0; samples < 1080; ++round) {
        const auto ctx = fixture(names[round % 9]);
        const auto& lat = ctx.lattice;
        const long box = ctx.rank() >= 3 ? 3 + round % 2 : 4 + round % 3;
        for (int i = 0; i < 12; ++i) {
            const DivisorClass h = random_polarization(ctx, 3);
            const Integer r = uniform(2, 6);
            DivisorClass xi = random_divisor(ctx.rank(), box);
            const int s = sign(lat.dot(xi, h));
            if (s == 0) continue;
            if (s < 0) xi = -xi;
            const Integer xi2 = lat.square(xi);
            const Integer hi = floor_div(xi2 - 2, 2 * r);
            const Integer a = hi - uniform(0, 1);
            const MukaiVector v{r, xi, a};
            if (square(lat, v) < 2) continue;
            SearchBound bound;
            bound.coord_box = box;
            const auto fast = search_decompositions(ctx, v, h, bound);
            const auto slow = brute_force_oracle(ctx, v, h, box);
            check(fast == slow, "mismatch for " + to_string(v) + " with H = " + to_string(h));
            ++samples;
            nonempty += !fast.empty();
        }
    }
    check(samples >= 1000, "at least 1000 samples");
    check(nonempty >= 20, "some samples have decompositions (" + std::to_string(nonempty) + ")");
}

void pell(Checker& check) {
    constexpr std::int64_t kLimit = 1000000;
    for (std::int64_t d = 2; d <= 200; ++d) {
        if (isqrt64(d) * isqrt64(d) == d) continue;
        const auto sol = pell_fundamental(d);
        const std::int64_t u = brute_min_u(d, 1, kLimit);
        check(sol.t() * sol.t() - d * sol.u() * sol.u() == 1, "equation for d = " + std::to_string(d));
        if (u != 0) {
            check(sol.u() == u, "minimal u for d = " + std::to_string(d));
        } else {
            check(sol.u() > kLimit, "no solution below the brute-force range for d = " + std::to_string(d));
        }
        const auto orbit = pell_orbit(sol, sol, 8);
        for (const auto& p : orbit)
            check(p.t() * p.t() - d * p.u() * p.u() == 1, "orbit element for d = " + std::to_string(d));
    }
    for (std::int64_t d : {5, 8, 12, 13}) {
        const auto sol = pell4_fundamental(d);
        const std::int64_t u = brute_min_u(d, 4, kLimit);
        check(sol.u() == u && sol.t() * sol.t() == 4 + d * u * u, "pell4 for " + std::to_string(d));
        const auto g = PellSolution::general(sol.t(), sol.u(), d, 4);
        for (const auto& p : pell_orbit(g, pell_fundamental(d), 8))
            check(p.t() * p.t() - d * p.u() * p.u() == 4, "pell4 orbit for " + std::to_string(d));
    }
}

void u_embedding(Checker& check) {
    int square = 0, nonsquare = 0;
    while (square < 200 || nonsquare < 200) {
        const BinaryEvenForm f{uniform(-30, 30), uniform(-30, 30), uniform(-30, 30)};
        const Integer delta = f.delta();
        if (delta <= 0) continue;
        if (is_perfect_square(delta)) {
            if (square == 200) continue;
            ++square;
            const UEmbedding e = embed_into_u(f);
            check(2 * e.s * e.x == 2 * f.a && e.s * e.y + e.t * e.x == f.b && 2 * e.t * e.y == 2 * f.c,
                  "Gram identity for " + to_string(f));
        } else {
            if (nonsquare == 200) continue;
            ++nonsquare;
            bool threw = false;
            try {
                (void)embed_into_u(f);
            } catch (const Error& e) {
                threw = e.code() == ErrorCode::NoEmbedding;
            }
            check(threw, "no embedding for " + to_string(f));
            bool found = false;
            for (long p = -30; p <= 30 && !found; ++p)
                for (long q = -30; q <= 30 && !found; ++q)
                    found = (p != 0 || q != 0) && f.value(p, q) == 0;
            check(!found, "no isotropic vector for " + to_string(f));
        }
    }
}

void wall_orbits(Checker& check) {
    auto verify = [&](const SurfaceContext& ctx, const WallOrbit& orbit, const std::string& name) {
        const auto& lat = ctx.lattice;
        check(orbit.elements.size() == 10, name + ": ten elements");
        std::set<std::vector<Integer>> etas;
        for (const auto& w : orbit.elements) {
            check(square(lat, w) == square(lat, orbit.v1), name + ": w_n^2 = v1^2");
            check(mukai_pairing(lat, w, orbit.v) == mukai_pairing(lat, orbit.v1, orbit.v),
                  name + ": <w_n, v> = <v1, v>");
            etas.insert(w.xi.coords());
        }
        check(etas.size() == orbit.elements.size(), name + ": eta_n pairwise distinct");
    };
    const auto ex = fixture("ex46_m2");
    verify(ex,
           wall_orbit(ex, {2, {0, 3}, -5}, {1, {-1, 3}, -7}, ex.lattice.zero(), DivisorClass{1, 0},
                      DivisorClass{0, 1}, 10),
           "ex46_m2");
    const auto um = fixture("u_minus2");
    const auto pq = find_nonsquare_sublattice(um, 2);
    check(pq.has_value(), "u_minus2 has a nonsquare sublattice");
    if (pq) {
        const auto rec = counterexamples_for_surface(um, 1, 2).front();
        verify(um, wall_orbit(um, rec.v, rec.v1, um.lattice.zero(), pq->first, pq->second, 10), "u_minus2");
    }
}

void ulrich(Checker& check) {
    const auto r4 = fixture("rank1_h4");
    const DivisorClass h{1};
    const auto generic = ulrich_classify(r4, twist(r4.lattice, {2, {1}, 0}, h), h);
    check(generic.conclusion == UlrichConclusion::UlrichGeneric, "(2, H, 0) e^H is Ulrich-generic");
    const auto exe = fixture("exe");
    const DivisorClass he{2, 5, 0};
    const auto none = ulrich_classify(exe, twist(exe.lattice, {6, {-5, 18, 7}, 0}, he), he);
    check(none.conclusion == UlrichConclusion::NoUlrichViaTheorem, "worked example has no Ulrich bundle");
    struct Row {
        long h2, r, m;
    };
    for (const Row row : {Row{4, 2, 1}, Row{2, 3, 2}, Row{4, 4, 1}}) {
        const auto v = ulrich_enumerate_rank1(row.h2, row.r, row.m);
        const MukaiVector want{row.r, {3 * row.r * row.m / 2}, row.r * row.m * row.m * row.h2};
        check(v == want, "vector formula for r = " + std::to_string(row.r) + ", m = " + std::to_string(row.m));
    }
    check(!ulrich_enumerate_rank1(4, 3, 1).has_value(), "(r, m) = (3, 1) has none");
}

}  // namespace

int main() {
    bool ok = true;
    ok &= report(1, "worked E x E example fails with the exact certificate", worked_example, 5.0);
    ok &= report(2, "Picard rank one always holds", picard_rank_one, 30.0);
    ok &= report(3, "square-discriminant rank two is decisive", square_discriminant, 60.0);
    ok &= report(4, "nonsquare streams satisfy all tuple conditions", nonsquare_streams);
    ok &= report(6, "search equals brute force on 1000+ samples", brute_force_equivalence);
    ok &= report(7, "Pell fundamental solutions and orbits", pell);
    ok &= report(8, "U-embedding dichotomy on random forms", u_embedding);
    ok &= report(9, "wall orbit invariants on two surfaces", wall_orbits);
    ok &= report(10, "Ulrich classification", ulrich);
    // Runs last so it covers every verdict produced above.
    const std::string audited = std::to_string(verdict_audit().checked);
    ok &= report(5, "h0 - h1 + h2 = a for every verdict (" + audited + " profiles)", [](Checker& check) {
        const auto audit = verdict_audit();
        check(audit.checked > 0, "no profiles were checked");
        check(audit.violations == 0, "violations: " + std::to_string(audit.violations));
    });
    std::cout << (ok ? "all criteria pass" : "some criteria fail") << "\n";
    return ok ? 0 : 1;
}
