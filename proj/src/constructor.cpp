#include "mukai/constructor.hpp"

#include <algorithm>
#include <set>

#include "mukai/arith.hpp"
#include "mukai/error.hpp"

namespace mukai {

bool is_wall(const SurfaceContext& ctx, const MukaiVector& v1, const MukaiVector& v) {
    const auto& lat = ctx.lattice;
    const MukaiVector rest = v - v1;
    const Integer v1_square = square(lat, v1);
    if (v1_square < 0 || square(lat, rest) < 0) return false;
    if (mukai_pairing(lat, v1, rest) <= 0) return false;
    const Integer p = mukai_pairing(lat, v1, v);
    return v1_square * square(lat, v) < p * p;
}

bool is_totally_semistable_candidate(const SurfaceContext& ctx, const MukaiVector& v1,
                                     const MukaiVector& v) {
    return is_wall(ctx, v1, v) && square(ctx.lattice, v1) == 0 &&
           mukai_pairing(ctx.lattice, v, v1) == 1;
}

namespace {

// Coordinates (alpha, beta) with x = alpha P + beta Q, when they are integral.
std::optional<std::pair<Integer, Integer>> coordinates_in(const DivisorClass& x,
                                                          const DivisorClass& p,
                                                          const DivisorClass& q) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Integer minor = p[i] * q[j] - p[j] * q[i];
            if (minor == 0) continue;
            const Integer alpha_num = x[i] * q[j] - x[j] * q[i];
            const Integer beta_num = p[i] * x[j] - p[j] * x[i];
            if (!divides(minor, alpha_num) || !divides(minor, beta_num)) return std::nullopt;
            Integer alpha = alpha_num / minor;
            Integer beta = beta_num / minor;
            if (alpha * p + beta * q != x) return std::nullopt;
            return std::pair<Integer, Integer>{std::move(alpha), std::move(beta)};
        }
    }
    // P and Q are proportional (or the lattice has rank 1).
    return std::nullopt;
}

BinaryEvenForm span_form(const IntersectionLattice& lat, const DivisorClass& p,
                         const DivisorClass& q) {
    return form_from_gram(lat.square(p), lat.dot(p, q), lat.square(q));
}

}  // namespace

WallOrbit wall_orbit(const SurfaceContext& ctx, const MukaiVector& v, const MukaiVector& v1,
                     const DivisorClass& d, const DivisorClass& p, const DivisorClass& q,
                     std::size_t count) {
    const auto& lat = ctx.lattice;
    for (const auto* x : {&v.xi, &v1.xi, &d, &p, &q}) lat.check(*x);
    if (v.r <= 0 || v1.r <= 0) fail(ErrorCode::PreconditionViolation, "wall orbit needs r, r1 > 0");

    const BinaryEvenForm form = span_form(lat, p, q);
    if (!std::holds_alternative<NonsquareDiscriminant>(classify(form))) {
        fail(ErrorCode::NoIsometry, "sublattice " + to_string(form) +
                                        " has an isotropic vector or is not hyperbolic");
    }
    const DivisorClass w = v.r * v1.xi - v1.r * v.xi;
    const auto w_coords = coordinates_in(w, p, q);
    if (!w_coords) fail(ErrorCode::PreconditionViolation, "r xi1 - r1 xi is not in span(P, Q)");
    if (!coordinates_in(v.xi + v.r * d, p, q)) {
        fail(ErrorCode::PreconditionViolation, "xi + rD is not in span(P, Q)");
    }

    const StabilizedIsometry phi = stabilize_mod(isometry_from_pell(form), v.r);
    WallOrbit orbit{v, v1, d, p, q, form, phi.isometry, phi.exponent, {}};

    const Integer v1_square = square(lat, v1);
    const Integer v1_dot_v = mukai_pairing(lat, v1, v);
    std::set<DivisorClass> seen = {v1.xi};
    auto current = *w_coords;
    for (std::size_t n = 1; n <= count; ++n) {
        current = phi.isometry.apply(current.first, current.second);
        const DivisorClass moved = current.first * p + current.second * q;
        const DivisorClass shift = moved - w;
        if (!shift.divisible_by(v.r)) {
            fail(ErrorCode::ContractViolation, "phi^n(w) - w is not divisible by r");
        }
        DivisorClass eta = v1.xi + shift.divided_by(v.r);
        const Integer numerator = lat.square(eta) - v1_square;
        if (!divides(2 * v1.r, numerator)) {
            fail(ErrorCode::ContractViolation, "b_n is not integral");
        }
        MukaiVector w_n{v1.r, eta, numerator / (2 * v1.r)};
        if (square(lat, w_n) != v1_square || mukai_pairing(lat, w_n, v) != v1_dot_v) {
            fail(ErrorCode::ContractViolation, "orbit element " + to_string(w_n) +
                                                   " does not preserve the wall invariants");
        }
        if (!seen.insert(eta).second) {
            fail(ErrorCode::ContractViolation, "orbit repeats at n = " + std::to_string(n));
        }
        orbit.elements.push_back(std::move(w_n));
    }
    return orbit;
}

Polarization polarization_against(const SurfaceContext& ctx, const MukaiVector& v1,
                                  const MukaiVector& v2, std::size_t budget) {
    const auto& lat = ctx.lattice;
    lat.check(v1.xi);
    lat.check(v2.xi);
    DivisorClass xi1 = v1.xi;
    DivisorClass xi2 = v2.xi;
    DivisorClass w = v2.r * xi1 - v1.r * xi2;
    const Integer w_square = lat.square(w);
    if (w_square >= 0) {
        fail(ErrorCode::PreconditionViolation,
             "(r2 xi1 - r1 xi2)^2 = " + to_string(w_square) + " is not negative");
    }
    const DivisorClass& h0 = ctx.ample_ref;
    DivisorClass l = lat.dot(h0, w) * w - w_square * h0;
    l = l.divided_by(l.content());

    Polarization out;
    if (lat.dot(xi1, l) < 0) {
        xi1 = -xi1;
        xi2 = -xi2;
        w = -w;
        out.dualized = true;
    }
    for (std::size_t i = 0; i < budget; ++i) {
        DivisorClass h = Integer(i + 2) * l + w;
        if (!in_positive_cone(ctx, h) || lat.dot(h, w) >= 0) continue;
        const int s1 = sign(lat.dot(xi1, h));
        const int s2 = sign(lat.dot(xi2, h));
        if (s1 == 0 || s1 != s2) continue;
        out.h = std::move(h);
        return out;
    }
    fail(ErrorCode::BudgetExhausted,
         "no polarization found within " + std::to_string(budget) + " perturbations");
}

std::string to_string(ProvenanceKind k) {
    switch (k) {
        case ProvenanceKind::PellOrbit: return "pell-orbit";
        case ProvenanceKind::EllipticProduct: return "elliptic-product";
        case ProvenanceKind::Search: return "search";
    }
    return "?";
}

CounterexampleRecord make_record(const SurfaceContext& ctx, const TranslationTuple& tuple,
                                 Provenance provenance) {
    if (!verify_tuple(ctx, tuple)) {
        fail(ErrorCode::ContractViolation, "paper-discrepancy: tuple fails the translation identities");
    }
    const TuplePair pair = decomposition_from_tuple(ctx, tuple);
    CounterexampleRecord rec;
    rec.tuple = tuple;
    rec.v1 = pair.v1;
    rec.v2 = pair.v2;
    // The summand with positive a goes first.
    const Polarization pol = polarization_against(ctx, pair.v2, pair.v1);
    if (pol.dualized) {
        rec.v1 = dual(rec.v1);
        rec.v2 = dual(rec.v2);
    }
    rec.polarization = pol.h;
    rec.dualized = pol.dualized;
    rec.v = rec.v1 + rec.v2;
    rec.decomposition = {rec.v2, rec.v1, 1, 1};
    rec.provenance = std::move(provenance);
    if (!verify_decomposition(ctx, rec.v, rec.polarization, rec.decomposition)) {
        fail(ErrorCode::ContractViolation, "record for " + to_string(rec.v) +
                                               " fails verification against its polarization");
    }
    return rec;
}

namespace {

DivisorClass pair_class(Integer x, Integer y) {
    return DivisorClass(std::vector<Integer>{std::move(x), std::move(y)});
}

// Classes with sup-norm exactly s, in lexicographic order.
std::vector<DivisorClass> shell(std::size_t rank, long s) {
    std::vector<DivisorClass> out;
    DivisorClass x = DivisorClass::zero(rank);
    for (std::size_t i = 0; i < rank; ++i) x[i] = -s;
    for (;;) {
        Integer sup = 0;
        for (std::size_t i = 0; i < rank; ++i) sup = std::max<Integer>(sup, abs(x[i]));
        if (sup == s) out.push_back(x);
        std::size_t i = rank;
        bool more = false;
        while (i > 0) {
            --i;
            if (x[i] < s) {
                ++x[i];
                more = true;
                break;
            }
            x[i] = -s;
        }
        if (!more) return out;
    }
}

bool leading_positive(const DivisorClass& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0) return x[i] > 0;
    }
    return false;
}

// Basis vectors first, then shells; only classes with positive leading coordinate.
DivisorClass first_positive(const IntersectionLattice& lat) {
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        DivisorClass e = DivisorClass::unit(lat.rank(), i);
        if (lat.square(e) > 0) return e;
    }
    for (long s = 1; s <= 64; ++s) {
        for (const auto& x : shell(lat.rank(), s)) {
            if (leading_positive(x) && lat.square(x) > 0) return x;
        }
    }
    fail(ErrorCode::InvalidLattice, "no class of positive square found");
}

struct FormTuple {
    DivisorClass a;
    DivisorClass b;
    Integer r2;
    Provenance provenance;
};

// Pell stream for a form with n > 0; tuples in the form's own coordinates.
std::vector<FormTuple> normalized_stream(const BinaryEvenForm& form, std::size_t count) {
    const Integer& n = form.a;
    const Integer& k = form.b;
    const Integer& m = form.c;
    const Integer delta = form.delta();
    const Integer big_r = n * delta;
    const PellSolution unit = pell_fundamental(delta);
    const PellSolution unit_inv = PellSolution::unit1(unit.t(), -unit.u(), delta);
    const PellSolution base = PellSolution::general(0, 2 * n, delta, -4 * big_r * n);

    auto pullback = [&](const PellSolution& s) -> std::optional<std::pair<Integer, Integer>> {
        const Integer num = s.t() - k * s.u();
        if (!divides(2 * n, num)) return std::nullopt;
        return std::pair<Integer, Integer>{num / (2 * n), s.u()};
    };

    std::vector<FormTuple> out;
    PellSolution forward = base;
    PellSolution backward = base;
    std::size_t skipped = 0;
    const std::size_t budget = 256 + 16 * count;
    for (std::size_t j = 1; out.size() < count; ++j) {
        if (j > budget) fail(ErrorCode::BudgetExhausted, "Pell stream ran out of orbit budget");
        forward = pell_compose(forward, unit);
        backward = pell_compose(backward, unit_inv);
        const auto first = pullback(backward);
        const auto second = pullback(forward);
        if (!first || !second) {
            ++skipped;
            continue;
        }
        const auto& [x0, y0] = *first;
        Integer c = second->first;
        Integer d = second->second;
        // (x0 + Rc, y0 + Rd) has positive square iff this exceeds 1 + R^2.
        Integer bil = 2 * n * x0 * c + k * (y0 * c + x0 * d) + 2 * m * y0 * d;
        if (bil < 0) {
            c = -c;
            d = -d;
            bil = -bil;
        }
        if (bil <= 1 + big_r * big_r) continue;
        Provenance prov;
        prov.kind = ProvenanceKind::PellOrbit;
        prov.index = j;
        prov.skipped = skipped;
        out.push_back({pair_class(x0 + big_r * c, y0 + big_r * d), pair_class(c, d), big_r, prov});
    }
    return out;
}

// Any form with positive nonsquare Delta; tuples in the given coordinates.
std::vector<FormTuple> form_stream(const BinaryEvenForm& form, std::size_t count) {
    if (!std::holds_alternative<NonsquareDiscriminant>(classify(form))) {
        fail(ErrorCode::NoStream, "Delta = " + to_string(form.delta()) + " is not a positive nonsquare");
    }
    // New basis e1 = (p, q), e2 = (u, w) with Q(e1) > 0.
    Integer p = 1, q = 0, u = 0, w = 1;
    if (form.a <= 0) {
        if (form.c > 0) {
            p = 0, q = 1, u = 1, w = 0;
        } else {
            bool found = false;
            for (long s = 1; s <= 64 && !found; ++s) {
                for (const auto& x : shell(2, s)) {
                    if (gcd(x[0], x[1]) == 1 && form.value(x[0], x[1]) > 0) {
                        p = x[0];
                        q = x[1];
                        found = true;
                        break;
                    }
                }
            }
            Integer g, sp, sq;
            mpz_gcdext(g.get_mpz_t(), sp.get_mpz_t(), sq.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
            u = -sq;
            w = sp;
        }
    }
    const BinaryEvenForm local{form.value(p, q), form.pairing(p, q, u, w), form.value(u, w)};
    auto out = normalized_stream(local, count);
    auto back = [&](const DivisorClass& x) { return pair_class(x[0] * p + x[1] * u, x[0] * q + x[1] * w); };
    for (auto& t : out) {
        t.a = back(t.a);
        t.b = back(t.b);
    }
    return out;
}

std::vector<FormTuple> elliptic_tuples(const Integer& m, std::size_t count) {
    if (m < 2 || is_perfect_square(m)) {
        fail(ErrorCode::NoStream, "elliptic product stream needs a nonsquare m >= 2, got " + to_string(m));
    }
    const PellSolution unit = pell_fundamental(m);
    std::vector<FormTuple> out;
    PellSolution sol = unit;
    for (std::size_t j = 1; out.size() < count; ++j) {
        if (sol.u() > 1) {
            Provenance prov;
            prov.kind = ProvenanceKind::EllipticProduct;
            prov.index = out.size() + 1;
            prov.pell_t = sol.t();
            prov.pell_s = sol.u();
            out.push_back({pair_class(1, 0), pair_class(1 - sol.u(), sol.t()), 1, prov});
        }
        sol = pell_compose(sol, unit);
    }
    return out;
}

std::vector<CounterexampleRecord> assemble(const SurfaceContext& ctx,
                                           const std::vector<FormTuple>& tuples,
                                           const DivisorClass& p, const DivisorClass& q) {
    std::vector<CounterexampleRecord> out;
    out.reserve(tuples.size());
    for (const auto& t : tuples) {
        TranslationTuple tuple{t.a[0] * p + t.a[1] * q, t.b[0] * p + t.b[1] * q, 1, t.r2};
        out.push_back(make_record(ctx, tuple, t.provenance));
    }
    return out;
}

}  // namespace

SurfaceContext context_from_form(const BinaryEvenForm& form) {
    auto lattice = IntersectionLattice::create({{2 * form.a, form.b}, {form.b, 2 * form.c}}, {"H", "D"});
    DivisorClass ample = first_positive(lattice);
    return SurfaceContext::create(std::move(lattice), std::move(ample), ConeModel::UserAsserted);
}

std::vector<CounterexampleRecord> rank2_counterexample_stream(const BinaryEvenForm& form,
                                                              std::size_t count) {
    if (!std::holds_alternative<NonsquareDiscriminant>(classify(form))) {
        fail(ErrorCode::NoStream, "Delta = " + to_string(form.delta()) + " is not a positive nonsquare");
    }
    if (count == 0) return {};
    const SurfaceContext ctx = context_from_form(form);
    return assemble(ctx, form_stream(form, count), pair_class(1, 0), pair_class(0, 1));
}

std::vector<CounterexampleRecord> elliptic_product_stream(const Integer& m, std::size_t count) {
    auto tuples = elliptic_tuples(m, count);
    if (count == 0) return {};
    const SurfaceContext ctx = context_from_form({m, 0, -1});
    return assemble(ctx, tuples, pair_class(1, 0), pair_class(0, 1));
}

std::optional<std::pair<DivisorClass, DivisorClass>> find_nonsquare_sublattice(
    const SurfaceContext& ctx, const Integer& box) {
    const auto& lat = ctx.lattice;
    if (lat.rank() < 2 || box < 1) return std::nullopt;
    if (!box.fits_slong_p()) fail(ErrorCode::OutOfScope, "box too large");
    std::vector<DivisorClass> seen;
    for (long s = 1; s <= box.get_si(); ++s) {
        for (auto& q : shell(lat.rank(), s)) {
            if (!leading_positive(q)) continue;
            for (const auto& p : seen) {
                const Integer pq = lat.dot(p, q);
                const Integer delta = pq * pq - lat.square(p) * lat.square(q);
                if (delta > 0 && !is_perfect_square(delta)) {
                    return std::pair<DivisorClass, DivisorClass>{p, q};
                }
            }
            seen.push_back(std::move(q));
        }
    }
    return std::nullopt;
}

std::vector<CounterexampleRecord> counterexamples_for_surface(const SurfaceContext& ctx,
                                                              std::size_t count,
                                                              const Integer& box) {
    const auto& lat = ctx.lattice;
    if (lat.rank() == 1) {
        fail(ErrorCode::NoStream, "Picard rank one lattices carry no counterexamples");
    }
    if (lat.rank() == 2) {
        const DivisorClass e1 = pair_class(1, 0);
        const DivisorClass e2 = pair_class(0, 1);
        const Integer m = lat.gram(0, 0) / 2;
        if (lat.gram(0, 1) == 0 && lat.gram(1, 1) == -2 && m >= 2 && !is_perfect_square(m)) {
            return assemble(ctx, elliptic_tuples(m, count), e1, e2);
        }
        return assemble(ctx, form_stream(span_form(lat, e1, e2), count), e1, e2);
    }
    const auto span = find_nonsquare_sublattice(ctx, box);
    if (!span) {
        fail(ErrorCode::NoStream, "no nonsquare rank-2 sublattice within box " + to_string(box));
    }
    return assemble(ctx, form_stream(span_form(lat, span->first, span->second), count),
                    span->first, span->second);
}

std::string to_string(UlrichConclusion c) {
    switch (c) {
        case UlrichConclusion::UlrichGeneric: return "UlrichGeneric";
        case UlrichConclusion::NoUlrichViaTheorem: return "NoUlrichViaTheorem";
        case UlrichConclusion::NotCandidate: return "NotCandidate";
    }
    return "?";
}

UlrichReport ulrich_classify(const SurfaceContext& ctx, const MukaiVector& v, const DivisorClass& h,
                             const SearchBound& bound) {
    const auto& lat = ctx.lattice;
    UlrichReport report;
    report.untwisted = twist(lat, v, -h);
    const MukaiVector& w = report.untwisted;
    report.conditions.rank_at_least_two = w.r >= 2;
    report.conditions.a_part_zero = w.a == 0;
    report.conditions.slope_condition = 2 * lat.dot(w.xi, h) == w.r * lat.square(h);
    report.conditions.xi_square_nonnegative = lat.square(w.xi) >= 0;
    const auto& c = report.conditions;
    report.candidate_ok =
        c.rank_at_least_two && c.a_part_zero && c.slope_condition && c.xi_square_nonnegative;
    if (!report.candidate_ok) return report;

    // E(-H) and E(-2H) must both have no cohomology.
    report.first = decide(ctx, w, h, bound);
    report.second = decide(ctx, twist(lat, w, -h), h, bound);
    report.decisive = report.first->decisive && report.second->decisive;
    for (const auto* verdict : {&*report.first, &*report.second}) {
        if (verdict->status != VerdictStatus::Fails) continue;
        report.conclusion = UlrichConclusion::NoUlrichViaTheorem;
        if (const auto* dec = std::get_if<IsotropicDecomposition>(&verdict->certificate)) {
            report.decomposition_found = *dec;
        }
        return report;
    }
    const bool both_hold = report.first->status == VerdictStatus::Holds &&
                           report.second->status == VerdictStatus::Holds;
    // An undetermined search still yields UlrichGeneric, qualified by the box.
    report.conclusion = UlrichConclusion::UlrichGeneric;
    if (!both_hold) report.decisive = false;
    return report;
}

std::optional<MukaiVector> ulrich_enumerate_rank1(const Integer& h_square, const Integer& r,
                                                  const Integer& m) {
    if (r < 2) fail(ErrorCode::PreconditionViolation, "Ulrich enumeration needs r >= 2");
    if (m < 1) fail(ErrorCode::PreconditionViolation, "Ulrich enumeration needs m >= 1");
    if (h_square <= 0) fail(ErrorCode::InvalidLattice, "H^2 must be positive");
    const Integer rm = r * m;
    if (!divides(Integer(2), rm)) return std::nullopt;
    return MukaiVector{r, DivisorClass(std::vector<Integer>{3 * rm / 2}), rm * m * h_square};
}

}  // namespace mukai
