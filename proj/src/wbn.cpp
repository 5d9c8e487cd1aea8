#include "mukai/wbn.hpp"

#include <algorithm>
#include <atomic>

#include "mukai/error.hpp"
#include "mukai/rank2.hpp"

namespace mukai {

namespace {

std::atomic<std::uint64_t> g_checked{0};
std::atomic<std::uint64_t> g_violations{0};

WbnVerdict audited(WbnVerdict verdict, const MukaiVector& v) {
    if (!verdict.profile) return verdict;
    const CohomologyProfile& p = *verdict.profile;
    ++g_checked;
    bool ok = p.euler() == v.a && p.h0 >= 0 && p.h1 >= 0 && p.h2 >= 0;
    if (verdict.status == VerdictStatus::Holds) {
        ok = ok && (p.h0 != 0) + (p.h1 != 0) + (p.h2 != 0) <= 1;
    }
    if (!ok) {
        ++g_violations;
        fail(ErrorCode::ContractViolation,
             "profile " + to_string(p) + " does not match chi = " + to_string(v.a));
    }
    return verdict;
}

WbnVerdict holds(ReasonTag reason, CohomologyProfile profile, bool decisive = true) {
    WbnVerdict out;
    out.status = VerdictStatus::Holds;
    out.reason = reason;
    out.decisive = decisive;
    out.profile = std::move(profile);
    return out;
}

}  // namespace

std::string to_string(const CohomologyProfile& p) {
    return "(" + to_string(p.h0) + ", " + to_string(p.h1) + ", " + to_string(p.h2) + ")";
}

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Holds: return "Holds";
        case VerdictStatus::Fails: return "Fails";
        case VerdictStatus::Undetermined: return "Undetermined";
    }
    return "?";
}

std::string to_string(ReasonTag t) {
    switch (t) {
        case ReasonTag::SemiHomogeneous: return "semi-homogeneous";
        case ReasonTag::NonPrimitive: return "non-primitive";
        case ReasonTag::SquareBound: return "square-bound";
        case ReasonTag::RankOneNS: return "rank-one-NS";
        case ReasonTag::SquareDiscriminantNS: return "square-discriminant-NS";
        case ReasonTag::NoDecompositionInBox: return "no-decomposition-in-box";
        case ReasonTag::IsotropicDecomposition: return "isotropic-decomposition";
        case ReasonTag::TwistedRankRForm: return "twisted-rank-r-form";
        case ReasonTag::SpecialFormExcluded: return "special-form-excluded";
        case ReasonTag::RankOneForm: return "rank-one-form";
        case ReasonTag::GenericLineBundleCase: return "generic-line-bundle-case";
        case ReasonTag::OrthogonalXi: return "xi-orthogonal-to-H";
    }
    return "?";
}

VerdictAudit verdict_audit() { return {g_checked.load(), g_violations.load()}; }

CohomologyProfile semi_homogeneous_cohomology(const SurfaceContext& ctx, const MukaiVector& v,
                                              const DivisorClass& h) {
    const auto& lat = ctx.lattice;
    if (v.r <= 0) fail(ErrorCode::OutOfScope, "semi-homogeneous table needs r > 0");
    if (square(lat, v) != 0) fail(ErrorCode::PreconditionViolation, "v is not isotropic");
    const Integer xi_square = lat.square(v.xi);
    if (xi_square > 0) {
        const int s = sign(lat.dot(v.xi, h));
        if (s > 0) return {v.a, 0, 0};
        if (s < 0) return {0, 0, v.a};
        fail(ErrorCode::InconsistentInput, "xi^2 > 0 with xi . H = 0 contradicts Hodge index");
    }
    if (xi_square < 0) return {0, -v.a, 0};
    // xi^2 = 0 forces a = 0; the general member has no cohomology.
    return {0, 0, 0};
}

CohomologyProfile generic_profile(const Integer& chi, int sign_of_xi_h) {
    if (chi <= 0) return {0, -chi, 0};
    if (sign_of_xi_h > 0) return {chi, 0, 0};
    if (sign_of_xi_h < 0) return {0, 0, chi};
    fail(ErrorCode::InconsistentInput, "chi > 0 with xi . H = 0");
}

namespace {

bool decisive_lattice(const IntersectionLattice& lat, ReasonTag& reason) {
    if (lat.rank() == 1) {
        reason = ReasonTag::RankOneNS;
        return true;
    }
    if (lat.rank() == 2 && is_perfect_square(-lat.discriminant())) {
        reason = ReasonTag::SquareDiscriminantNS;
        return true;
    }
    return false;
}

// Steps for xi . H > 0 once v is known primitive and non-isotropic.
WbnVerdict decide_positive(const SurfaceContext& ctx, const MukaiVector& v, const DivisorClass& h,
                           const SearchBound& bound) {
    const auto& lat = ctx.lattice;
    const Integer v_square = square(lat, v);
    if (v_square + 2 > 2 * v.r) return holds(ReasonTag::SquareBound, generic_profile(v.a, 1));

    auto found = search_decompositions(ctx, v, h, bound);
    if (!found.empty()) {
        // Prefer a certificate with H on the failing side of its wall,
        // H . (r2 xi1 - r1 xi2) < 0; otherwise the first in canonical order.
        auto side = [&](const IsotropicDecomposition& d) {
            return lat.dot(h, d.v2.r * d.v1.xi - d.v1.r * d.v2.xi);
        };
        auto pick = std::find_if(found.begin(), found.end(),
                                 [&](const IsotropicDecomposition& d) { return side(d) < 0; });
        const IsotropicDecomposition& dec = pick != found.end() ? *pick : found.front();
        WbnVerdict out;
        out.status = VerdictStatus::Fails;
        out.reason = ReasonTag::IsotropicDecomposition;
        out.decisive = true;
        out.profile = CohomologyProfile{dec.l1 * dec.v1.a, -dec.l2 * dec.v2.a, 0};
        out.box = bound.coord_box;
        if (side(dec) == 0) out.warnings.push_back("non-generic-polarization");
        out.certificate = dec;
        return out;
    }

    ReasonTag reason = ReasonTag::NoDecompositionInBox;
    if (decisive_lattice(lat, reason)) return holds(reason, generic_profile(v.a, 1));
    if (bound.coord_box < SearchBound::kDefaultBox) {
        WbnVerdict out;
        out.status = VerdictStatus::Undetermined;
        out.reason = ReasonTag::NoDecompositionInBox;
        out.box = bound.coord_box;
        return out;
    }
    WbnVerdict out = holds(ReasonTag::NoDecompositionInBox, generic_profile(v.a, 1), false);
    out.box = bound.coord_box;
    return out;
}

}  // namespace

WbnVerdict decide(const SurfaceContext& ctx, const MukaiVector& v, const DivisorClass& h,
                  const SearchBound& bound) {
    const auto& lat = ctx.lattice;
    lat.check(v.xi);
    lat.check(h);
    if (v.r <= 0) fail(ErrorCode::OutOfScope, "weak Brill-Noether oracle needs r > 0");
    const Integer v_square = square(lat, v);
    if (v_square < 0) fail(ErrorCode::NoSemistableSheaf, "v^2 = " + to_string(v_square) + " < 0");
    if (!divides(Integer(2), v_square)) fail(ErrorCode::InconsistentInput, "v^2 is odd");

    if (v_square == 0) {
        return audited(holds(ReasonTag::SemiHomogeneous, semi_homogeneous_cohomology(ctx, v, h)), v);
    }
    const Integer xi_h = lat.dot(v.xi, h);
    const int s = sign(xi_h);
    if (!is_primitive(v)) return audited(holds(ReasonTag::NonPrimitive, generic_profile(v.a, s)), v);
    if (s == 0) return audited(holds(ReasonTag::OrthogonalXi, {0, -v.a, 0}), v);
    if (s > 0) return audited(decide_positive(ctx, v, h, bound), v);

    // xi . H < 0
    const auto special = special_form(lat, v);
    if (special) {
        if (const auto* one = std::get_if<RankOne>(&*special)) {
            const Integer xi_square = lat.square(v.xi);
            if (xi_square > 0 && one->l > 0) {
                WbnVerdict out;
                out.status = VerdictStatus::Fails;
                out.reason = ReasonTag::RankOneForm;
                out.decisive = true;
                const Integer half = xi_square / 2;
                out.profile = CohomologyProfile{0, half - v.a, half};
                out.certificate = *one;
                return audited(out, v);
            }
            if (xi_square > 0) return audited(holds(ReasonTag::GenericLineBundleCase, {0, 0, v.a}), v);
            return audited(holds(ReasonTag::GenericLineBundleCase, generic_profile(v.a, s)), v);
        }
        const auto& twisted = std::get<TwistedRankR>(*special);
        if (lat.dot(twisted.eta, h) < 0 && lat.square(twisted.eta) > 0) {
            WbnVerdict out;
            out.status = VerdictStatus::Fails;
            out.reason = ReasonTag::TwistedRankRForm;
            out.decisive = true;
            out.profile = CohomologyProfile{0, 1, v.a + 1};
            out.certificate = twisted;
            return audited(out, v);
        }
        return audited(holds(ReasonTag::SpecialFormExcluded, generic_profile(v.a, s)), v);
    }

    // Serre duality: work with the dual vector, whose xi . H is positive.
    WbnVerdict out = decide_positive(ctx, dual(v), h, bound);
    out.dualized = true;
    if (out.profile) {
        const CohomologyProfile p = *out.profile;
        out.profile = CohomologyProfile{p.h2, p.h1, p.h0};
    }
    if (auto* dec = std::get_if<IsotropicDecomposition>(&out.certificate)) {
        dec->v1 = dual(dec->v1);
        dec->v2 = dual(dec->v2);
    }
    return audited(out, v);
}

}  // namespace mukai
