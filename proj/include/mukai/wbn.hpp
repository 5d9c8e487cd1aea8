#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mukai/decomposition.hpp"
#include "mukai/lattice.hpp"

namespace mukai {

struct CohomologyProfile {
    Integer h0;
    Integer h1;
    Integer h2;

    Integer euler() const { return h0 - h1 + h2; }
    friend bool operator==(const CohomologyProfile&, const CohomologyProfile&) = default;
};

std::string to_string(const CohomologyProfile& p);

enum class VerdictStatus { Holds, Fails, Undetermined };

enum class ReasonTag {
    SemiHomogeneous,
    NonPrimitive,
    SquareBound,
    RankOneNS,
    SquareDiscriminantNS,
    NoDecompositionInBox,
    IsotropicDecomposition,
    TwistedRankRForm,
    SpecialFormExcluded,
    RankOneForm,
    GenericLineBundleCase,
    OrthogonalXi,
};

std::string to_string(VerdictStatus s);
std::string to_string(ReasonTag t);

using Certificate = std::variant<std::monostate, IsotropicDecomposition, TwistedRankR, RankOne>;

struct WbnVerdict {
    VerdictStatus status = VerdictStatus::Undetermined;
    ReasonTag reason = ReasonTag::NoDecompositionInBox;
    /// True when the conclusion follows from a theorem rather than a bounded search.
    bool decisive = false;
    /// Absent for Undetermined.
    std::optional<CohomologyProfile> profile;
    Certificate certificate;
    /// The search box, when a bounded search was involved.
    std::optional<Integer> box;
    /// The certificate was obtained on the dual vector and mapped back.
    bool dualized = false;
    std::vector<std::string> warnings;
};

/// Profile table for isotropic v (r > 0, v^2 = 0).
CohomologyProfile semi_homogeneous_cohomology(const SurfaceContext& ctx, const MukaiVector& v,
                                              const DivisorClass& h);

/// At most one nonzero group: chi <= 0 gives (0, -chi, 0); chi > 0 puts chi
/// in degree 0 or 2 according to the sign of xi . H.
CohomologyProfile generic_profile(const Integer& chi, int sign_of_xi_h);

WbnVerdict decide(const SurfaceContext& ctx, const MukaiVector& v, const DivisorClass& h,
                  const SearchBound& bound = {});

/// Every verdict with a profile is checked for h0 - h1 + h2 = a before it is
/// returned. These counters cover the whole process lifetime.
struct VerdictAudit {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
};

VerdictAudit verdict_audit();

}  // namespace mukai
