#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mukai/decomposition.hpp"
#include "mukai/lattice.hpp"
#include "mukai/rank2.hpp"
#include "mukai/wbn.hpp"

namespace mukai {

/// v1^2 >= 0, (v - v1)^2 >= 0, <v1, v - v1> > 0 and v1^2 v^2 < <v1, v>^2.
bool is_wall(const SurfaceContext& ctx, const MukaiVector& v1, const MukaiVector& v);

/// is_wall plus v1^2 = 0 and <v, v1> = 1.
bool is_totally_semistable_candidate(const SurfaceContext& ctx, const MukaiVector& v1,
                                     const MukaiVector& v);

struct WallOrbit {
    MukaiVector v;
    MukaiVector v1;
    DivisorClass twist;
    /// Basis (P, Q) of the rank-2 sublattice carrying the isometry.
    DivisorClass basis_p;
    DivisorClass basis_q;
    BinaryEvenForm form;
    /// Pell isometry stabilized mod r, in (P, Q) coordinates.
    Isometry2x2 isometry;
    Integer exponent;
    /// w_1, ..., w_count.
    std::vector<MukaiVector> elements;
};

/// Orbit w_n = (r1, eta_n, b_n) with eta_n = xi1 + (phi^n(w) - w) / r for
/// w = r xi1 - r1 xi. Both xi + rD and w must lie in span(P, Q), and the
/// span must have positive nonsquare Delta.
WallOrbit wall_orbit(const SurfaceContext& ctx, const MukaiVector& v, const MukaiVector& v1,
                     const DivisorClass& d, const DivisorClass& p, const DivisorClass& q,
                     std::size_t count);

struct Polarization {
    DivisorClass h;
    /// The summands had to be dualized so that xi_i . L > 0.
    bool dualized = false;
};

/// Integral positive-cone H' with H' . w < 0 for w = r2 xi1 - r1 xi2, and
/// (xi_i . H')(xi . H') > 0. Starts from the primitive L with L . w = 0
/// and tries H' = kL + w for k = 2, ..., budget + 1.
inline constexpr std::size_t kPolarizationBudget = 64;
Polarization polarization_against(const SurfaceContext& ctx, const MukaiVector& v1,
                                  const MukaiVector& v2, std::size_t budget = kPolarizationBudget);

enum class ProvenanceKind { PellOrbit, EllipticProduct, Search };

struct Provenance {
    ProvenanceKind kind = ProvenanceKind::Search;
    std::size_t index = 0;
    /// Pell pullbacks skipped because x = (u - k v) / 2n was not integral.
    std::size_t skipped = 0;
    /// (t, s) for the elliptic product stream.
    Integer pell_t;
    Integer pell_s;
};

std::string to_string(ProvenanceKind k);

struct CounterexampleRecord {
    TranslationTuple tuple;
    /// Summands in tuple numbering: v1 = (r1, B, .) with a < 0, v2 = (r2, A, .).
    /// When `dualized` is set they are the duals of the tuple's vectors.
    MukaiVector v1;
    MukaiVector v2;
    /// v = v1 + v2 (the ell = 1 member).
    MukaiVector v;
    /// The same data as an isotropic decomposition of v, checked against polarization.
    IsotropicDecomposition decomposition;
    DivisorClass polarization;
    bool dualized = false;
    Provenance provenance;
};

/// Builds, polarizes and verifies a record from a tuple; throws
/// ContractViolation if any check fails.
CounterexampleRecord make_record(const SurfaceContext& ctx, const TranslationTuple& tuple,
                                 Provenance provenance);

/// Lattice with Gram [[2n, k], [k, 2m]] from a form (a, b, c) = (n, k, m).
SurfaceContext context_from_form(const BinaryEvenForm& form);

/// Pell-driven stream on span(H, D) with H^2 = 2n, H.D = k, D^2 = 2m.
/// Records use r1 = 1, r2 = R = n Delta (after normalizing n > 0).
std::vector<CounterexampleRecord> rank2_counterexample_stream(const BinaryEvenForm& form,
                                                              std::size_t count);

/// Lattice [[2m, 0], [0, -2]]: tuples (H, (1 - s)H + tD, 1, 1) for Pell
/// solutions t^2 - m s^2 = 1 with s > 1.
std::vector<CounterexampleRecord> elliptic_product_stream(const Integer& m, std::size_t count);

/// First pair (P, Q) with coordinates in the box whose span has positive
/// nonsquare Delta. Candidates have positive leading coordinate; pairs are
/// ordered by the position of Q in the list sorted by sup-norm, then
/// lexicographically.
std::optional<std::pair<DivisorClass, DivisorClass>> find_nonsquare_sublattice(
    const SurfaceContext& ctx, const Integer& box);

/// Chooses the stream that fits the lattice and maps records back to it.
std::vector<CounterexampleRecord> counterexamples_for_surface(const SurfaceContext& ctx,
                                                              std::size_t count,
                                                              const Integer& box);

enum class UlrichConclusion { UlrichGeneric, NoUlrichViaTheorem, NotCandidate };

std::string to_string(UlrichConclusion c);

struct UlrichConditions {
    bool rank_at_least_two = false;
    bool a_part_zero = false;
    bool slope_condition = false;
    bool xi_square_nonnegative = false;
};

struct UlrichReport {
    bool candidate_ok = false;
    UlrichConditions conditions;
    /// v e^{-H}.
    MukaiVector untwisted;
    std::optional<IsotropicDecomposition> decomposition_found;
    /// Verdicts for v e^{-H} and v e^{-2H}, when the candidate conditions hold.
    std::optional<WbnVerdict> first;
    std::optional<WbnVerdict> second;
    bool decisive = false;
    UlrichConclusion conclusion = UlrichConclusion::NotCandidate;
};

UlrichReport ulrich_classify(const SurfaceContext& ctx, const MukaiVector& v, const DivisorClass& h,
                             const SearchBound& bound = {});

/// On NS = ZH with H^2 = h_square, polarization mH: the vector
/// (r, (3rm/2)H, r m^2 H^2) when 2 | rm. Requires r >= 2 and m >= 1.
std::optional<MukaiVector> ulrich_enumerate_rank1(const Integer& h_square, const Integer& r,
                                                  const Integer& m);

}  // namespace mukai
