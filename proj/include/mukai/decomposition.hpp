#pragma once

#include <vector>

#include "mukai/lattice.hpp"

namespace mukai {

/// v = l1 v1 + l2 v2 with v1^2 = v2^2 = 0, <v1, v2> = 1, r_i > 0, a1 > 0 > a2,
/// (xi_i . H)(xi . H) > 0 and {l1, l2} = {v^2 / 2, 1}.
struct IsotropicDecomposition {
    MukaiVector v1;
    MukaiVector v2;
    Integer l1;
    Integer l2;

    friend bool operator==(const IsotropicDecomposition&, const IsotropicDecomposition&) = default;
};

/// Canonical order: (l1, r1, xi1 coordinates).
bool canonical_less(const IsotropicDecomposition& x, const IsotropicDecomposition& y);

/// NS-level form of a decomposition. r1 and B belong to the summand with
/// negative a, r2 and A to the one with positive a.
struct TranslationTuple {
    DivisorClass A;
    DivisorClass B;
    Integer r1;
    Integer r2;

    friend bool operator==(const TranslationTuple&, const TranslationTuple&) = default;
};

struct SearchBound {
    static constexpr long kDefaultBox = 10;
    static constexpr long kDefaultRankCap = 4;

    /// Sup-norm bound on the searched divisor coordinates.
    Integer coord_box = kDefaultBox;
    /// Upper bound on r1, r2 for tuple searches.
    Integer rank_cap = kDefaultRankCap;
};

bool verify_decomposition(const SurfaceContext& ctx, const MukaiVector& v, const DivisorClass& h,
                          const IsotropicDecomposition& dec);

/// All decompositions of v whose first isotropic summand has coordinates
/// inside the box, in canonical order.
std::vector<IsotropicDecomposition> search_decompositions(const SurfaceContext& ctx,
                                                          const MukaiVector& v,
                                                          const DivisorClass& h,
                                                          const SearchBound& bound = {});

TranslationTuple tuple_from_decomposition(const IsotropicDecomposition& dec);

/// v1 = (r1, B, B^2 / 2r1) (negative a) and v2 = (r2, A, A^2 / 2r2).
struct TuplePair {
    MukaiVector v1;
    MukaiVector v2;
};

TuplePair decomposition_from_tuple(const SurfaceContext& ctx, const TranslationTuple& t);

/// A^2 > 0, B^2 < 0, 2r2 | A^2, 2r1 | B^2, (r1 A - r2 B)^2 = -2 r1 r2.
bool verify_tuple(const SurfaceContext& ctx, const TranslationTuple& t);

/// Exhaustive over A, B in the box and 1 <= r1, r2 <= rank_cap. Ordered by
/// (r1, r2, A, B).
std::vector<TranslationTuple> search_tuples(const SurfaceContext& ctx, const SearchBound& bound);

/// Plain enumeration over (r1, xi1, a1) in machine integers, without the
/// narrowing used by search_decompositions. Meant as a cross-check.
std::vector<IsotropicDecomposition> brute_force_oracle(const SurfaceContext& ctx,
                                                       const MukaiVector& v,
                                                       const DivisorClass& h, long box);

}  // namespace mukai
