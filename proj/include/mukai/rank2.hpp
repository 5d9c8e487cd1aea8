#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "mukai/arith.hpp"
#include "mukai/integer.hpp"

namespace mukai {

/// Even binary form with Gram matrix [[2a, b], [b, 2c]], i.e. the quadratic
/// form (p, q) -> a p^2 + b p q + c q^2 (half the lattice square).
struct BinaryEvenForm {
    Integer a;
    Integer b;
    Integer c;

    /// d(L) = 4ac - b^2, the Gram determinant.
    Integer discriminant() const { return 4 * a * c - b * b; }
    /// Delta = -d(L) = b^2 - 4ac.
    Integer delta() const { return b * b - 4 * a * c; }
    /// a p^2 + b p q + c q^2
    Integer value(const Integer& p, const Integer& q) const { return a * p * p + b * p * q + c * q * q; }
    /// Lattice inner product of (p1, q1) and (p2, q2).
    Integer pairing(const Integer& p1, const Integer& q1, const Integer& p2, const Integer& q2) const;

    friend bool operator==(const BinaryEvenForm&, const BinaryEvenForm&) = default;
};

/// Builds a form from Gram entries "2a, b, 2c"; throws InvalidInput when a
/// diagonal entry is odd.
BinaryEvenForm form_from_gram(const Integer& g11, const Integer& g12, const Integer& g22);

struct SquareDiscriminant {
    Integer root;
};
struct NonsquareDiscriminant {};
/// Delta < 0: a definite form, outside signature (1, 1).
struct DefiniteDiscriminant {};

using DiscriminantClass = std::variant<SquareDiscriminant, NonsquareDiscriminant, DefiniteDiscriminant>;

DiscriminantClass classify(const BinaryEvenForm& form);

/// e1 -> s f + x g, e2 -> t f + y g inside U = Zf + Zg (f^2 = g^2 = 0, f.g = 1).
struct UEmbedding {
    Integer s;
    Integer x;
    Integer t;
    Integer y;

    friend bool operator==(const UEmbedding&, const UEmbedding&) = default;
};

/// True when the images reproduce the Gram matrix: 2sx = 2a, sy + tx = b, 2ty = 2c.
bool preserves_gram(const UEmbedding& embedding, const BinaryEvenForm& form);

/// Isometric embedding into U for square Delta; throws NoEmbedding otherwise.
UEmbedding embed_into_u(const BinaryEvenForm& form);

/// Primitive (p, q) != 0 with a p^2 + b p q + c q^2 = 0, if one exists.
std::optional<std::pair<Integer, Integer>> isotropic_vector(const BinaryEvenForm& form);

/// 2x2 integer matrix acting on coordinate columns.
struct Isometry2x2 {
    Integer m11;
    Integer m12;
    Integer m21;
    Integer m22;

    static Isometry2x2 identity() { return {1, 0, 0, 1}; }

    Integer det() const { return m11 * m22 - m12 * m21; }
    Integer trace() const { return m11 + m22; }
    std::pair<Integer, Integer> apply(const Integer& p, const Integer& q) const {
        return {m11 * p + m12 * q, m21 * p + m22 * q};
    }
    bool is_identity_mod(const Integer& r) const;
    /// M^T Q M == Q
    bool preserves(const BinaryEvenForm& form) const;

    friend Isometry2x2 operator*(const Isometry2x2& x, const Isometry2x2& y);
    friend bool operator==(const Isometry2x2&, const Isometry2x2&) = default;
};

Isometry2x2 power(const Isometry2x2& g, const Integer& exponent);

/// g = (t I + u A) / 2 with A = [[-b, -2c], [2a, b]] and (t, u) the minimal
/// solution of t^2 - Delta u^2 = 4. Throws NoIsometry unless Delta is a
/// positive nonsquare.
Isometry2x2 isometry_from_pell(const BinaryEvenForm& form);

struct StabilizedIsometry {
    Isometry2x2 isometry;
    Integer exponent;
};

/// Smallest N >= 1 with g^N = I mod r, returned as (g^N, N). The power is
/// doubled when g^N has negative trace, so the expanding eigenvalue is positive.
StabilizedIsometry stabilize_mod(const Isometry2x2& g, const Integer& r);

std::string to_string(const BinaryEvenForm& form);
std::string to_string(const Isometry2x2& g);

}  // namespace mukai
