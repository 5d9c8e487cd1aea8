#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mukai/integer.hpp"

namespace mukai {

/// Coordinates of a class in NS(X) with respect to the lattice's fixed basis.
class DivisorClass {
public:
    DivisorClass() = default;
    explicit DivisorClass(std::vector<Integer> coords) : coords_(std::move(coords)) {}
    DivisorClass(std::initializer_list<long> coords);

    static DivisorClass zero(std::size_t rank);
    static DivisorClass unit(std::size_t rank, std::size_t index);

    std::size_t size() const { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    Integer& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Integer>& coords() const { return coords_; }

    bool is_zero() const;
    /// gcd of the coordinates (0 for the zero class).
    Integer content() const;

    DivisorClass& operator+=(const DivisorClass& other);
    DivisorClass& operator-=(const DivisorClass& other);
    DivisorClass& operator*=(const Integer& k);

    friend DivisorClass operator+(DivisorClass x, const DivisorClass& y) { return x += y; }
    friend DivisorClass operator-(DivisorClass x, const DivisorClass& y) { return x -= y; }
    friend DivisorClass operator*(const Integer& k, DivisorClass x) { return x *= k; }
    friend DivisorClass operator-(DivisorClass x) { return x *= Integer(-1); }

    /// Exact coordinatewise division; throws DivisibilityFailure otherwise.
    DivisorClass divided_by(const Integer& k) const;
    bool divisible_by(const Integer& k) const;

    friend bool operator==(const DivisorClass& x, const DivisorClass& y) {
        return x.coords_ == y.coords_;
    }
    /// Lexicographic order on coordinates; used for canonical output ordering.
    friend bool operator<(const DivisorClass& x, const DivisorClass& y) {
        return x.coords_ < y.coords_;
    }

private:
    std::vector<Integer> coords_;
};

std::string to_string(const DivisorClass& x);

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};

/// Sylvester inertia of a symmetric rational matrix, computed by exact
/// congruence diagonalization over Q.
Inertia inertia(const std::vector<std::vector<Integer>>& gram);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const std::vector<std::vector<Integer>>& matrix);

/// Integer Gram matrix of NS(X): even, symmetric, signature (1, rank - 1).
class IntersectionLattice {
public:
    static constexpr std::size_t kMaxRank = 4;

    /// Validates the Gram matrix; throws InvalidLattice on any violation.
    static IntersectionLattice create(std::vector<std::vector<Integer>> gram,
                                      std::vector<std::string> labels = {});

    std::size_t rank() const { return gram_.size(); }
    const Integer& gram(std::size_t i, std::size_t j) const { return gram_[i][j]; }
    const std::vector<std::vector<Integer>>& gram() const { return gram_; }
    const std::vector<std::string>& labels() const { return labels_; }
    /// det of the Gram matrix, d(NS).
    const Integer& discriminant() const { return discriminant_; }

    Integer dot(const DivisorClass& x, const DivisorClass& y) const;
    Integer square(const DivisorClass& x) const { return dot(x, x); }
    void check(const DivisorClass& x) const;

    DivisorClass zero() const { return DivisorClass::zero(rank()); }

private:
    IntersectionLattice() = default;

    std::vector<std::vector<Integer>> gram_;
    std::vector<std::string> labels_;
    Integer discriminant_;
};

enum class ConeModel { RoundCone, UserAsserted };

/// A lattice together with a reference ample class H0. The positive cone
/// containing H0 stands in for the ample cone.
struct SurfaceContext {
    IntersectionLattice lattice;
    DivisorClass ample_ref;
    ConeModel cone_model = ConeModel::UserAsserted;

    static SurfaceContext create(IntersectionLattice lattice, DivisorClass ample_ref,
                                 ConeModel cone_model = ConeModel::UserAsserted);

    std::size_t rank() const { return lattice.rank(); }
};

/// (r, xi, a) in Z + NS(X) + Z.
struct MukaiVector {
    Integer r;
    DivisorClass xi;
    Integer a;

    friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

MukaiVector operator+(const MukaiVector& v, const MukaiVector& w);
MukaiVector operator-(const MukaiVector& v, const MukaiVector& w);
MukaiVector operator*(const Integer& k, const MukaiVector& v);

std::string to_string(const MukaiVector& v);

Integer divisor_dot(const IntersectionLattice& lattice, const DivisorClass& x,
                    const DivisorClass& y);

/// <v, w> = xi_v . xi_w - r_v a_w - r_w a_v
Integer mukai_pairing(const IntersectionLattice& lattice, const MukaiVector& v,
                      const MukaiVector& w);

Integer square(const IntersectionLattice& lattice, const MukaiVector& v);

inline const Integer& euler_char(const MukaiVector& v) { return v.a; }

/// v . e^D = (r, xi + rD, a + xi.D + r D^2 / 2)
MukaiVector twist(const IntersectionLattice& lattice, const MukaiVector& v,
                  const DivisorClass& d);

MukaiVector dual(const MukaiVector& v);

bool is_primitive(const MukaiVector& v);

/// v = (r, 0, -1) e^eta with r >= 2.
struct TwistedRankR {
    DivisorClass eta;
    friend bool operator==(const TwistedRankR&, const TwistedRankR&) = default;
};

/// v = (1, 0, -l) e^eta. l may be negative; callers check the sign they need.
struct RankOne {
    DivisorClass eta;
    Integer l;
    friend bool operator==(const RankOne&, const RankOne&) = default;
};

using SpecialForm = std::variant<TwistedRankR, RankOne>;

/// Throws OutOfScope for r <= 0.
std::optional<SpecialForm> special_form(const IntersectionLattice& lattice,
                                        const MukaiVector& v);

/// D^2 > 0 and D . H0 > 0.
bool in_positive_cone(const SurfaceContext& ctx, const DivisorClass& d);

}  // namespace mukai
