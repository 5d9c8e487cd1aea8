#include "mukai/lattice.hpp"

#include <sstream>
#include <utility>

#include "mukai/error.hpp"

namespace mukai {

DivisorClass::DivisorClass(std::initializer_list<long> coords) {
    coords_.reserve(coords.size());
    for (long c : coords) coords_.emplace_back(c);
}

DivisorClass DivisorClass::zero(std::size_t rank) {
    return DivisorClass(std::vector<Integer>(rank, Integer(0)));
}

DivisorClass DivisorClass::unit(std::size_t rank, std::size_t index) {
    DivisorClass e = zero(rank);
    e.coords_.at(index) = 1;
    return e;
}

bool DivisorClass::is_zero() const {
    for (const auto& c : coords_) {
        if (c != 0) return false;
    }
    return true;
}

Integer DivisorClass::content() const {
    Integer g = 0;
    for (const auto& c : coords_) g = gcd(g, c);
    return g;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
    if (other.size() != size()) fail(ErrorCode::DimensionMismatch, "divisor classes of different rank");
    for (std::size_t i = 0; i < size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
    if (other.size() != size()) fail(ErrorCode::DimensionMismatch, "divisor classes of different rank");
    for (std::size_t i = 0; i < size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

DivisorClass& DivisorClass::operator*=(const Integer& k) {
    for (auto& c : coords_) c *= k;
    return *this;
}

bool DivisorClass::divisible_by(const Integer& k) const {
    for (const auto& c : coords_) {
        if (!divides(k, c)) return false;
    }
    return true;
}

DivisorClass DivisorClass::divided_by(const Integer& k) const {
    DivisorClass out = *this;
    for (auto& c : out.coords_) c = exact_div(c, k);
    return out;
}

std::string to_string(const DivisorClass& x) {
    std::string out = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ",";
        out += to_string(x[i]);
    }
    return out + ")";
}

Inertia inertia(const std::vector<std::vector<Integer>>& gram) {
    const std::size_t n = gram.size();
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = mpq_class(gram[i][j]);
    }

    auto swap_index = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(m[i], m[j]);
        for (auto& row : m) std::swap(row[i], row[j]);
    };

    Inertia result;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t i = k; i < n; ++i) {
            if (m[i][i] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == n) {
            // All remaining diagonal entries vanish: replace e_i by e_i + e_j
            // for a nonzero off-diagonal entry, making the new diagonal 2 m_ij.
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (m[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
                }
            }
            if (pi == n) {
                result.zero += static_cast<int>(n - k);
                break;
            }
            for (std::size_t c = 0; c < n; ++c) m[pi][c] += m[pj][c];
            for (std::size_t r = 0; r < n; ++r) m[r][pi] += m[r][pj];
            pivot = pi;
        }
        swap_index(k, pivot);
        const mpq_class p = m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const mpq_class f = m[i][k] / p;
            for (std::size_t c = k; c < n; ++c) m[i][c] -= f * m[k][c];
            for (std::size_t r = k; r < n; ++r) m[r][i] -= f * m[r][k];
        }
        if (p > 0) {
            ++result.positive;
        } else {
            ++result.negative;
        }
    }
    return result;
}

Integer determinant(const std::vector<std::vector<Integer>>& matrix) {
    const std::size_t n = matrix.size();
    if (n == 0) return 1;
    auto m = matrix;
    Integer sign_factor = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = n;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (m[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign_factor = -sign_factor;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            }
        }
        prev = m[k][k];
    }
    return sign_factor * m[n - 1][n - 1];
}

IntersectionLattice IntersectionLattice::create(std::vector<std::vector<Integer>> gram,
                                                std::vector<std::string> labels) {
    const std::size_t n = gram.size();
    if (n == 0 || n > kMaxRank) {
        fail(ErrorCode::InvalidLattice, "lattice rank must be between 1 and 4, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (gram[i].size() != n) {
            fail(ErrorCode::InvalidLattice, "gram row " + std::to_string(i) + " has wrong length");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!divides(Integer(2), gram[i][i])) {
            fail(ErrorCode::InvalidLattice, "gram diagonal entry " + std::to_string(i) + " is odd");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (gram[i][j] != gram[j][i]) {
                fail(ErrorCode::InvalidLattice, "gram matrix is not symmetric");
            }
        }
    }
    const Inertia in = inertia(gram);
    if (in.positive != 1 || in.zero != 0 || in.negative != static_cast<int>(n) - 1) {
        std::ostringstream msg;
        msg << "signature must be (1," << n - 1 << "), got (" << in.positive << ","
            << in.negative << ") with " << in.zero << " null directions";
        fail(ErrorCode::InvalidLattice, msg.str());
    }
    if (!labels.empty() && labels.size() != n) {
        fail(ErrorCode::InvalidLattice, "label count does not match rank");
    }

    IntersectionLattice lattice;
    lattice.discriminant_ = determinant(gram);
    lattice.gram_ = std::move(gram);
    lattice.labels_ = std::move(labels);
    return lattice;
}

void IntersectionLattice::check(const DivisorClass& x) const {
    if (x.size() != rank()) {
        fail(ErrorCode::DimensionMismatch, "divisor class has " + std::to_string(x.size()) +
                                               " coordinates, lattice rank is " + std::to_string(rank()));
    }
}

Integer IntersectionLattice::dot(const DivisorClass& x, const DivisorClass& y) const {
    check(x);
    check(y);
    Integer total = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (x[i] == 0) continue;
        Integer row = 0;
        for (std::size_t j = 0; j < rank(); ++j) row += gram_[i][j] * y[j];
        total += x[i] * row;
    }
    return total;
}

SurfaceContext SurfaceContext::create(IntersectionLattice lattice, DivisorClass ample_ref,
                                      ConeModel cone_model) {
    lattice.check(ample_ref);
    if (lattice.square(ample_ref) <= 0) {
        fail(ErrorCode::InvalidLattice, "reference ample class must have positive square");
    }
    return SurfaceContext{std::move(lattice), std::move(ample_ref), cone_model};
}

MukaiVector operator+(const MukaiVector& v, const MukaiVector& w) {
    return {v.r + w.r, v.xi + w.xi, v.a + w.a};
}

MukaiVector operator-(const MukaiVector& v, const MukaiVector& w) {
    return {v.r - w.r, v.xi - w.xi, v.a - w.a};
}

MukaiVector operator*(const Integer& k, const MukaiVector& v) {
    return {k * v.r, k * v.xi, k * v.a};
}

std::string to_string(const MukaiVector& v) {
    return "(" + to_string(v.r) + ", " + to_string(v.xi) + ", " + to_string(v.a) + ")";
}

Integer divisor_dot(const IntersectionLattice& lattice, const DivisorClass& x,
                    const DivisorClass& y) {
    return lattice.dot(x, y);
}

Integer mukai_pairing(const IntersectionLattice& lattice, const MukaiVector& v,
                      const MukaiVector& w) {
    return lattice.dot(v.xi, w.xi) - v.r * w.a - w.r * v.a;
}

Integer square(const IntersectionLattice& lattice, const MukaiVector& v) {
    return mukai_pairing(lattice, v, v);
}

MukaiVector twist(const IntersectionLattice& lattice, const MukaiVector& v,
                  const DivisorClass& d) {
    const Integer d_square = lattice.square(d);
    return {v.r, v.xi + v.r * d,
            v.a + lattice.dot(v.xi, d) + exact_div(v.r * d_square, Integer(2))};
}

MukaiVector dual(const MukaiVector& v) { return {v.r, -v.xi, v.a}; }

bool is_primitive(const MukaiVector& v) {
    Integer g = gcd(v.r, v.a);
    g = gcd(g, v.xi.content());
    return g == 1;
}

std::optional<SpecialForm> special_form(const IntersectionLattice& lattice,
                                        const MukaiVector& v) {
    lattice.check(v.xi);
    if (v.r <= 0) fail(ErrorCode::OutOfScope, "special_form needs positive rank");
    const Integer xi_square = lattice.square(v.xi);
    if (v.r == 1) {
        return RankOne{v.xi, exact_div(xi_square, Integer(2)) - v.a};
    }
    if (!v.xi.divisible_by(v.r)) return std::nullopt;
    // (r, 0, -1) e^eta = (r, r eta, r eta^2 / 2 - 1) and xi^2 = r^2 eta^2.
    if (xi_square != 2 * v.r * (v.a + 1)) return std::nullopt;
    return TwistedRankR{v.xi.divided_by(v.r)};
}

bool in_positive_cone(const SurfaceContext& ctx, const DivisorClass& d) {
    return ctx.lattice.square(d) > 0 && ctx.lattice.dot(d, ctx.ample_ref) > 0;
}

}  // namespace mukai
