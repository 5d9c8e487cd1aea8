#include "mukai/decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "mukai/error.hpp"

namespace mukai {

bool canonical_less(const IsotropicDecomposition& x, const IsotropicDecomposition& y) {
    if (x.l1 != y.l1) return x.l1 < y.l1;
    if (x.v1.r != y.v1.r) return x.v1.r < y.v1.r;
    return x.v1.xi < y.v1.xi;
}

bool verify_decomposition(const SurfaceContext& ctx, const MukaiVector& v, const DivisorClass& h,
                          const IsotropicDecomposition& dec) {
    const auto& lat = ctx.lattice;
    if (v.xi.size() != lat.rank() || dec.v1.xi.size() != lat.rank() ||
        dec.v2.xi.size() != lat.rank() || h.size() != lat.rank()) {
        return false;
    }
    const Integer v_square = square(lat, v);
    if (v_square < 2 || !divides(Integer(2), v_square)) return false;
    const Integer ell = v_square / 2;
    const bool ls_ok = (dec.l1 == ell && dec.l2 == 1) || (dec.l1 == 1 && dec.l2 == ell);
    if (!ls_ok) return false;
    if (dec.l1 * dec.v1 + dec.l2 * dec.v2 != v) return false;
    if (dec.v1.r <= 0 || dec.v2.r <= 0) return false;
    if (dec.v1.a <= 0 || dec.v2.a >= 0) return false;
    const Integer xi_h = lat.dot(v.xi, h);
    if (lat.dot(dec.v1.xi, h) * xi_h <= 0 || lat.dot(dec.v2.xi, h) * xi_h <= 0) return false;
    if (square(lat, dec.v1) != 0 || square(lat, dec.v2) != 0) return false;
    return mukai_pairing(lat, dec.v1, dec.v2) == 1;
}

namespace {

// Calls f on every class with all coordinates in [-box, box], in lexicographic order.
template <class F>
void for_each_in_box(std::size_t rank, const Integer& box, F&& f) {
    if (box < 0) return;
    DivisorClass x = DivisorClass::zero(rank);
    for (std::size_t i = 0; i < rank; ++i) x[i] = -box;
    for (;;) {
        f(x);
        std::size_t i = rank;
        while (i > 0) {
            --i;
            if (x[i] < box) {
                ++x[i];
                break;
            }
            x[i] = -box;
            if (i == 0) return;
        }
        if (rank == 0) return;
    }
}

void check_search_input(const IntersectionLattice& lat, const MukaiVector& v,
                        const Integer& v_square) {
    lat.check(v.xi);
    if (v.r <= 0) fail(ErrorCode::OutOfScope, "decomposition search needs r > 0");
    if (v_square < 0) fail(ErrorCode::NoSemistableSheaf, "v^2 < 0");
    if (!divides(Integer(2), v_square)) fail(ErrorCode::InconsistentInput, "v^2 is odd");
}

}  // namespace

std::vector<IsotropicDecomposition> search_decompositions(const SurfaceContext& ctx,
                                                          const MukaiVector& v,
                                                          const DivisorClass& h,
                                                          const SearchBound& bound) {
    const auto& lat = ctx.lattice;
    lat.check(h);
    const Integer v_square = square(lat, v);
    check_search_input(lat, v, v_square);

    std::vector<IsotropicDecomposition> found;
    if (v_square == 0) return found;
    // <v, v_i> = 1 for one summand, so v is primitive; and r >= l1 + l2 = v^2/2 + 1.
    if (!is_primitive(v)) return found;
    if (v_square + 2 > 2 * v.r) return found;

    const Integer ell = v_square / 2;
    const Integer xi_h = lat.dot(v.xi, h);
    std::vector<std::pair<Integer, Integer>> ls = {{1, ell}};
    if (ell != 1) ls.emplace_back(ell, 1);

    for (const auto& [l1, l2] : ls) {
        for (Integer r1 = 1; l1 * r1 < v.r; ++r1) {
            const Integer rest = v.r - l1 * r1;
            if (!divides(l2, rest)) continue;
            const Integer r2 = rest / l2;
            const Integer two_r1 = 2 * r1;
            const Integer two_r2 = 2 * r2;
            for_each_in_box(lat.rank(), bound.coord_box, [&](const DivisorClass& xi1) {
                const DivisorClass rem = v.xi - l1 * xi1;
                if (!rem.divisible_by(l2)) return;
                const Integer s1 = lat.square(xi1);
                if (!divides(two_r1, s1)) return;
                const Integer a1 = s1 / two_r1;
                if (a1 <= 0) return;
                const DivisorClass xi2 = rem.divided_by(l2);
                const Integer s2 = lat.square(xi2);
                if (!divides(two_r2, s2)) return;
                const Integer a2 = s2 / two_r2;
                if (a2 >= 0) return;
                if (l1 * a1 + l2 * a2 != v.a) return;
                if (lat.dot(xi1, h) * xi_h <= 0 || lat.dot(xi2, h) * xi_h <= 0) return;
                IsotropicDecomposition dec{{r1, xi1, a1}, {r2, xi2, a2}, l1, l2};
                if (mukai_pairing(lat, dec.v1, dec.v2) != 1) return;
                found.push_back(std::move(dec));
            });
        }
    }
    std::sort(found.begin(), found.end(), canonical_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

TranslationTuple tuple_from_decomposition(const IsotropicDecomposition& dec) {
    return {dec.v1.xi, dec.v2.xi, dec.v2.r, dec.v1.r};
}

TuplePair decomposition_from_tuple(const SurfaceContext& ctx, const TranslationTuple& t) {
    const auto& lat = ctx.lattice;
    if (t.r1 <= 0 || t.r2 <= 0) fail(ErrorCode::InvalidInput, "tuple ranks must be positive");
    const Integer b_square = lat.square(t.B);
    const Integer a_square = lat.square(t.A);
    return {{t.r1, t.B, exact_div(b_square, 2 * t.r1)}, {t.r2, t.A, exact_div(a_square, 2 * t.r2)}};
}

bool verify_tuple(const SurfaceContext& ctx, const TranslationTuple& t) {
    const auto& lat = ctx.lattice;
    if (t.A.size() != lat.rank() || t.B.size() != lat.rank()) return false;
    if (t.r1 <= 0 || t.r2 <= 0) return false;
    const Integer a_square = lat.square(t.A);
    const Integer b_square = lat.square(t.B);
    if (a_square <= 0 || b_square >= 0) return false;
    if (!divides(2 * t.r2, a_square) || !divides(2 * t.r1, b_square)) return false;
    return lat.square(t.r1 * t.A - t.r2 * t.B) == -2 * t.r1 * t.r2;
}

std::vector<TranslationTuple> search_tuples(const SurfaceContext& ctx, const SearchBound& bound) {
    const auto& lat = ctx.lattice;
    struct Entry {
        DivisorClass x;
        Integer sq;
    };
    std::vector<Entry> positive, negative;
    for_each_in_box(lat.rank(), bound.coord_box, [&](const DivisorClass& x) {
        Integer sq = lat.square(x);
        if (sq > 0) positive.push_back({x, sq});
        if (sq < 0) negative.push_back({x, sq});
    });

    std::vector<TranslationTuple> found;
    for (Integer r1 = 1; r1 <= bound.rank_cap; ++r1) {
        for (Integer r2 = 1; r2 <= bound.rank_cap; ++r2) {
            const Integer target = -2 * r1 * r2;
            for (const auto& A : positive) {
                if (!divides(2 * r2, A.sq)) continue;
                for (const auto& B : negative) {
                    if (!divides(2 * r1, B.sq)) continue;
                    // (r1 A - r2 B)^2 = r1^2 A^2 - 2 r1 r2 A.B + r2^2 B^2
                    const Integer total =
                        r1 * r1 * A.sq - 2 * r1 * r2 * lat.dot(A.x, B.x) + r2 * r2 * B.sq;
                    if (total == target) found.push_back({A.x, B.x, r1, r2});
                }
            }
        }
    }
    return found;
}

namespace {

long to_long(const Integer& x, const char* what) {
    if (!x.fits_slong_p()) fail(ErrorCode::OutOfScope, std::string(what) + " exceeds machine range");
    return x.get_si();
}

}  // namespace

std::vector<IsotropicDecomposition> brute_force_oracle(const SurfaceContext& ctx,
                                                       const MukaiVector& v,
                                                       const DivisorClass& h, long box) {
    const auto& lat = ctx.lattice;
    const std::size_t n = lat.rank();
    lat.check(v.xi);
    lat.check(h);
    std::vector<std::vector<long>> g(n, std::vector<long>(n));
    long gram_mass = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g[i][j] = to_long(lat.gram(i, j), "gram entry");
            gram_mass += g[i][j] < 0 ? -g[i][j] : g[i][j];
        }
    }
    auto dot = [&](const std::vector<long>& x, const std::vector<long>& y) {
        long s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) s += x[i] * g[i][j] * y[j];
        }
        return s;
    };

    const long r = to_long(v.r, "rank");
    const long a = to_long(v.a, "a");
    std::vector<long> xi(n), hv(n);
    for (std::size_t i = 0; i < n; ++i) {
        xi[i] = to_long(v.xi[i], "xi");
        hv[i] = to_long(h[i], "H");
    }
    const long v_square = dot(xi, xi) - 2 * r * a;
    std::vector<IsotropicDecomposition> out;
    if (r <= 0 || v_square < 2 || v_square % 2 != 0) return out;
    const long ell = v_square / 2;
    const long xi_h = dot(xi, hv);
    const long a_max = box * box * gram_mass;

    std::set<std::pair<long, long>> ls = {{ell, 1}, {1, ell}};
    std::vector<long> x1(n), x2(n);
    for (const auto& [l1, l2] : ls) {
        for (long r1 = 1; r1 <= r; ++r1) {
            const long rr = r - l1 * r1;
            if (rr <= 0 || rr % l2 != 0) continue;
            const long r2 = rr / l2;
            std::fill(x1.begin(), x1.end(), -box);
            for (bool more = n > 0; more;) {
                bool integral = true;
                for (std::size_t i = 0; i < n; ++i) {
                    const long d = xi[i] - l1 * x1[i];
                    if (d % l2 != 0) integral = false;
                    x2[i] = d / l2;
                }
                for (long a1 = 1; integral && a1 <= a_max; ++a1) {
                    const long rest = a - l1 * a1;
                    if (rest % l2 != 0) continue;
                    const long a2 = rest / l2;
                    if (a2 >= 0) continue;
                    if (dot(x1, x1) - 2 * r1 * a1 != 0) continue;
                    if (dot(x2, x2) - 2 * r2 * a2 != 0) continue;
                    if (dot(x1, x2) - r1 * a2 - r2 * a1 != 1) continue;
                    if (dot(x1, hv) * xi_h <= 0 || dot(x2, hv) * xi_h <= 0) continue;
                    IsotropicDecomposition dec;
                    dec.v1 = {r1, DivisorClass(std::vector<Integer>(x1.begin(), x1.end())), a1};
                    dec.v2 = {r2, DivisorClass(std::vector<Integer>(x2.begin(), x2.end())), a2};
                    dec.l1 = l1;
                    dec.l2 = l2;
                    out.push_back(std::move(dec));
                }
                std::size_t i = n;
                more = false;
                while (i > 0) {
                    --i;
                    if (x1[i] < box) {
                        ++x1[i];
                        more = true;
                        break;
                    }
                    x1[i] = -box;
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

}  // namespace mukai
