#include "mukai/rank2.hpp"

#include <array>
#include <tuple>

#include "mukai/error.hpp"

namespace mukai {

Integer BinaryEvenForm::pairing(const Integer& p1, const Integer& q1, const Integer& p2,
                                const Integer& q2) const {
    return 2 * a * p1 * p2 + b * (p1 * q2 + q1 * p2) + 2 * c * q1 * q2;
}

BinaryEvenForm form_from_gram(const Integer& g11, const Integer& g12, const Integer& g22) {
    if (!divides(Integer(2), g11) || !divides(Integer(2), g22)) {
        fail(ErrorCode::InvalidInput, "form needs even diagonal entries, got " + to_string(g11) +
                                          " and " + to_string(g22));
    }
    return {g11 / 2, g12, g22 / 2};
}

DiscriminantClass classify(const BinaryEvenForm& form) {
    const Integer delta = form.delta();
    if (delta < 0) return DefiniteDiscriminant{};
    if (auto root = is_perfect_square(delta)) return SquareDiscriminant{*root};
    return NonsquareDiscriminant{};
}

bool preserves_gram(const UEmbedding& e, const BinaryEvenForm& form) {
    return e.s * e.x == form.a && e.s * e.y + e.t * e.x == form.b && e.t * e.y == form.c;
}

namespace {

// Q(p, q) = (x p + y q)(s p + t q) for a primitive linear factor (x, y).
std::optional<UEmbedding> cofactor(const BinaryEvenForm& form, Integer x, Integer y) {
    const Integer g = gcd(x, y);
    if (g == 0) return std::nullopt;
    x /= g;
    y /= g;
    Integer s, t;
    if (x == 0) {
        t = form.c / y;
        s = form.b / y;
        if (!divides(y, form.c) || !divides(y, form.b)) return std::nullopt;
    } else if (y == 0) {
        if (!divides(x, form.a) || !divides(x, form.b)) return std::nullopt;
        s = form.a / x;
        t = form.b / x;
    } else {
        if (!divides(x, form.a) || !divides(y, form.c)) return std::nullopt;
        s = form.a / x;
        t = form.c / y;
    }
    UEmbedding e{s, x, t, y};
    if (!preserves_gram(e, form)) return std::nullopt;
    // Canonical sign: s > 0, else y > 0, else x > 0.
    const int lead = sign(e.s) != 0 ? sign(e.s) : (sign(e.y) != 0 ? sign(e.y) : sign(e.x));
    if (lead < 0) {
        e = {-e.s, -e.x, -e.t, -e.y};
    }
    return e;
}

}  // namespace

UEmbedding embed_into_u(const BinaryEvenForm& form) {
    const DiscriminantClass cls = classify(form);
    const auto* square = std::get_if<SquareDiscriminant>(&cls);
    if (square == nullptr) {
        fail(ErrorCode::NoEmbedding, "Delta = " + to_string(form.delta()) + " is not a square");
    }
    const Integer& n = square->root;
    const Integer plus = (form.b + n) / 2;
    const Integer minus = (form.b - n) / 2;
    // a Q = (a p + (b+n)/2 q)(a p + (b-n)/2 q), and symmetrically for c.
    const std::array<std::pair<Integer, Integer>, 6> factors = {{
        {form.a, plus}, {form.a, minus}, {plus, form.c}, {minus, form.c}, {0, 1}, {1, 0}}};
    for (const auto& [x, y] : factors) {
        if (auto e = cofactor(form, x, y)) return *e;
    }
    fail(ErrorCode::ContractViolation, "no linear factor found for " + to_string(form));
}

std::optional<std::pair<Integer, Integer>> isotropic_vector(const BinaryEvenForm& form) {
    if (!std::holds_alternative<SquareDiscriminant>(classify(form))) return std::nullopt;
    const UEmbedding e = embed_into_u(form);

    auto normalize = [](Integer p, Integer q) {
        const Integer g = gcd(p, q);
        p /= g;
        q /= g;
        if (p < 0 || (p == 0 && q < 0)) {
            p = -p;
            q = -q;
        }
        return std::pair<Integer, Integer>{p, q};
    };
    auto key = [](const std::pair<Integer, Integer>& v) {
        return std::make_tuple(Integer(abs(v.first) + abs(v.second)), Integer(abs(v.second)),
                               v.first, v.second);
    };

    std::optional<std::pair<Integer, Integer>> best;
    // Preimages of the two isotropic rays of U.
    for (const auto& [p, q] : {std::pair<Integer, Integer>{e.y, -e.x}, {e.t, -e.s}}) {
        if (p == 0 && q == 0) continue;
        auto v = normalize(p, q);
        if (!best || key(v) < key(*best)) best = v;
    }
    if (!best) best = std::pair<Integer, Integer>{1, 0};
    return best;
}

bool Isometry2x2::is_identity_mod(const Integer& r) const {
    return divides(r, m11 - 1) && divides(r, m12) && divides(r, m21) && divides(r, m22 - 1);
}

bool Isometry2x2::preserves(const BinaryEvenForm& form) const {
    return form.pairing(m11, m21, m11, m21) == 2 * form.a &&
           form.pairing(m11, m21, m12, m22) == form.b &&
           form.pairing(m12, m22, m12, m22) == 2 * form.c;
}

Isometry2x2 operator*(const Isometry2x2& x, const Isometry2x2& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
}

Isometry2x2 power(const Isometry2x2& g, const Integer& exponent) {
    if (exponent < 0) fail(ErrorCode::InvalidInput, "negative isometry exponent");
    Isometry2x2 result = Isometry2x2::identity();
    Isometry2x2 base = g;
    Integer e = exponent;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

Isometry2x2 isometry_from_pell(const BinaryEvenForm& form) {
    if (!std::holds_alternative<NonsquareDiscriminant>(classify(form))) {
        fail(ErrorCode::NoIsometry,
             "Delta = " + to_string(form.delta()) + " is not a positive nonsquare");
    }
    const PellSolution sol = pell4_fundamental(form.delta());
    const Integer& t = sol.t();
    const Integer& u = sol.u();
    Isometry2x2 g{exact_div(t - u * form.b, Integer(2)), -u * form.c, u * form.a,
                  exact_div(t + u * form.b, Integer(2))};
    if (g.det() != 1 || !g.preserves(form)) {
        fail(ErrorCode::ContractViolation, "Pell isometry " + to_string(g) + " does not preserve " +
                                               to_string(form));
    }
    return g;
}

StabilizedIsometry stabilize_mod(const Isometry2x2& g, const Integer& r) {
    if (r <= 0) fail(ErrorCode::InvalidInput, "stabilize_mod needs r > 0");
    auto reduce = [&](const Isometry2x2& m) {
        return Isometry2x2{mod_nonneg(m.m11, r), mod_nonneg(m.m12, r), mod_nonneg(m.m21, r),
                           mod_nonneg(m.m22, r)};
    };
    const Isometry2x2 g_mod = reduce(g);
    Isometry2x2 acc = g_mod;
    Integer n = 1;
    while (!acc.is_identity_mod(r)) {
        acc = reduce(acc * g_mod);
        ++n;
    }
    Isometry2x2 phi = power(g, n);
    if (phi.trace() < 0) {
        phi = phi * phi;
        n *= 2;
    }
    return {phi, n};
}

std::string to_string(const BinaryEvenForm& form) {
    return "[[" + to_string(2 * form.a) + "," + to_string(form.b) + "],[" + to_string(form.b) +
           "," + to_string(2 * form.c) + "]]";
}

std::string to_string(const Isometry2x2& g) {
    return "[[" + to_string(g.m11) + "," + to_string(g.m12) + "],[" + to_string(g.m21) + "," +
           to_string(g.m22) + "]]";
}

}  // namespace mukai
