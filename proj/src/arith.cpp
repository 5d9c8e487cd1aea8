#include "mukai/arith.hpp"

#include "mukai/error.hpp"

namespace mukai {

PellSolution::PellSolution(Integer t, Integer u, Integer d, Integer n, PellForm form)
    : t_(std::move(t)), u_(std::move(u)), d_(std::move(d)), n_(std::move(n)), form_(form) {
    if (t_ * t_ - d_ * u_ * u_ != n_) {
        fail(ErrorCode::ContractViolation, "(" + to_string(t_) + ", " + to_string(u_) +
                                               ") does not solve t^2 - " + to_string(d_) +
                                               " u^2 = " + to_string(n_));
    }
}

PellSolution PellSolution::unit1(Integer t, Integer u, Integer d) {
    return PellSolution(std::move(t), std::move(u), std::move(d), 1, PellForm::Unit1);
}

PellSolution PellSolution::unit4(Integer t, Integer u, Integer d) {
    return PellSolution(std::move(t), std::move(u), std::move(d), 4, PellForm::Unit4);
}

PellSolution PellSolution::general(Integer t, Integer u, Integer d, Integer n) {
    return PellSolution(std::move(t), std::move(u), std::move(d), std::move(n), PellForm::General);
}

Integer sqrt_floor(const Integer& n) {
    if (n < 0) fail(ErrorCode::InvalidInput, "sqrt_floor of a negative number");
    Integer s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return s;
}

std::optional<Integer> is_perfect_square(const Integer& n) {
    if (n < 0) return std::nullopt;
    Integer s = sqrt_floor(n);
    if (s * s != n) return std::nullopt;
    return s;
}

namespace {

void require_nonsquare(const Integer& d) {
    if (d <= 1) fail(ErrorCode::NoSolution, "Pell equation needs d >= 2, got " + to_string(d));
    if (is_perfect_square(d)) {
        fail(ErrorCode::NoSolution, to_string(d) + " is a perfect square");
    }
}

}  // namespace

PellSolution pell_fundamental(const Integer& d) {
    require_nonsquare(d);
    const Integer a0 = sqrt_floor(d);
    Integer m = 0;
    Integer q = 1;
    Integer a = a0;
    Integer h_prev = 1, h_prev2 = 0;
    Integer k_prev = 0, k_prev2 = 1;
    for (;;) {
        Integer h = a * h_prev + h_prev2;
        Integer k = a * k_prev + k_prev2;
        if (h * h - d * k * k == 1) return PellSolution::unit1(h, k, d);
        h_prev2 = std::move(h_prev);
        h_prev = std::move(h);
        k_prev2 = std::move(k_prev);
        k_prev = std::move(k);
        m = q * a - m;
        q = exact_div(d - m * m, q);
        a = floor_div(a0 + m, q);
    }
}

PellSolution pell4_fundamental(const Integer& d) {
    require_nonsquare(d);
    const PellSolution unit = pell_fundamental(d);
    // Every solution of t^2 - d u^2 = 4 is a power of the minimal one,
    // eps = (t + u sqrt d) / 2, and eps^k = t1 + u1 sqrt d for some k in
    // {1, 2, 3}. Taking traces, k = 2 needs t^2 - 2 = 2 t1 and k = 3 needs
    // t^3 - 3t = 2 t1.
    const Integer trace = 2 * unit.t();
    auto recover = [&](const Integer& t) -> std::optional<PellSolution> {
        const Integer rest = t * t - 4;
        if (t <= 2 || !divides(d, rest)) return std::nullopt;
        auto u = is_perfect_square(rest / d);
        if (!u || *u == 0) return std::nullopt;
        return PellSolution::unit4(t, *u, d);
    };

    Integer cube_guess;
    mpz_root(cube_guess.get_mpz_t(), trace.get_mpz_t(), 3);
    for (Integer t = cube_guess - 1; t <= cube_guess + 1; ++t) {
        if (t * t * t - 3 * t == trace) {
            if (auto sol = recover(t)) return *sol;
        }
    }
    if (auto t = is_perfect_square(trace + 2)) {
        if (auto sol = recover(*t)) return *sol;
    }
    return PellSolution::unit4(2 * unit.t(), 2 * unit.u(), d);
}

PellSolution pell_compose(const PellSolution& base, const PellSolution& unit) {
    if (base.d() != unit.d()) {
        fail(ErrorCode::InvalidInput, "Pell orbit base and unit use different coefficients");
    }
    if (unit.form() != PellForm::Unit1) {
        fail(ErrorCode::InvalidInput, "Pell orbit unit must solve t^2 - d u^2 = 1");
    }
    Integer t = base.t() * unit.t() + base.d() * base.u() * unit.u();
    Integer u = base.t() * unit.u() + unit.t() * base.u();
    switch (base.form()) {
        case PellForm::Unit1: return PellSolution::unit1(std::move(t), std::move(u), base.d());
        case PellForm::Unit4: return PellSolution::unit4(std::move(t), std::move(u), base.d());
        case PellForm::General: break;
    }
    return PellSolution::general(std::move(t), std::move(u), base.d(), base.n());
}

std::vector<PellSolution> pell_orbit(const PellSolution& base, const PellSolution& unit,
                                     std::size_t count) {
    std::vector<PellSolution> orbit;
    orbit.reserve(count);
    PellSolution current = base;
    for (std::size_t i = 0; i < count; ++i) {
        current = pell_compose(current, unit);
        orbit.push_back(current);
    }
    return orbit;
}

}  // namespace mukai
