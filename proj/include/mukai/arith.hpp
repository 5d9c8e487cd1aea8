#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mukai/integer.hpp"

namespace mukai {

enum class PellForm { Unit1, Unit4, General };

/// A verified solution of t^2 - d u^2 = N with N = 1 (Unit1), 4 (Unit4) or
/// an arbitrary nonzero value (General). Construction always re-checks the
/// defining equation.
class PellSolution {
public:
    static PellSolution unit1(Integer t, Integer u, Integer d);
    static PellSolution unit4(Integer t, Integer u, Integer d);
    static PellSolution general(Integer t, Integer u, Integer d, Integer n);

    const Integer& t() const { return t_; }
    const Integer& u() const { return u_; }
    const Integer& d() const { return d_; }
    const Integer& n() const { return n_; }
    PellForm form() const { return form_; }

    friend bool operator==(const PellSolution&, const PellSolution&) = default;

private:
    PellSolution(Integer t, Integer u, Integer d, Integer n, PellForm form);

    Integer t_;
    Integer u_;
    Integer d_;
    Integer n_;
    PellForm form_;
};

/// Largest s with s^2 <= n. Throws InvalidInput for negative n.
Integer sqrt_floor(const Integer& n);

/// The nonnegative square root when n is a perfect square.
std::optional<Integer> is_perfect_square(const Integer& n);

/// Minimal positive solution of t^2 - d u^2 = 1, from the continued fraction
/// expansion of sqrt(d). Throws NoSolution when d <= 1 or d is a square.
PellSolution pell_fundamental(const Integer& d);

/// Minimal solution (smallest u > 0) of t^2 - d u^2 = 4.
PellSolution pell4_fundamental(const Integer& d);

/// One step of the orbit: (t0 t1 + d u0 u1, t0 u1 + t1 u0).
PellSolution pell_compose(const PellSolution& base, const PellSolution& unit);

/// `count` successive images of `base` under multiplication by `unit`.
std::vector<PellSolution> pell_orbit(const PellSolution& base, const PellSolution& unit,
                                     std::size_t count);

}  // namespace mukai
