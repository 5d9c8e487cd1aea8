#include "mukai/integer.hpp"

#include <cctype>

#include "mukai/error.hpp"

namespace mukai {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "dimension-mismatch";
        case ErrorCode::InvalidLattice: return "invalid-lattice";
        case ErrorCode::InvalidInput: return "invalid-input";
        case ErrorCode::NoSolution: return "no-solution";
        case ErrorCode::NoEmbedding: return "no-embedding";
        case ErrorCode::NoIsometry: return "no-isometry";
        case ErrorCode::NoSemistableSheaf: return "no-semistable-sheaf";
        case ErrorCode::OutOfScope: return "out-of-scope";
        case ErrorCode::InconsistentInput: return "inconsistent-input";
        case ErrorCode::DivisibilityFailure: return "divisibility-failure";
        case ErrorCode::PreconditionViolation: return "precondition-violation";
        case ErrorCode::NoStream: return "no-stream";
        case ErrorCode::BudgetExhausted: return "budget-exhausted";
        case ErrorCode::ContractViolation: return "contract-violation";
        case ErrorCode::Parse: return "parse-error";
    }
    return "unknown";
}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

Integer gcd(const Integer& x, const Integer& y) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return g;
}

bool divides(const Integer& d, const Integer& n) {
    if (d == 0) return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

Integer exact_div(const Integer& n, const Integer& d) {
    if (!divides(d, n)) {
        fail(ErrorCode::DivisibilityFailure,
             to_string(d) + " does not divide " + to_string(n));
    }
    if (d == 0) return 0;
    Integer q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Integer floor_div(const Integer& n, const Integer& d) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Integer mod_nonneg(const Integer& n, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

int sign(const Integer& x) { return sgn(x); }

std::string to_string(const Integer& x) { return x.get_str(); }

Integer parse_integer(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    std::string_view body = text.substr(begin, end - begin);
    std::size_t digits = (!body.empty() && (body[0] == '-' || body[0] == '+')) ? 1 : 0;
    if (body.size() <= digits) {
        fail(ErrorCode::Parse, "expected an integer, got '" + std::string(text) + "'");
    }
    for (std::size_t i = digits; i < body.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(body[i]))) {
            fail(ErrorCode::Parse, "expected an integer, got '" + std::string(text) + "'");
        }
    }
    std::string normalized(body[0] == '+' ? body.substr(1) : body);
    return Integer(normalized, 10);
}

}  // namespace mukai
