#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordcensus/gf.hpp"

namespace ordc {

struct excluded_prime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Rational {
    long long num = 0;
    long long den = 1;  // > 0, coprime with num
    bool operator==(const Rational&) const = default;
};

Rational make_rational(long long num, long long den);

/// Integer minimal polynomial of an algebraic number: primitive,
/// positive leading coefficient, irreducible over Q (asserted by the
/// caller; spot-checked mod small primes when possible).
struct AlgebraicNumberSpec {
    std::vector<long long> coeffs;  // lowest degree first
    std::string label;

    AlgebraicNumberSpec(std::vector<long long> coeffs_, std::string label_ = "");

    unsigned degree() const { return unsigned(coeffs.size()) - 1; }
    long long lead() const { return coeffs.back(); }
    i128 discriminant() const { return disc_; }

    // True if f mod p is irreducible for some unramified p < 100;
    // inconclusive (false) results are not errors.
    bool spot_check_irreducible() const;

private:
    i128 disc_;
};

struct PrimeSplitting {
    u64 p = 0;
    std::vector<unsigned> degrees;  // ascending, with multiplicity
    bool ramified = false;
    bool excluded = false;
};

// Excluded iff p | lead, p | constant term, or p | disc(f).
PrimeSplitting classify_prime(const AlgebraicNumberSpec& spec, u64 p);

// One element per degree-d irreducible factor of the monicized minimal
// polynomial mod p: the class of x in F_p[x]/(g), canonical factor order.
std::vector<FieldElement> reductions_of_degree(const AlgebraicNumberSpec& spec,
                                               u64 p, unsigned d);

bool is_in_S(const AlgebraicNumberSpec& spec, u64 p, unsigned d);

// N(alpha) = (-1)^k c_0 / c_k, reduced.
Rational norm_of_alpha(const AlgebraicNumberSpec& spec);

// Resultant of two integer polynomials (Sylvester matrix, fraction-free
// elimination). Throws on 128-bit overflow.
i128 resultant(const std::vector<long long>& a, const std::vector<long long>& b);

}  // namespace ordc
