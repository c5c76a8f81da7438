#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "ordcensus/arith.hpp"

namespace ordc {

struct field_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
/// The zero polynomial has an empty coefficient list. p is capped at
/// 2^20 so coefficient products fit 64-bit intermediates.
struct PolyModP {
    u64 p = 0;
    std::vector<u64> c;

    PolyModP() = default;
    PolyModP(u64 p_, std::vector<u64> coeffs);

    int degree() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    u64 coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
    u64 lead() const { return c.back(); }

    bool operator==(const PolyModP&) const = default;
};

// Canonical order: by degree, then lexicographic on coefficients
// (highest degree coefficient first).
std::strong_ordering poly_order(const PolyModP& a, const PolyModP& b);

PolyModP poly_reduce(const std::vector<long long>& coeffs, u64 p);

PolyModP poly_add(const PolyModP& a, const PolyModP& b);
PolyModP poly_sub(const PolyModP& a, const PolyModP& b);
PolyModP poly_mul(const PolyModP& a, const PolyModP& b);
PolyModP poly_mod(const PolyModP& a, const PolyModP& m);
PolyModP poly_gcd(PolyModP a, PolyModP b);  // monic result
PolyModP poly_monic(const PolyModP& a);
PolyModP poly_derivative(const PolyModP& a);
// x |-> base(x)^e mod m
PolyModP poly_powmod(PolyModP base, u128 e, const PolyModP& m);

u64 mod_inverse(u64 a, u64 p);

// Process-wide seed mixed into every equal-degree-splitting generator;
// set once by the entry point so a single knob controls all randomness.
void set_factor_seed(u64 seed);
u64 factor_seed();

/// Full factorization into monic irreducibles with multiplicity, sorted
/// canonically. Squarefree decomposition, then distinct-degree splitting,
/// then equal-degree splitting driven by a generator seeded from
/// (p, coefficients, seed) so runs are reproducible.
std::vector<std::pair<PolyModP, unsigned>> factor_mod_p(const PolyModP& f,
                                                        u64 seed = 0);

bool is_irreducible(const PolyModP& f, u64 seed = 0);

/// Element of F_p[x]/(g) for monic irreducible g of degree k >= 1.
/// Elements interoperate only when (p, modulus) match.
struct FieldElement {
    u64 p = 0;
    PolyModP modulus;
    std::vector<u64> c;  // k residues

    FieldElement() = default;
    FieldElement(u64 p_, PolyModP mod_, std::vector<u64> coeffs);

    unsigned ext_degree() const { return unsigned(modulus.degree()); }
    bool is_zero() const;
    u128 field_size() const;

    bool operator==(const FieldElement&) const = default;
};

FieldElement make_constant(u64 value, u64 p, const PolyModP& modulus);
// The class of x in F_p[x]/(modulus).
FieldElement make_generator(u64 p, const PolyModP& modulus);

FieldElement ext_mul(const FieldElement& a, const FieldElement& b);
FieldElement ext_pow(const FieldElement& a, u128 e);
FieldElement frobenius(const FieldElement& a);

// a^{(p^k-1)/(p-1)}, projected to the prime subfield.
u64 norm_to_base(const FieldElement& a);

}  // namespace ordc
