#pragma once

#include <optional>

#include "ordcensus/reduction.hpp"

namespace ordc {

struct OrderRecord {
    u64 p = 0;
    unsigned d = 0;
    u128 ord = 0;
    u128 index = 0;  // (p^d - 1) / ord
};

// Exact order by descent over the factored group order.
u128 mult_order(const FieldElement& a, const FactoredInteger& group_order);

// True iff a^{(p^k-1)/ell} = 1; ell must divide the group order.
bool is_power_residue(const FieldElement& a, u128 ell,
                      const FactoredInteger& group_order);

// The failure event counted by the censuses: ell(q) | Phi_d(p) and a is
// a perfect ell(q)-th power in its field. a must live in F_{p^k}, d | k.
bool condition_Cq(u64 p, const FieldElement& a, u64 q, FactorialCap cap,
                  unsigned d);

// Order of the first canonical degree-d reduction; conjugate reductions
// share the same order, so the choice does not matter.
std::optional<OrderRecord> order_record(const AlgebraicNumberSpec& spec, u64 p,
                                        unsigned d);

struct ProductOrderResult {
    std::vector<unsigned> exponents;
    u128 ord = 0;
};

// Exhaustive scan over nonzero exponent vectors in [0, N)^n, maximizing
// the order of prod elems_i^{e_i}; ties resolved to the lexicographically
// least vector. N^n capped at 2^24.
ProductOrderResult best_product_order(const std::vector<FieldElement>& elems,
                                      unsigned N, const FactoredInteger& group_order);

// Heuristic screen for multiplicative dependence: an exponent vector over
// all reductions and conjugates that evaluates to 1 at every tested prime.
// Absence is evidence of independence, not proof.
std::optional<std::vector<unsigned>> small_relation_scan(
    const std::vector<AlgebraicNumberSpec>& specs, const std::vector<u64>& primes,
    unsigned exponent_bound);

}  // namespace ordc
