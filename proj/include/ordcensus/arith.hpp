#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

std::string to_string(u128 v);
std::string to_string_i128(i128 v);

// Thrown when an input exceeds a documented magnitude cap (sieve range,
// factoring range, divisor-enumeration budget, exponent search space).
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct factor_power {
    u128 prime;
    unsigned exponent;
    bool operator==(const factor_power&) const = default;
};

/// Prime-power factorization together with the factored value.
/// Primes are strictly increasing and each is certified by a
/// deterministic primality test for the supported magnitude (< 2^127).
struct FactoredInteger {
    u128 value = 1;
    std::vector<factor_power> factors;

    bool operator==(const FactoredInteger&) const = default;
};

/// Holds H; h = H! is never materialized, only exponents of primes in H!.
struct FactorialCap {
    unsigned H;
    explicit FactorialCap(unsigned h) : H(h) {
        if (H < 2) throw std::invalid_argument("FactorialCap: H must be >= 2");
    }
};

u128 mulmod(u128 a, u128 b, u128 m);
u128 powmod(u128 a, u128 e, u128 m);
bool is_prime(u128 n);

// Primes in [lo, hi), ascending. Segmented; hi capped at 2^40.
std::vector<u64> sieve_primes(u64 lo, u64 hi);

// Shared prime table up to 10^5, used as the trial-division schedule.
const std::vector<u64>& small_primes();

// Deterministic complete factorization: trial division by primes up to
// 10^5, then Brent's rho with a fixed parameter schedule on the cofactors.
FactoredInteger factor_integer(u128 n);

// Phi_d(p) for d <= 12, from hard-coded coefficient tables.
u128 cyclotomic_eval(unsigned d, u64 p);

// Factorization of p^k - 1 assembled from the factorizations of
// Phi_d(p), d | k.
FactoredInteger factor_pk_minus_1(u64 p, unsigned k);

// Smallest power of q not dividing H!; the exponent of q in H! comes
// from the Legendre digit sum.
u128 ell_of_q(u64 q, FactorialCap cap);

// True iff some divisor m of n.value with low <= m <= high has every
// prime factor >= rough_bound. Subset products over the qualifying
// prime powers, pruned; enumeration capped at 2^20 nodes.
bool has_rough_divisor_in_range(const FactoredInteger& n, u128 low, u128 high,
                                u128 rough_bound);

u128 largest_prime_factor(const FactoredInteger& n);

namespace detail {
// Mutable so tests can inject faults; see selftest.
extern std::vector<std::vector<long long>> cyclotomic_coeffs;
}  // namespace detail

}  // namespace ordc
