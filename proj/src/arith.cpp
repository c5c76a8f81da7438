#include "ordcensus/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace ordc {

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + unsigned(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string_i128(i128 v) {
    if (v < 0) return "-" + to_string(u128(-v));
    return to_string(u128(v));
}

u128 mulmod(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    if (m <= u128(UINT64_MAX)) return (a * b) % m;
    if (a < (u128(1) << 63) && b < (u128(1) << 63)) return (a * b) % m;
    // Wide modulus: double-and-add. m < 2^127 so a + a never wraps.
    if (a < b) std::swap(a, b);
    u128 r = 0;
    while (b) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        a += a;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

u128 powmod(u128 a, u128 e, u128 m) {
    u128 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin(u128 n, u128 a) {
    if (a % n == 0) return true;
    u128 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(u128 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    if (n < u128(UINT64_MAX)) {
        // Deterministic base set for n < 2^64 (Sorenson-Webster).
        for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
            if (!miller_rabin(n, a)) return false;
        return true;
    }
    // Beyond 64 bits: fixed wide base set, adequate for the 127-bit cap.
    for (u64 a : {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101})
        if (!miller_rabin(n, a)) return false;
    return true;
}

std::vector<u64> sieve_primes(u64 lo, u64 hi) {
    if (hi > (u64(1) << 40))
        throw budget_error("sieve_primes: hi exceeds 2^40 cap");
    if (lo > hi) throw std::invalid_argument("sieve_primes: lo > hi");
    std::vector<u64> out;
    if (hi <= 2) return out;
    u64 root = u64(std::sqrt((double)hi)) + 2;
    // base primes up to sqrt(hi)
    std::vector<char> base(root + 1, 1);
    std::vector<u64> base_primes;
    for (u64 i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (u64 j = i * i; j <= root; j += i) base[j] = 0;
    }
    const u64 seg = 1u << 18;
    std::vector<char> mark(seg);
    for (u64 start = std::max<u64>(lo, 2); start < hi; start += seg) {
        u64 end = std::min(hi, start + seg);
        std::fill(mark.begin(), mark.begin() + (end - start), 1);
        for (u64 p : base_primes) {
            if (p * p >= end) break;
            u64 first = std::max(p * p, ((start + p - 1) / p) * p);
            for (u64 j = first; j < end; j += p) mark[j - start] = 0;
        }
        for (u64 i = start; i < end; ++i)
            if (mark[i - start]) out.push_back(i);
    }
    return out;
}

const std::vector<u64>& small_primes() {
    static const std::vector<u64> table = sieve_primes(2, 100000);
    return table;
}

namespace {

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Brent's cycle variant of Pollard rho, deterministic schedule over the
// polynomial increment c = 1, 2, 3, ...
u128 rho_factor(u128 n) {
    for (u128 c = 1;; ++c) {
        u128 x = 2, y = 2, d = 1;
        u128 ys = y, q = 1;
        const unsigned m = 128;
        u64 r = 1;
        while (d == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
            for (u64 k = 0; k < r && d == 1; k += m) {
                ys = y;
                u64 lim = std::min<u64>(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = (mulmod(y, y, n) + c) % n;
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = gcd128(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            // backtrack
            do {
                ys = (mulmod(ys, ys, n) + c) % n;
                d = gcd128(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_rec(u128 n, std::vector<u128>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    u128 d = rho_factor(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

}  // namespace

FactoredInteger factor_integer(u128 n) {
    if (n == 0 || n >= (u128(1) << 127))
        throw std::invalid_argument("factor_integer: n out of range");
    FactoredInteger out;
    out.value = n;
    std::vector<u128> primes;
    for (u64 p : small_primes()) {
        if (u128(p) * p > n) break;
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1 && n < u128(100000) * 100000) {
        primes.push_back(n);  // below trial bound squared, must be prime
    } else {
        factor_rec(n, primes);
    }
    std::sort(primes.begin(), primes.end());
    for (u128 p : primes) {
        if (!out.factors.empty() && out.factors.back().prime == p)
            ++out.factors.back().exponent;
        else
            out.factors.push_back({p, 1});
    }
    return out;
}

namespace detail {
std::vector<std::vector<long long>> cyclotomic_coeffs = {
    {},                                        // d = 0 unused
    {-1, 1},                                   // x - 1
    {1, 1},                                    // x + 1
    {1, 1, 1},                                 // x^2 + x + 1
    {1, 0, 1},                                 // x^2 + 1
    {1, 1, 1, 1, 1},                           // x^4 + ... + 1
    {1, -1, 1},                                // x^2 - x + 1
    {1, 1, 1, 1, 1, 1, 1},                     // x^6 + ... + 1
    {1, 0, 0, 0, 1},                           // x^4 + 1
    {1, 0, 0, 1, 0, 0, 1},                     // x^6 + x^3 + 1
    {1, -1, 1, -1, 1},                         // x^4 - x^3 + x^2 - x + 1
    {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},         // x^10 + ... + 1
    {1, 0, -1, 0, 1},                          // x^4 - x^2 + 1
};
}  // namespace detail

u128 cyclotomic_eval(unsigned d, u64 p) {
    if (d == 0 || d >= detail::cyclotomic_coeffs.size())
        throw std::invalid_argument("cyclotomic_eval: unsupported index");
    if (p < 2) throw std::invalid_argument("cyclotomic_eval: p must be >= 2");
    const auto& c = detail::cyclotomic_coeffs[d];
    i128 acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * i128(p) + *it;
    return u128(acc);  // positive for p >= 2
}

FactoredInteger factor_pk_minus_1(u64 p, unsigned k) {
    if (k == 0 || k > 6)
        throw std::invalid_argument("factor_pk_minus_1: k must be in [1,6]");
    u128 pk = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (pk > (u128(1) << 127) / p)
            throw std::invalid_argument("factor_pk_minus_1: p^k out of range");
        pk *= p;
    }
    FactoredInteger out;
    out.value = pk - 1;
    std::vector<factor_power> merged;
    for (unsigned d = 1; d <= k; ++d) {
        if (k % d) continue;
        FactoredInteger part = factor_integer(cyclotomic_eval(d, p));
        for (const auto& f : part.factors) merged.push_back(f);
    }
    std::sort(merged.begin(), merged.end(),
              [](const factor_power& a, const factor_power& b) {
                  return a.prime < b.prime;
              });
    for (const auto& f : merged) {
        if (!out.factors.empty() && out.factors.back().prime == f.prime)
            out.factors.back().exponent += f.exponent;
        else
            out.factors.push_back(f);
    }
    return out;
}

u128 ell_of_q(u64 q, FactorialCap cap) {
    if (!is_prime(q)) throw std::invalid_argument("ell_of_q: q must be prime");
    // Legendre: v_q(H!) = sum_{i>=1} floor(H / q^i)
    u64 v = 0;
    u64 qi = q;
    while (qi <= cap.H) {
        v += cap.H / qi;
        if (qi > cap.H / q) break;
        qi *= q;
    }
    u128 r = 1;
    for (u64 i = 0; i <= v; ++i) r *= q;
    return r;
}

namespace {

constexpr u64 kRoughEnumCap = 1u << 20;

bool rough_dfs(const std::vector<std::pair<u128, unsigned>>& pw, size_t idx,
               u128 prod, u128 low, u128 high, u64& budget) {
    if (budget-- == 0)
        throw budget_error("has_rough_divisor_in_range: enumeration cap hit");
    if (prod >= low && prod <= high) return true;
    if (idx == pw.size()) return false;
    // primes are ascending; prod only grows, so prune above high
    u128 cur = prod;
    for (unsigned e = 0; e <= pw[idx].second; ++e) {
        if (cur > high) break;
        if (rough_dfs(pw, idx + 1, cur, low, high, budget)) return true;
        if (e < pw[idx].second) {
            if (cur > high / pw[idx].first) break;
            cur *= pw[idx].first;
        }
    }
    return false;
}

}  // namespace

bool has_rough_divisor_in_range(const FactoredInteger& n, u128 low, u128 high,
                                u128 rough_bound) {
    if (low > high)
        throw std::invalid_argument("has_rough_divisor_in_range: low > high");
    std::vector<std::pair<u128, unsigned>> pw;
    for (const auto& f : n.factors)
        if (f.prime >= rough_bound) pw.push_back({f.prime, f.exponent});
    u64 budget = kRoughEnumCap;
    return rough_dfs(pw, 0, 1, low, high, budget);
}

u128 largest_prime_factor(const FactoredInteger& n) {
    if (n.factors.empty())
        throw std::invalid_argument("largest_prime_factor: undefined for unit");
    return n.factors.back().prime;
}

}  // namespace ordc
