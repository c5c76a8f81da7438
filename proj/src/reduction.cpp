#include "ordcensus/reduction.hpp"

#include <algorithm>
#include <numeric>

namespace ordc {

Rational make_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

namespace {

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("resultant: 128-bit overflow");
    return r;
}

}  // namespace

i128 resultant(const std::vector<long long>& a, const std::vector<long long>& b) {
    int m = int(a.size()) - 1, n = int(b.size()) - 1;
    while (m >= 0 && a[size_t(m)] == 0) --m;
    while (n >= 0 && b[size_t(n)] == 0) --n;
    if (m < 0 || n < 0) return 0;
    if (m == 0 && n == 0) return 1;
    int size = m + n;
    // Sylvester matrix, rows of b-shifts then a-shifts
    std::vector<std::vector<i128>> s(size_t(size), std::vector<i128>(size_t(size), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[size_t(i)][size_t(i + j)] = a[size_t(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[size_t(n + i)][size_t(i + j)] = b[size_t(n - j)];
    // Bareiss fraction-free elimination
    i128 prev = 1;
    int sign = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (s[size_t(k)][size_t(k)] == 0) {
            int piv = -1;
            for (int r = k + 1; r < size; ++r)
                if (s[size_t(r)][size_t(k)] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(s[size_t(k)], s[size_t(piv)]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                i128 v = checked_mul(s[size_t(i)][size_t(j)], s[size_t(k)][size_t(k)]) -
                         checked_mul(s[size_t(i)][size_t(k)], s[size_t(k)][size_t(j)]);
                s[size_t(i)][size_t(j)] = v / prev;  // exact
            }
            s[size_t(i)][size_t(k)] = 0;
        }
        prev = s[size_t(k)][size_t(k)];
    }
    return sign * s[size_t(size) - 1][size_t(size) - 1];
}

namespace {

i128 poly_discriminant(const std::vector<long long>& f) {
    int k = int(f.size()) - 1;
    std::vector<long long> df;
    for (int i = 1; i <= k; ++i) df.push_back(f[size_t(i)] * i);
    i128 res = resultant(f, df);
    i128 d = res / f[size_t(k)];  // exact for the discriminant relation
    if ((i128(k) * (k - 1) / 2) % 2 == 1) d = -d;
    return d;
}

}  // namespace

AlgebraicNumberSpec::AlgebraicNumberSpec(std::vector<long long> coeffs_,
                                         std::string label_)
    : coeffs(std::move(coeffs_)), label(std::move(label_)) {
    if (coeffs.size() < 2)
        throw std::invalid_argument("AlgebraicNumberSpec: degree must be >= 1");
    if (coeffs.back() <= 0)
        throw std::invalid_argument(
            "AlgebraicNumberSpec: leading coefficient must be positive");
    long long g = 0;
    for (long long c : coeffs) g = std::gcd(g, c < 0 ? -c : c);
    if (g != 1)
        throw std::invalid_argument("AlgebraicNumberSpec: coefficients not primitive");
    if (coeffs.front() == 0)
        throw std::invalid_argument(
            "AlgebraicNumberSpec: zero constant term (alpha must be non-zero)");
    disc_ = poly_discriminant(coeffs);
}

bool AlgebraicNumberSpec::spot_check_irreducible() const {
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                  59, 61, 67, 71, 73, 79, 83, 89, 97}) {
        PrimeSplitting s = classify_prime(*this, p);
        if (s.excluded) continue;
        if (s.degrees.size() == 1 && s.degrees[0] == degree()) return true;
    }
    return false;
}

PrimeSplitting classify_prime(const AlgebraicNumberSpec& spec, u64 p) {
    PrimeSplitting out;
    out.p = p;
    long long lead = spec.lead() % (long long)p;
    long long c0 = spec.coeffs.front() % (long long)p;
    i128 disc_mod = spec.discriminant() % i128(p);
    out.excluded = (lead == 0) || (c0 == 0) || (disc_mod == 0);
    PolyModP f = poly_reduce(spec.coeffs, p);
    if (f.is_zero()) return out;  // p divides every coefficient of a non-primitive tail
    if (f.degree() < 1) return out;
    for (auto& [g, mult] : factor_mod_p(f)) {
        for (unsigned i = 0; i < mult; ++i) out.degrees.push_back(unsigned(g.degree()));
        if (mult > 1) out.ramified = true;
    }
    std::sort(out.degrees.begin(), out.degrees.end());
    return out;
}

std::vector<FieldElement> reductions_of_degree(const AlgebraicNumberSpec& spec,
                                               u64 p, unsigned d) {
    PrimeSplitting s = classify_prime(spec, p);
    if (s.excluded)
        throw excluded_prime("reductions_of_degree: excluded prime " + std::to_string(p));
    PolyModP f = poly_monic(poly_reduce(spec.coeffs, p));
    std::vector<FieldElement> out;
    for (auto& [g, mult] : factor_mod_p(f)) {
        (void)mult;  // unramified, multiplicities are 1
        if (g.degree() == int(d)) out.push_back(make_generator(p, g));
    }
    return out;
}

bool is_in_S(const AlgebraicNumberSpec& spec, u64 p, unsigned d) {
    PrimeSplitting s = classify_prime(spec, p);
    if (s.excluded) return false;
    return std::find(s.degrees.begin(), s.degrees.end(), d) != s.degrees.end();
}

Rational norm_of_alpha(const AlgebraicNumberSpec& spec) {
    long long c0 = spec.coeffs.front();
    long long ck = spec.lead();
    long long num = (spec.degree() % 2 == 0) ? c0 : -c0;
    return make_rational(num, ck);
}

}  // namespace ordc
