#include "ordcensus/linrec.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ordc {

namespace {

i128 char_poly_discriminant(const std::vector<long long>& f) {
    int k = int(f.size()) - 1;
    std::vector<long long> df;
    for (int i = 1; i <= k; ++i) df.push_back(f[size_t(i)] * i);
    return resultant(f, df);  // leading coefficient 1, sign is irrelevant here
}

using Mat = std::vector<std::vector<u64>>;

Mat mat_mul(const Mat& a, const Mat& b, u64 p) {
    size_t k = a.size();
    Mat r(k, std::vector<u64>(k, 0));
    for (size_t i = 0; i < k; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (!a[i][l]) continue;
            u128 ail = a[i][l];
            for (size_t j = 0; j < k; ++j)
                r[i][j] = u64((r[i][j] + ail * b[l][j]) % p);
        }
    return r;
}

std::vector<u64> mat_apply(const Mat& a, const std::vector<u64>& v, u64 p) {
    size_t k = a.size();
    std::vector<u64> r(k, 0);
    for (size_t i = 0; i < k; ++i) {
        u128 acc = 0;
        for (size_t j = 0; j < k; ++j) acc += u128(a[i][j]) * v[j];
        r[i] = u64(acc % p);
    }
    return r;
}

std::vector<u64> mat_pow_apply(Mat m, u128 e, std::vector<u64> v, u64 p) {
    while (e) {
        if (e & 1) v = mat_apply(m, v, p);
        m = mat_mul(m, m, p);
        e >>= 1;
    }
    return v;
}

Mat companion(const RecurrenceSpec& rec, u64 p) {
    unsigned k = rec.degree();
    Mat m(k, std::vector<u64>(k, 0));
    for (unsigned i = 0; i + 1 < k; ++i) m[i][i + 1] = 1;
    for (unsigned j = 0; j < k; ++j) {
        long long c = rec.char_coeffs[j] % (long long)p;
        if (c < 0) c += (long long)p;
        m[k - 1][j] = (p - u64(c)) % p;
    }
    return m;
}

std::vector<u64> initial_state(const RecurrenceSpec& rec, u64 p) {
    std::vector<u64> s;
    for (const auto& r : rec.initial) {
        long long num = r.num % (long long)p;
        if (num < 0) num += (long long)p;
        u64 den = u64(r.den % (long long)p);
        s.push_back((u64(num) * mod_inverse(den, p)) % p);
    }
    return s;
}

}  // namespace

RecurrenceSpec::RecurrenceSpec(std::vector<long long> char_coeffs_,
                               std::vector<Rational> initial_)
    : char_coeffs(std::move(char_coeffs_)), initial(std::move(initial_)) {
    if (char_coeffs.size() < 2)
        throw std::invalid_argument("RecurrenceSpec: degree must be >= 1");
    if (char_coeffs.back() != 1)
        throw std::invalid_argument("RecurrenceSpec: characteristic polynomial must be monic");
    if (char_coeffs.front() == 0)
        throw std::invalid_argument("RecurrenceSpec: constant term must be nonzero");
    if (initial.size() != degree())
        throw std::invalid_argument("RecurrenceSpec: need exactly k initial values");
    bool all_zero = true;
    for (const auto& r : initial) {
        if (r.den == 0)
            throw std::invalid_argument("RecurrenceSpec: zero denominator");
        if (r.num != 0) all_zero = false;
    }
    if (all_zero)
        throw std::invalid_argument("RecurrenceSpec: initial values all zero");
    disc_ = char_poly_discriminant(char_coeffs);
}

bool linrec_excluded(const RecurrenceSpec& rec, u64 p) {
    long long c0 = rec.char_coeffs.front() % (long long)p;
    if (c0 == 0) return true;
    for (const auto& r : rec.initial)
        if (r.den % (long long)p == 0) return true;
    if (rec.discriminant() % i128(p) == 0) return true;
    return false;
}

PeriodInfo period_info(const RecurrenceSpec& rec, u64 p) {
    if (linrec_excluded(rec, p))
        throw excluded_prime("period_info: excluded prime " + std::to_string(p));
    PolyModP f = poly_reduce(rec.char_coeffs, p);
    // lcm of root orders across the splitting field
    std::map<u128, unsigned> lcm_factors;
    u128 L = 1;
    for (auto& [g, mult] : factor_mod_p(f)) {
        (void)mult;  // squarefree mod p by the exclusion predicate
        unsigned d = unsigned(g.degree());
        FactoredInteger group = factor_pk_minus_1(p, d);
        u128 ord = mult_order(make_generator(p, g), group);
        for (const auto& fp : group.factors) {
            unsigned e = 0;
            u128 o = ord;
            while (o % fp.prime == 0) {
                o /= fp.prime;
                ++e;
            }
            if (e > lcm_factors[fp.prime]) lcm_factors[fp.prime] = e;
        }
    }
    for (const auto& [q, e] : lcm_factors)
        for (unsigned i = 0; i < e; ++i) L *= q;

    // minimal T with M^T s0 = s0; the valid T form a subgroup, so descend
    Mat M = companion(rec, p);
    std::vector<u64> s0 = initial_state(rec, p);
    u128 T = L;
    for (const auto& [q, e] : lcm_factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (T % q != 0) break;
            if (mat_pow_apply(M, T / q, s0, p) == s0)
                T /= q;
            else
                break;
        }
    }
    return {T, L};
}

u128 period_mod_p(const RecurrenceSpec& rec, u64 p) {
    return period_info(rec, p).T;
}

bool EquidistReport::within_bound() const {
    // max_dev <= p^{k/2}  <=>  max_dev_num^2 <= p^{k+2}
    u128 lhs = max_dev_num * max_dev_num;
    u128 rhs = 1;
    for (unsigned i = 0; i < k + 2; ++i) rhs *= p;
    return lhs <= rhs;
}

EquidistReport residue_histogram(const RecurrenceSpec& rec, u64 p) {
    PeriodInfo pi = period_info(rec, p);
    if (pi.T > (u128(1) << 27))
        throw budget_error("residue_histogram: period exceeds iteration cap");
    EquidistReport rep;
    rep.p = p;
    rep.T = pi.T;
    rep.k = rec.degree();
    rep.counts.assign(p, 0);
    unsigned k = rec.degree();
    std::vector<u64> s = initial_state(rec, p);
    std::vector<u64> neg_c(k);
    for (unsigned j = 0; j < k; ++j) {
        long long c = rec.char_coeffs[j] % (long long)p;
        if (c < 0) c += (long long)p;
        neg_c[j] = (p - u64(c)) % p;
    }
    size_t head = 0;  // ring buffer over s
    for (u128 step = 0; step < pi.T; ++step) {
        ++rep.counts[s[head]];
        u128 acc = 0;
        for (unsigned j = 0; j < k; ++j) acc += u128(neg_c[j]) * s[(head + j) % k];
        s[head] = u64(acc % p);
        head = (head + 1) % k;
    }
    // max over residues of |count*p - T| / p
    for (u64 r = 0; r < p; ++r) {
        u128 lhs = u128(rep.counts[r]) * p;
        u128 dev = lhs > rep.T ? lhs - rep.T : rep.T - lhs;
        if (dev > rep.max_dev_num) rep.max_dev_num = dev;
    }
    return rep;
}

bool check_equidist(const RecurrenceSpec& rec, u64 p) {
    return residue_histogram(rec, p).within_bound();
}

}  // namespace ordc
