#include "ordcensus/gf.hpp"

#include <algorithm>
#include <atomic>
#include <random>

namespace ordc {

namespace {

void strip(std::vector<u64>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

u64 fnv_mix(u64 h, u64 v) {
    h ^= v;
    h *= 0x100000001b3ULL;
    return h;
}

}  // namespace

PolyModP::PolyModP(u64 p_, std::vector<u64> coeffs) : p(p_), c(std::move(coeffs)) {
    if (p < 2 || p > (u64(1) << 20))
        throw std::invalid_argument("PolyModP: p out of supported range");
    static std::atomic<u64> last_valid{0};
    if (p != last_valid.load(std::memory_order_relaxed)) {
        if (!is_prime(p))
            throw std::invalid_argument("PolyModP: p must be prime");
        last_valid.store(p, std::memory_order_relaxed);
    }
    for (auto& x : c) x %= p;
    strip(c);
}

std::strong_ordering poly_order(const PolyModP& a, const PolyModP& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.c[i] != b.c[i]) return a.c[i] <=> b.c[i];
    return std::strong_ordering::equal;
}

PolyModP poly_reduce(const std::vector<long long>& coeffs, u64 p) {
    std::vector<u64> c(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        long long r = coeffs[i] % (long long)p;
        if (r < 0) r += (long long)p;
        c[i] = (u64)r;
    }
    return PolyModP(p, std::move(c));
}

PolyModP poly_add(const PolyModP& a, const PolyModP& b) {
    PolyModP r;
    r.p = a.p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = (a.coeff(i) + b.coeff(i)) % a.p;
    strip(r.c);
    return r;
}

PolyModP poly_sub(const PolyModP& a, const PolyModP& b) {
    PolyModP r;
    r.p = a.p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = (a.coeff(i) + a.p - b.coeff(i)) % a.p;
    strip(r.c);
    return r;
}

PolyModP poly_mul(const PolyModP& a, const PolyModP& b) {
    PolyModP r;
    r.p = a.p;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.p;
    }
    strip(r.c);
    return r;
}

u64 mod_inverse(u64 a, u64 p) {
    long long t = 0, newt = 1;
    long long r = (long long)p, newr = (long long)(a % p);
    while (newr) {
        long long q = r / newr;
        long long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: not invertible");
    if (t < 0) t += (long long)p;
    return (u64)t;
}

namespace {

// quotient and remainder of a / b
std::pair<PolyModP, PolyModP> poly_divmod(const PolyModP& a, const PolyModP& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_divmod: zero divisor");
    const u64 p = a.p;
    PolyModP quot, rem = a;
    quot.p = p;
    if (a.degree() >= b.degree())
        quot.c.assign(size_t(a.degree() - b.degree()) + 1, 0);
    u64 inv = mod_inverse(b.lead(), p);
    while (rem.degree() >= b.degree()) {
        u64 q = (rem.lead() * inv) % p;
        size_t shift = size_t(rem.degree() - b.degree());
        quot.c[shift] = q;
        for (size_t i = 0; i < b.c.size(); ++i) {
            u64 sub = (q * b.c[i]) % p;
            rem.c[i + shift] = (rem.c[i + shift] + p - sub) % p;
        }
        strip(rem.c);
    }
    strip(quot.c);
    return {quot, rem};
}

PolyModP poly_divexact(const PolyModP& a, const PolyModP& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("poly_divexact: nonzero remainder");
    return q;
}

}  // namespace

PolyModP poly_mod(const PolyModP& a, const PolyModP& m) {
    return poly_divmod(a, m).second;
}

PolyModP poly_monic(const PolyModP& a) {
    if (a.is_zero()) return a;
    PolyModP r = a;
    u64 inv = mod_inverse(a.lead(), a.p);
    for (auto& x : r.c) x = (x * inv) % a.p;
    return r;
}

PolyModP poly_gcd(PolyModP a, PolyModP b) {
    while (!b.is_zero()) {
        PolyModP t = poly_mod(a, b);
        a = std::move(b);
        b = std::move(t);
    }
    return poly_monic(a);
}

PolyModP poly_derivative(const PolyModP& a) {
    PolyModP r;
    r.p = a.p;
    if (a.degree() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        r.c[i - 1] = (a.c[i] * (i % a.p)) % a.p;
    strip(r.c);
    return r;
}

PolyModP poly_powmod(PolyModP base, u128 e, const PolyModP& m) {
    PolyModP r(m.p, {1});
    base = poly_mod(base, m);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base), m);
        base = poly_mod(poly_mul(base, base), m);
        e >>= 1;
    }
    return r;
}

namespace {

// (monic squarefree part, multiplicity) pairs, multiplicities ascending
std::vector<std::pair<PolyModP, unsigned>> squarefree_decompose(const PolyModP& f) {
    std::vector<std::pair<PolyModP, unsigned>> result;
    const u64 p = f.p;
    PolyModP g = poly_monic(f);
    if (g.degree() < 1) return result;
    PolyModP dg = poly_derivative(g);
    if (dg.is_zero()) {
        // g = h(x^p); over F_p the coefficients transfer unchanged
        std::vector<u64> hc;
        for (size_t i = 0; i < g.c.size(); i += p) hc.push_back(g.c[i]);
        for (auto& [h, m] : squarefree_decompose(PolyModP(p, std::move(hc))))
            result.push_back({h, m * unsigned(p)});
        return result;
    }
    PolyModP c = poly_gcd(g, dg);
    PolyModP w = poly_divexact(g, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        PolyModP y = poly_gcd(w, c);
        PolyModP z = poly_divexact(w, y);
        if (z.degree() > 0) result.push_back({z, i});
        w = y;
        c = poly_divexact(c, y);
        ++i;
    }
    if (c.degree() > 0) {
        // leftover factors all have multiplicity divisible by p, so
        // c = v(x)^p = v(x^p); recurse on the p-th root
        std::vector<u64> vc;
        for (size_t j = 0; j < c.c.size(); j += p) vc.push_back(c.c[j]);
        for (auto& [h, m] : squarefree_decompose(PolyModP(p, std::move(vc))))
            result.push_back({h, m * unsigned(p)});
    }
    return result;
}

PolyModP random_poly(u64 p, int max_deg, std::mt19937_64& rng) {
    std::vector<u64> c(size_t(max_deg) + 1);
    for (auto& x : c) x = rng() % p;
    return PolyModP(p, std::move(c));
}

// f monic squarefree with all irreducible factors of degree d
void equal_degree_split(const PolyModP& f, unsigned d,
                        std::vector<PolyModP>& out, std::mt19937_64& rng) {
    if (f.degree() == int(d)) {
        out.push_back(f);
        return;
    }
    const u64 p = f.p;
    while (true) {
        PolyModP a = random_poly(p, f.degree() - 1, rng);
        if (a.degree() < 1) continue;
        PolyModP g = poly_gcd(a, f);
        if (g.degree() == 0 || g.degree() == f.degree()) {
            PolyModP b;
            if (p == 2) {
                // trace map a + a^2 + ... + a^(2^(d-1)) mod f
                b.p = p;
                PolyModP t = poly_mod(a, f);
                for (unsigned i = 0; i < d; ++i) {
                    b = poly_add(b, t);
                    t = poly_mod(poly_mul(t, t), f);
                }
            } else {
                u128 e = 1;
                for (unsigned i = 0; i < d; ++i) e *= p;
                b = poly_powmod(a, (e - 1) / 2, f);
                b = poly_sub(b, PolyModP(p, {1}));
            }
            g = poly_gcd(b, f);
            if (g.degree() == 0 || g.degree() == f.degree()) continue;
        }
        equal_degree_split(g, d, out, rng);
        equal_degree_split(poly_divexact(f, g), d, out, rng);
        return;
    }
}

u64 g_factor_seed = 0;

}  // namespace

void set_factor_seed(u64 seed) { g_factor_seed = seed; }
u64 factor_seed() { return g_factor_seed; }

std::vector<std::pair<PolyModP, unsigned>> factor_mod_p(const PolyModP& f,
                                                        u64 seed) {
    if (f.is_zero())
        throw std::invalid_argument("factor_mod_p: zero polynomial");
    u64 h = 0xcbf29ce484222325ULL;
    h = fnv_mix(h, f.p);
    for (u64 x : f.c) h = fnv_mix(h, x);
    h = fnv_mix(h, seed);
    h = fnv_mix(h, g_factor_seed);
    std::mt19937_64 rng(h);

    std::vector<std::pair<PolyModP, unsigned>> out;
    const u64 p = f.p;

    for (auto& [g, mult] : squarefree_decompose(f)) {
        // distinct-degree splitting on g
        PolyModP rest = g;
        PolyModP xp = poly_mod(PolyModP(p, {0, 1}), rest);
        unsigned d = 0;
        while (rest.degree() > 0) {
            ++d;
            if (int(2 * d) > rest.degree()) {
                out.push_back({rest, mult});
                break;
            }
            xp = poly_powmod(xp, p, rest);
            PolyModP diff = poly_sub(xp, PolyModP(p, {0, 1}));
            PolyModP gd = poly_gcd(diff, rest);
            if (gd.degree() > 0) {
                std::vector<PolyModP> irr;
                equal_degree_split(gd, d, irr, rng);
                for (auto& q : irr) out.push_back({q, mult});
                rest = poly_divexact(rest, gd);
                if (rest.degree() > 0) xp = poly_mod(xp, rest);
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return poly_order(a.first, b.first) == std::strong_ordering::less;
    });
    std::vector<std::pair<PolyModP, unsigned>> merged;
    for (auto& fp : out) {
        if (!merged.empty() &&
            poly_order(merged.back().first, fp.first) == std::strong_ordering::equal)
            merged.back().second += fp.second;
        else
            merged.push_back(fp);
    }
    return merged;
}

bool is_irreducible(const PolyModP& f, u64 seed) {
    if (f.degree() < 1) return false;
    auto fac = factor_mod_p(f, seed);
    return fac.size() == 1 && fac[0].second == 1;
}

FieldElement::FieldElement(u64 p_, PolyModP mod_, std::vector<u64> coeffs)
    : p(p_), modulus(std::move(mod_)), c(std::move(coeffs)) {
    if (modulus.degree() < 1)
        throw std::invalid_argument("FieldElement: modulus degree must be >= 1");
    if (modulus.lead() != 1)
        throw std::invalid_argument("FieldElement: modulus must be monic");
    c.resize(size_t(modulus.degree()), 0);
    for (auto& x : c) x %= p;
}

bool FieldElement::is_zero() const {
    for (u64 x : c)
        if (x) return false;
    return true;
}

u128 FieldElement::field_size() const {
    u128 s = 1;
    for (int i = 0; i < modulus.degree(); ++i) s *= p;
    return s;
}

FieldElement make_constant(u64 value, u64 p, const PolyModP& modulus) {
    std::vector<u64> c(size_t(modulus.degree()), 0);
    c[0] = value % p;
    return FieldElement(p, modulus, std::move(c));
}

FieldElement make_generator(u64 p, const PolyModP& modulus) {
    std::vector<u64> c(size_t(modulus.degree()), 0);
    if (modulus.degree() == 1) {
        c[0] = (p - modulus.c[0] % p) % p;  // the root of a linear modulus
    } else {
        c[1] = 1;
    }
    return FieldElement(p, modulus, std::move(c));
}

namespace {

void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.p != b.p || !(a.modulus == b.modulus))
        throw field_mismatch("field handles do not match");
}

}  // namespace

FieldElement ext_mul(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    PolyModP pa(a.p, a.c), pb(b.p, b.c);
    PolyModP r = poly_mod(poly_mul(pa, pb), a.modulus);
    return FieldElement(a.p, a.modulus, r.c);
}

FieldElement ext_pow(const FieldElement& a, u128 e) {
    FieldElement r = make_constant(1, a.p, a.modulus);
    FieldElement base = a;
    while (e) {
        if (e & 1) r = ext_mul(r, base);
        base = ext_mul(base, base);
        e >>= 1;
    }
    return r;
}

FieldElement frobenius(const FieldElement& a) { return ext_pow(a, a.p); }

u64 norm_to_base(const FieldElement& a) {
    if (a.is_zero()) throw std::invalid_argument("norm_to_base: zero element");
    unsigned k = a.ext_degree();
    u128 e = 0, pk = 1;
    for (unsigned i = 0; i < k; ++i) {
        e += pk;
        pk *= a.p;
    }
    FieldElement r = ext_pow(a, e);
    for (size_t i = 1; i < r.c.size(); ++i)
        if (r.c[i]) throw std::logic_error("norm_to_base: norm not in base field");
    return r.c[0];
}

}  // namespace ordc
