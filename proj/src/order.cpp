#include "ordcensus/order.hpp"

#include <algorithm>
#include <numeric>

namespace ordc {

u128 mult_order(const FieldElement& a, const FactoredInteger& group_order) {
    if (a.is_zero()) throw std::invalid_argument("mult_order: zero element");
    if (group_order.value != a.field_size() - 1)
        throw std::invalid_argument("mult_order: group order mismatch");
    u128 n = group_order.value;
    FieldElement one = make_constant(1, a.p, a.modulus);
    for (const auto& f : group_order.factors) {
        for (unsigned i = 0; i < f.exponent; ++i) {
            if (ext_pow(a, n / f.prime) == one)
                n /= f.prime;
            else
                break;
        }
    }
    return n;
}

bool is_power_residue(const FieldElement& a, u128 ell,
                      const FactoredInteger& group_order) {
    if (ell == 0 || group_order.value % ell != 0)
        throw std::invalid_argument("is_power_residue: ell does not divide group order");
    FieldElement one = make_constant(1, a.p, a.modulus);
    return ext_pow(a, group_order.value / ell) == one;
}

bool condition_Cq(u64 p, const FieldElement& a, u64 q, FactorialCap cap,
                  unsigned d) {
    unsigned k = a.ext_degree();
    if (d == 0 || k % d != 0)
        throw std::invalid_argument("condition_Cq: d must divide the field degree");
    u128 ell = ell_of_q(q, cap);
    if (cyclotomic_eval(d, p) % ell != 0) return false;
    u128 size = a.field_size() - 1;
    if (size % ell != 0) return false;  // ell | Phi_d(p) | p^k - 1 normally
    FieldElement one = make_constant(1, a.p, a.modulus);
    return ext_pow(a, size / ell) == one;
}

std::optional<OrderRecord> order_record(const AlgebraicNumberSpec& spec, u64 p,
                                        unsigned d) {
    if (!is_in_S(spec, p, d)) return std::nullopt;
    auto elems = reductions_of_degree(spec, p, d);
    FactoredInteger group = factor_pk_minus_1(p, d);
    OrderRecord rec;
    rec.p = p;
    rec.d = d;
    rec.ord = mult_order(elems.front(), group);
    rec.index = group.value / rec.ord;
    return rec;
}

ProductOrderResult best_product_order(const std::vector<FieldElement>& elems,
                                      unsigned N,
                                      const FactoredInteger& group_order) {
    if (elems.empty())
        throw std::invalid_argument("best_product_order: empty element list");
    if (N < 2) throw std::invalid_argument("best_product_order: N must be >= 2");
    const size_t n = elems.size();
    u128 total = 1;
    for (size_t i = 0; i < n; ++i) {
        total *= N;
        if (total > (u128(1) << 24))
            throw budget_error("best_product_order: N^n exceeds 2^24 cap");
    }
    // power tables elems[i]^e, e < N
    std::vector<std::vector<FieldElement>> pows(n);
    for (size_t i = 0; i < n; ++i) {
        pows[i].push_back(make_constant(1, elems[i].p, elems[i].modulus));
        for (unsigned e = 1; e < N; ++e)
            pows[i].push_back(ext_mul(pows[i].back(), elems[i]));
    }
    ProductOrderResult best;
    std::vector<unsigned> e(n, 0);
    // lexicographic enumeration, e[0] most significant
    while (true) {
        // next vector
        size_t i = n;
        while (i > 0) {
            --i;
            if (++e[i] < N) break;
            e[i] = 0;
            if (i == 0) return best;
        }
        // rebuild in lexicographic order relative to e[0]: the counter above
        // increments e[n-1] fastest, which is exactly lex order on (e_1..e_n)
        FieldElement prod = pows[0][e[0]];
        for (size_t j = 1; j < n; ++j) prod = ext_mul(prod, pows[j][e[j]]);
        if (prod.is_zero()) continue;
        u128 o = mult_order(prod, group_order);
        if (o > best.ord) {
            best.ord = o;
            best.exponents = e;
        }
    }
}

namespace {

// lexicographically least monic irreducible of degree d mod p
PolyModP least_irreducible(u64 p, unsigned d) {
    if (d == 1) return PolyModP(p, {0, 1});  // x
    std::vector<u64> c(d + 1, 0);
    c[d] = 1;
    while (true) {
        PolyModP g(p, c);
        if (g.degree() == int(d) && is_irreducible(g)) return g;
        // increment coefficient counter below the leading term
        size_t i = 0;
        while (i < d && ++c[i] == p) c[i++] = 0;
        if (i == d) throw std::logic_error("least_irreducible: exhausted");
    }
}

// evaluate a mod-p polynomial at an extension field element
FieldElement poly_eval_ext(const PolyModP& f, const FieldElement& x) {
    FieldElement acc = make_constant(0, x.p, x.modulus);
    for (auto it = f.c.rbegin(); it != f.c.rend(); ++it)
        acc = ext_mul(acc, x), acc.c[0] = (acc.c[0] + *it) % x.p;
    return acc;
}

}  // namespace

std::optional<std::vector<unsigned>> small_relation_scan(
    const std::vector<AlgebraicNumberSpec>& specs, const std::vector<u64>& primes,
    unsigned exponent_bound) {
    if (specs.empty() || primes.empty()) return std::nullopt;
    if (exponent_bound < 2)
        throw std::invalid_argument("small_relation_scan: exponent bound must be >= 2");
    size_t n = 0;
    for (const auto& s : specs) n += s.degree();
    u128 space = 1;
    for (size_t i = 0; i < n; ++i) {
        space *= exponent_bound;
        if (space > (u128(1) << 24))
            throw budget_error("small_relation_scan: exponent space exceeds 2^24");
    }

    std::optional<std::vector<std::vector<unsigned>>> survivors;
    for (u64 p : primes) {
        bool usable = true;
        unsigned L = 1;
        for (const auto& s : specs) {
            PrimeSplitting sp = classify_prime(s, p);
            if (sp.excluded) {
                usable = false;
                break;
            }
            for (unsigned d : sp.degrees) L = unsigned(std::lcm(L, d));
        }
        if (!usable) continue;
        u128 fs = 1;
        bool small_enough = true;
        for (unsigned i = 0; i < L; ++i) {
            fs *= p;
            if (fs > (u128(1) << 20)) {
                small_enough = false;
                break;
            }
        }
        if (!small_enough) continue;  // root search infeasible at this prime

        PolyModP modulus = least_irreducible(p, L);
        // all roots of each spec in F_{p^L}, canonical element order
        std::vector<FieldElement> roots;
        bool complete = true;
        for (const auto& s : specs) {
            PolyModP f = poly_monic(poly_reduce(s.coeffs, p));
            std::vector<FieldElement> mine;
            // enumerate field elements by coefficient counter
            std::vector<u64> c(size_t(L), 0);
            while (true) {
                FieldElement cand(p, modulus, c);
                if (!cand.is_zero() && poly_eval_ext(f, cand).is_zero())
                    mine.push_back(cand);
                size_t i = 0;
                while (i < c.size() && ++c[i] == p) c[i++] = 0;
                if (i == c.size()) break;
            }
            if (mine.size() != s.degree()) {
                complete = false;  // some conjugate escapes F_{p^L}
                break;
            }
            for (auto& r : mine) roots.push_back(std::move(r));
        }
        if (!complete) continue;

        FieldElement one = make_constant(1, p, modulus);
        std::vector<std::vector<FieldElement>> pows(n);
        for (size_t i = 0; i < n; ++i) {
            pows[i].push_back(one);
            for (unsigned e = 1; e < exponent_bound; ++e)
                pows[i].push_back(ext_mul(pows[i].back(), roots[i]));
        }

        auto holds = [&](const std::vector<unsigned>& e) {
            FieldElement prod = one;
            for (size_t i = 0; i < n; ++i) prod = ext_mul(prod, pows[i][e[i]]);
            return prod == one;
        };

        if (!survivors) {
            survivors.emplace();
            std::vector<unsigned> e(n, 0);
            while (true) {
                size_t i = n;
                bool done = false;
                while (i > 0) {
                    --i;
                    if (++e[i] < exponent_bound) break;
                    e[i] = 0;
                    if (i == 0) done = true;
                }
                if (done) break;
                if (holds(e)) survivors->push_back(e);
            }
        } else {
            std::vector<std::vector<unsigned>> kept;
            for (auto& e : *survivors)
                if (holds(e)) kept.push_back(e);
            *survivors = std::move(kept);
        }
        if (survivors->empty()) return std::nullopt;
    }
    if (!survivors || survivors->empty()) return std::nullopt;
    return survivors->front();  // lexicographically least by construction
}

}  // namespace ordc
