#include "ordcensus/selftest.hpp"

#include <ostream>

namespace ordc {

namespace {

bool suite_cyclotomic() {
    for (u64 p : {2, 3, 5, 11, 97, 65521}) {
        for (unsigned k = 1; k <= 12; ++k) {
            u128 pk = 1;
            bool overflow = false;
            for (unsigned i = 0; i < k; ++i) {
                if (pk > ~u128(0) / p) {
                    overflow = true;
                    break;
                }
                pk *= p;
            }
            if (overflow) continue;
            u128 prod = 1;
            for (unsigned d = 1; d <= k; ++d)
                if (k % d == 0) prod *= cyclotomic_eval(d, p);
            if (prod != pk - 1) return false;
        }
    }
    return true;
}

bool suite_factor_roundtrip() {
    for (u64 n = 2; n <= 3000; ++n) {
        FactoredInteger f = factor_integer(n);
        u128 prod = 1;
        u128 prev = 0;
        for (const auto& fp : f.factors) {
            if (fp.prime <= prev || !is_prime(fp.prime) || fp.exponent == 0)
                return false;
            prev = fp.prime;
            for (unsigned i = 0; i < fp.exponent; ++i) prod *= fp.prime;
        }
        if (prod != n || f.value != n) return false;
    }
    for (u128 n : {u128(1000003) * 1000033, u128(2147483647),
                   (u128(1) << 61) - 1}) {
        FactoredInteger f = factor_integer(n);
        u128 prod = 1;
        for (const auto& fp : f.factors) {
            if (!is_prime(fp.prime)) return false;
            for (unsigned i = 0; i < fp.exponent; ++i) prod *= fp.prime;
        }
        if (prod != n) return false;
    }
    return true;
}

PolyModP least_irreducible(u64 p, unsigned d) {
    std::vector<u64> c(d + 1, 0);
    c[d] = 1;
    while (true) {
        PolyModP g(p, c);
        if (g.degree() == int(d) && is_irreducible(g)) return g;
        size_t i = 0;
        while (i < d && ++c[i] == p) c[i++] = 0;
        if (i == d) return PolyModP(p, {0, 1});
    }
}

bool suite_order_vs_powers() {
    for (auto [p, k] : std::initializer_list<std::pair<u64, unsigned>>{
             {2, 1}, {2, 3}, {3, 2}, {5, 2}, {7, 1}, {7, 2}, {3, 4}, {11, 1}}) {
        PolyModP g = least_irreducible(p, k);
        FactoredInteger group = factor_pk_minus_1(p, k);
        FieldElement one = make_constant(1, p, g);
        std::vector<u64> c(k, 0);
        while (true) {
            size_t i = 0;
            while (i < k && ++c[i] == p) c[i++] = 0;
            if (i == k) break;
            FieldElement a(p, g, c);
            u128 naive = 1;
            FieldElement acc = a;
            while (!(acc == one)) {
                acc = ext_mul(acc, a);
                ++naive;
            }
            if (mult_order(a, group) != naive) return false;
        }
    }
    return true;
}

bool suite_fibonacci_periods() {
    RecurrenceSpec fib({-1, -1, 1},
                       {make_rational(1, 1), make_rational(1, 1)});
    // (p, pi(p)) pairs; p = 5 divides the discriminant and is excluded
    const std::pair<u64, u64> known[] = {
        {2, 3},   {3, 8},   {7, 16},  {11, 10}, {13, 28}, {17, 36},
        {19, 18}, {23, 48}, {29, 14}, {31, 30}, {37, 76}, {41, 40},
        {43, 88}, {47, 32}, {101, 50}};
    for (auto [p, pi] : known)
        if (period_mod_p(fib, p) != pi) return false;
    if (!linrec_excluded(fib, 5)) return false;
    return true;
}

bool suite_hand_examples() {
    // ord of sqrt(2) in F_9 is 8? No: x^2-2 over F_3, alpha^2=2, alpha^4=4=1
    AlgebraicNumberSpec sqrt2({-2, 0, 1}, "sqrt2");
    auto rec = order_record(sqrt2, 3, 2);
    if (!rec || rec->ord != 4 || rec->index != 2) return false;

    GlobalLemmaResult g = run_global_lemma_check(3, 2);
    if (g.total != 1 || g.violations != 1) return false;
    g = run_global_lemma_check(2, 100);
    if (g.violations != 0) return false;

    RecurrenceSpec pow2({-2, 1}, {make_rational(1, 1)});
    if (period_mod_p(pow2, 5) != 4) return false;
    EquidistReport rep = residue_histogram(pow2, 5);
    if (rep.T != 4 || rep.max_dev_num != 4 || !rep.within_bound()) return false;
    return true;
}

}  // namespace

bool run_selftest(std::ostream& os) {
    struct Suite {
        const char* name;
        bool (*fn)();
    };
    const Suite suites[] = {
        {"cyclotomic-product-identity", suite_cyclotomic},
        {"factorization-round-trip", suite_factor_roundtrip},
        {"order-vs-exhaustive-powers", suite_order_vs_powers},
        {"fibonacci-period-corpus", suite_fibonacci_periods},
        {"hand-checked-examples", suite_hand_examples},
    };
    bool all = true;
    for (const auto& s : suites) {
        bool ok = false;
        try {
            ok = s.fn();
        } catch (...) {
            ok = false;
        }
        os << (ok ? "pass" : "FAIL") << "  " << s.name << "\n";
        all = all && ok;
    }
    return all;
}

}  // namespace ordc
