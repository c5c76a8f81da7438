#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ordcensus/reduction.hpp"

#include <algorithm>

using namespace ordc;

namespace {

// independent brute-force splitting type: repeatedly strip the least
// monic divisor found by trial division over all monic polynomials
std::vector<unsigned> brute_degrees(std::vector<long long> coeffs, u64 p) {
    // to monic over F_p
    std::vector<u64> f;
    for (long long c : coeffs) {
        long long r = c % (long long)p;
        if (r < 0) r += (long long)p;
        f.push_back(u64(r));
    }
    while (!f.empty() && f.back() == 0) f.pop_back();
    u64 inv = 1;  // inverse of the lead by scan; p is tiny here
    for (u64 t = 1; t < p; ++t)
        if (f.back() * t % p == 1) inv = t;
    for (auto& c : f) c = c * inv % p;

    // true iff monic b divides a exactly; fills the quotient
    auto divmod_ok = [&](const std::vector<u64>& a, const std::vector<u64>& b,
                         std::vector<u64>& quot) {
        std::vector<u64> r = a;
        quot.assign(a.size() - b.size() + 1, 0);
        while (r.size() >= b.size()) {
            u64 q = r.back();
            size_t shift = r.size() - b.size();
            quot[shift] = q;
            for (size_t i = 0; i < b.size(); ++i)
                r[i + shift] = (r[i + shift] + p - q * b[i] % p) % p;
            while (!r.empty() && r.back() == 0) r.pop_back();
        }
        return r.empty();
    };

    std::vector<unsigned> degs;
    while (f.size() > 1) {
        bool found = false;
        for (unsigned d = 1; d <= unsigned(f.size() - 1) && !found; ++d) {
            // all monic candidates of degree d, lexicographic
            std::vector<u64> g(d + 1, 0);
            g[d] = 1;
            while (true) {
                std::vector<u64> q;
                if (divmod_ok(f, g, q)) {
                    degs.push_back(d);
                    f = q;
                    found = true;
                    break;
                }
                size_t i = 0;
                while (i < d && ++g[i] == p) g[i++] = 0;
                if (i == d) break;
            }
        }
        REQUIRE(found);
    }
    std::sort(degs.begin(), degs.end());
    return degs;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS(AlgebraicNumberSpec({5}));            // degree 0
    CHECK_THROWS(AlgebraicNumberSpec({0, 1}));         // zero constant term
    CHECK_THROWS(AlgebraicNumberSpec({-2, 0, -1}));    // negative lead
    CHECK_THROWS(AlgebraicNumberSpec({-2, 0, 2}));     // not primitive
    CHECK_NOTHROW(AlgebraicNumberSpec({-2, 0, 1}));
    CHECK_NOTHROW(AlgebraicNumberSpec({3, 5}, "5x+3"));
}

TEST_CASE("resultant and discriminant on knowns") {
    // disc(x^2 + bx + c) = b^2 - 4c
    AlgebraicNumberSpec s1({-2, 0, 1});
    CHECK(s1.discriminant() == 8);
    AlgebraicNumberSpec s2({1, -3, 1});
    CHECK(s2.discriminant() == 5);
    // disc(x^3 + px + q) = -4p^3 - 27q^2
    AlgebraicNumberSpec s3({-2, 0, 0, 1});
    CHECK(s3.discriminant() == -108);
    AlgebraicNumberSpec s4({-1, -1, 0, 1});
    CHECK(s4.discriminant() == -23);
    AlgebraicNumberSpec s5({-1, 0, -2, 0, 1});  // x^4 - 2x^2 - 1
    CHECK(s5.discriminant() == -1024);
    CHECK(resultant({-1, 1}, {1, 1}) == 2);      // Res(x-1, x+1)
    CHECK(resultant({-2, 0, 1}, {-3, 0, 1}) == 1);
}

TEST_CASE("prime classification against brute factorization") {
    std::vector<AlgebraicNumberSpec> corpus = {
        AlgebraicNumberSpec({-2, 0, 1}),
        AlgebraicNumberSpec({1, -3, 1}),
        AlgebraicNumberSpec({-2, 0, 0, 1}),
        AlgebraicNumberSpec({-1, -1, 0, 1}),
        AlgebraicNumberSpec({-1, 0, -2, 0, 1}),
        AlgebraicNumberSpec({1, 1, 1, 1, 1}),       // 5th cyclotomic
        AlgebraicNumberSpec({3, 0, 0, 0, 0, 0, 2}), // non-monic sextic
    };
    for (const auto& spec : corpus) {
        for (u64 p : {2, 3, 5, 7, 11, 13}) {
            PrimeSplitting cls = classify_prime(spec, p);
            CHECK(cls.p == p);
            bool div_lead = spec.coeffs.back() % (long long)p == 0;
            bool div_const = spec.coeffs.front() % (long long)p == 0;
            bool div_disc = spec.discriminant() % i128(p) == 0;
            CHECK(cls.excluded == (div_lead || div_const || div_disc));
            if (cls.excluded) continue;
            auto degs = brute_degrees(spec.coeffs, p);
            CHECK(cls.degrees == degs);
            CHECK(std::is_sorted(cls.degrees.begin(), cls.degrees.end()));
            CHECK(!cls.ramified);  // unramified by the exclusion predicate
        }
    }
}

TEST_CASE("hand-checked splittings") {
    AlgebraicNumberSpec sqrt2({-2, 0, 1});
    CHECK(classify_prime(sqrt2, 2).excluded);   // divides disc and constant
    CHECK(classify_prime(sqrt2, 7).degrees == std::vector<unsigned>{1, 1});
    CHECK(classify_prime(sqrt2, 3).degrees == std::vector<unsigned>{2});

    AlgebraicNumberSpec cbrt2({-2, 0, 0, 1});
    CHECK(classify_prime(cbrt2, 5).degrees == std::vector<unsigned>{1, 2});
    CHECK(classify_prime(cbrt2, 31).degrees == std::vector<unsigned>{1, 1, 1});
    CHECK(classify_prime(cbrt2, 7).degrees == std::vector<unsigned>{3});
    CHECK(classify_prime(cbrt2, 3).excluded);   // 3 | disc = -108
}

TEST_CASE("reductions are roots of the minimal polynomial") {
    std::vector<AlgebraicNumberSpec> corpus = {
        AlgebraicNumberSpec({-2, 0, 1}),
        AlgebraicNumberSpec({-1, -1, 0, 1}),
        AlgebraicNumberSpec({-1, 0, -2, 0, 1}),
    };
    for (const auto& spec : corpus) {
        for (u64 p : sieve_primes(2, 60)) {
            PrimeSplitting cls = classify_prime(spec, p);
            if (cls.excluded) {
                CHECK_THROWS_AS(reductions_of_degree(spec, p, 1), excluded_prime);
                continue;
            }
            for (unsigned d = 1; d <= spec.degree(); ++d) {
                auto elems = reductions_of_degree(spec, p, d);
                CHECK(elems.size() == size_t(std::count(cls.degrees.begin(),
                                                        cls.degrees.end(), d)));
                for (const auto& a : elems) {
                    CHECK(a.ext_degree() == d);
                    // Horner evaluation of the monic reduction at a
                    PolyModP f = poly_monic(poly_reduce(spec.coeffs, p));
                    FieldElement acc = make_constant(0, p, a.modulus);
                    for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) {
                        acc = ext_mul(acc, a);
                        acc.c[0] = (acc.c[0] + *it) % p;
                    }
                    CHECK(acc.is_zero());
                }
            }
        }
    }
}

TEST_CASE("inert density for a quadratic is near one half") {
    AlgebraicNumberSpec sqrt2({-2, 0, 1});
    u64 inert = 0, total = 0;
    for (u64 p : sieve_primes(3, 100000)) {
        ++total;
        if (is_in_S(sqrt2, p, 2)) ++inert;
    }
    double frac = double(inert) / double(total);
    CHECK(frac > 0.48);
    CHECK(frac < 0.52);
}

TEST_CASE("norm of the algebraic number") {
    CHECK(norm_of_alpha(AlgebraicNumberSpec({-2, 0, 1})) == make_rational(-2, 1));
    CHECK(norm_of_alpha(AlgebraicNumberSpec({1, -3, 1})) == make_rational(1, 1));
    CHECK(norm_of_alpha(AlgebraicNumberSpec({-1, -1, 0, 1})) == make_rational(1, 1));
    CHECK(norm_of_alpha(AlgebraicNumberSpec({-1, 0, -2, 0, 1})) ==
          make_rational(-1, 1));
    CHECK(norm_of_alpha(AlgebraicNumberSpec({3, 5})) == make_rational(-3, 5));
}

TEST_CASE("spot check of irreducibility over small primes") {
    CHECK(AlgebraicNumberSpec({-2, 0, 1}).spot_check_irreducible());
    CHECK(AlgebraicNumberSpec({-2, 0, 0, 1}).spot_check_irreducible());
    CHECK(AlgebraicNumberSpec({-1, 0, -2, 0, 1}).spot_check_irreducible());
    // x^4 + 1 is irreducible over Q but reducible mod every prime;
    // the spot check is inconclusive, not an error
    CHECK(!AlgebraicNumberSpec({1, 0, 0, 0, 1}).spot_check_irreducible());
}

TEST_CASE("rationals are reduced and validated") {
    CHECK(make_rational(2, 4) == make_rational(1, 2));
    CHECK(make_rational(3, -6) == make_rational(-1, 2));
    CHECK(make_rational(0, 5) == make_rational(0, 7));
    CHECK_THROWS(make_rational(1, 0));
}
