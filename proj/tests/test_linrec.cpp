#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ordcensus/linrec.hpp"

#include <numeric>

using namespace ordc;

namespace {

Rational R(long long n, long long d = 1) { return make_rational(n, d); }

// direct iteration: step until the state vector returns to the start
u128 brute_period(const RecurrenceSpec& rec, u64 p) {
    unsigned k = rec.degree();
    std::vector<u64> s0(k), s;
    for (unsigned i = 0; i < k; ++i) {
        long long num = rec.initial[i].num % (long long)p;
        if (num < 0) num += (long long)p;
        u64 den = u64(rec.initial[i].den % (long long)p);
        s0[i] = u64(num) * mod_inverse(den, p) % p;
    }
    std::vector<u64> neg(k);
    for (unsigned j = 0; j < k; ++j) {
        long long c = rec.char_coeffs[j] % (long long)p;
        if (c < 0) c += (long long)p;
        neg[j] = (p - u64(c)) % p;
    }
    s = s0;
    u128 t = 0;
    do {
        u128 acc = 0;
        for (unsigned j = 0; j < k; ++j) acc += u128(neg[j]) * s[j];
        u64 next = u64(acc % p);
        for (unsigned j = 0; j + 1 < k; ++j) s[j] = s[j + 1];
        s[k - 1] = next;
        ++t;
    } while (s != s0);
    return t;
}

// corpus with splitting fields of degree <= 2, so periods divide p^2 - 1
std::vector<RecurrenceSpec> oracle_corpus() {
    std::vector<RecurrenceSpec> v;
    v.emplace_back(std::vector<long long>{-1, 1}, std::vector<Rational>{R(1)});
    v.emplace_back(std::vector<long long>{-2, 1}, std::vector<Rational>{R(1)});
    v.emplace_back(std::vector<long long>{-3, 1}, std::vector<Rational>{R(2)});
    v.emplace_back(std::vector<long long>{5, 1}, std::vector<Rational>{R(1, 3)});
    v.emplace_back(std::vector<long long>{-1, -1, 1},
                   std::vector<Rational>{R(1), R(1)});  // Fibonacci
    v.emplace_back(std::vector<long long>{-1, -1, 1},
                   std::vector<Rational>{R(2), R(1)});  // Lucas
    v.emplace_back(std::vector<long long>{-1, -2, 1},
                   std::vector<Rational>{R(0), R(1)});  // Pell
    v.emplace_back(std::vector<long long>{1, -3, 1},
                   std::vector<Rational>{R(1), R(1)});
    v.emplace_back(std::vector<long long>{-2, 0, 1},
                   std::vector<Rational>{R(1), R(0)});
    v.emplace_back(std::vector<long long>{-1, 0, 1},
                   std::vector<Rational>{R(1), R(1)});
    v.emplace_back(std::vector<long long>{3, -1, 1},
                   std::vector<Rational>{R(1, 2), R(5)});
    v.emplace_back(std::vector<long long>{2, 2, 1},
                   std::vector<Rational>{R(1), R(1)});
    // degree 3 = linear * quadratic
    v.emplace_back(std::vector<long long>{2, 1, -3, 1},
                   std::vector<Rational>{R(1), R(0), R(0)});  // (x-2)(x^2-x-1)
    v.emplace_back(std::vector<long long>{2, -1, -2, 1},
                   std::vector<Rational>{R(0), R(1), R(1)});  // (x-1)(x+1)(x-2)
    v.emplace_back(std::vector<long long>{-6, 11, -6, 1},
                   std::vector<Rational>{R(1), R(2), R(3)});  // (x-1)(x-2)(x-3)
    // degree 4 = two quadratics
    v.emplace_back(std::vector<long long>{6, 0, -5, 0, 1},
                   std::vector<Rational>{R(1), R(1), R(1), R(1)});  // (x^2-2)(x^2-3)
    v.emplace_back(std::vector<long long>{-1, 0, 1, 2, 1},
                   std::vector<Rational>{R(1), R(0), R(0), R(0)});  // (x^2+x-1)(x^2+x+1)
    // degree 5 = linear * two quadratics
    v.emplace_back(std::vector<long long>{-6, 6, 5, -5, -1, 1},
                   std::vector<Rational>{R(1), R(1), R(0), R(1), R(0)});  // (x-1)(x^2-2)(x^2-3)
    // degree 6 = three quadratics
    v.emplace_back(std::vector<long long>{-6, -6, 11, 5, -6, -1, 1},
                   std::vector<Rational>{R(1), R(0), R(1), R(0), R(1), R(0)});
    // (x^2-2)(x^2-3)(x^2-x-1) above; (x^2-2)(x^2-3)(x^2-x+1) below
    v.emplace_back(std::vector<long long>{6, -6, 1, 5, -4, -1, 1},
                   std::vector<Rational>{R(2), R(3), R(1), R(1), R(1), R(1)});
    return v;
}

}  // namespace

TEST_CASE("recurrence validation") {
    CHECK_THROWS(RecurrenceSpec({1}, {}));                        // degree 0
    CHECK_THROWS(RecurrenceSpec({-1, 2}, {R(1)}));                // not monic
    CHECK_THROWS(RecurrenceSpec({0, 1}, {R(1)}));                 // zero constant
    CHECK_THROWS(RecurrenceSpec({-1, -1, 1}, {R(1)}));            // wrong arity
    CHECK_THROWS(RecurrenceSpec({-1, -1, 1}, {R(0), R(0)}));      // zero state
    CHECK_NOTHROW(RecurrenceSpec({-1, -1, 1}, {R(0), R(1)}));
}

TEST_CASE("excluded primes") {
    RecurrenceSpec fib({-1, -1, 1}, {R(1), R(1)});
    CHECK(fib.discriminant() % 5 == 0);
    CHECK(linrec_excluded(fib, 5));
    CHECK(!linrec_excluded(fib, 2));
    CHECK(!linrec_excluded(fib, 11));

    RecurrenceSpec thirds({-2, 1}, {R(1, 3)});
    CHECK(linrec_excluded(thirds, 3));  // denominator
    CHECK(linrec_excluded(thirds, 2));  // constant term
    CHECK(!linrec_excluded(thirds, 5));

    CHECK_THROWS_AS(period_mod_p(fib, 5), excluded_prime);
}

TEST_CASE("periods match direct iteration over the corpus") {
    auto corpus = oracle_corpus();
    auto primes = sieve_primes(2, 501);
    for (const auto& rec : corpus) {
        for (u64 p : primes) {
            if (linrec_excluded(rec, p)) continue;
            CHECK(period_mod_p(rec, p) == brute_period(rec, p));
        }
    }
}

TEST_CASE("hand-checked periods") {
    RecurrenceSpec fib({-1, -1, 1}, {R(1), R(1)});
    CHECK(period_mod_p(fib, 11) == 10);
    CHECK(period_mod_p(fib, 2) == 3);
    RecurrenceSpec constant({-1, 1}, {R(1)});
    CHECK(period_mod_p(constant, 7) == 1);
    RecurrenceSpec pow2({-2, 1}, {R(1)});
    CHECK(period_mod_p(pow2, 5) == 4);
}

TEST_CASE("period divides the root-order lcm; divisor search can go below") {
    auto corpus = oracle_corpus();
    for (const auto& rec : corpus) {
        for (u64 p : sieve_primes(2, 100)) {
            if (linrec_excluded(rec, p)) continue;
            PeriodInfo pi = period_info(rec, p);
            CHECK(pi.L % pi.T == 0);
        }
    }
    // initial state inside a proper invariant subspace: T < L
    RecurrenceSpec sub({-1, 0, 1}, {R(1), R(1)});  // roots 1, -1; start on 1
    PeriodInfo pi = period_info(sub, 5);
    CHECK(pi.T == 1);
    CHECK(pi.L == 2);
}

TEST_CASE("histogram counts over one period") {
    RecurrenceSpec fib({-1, -1, 1}, {R(1), R(1)});
    EquidistReport rep = residue_histogram(fib, 11);
    CHECK(rep.T == 10);
    // values over one period: 1, 1, 2, 3, 5, 8, 2, 10, 1, 0
    std::vector<u64> expect{1, 3, 2, 1, 0, 1, 0, 0, 1, 0, 1};
    CHECK(rep.counts == expect);
    u128 sum = 0;
    for (u64 c : rep.counts) sum += c;
    CHECK(sum == rep.T);
    // max deviation: residue 1 with count 3, |3*11 - 10| = 23
    CHECK(rep.max_dev_num == 23);
    CHECK(rep.k == 2);
    CHECK(rep.within_bound());  // (23/11)^2 <= 11^2

    RecurrenceSpec pow2({-2, 1}, {R(1)});
    rep = residue_histogram(pow2, 5);
    CHECK(rep.T == 4);
    CHECK(rep.counts == std::vector<u64>{0, 1, 1, 1, 1});
    CHECK(rep.max_dev_num == 4);  // residue 0: |0*5 - 4| = 4

    RecurrenceSpec constant({-1, 1}, {R(1)});
    rep = residue_histogram(constant, 7);
    CHECK(rep.counts == std::vector<u64>{0, 1, 0, 0, 0, 0, 0});
}

TEST_CASE("histogram sums and window-shift invariance") {
    RecurrenceSpec fib({-1, -1, 1}, {R(1), R(1)});
    // the same cycle entered three steps later: initial (3, 5)
    RecurrenceSpec shifted({-1, -1, 1}, {R(3), R(5)});
    for (u64 p : {3, 7, 11, 13, 101}) {
        EquidistReport a = residue_histogram(fib, p);
        EquidistReport b = residue_histogram(shifted, p);
        CHECK(a.counts == b.counts);
        CHECK(a.T == b.T);
    }
}

TEST_CASE("deviation bound across the corpus up to 500") {
    auto corpus = oracle_corpus();
    for (const auto& rec : corpus) {
        for (u64 p : sieve_primes(2, 501)) {
            if (linrec_excluded(rec, p)) continue;
            CHECK(check_equidist(rec, p));
        }
    }
}

TEST_CASE("iteration budget on huge periods") {
    // generic quartic: the period mod a mid-size prime exceeds the cap
    RecurrenceSpec quartic({-1, -1, 0, 0, 1}, {R(1), R(0), R(0), R(0)});
    bool hit = false;
    for (u64 p : sieve_primes(400, 500)) {
        if (linrec_excluded(quartic, p)) continue;
        if (period_mod_p(quartic, p) > (u128(1) << 27)) {
            CHECK_THROWS_AS(residue_histogram(quartic, p), budget_error);
            hit = true;
            break;
        }
    }
    CHECK(hit);
}
