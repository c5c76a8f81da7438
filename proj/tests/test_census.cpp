#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ordcensus/census.hpp"

#include <algorithm>
#include <sstream>

using namespace ordc;

namespace {

OrderCensusConfig sqrt2_config(u64 x) {
    OrderCensusConfig cfg;
    cfg.spec_coeffs = {-2, 0, 1};
    cfg.d = 2;
    cfg.x = x;
    cfg.h_grid = default_h_grid();
    return cfg;
}

std::string census_csvs(const OrderCensusResult& r) {
    std::ostringstream os;
    write_order_census_csv(os, r);
    write_density_summary_csv(os, r.table);
    write_density_multi_csv(os, r);
    return os.str();
}

}  // namespace

TEST_CASE("fraction formatting is exact to ten significant digits") {
    CHECK(format_fraction(1, 2) == "0.5000000000");
    CHECK(format_fraction(1, 3) == "0.3333333333");
    CHECK(format_fraction(2, 3) == "0.6666666667");
    CHECK(format_fraction(1, 1) == "1.000000000");
    CHECK(format_fraction(3, 2) == "1.500000000");
    CHECK(format_fraction(7, 4806) == "0.001456512692");
    CHECK(format_fraction(0, 5) == "0");
    CHECK(format_fraction(100, 1) == "100.0000000");
    CHECK(format_fraction(12345678901ULL, 1) == "12345678900");
    // round-half-even on exact ties
    CHECK(format_fraction(10000000005ULL, 10000000000ULL) == "1.000000000");
    CHECK(format_fraction(10000000015ULL, 10000000000ULL) == "1.000000002");
    CHECK(format_fraction(25, 100000000000ULL) == "0.0000000002500000000");
    // mantissa carry: 0.99999999996 rounds up to 1
    CHECK(format_fraction(99999999996ULL, 100000000000ULL) == "1.000000000");
}

TEST_CASE("order census matches a direct power-iteration oracle") {
    OrderCensusConfig cfg = sqrt2_config(500);
    OrderCensusResult r = run_order_census(cfg);
    AlgebraicNumberSpec spec({-2, 0, 1});

    u64 s_count = 0;
    std::vector<u64> pass(cfg.h_grid.size(), 0);
    size_t row_i = 0;
    for (u64 p : sieve_primes(2, 501)) {
        PrimeSplitting cls = classify_prime(spec, p);
        if (cls.excluded) continue;
        REQUIRE(row_i < r.rows.size());
        const OrderCensusRow& row = r.rows[row_i++];
        CHECK(row.p == p);
        bool inert = cls.degrees == std::vector<unsigned>{2};
        CHECK(row.in_S == inert);
        if (!inert) continue;
        ++s_count;
        // naive order by repeated multiplication in F_{p^2}
        FieldElement a = reductions_of_degree(spec, p, 2).front();
        FieldElement acc = a;
        FieldElement one = make_constant(1, p, a.modulus);
        u128 ord = 1;
        while (!(acc == one)) {
            acc = ext_mul(acc, a);
            ++ord;
        }
        CHECK(row.ord == ord);
        CHECK(row.index == (u128(p) * p - 1) / ord);
        for (size_t j = 0; j < cfg.h_grid.size(); ++j) {
            bool expect = ord * u128(cfg.h_grid[j].num) >=
                          (u128(p) * p - 1) * u128(cfg.h_grid[j].den);
            CHECK(row.passes[j] == expect);
            if (expect) ++pass[j];
        }
    }
    CHECK(row_i == r.rows.size());
    CHECK(r.table.s_count == s_count);
    CHECK(r.table.pass_counts == pass);
    CHECK(r.table.law == OrderLaw::group_order);  // norm is -2, not a unit
    CHECK(std::is_sorted(r.table.pass_counts.begin(), r.table.pass_counts.end()));
    // sub-table consistency
    CHECK(r.table_quarter.config.x == 125);
    CHECK(r.table_half.config.x == 250);
    CHECK(r.table_quarter.s_count <= r.table_half.s_count);
    for (size_t j = 0; j < pass.size(); ++j) {
        CHECK(r.table_quarter.pass_counts[j] <= r.table_half.pass_counts[j]);
        CHECK(r.table_half.pass_counts[j] <= r.table.pass_counts[j]);
    }
}

TEST_CASE("unit-norm quadratic switches to the 2p+2 law") {
    OrderCensusConfig cfg = sqrt2_config(2000);
    cfg.spec_coeffs = {1, -3, 1};  // norm 1
    OrderCensusResult r = run_order_census(cfg);
    CHECK(r.table.law == OrderLaw::two_p_plus_one);
    for (const auto& row : r.rows) {
        if (!row.in_S) continue;
        // elements of norm 1 lie in the kernel of the norm map: ord | 2(p+1)
        CHECK((u128(2) * (row.p + 1)) % row.ord == 0);
    }
    cfg.law_override = OrderLaw::group_order;
    CHECK(run_order_census(cfg).table.law == OrderLaw::group_order);
}

TEST_CASE("census of a cubic at degree 3 and its empty degree classes") {
    OrderCensusConfig cfg = sqrt2_config(300);
    cfg.spec_coeffs = {-1, -1, 0, 1};
    cfg.d = 3;
    OrderCensusResult r3 = run_order_census(cfg);
    CHECK(r3.table.s_count > 0);
    // a quadratic never has a degree-3 reduction: S is empty
    cfg.spec_coeffs = {-2, 0, 1};
    OrderCensusResult r = run_order_census(cfg);
    CHECK(r.table.s_count == 0);
    CHECK(!r.rows.empty());
    for (u64 c : r.table.pass_counts) CHECK(c == 0);
    std::ostringstream os;
    write_density_summary_csv(os, r.table);
    CHECK(os.str().find(",0,0,0\n") != std::string::npos);
}

TEST_CASE("hand-checked census row") {
    OrderCensusConfig cfg = sqrt2_config(10);
    OrderCensusResult r = run_order_census(cfg);
    // unexcluded primes up to 10: 3, 5, 7
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].p == 3);
    CHECK(r.rows[0].in_S);
    CHECK(r.rows[0].ord == 4);
    CHECK(r.rows[0].index == 2);
    CHECK(!r.rows[0].passes[0]);  // 4 < 8/1
    CHECK(r.rows[0].passes[1]);   // 4 >= 8/2
    CHECK(r.rows[1].p == 5);
    CHECK(r.rows[1].in_S);
    CHECK(!r.rows[2].in_S);  // 7 splits
}

TEST_CASE("merge combines shards and rejects mismatched configurations") {
    OrderCensusConfig cfg = sqrt2_config(1000);
    DensityTable t = run_order_census(cfg).table;
    DensityTable doubled = merge(t, t);
    CHECK(doubled.s_count == 2 * t.s_count);
    for (size_t j = 0; j < t.pass_counts.size(); ++j)
        CHECK(doubled.pass_counts[j] == 2 * t.pass_counts[j]);

    DensityTable zero = t;
    zero.s_count = 0;
    std::fill(zero.pass_counts.begin(), zero.pass_counts.end(), 0);
    DensityTable same = merge(t, zero);
    CHECK(same.s_count == t.s_count);
    CHECK(same.pass_counts == t.pass_counts);

    DensityTable other = t;
    other.config.x = 2000;
    CHECK_THROWS_AS(merge(t, other), config_mismatch);
    other = t;
    other.law = OrderLaw::two_p_plus_one;
    CHECK_THROWS_AS(merge(t, other), config_mismatch);
}

TEST_CASE("census output is byte-identical for any worker count") {
    OrderCensusConfig cfg = sqrt2_config(20000);
    std::string base = census_csvs(run_order_census(cfg, 1));
    CHECK(census_csvs(run_order_census(cfg, 2)) == base);
    CHECK(census_csvs(run_order_census(cfg, 8)) == base);

    auto rough1 = run_rough_census({1, 0, 1}, 0.1, 0.3, 20000, true, 1);
    auto rough8 = run_rough_census({1, 0, 1}, 0.1, 0.3, 20000, true, 8);
    CHECK(rough1.hits == rough8.hits);
    CHECK(rough1.total == rough8.total);
}

TEST_CASE("census input validation") {
    OrderCensusConfig cfg = sqrt2_config(census_prime_cap() + 1);
    CHECK_THROWS_AS(run_order_census(cfg), budget_error);
    cfg = sqrt2_config(100);
    cfg.h_grid.clear();
    CHECK_THROWS_AS(run_order_census(cfg), std::invalid_argument);
    cfg = sqrt2_config(100);
    std::swap(cfg.h_grid[0], cfg.h_grid[5]);  // not ascending
    CHECK_THROWS_AS(run_order_census(cfg), std::invalid_argument);
    cfg = sqrt2_config(100);
    cfg.d = 7;
    CHECK_THROWS_AS(run_order_census(cfg), std::invalid_argument);
}

TEST_CASE("rough census against exhaustive divisor enumeration") {
    const double eps = 0.15, c = 0.4;
    const u64 x = 300;
    u64 expect_hits = 0, expect_total = 0;
    for (u64 n = 2; n <= x; ++n) {
        ++expect_total;
        u64 v = n * n + 1;
        // all divisors by trial division
        bool hit = false;
        u64 low = u64(std::ceil(std::pow(double(n), 1.0 - eps)));
        u64 high = u64(std::floor(std::pow(double(n), 1.0 + eps)));
        u64 rough = u64(std::ceil(std::pow(double(n), c)));
        for (u64 m = 1; m <= v; ++m) {
            if (v % m != 0 || m < low || m > high) continue;
            // m is rough if no prime factor below the threshold
            u64 t = m;
            bool ok = true;
            for (u64 q = 2; q * q <= t; ++q)
                while (t % q == 0) {
                    if (q < rough) ok = false;
                    t /= q;
                }
            if (t > 1 && t < rough) ok = false;
            if (ok) {
                hit = true;
                break;
            }
        }
        if (hit) ++expect_hits;
    }
    RoughCensus r = run_rough_census({1, 0, 1}, eps, c, x, false);
    CHECK(r.total == expect_total);
    CHECK(r.hits == expect_hits);
}

TEST_CASE("rough census widens monotonically in epsilon") {
    u64 prev = 0;
    for (double eps : {0.0, 0.05, 0.1, 0.2}) {
        RoughCensus r = run_rough_census({1, 0, 1}, eps, 0.3, 5000, true);
        CHECK(r.hits >= prev);
        prev = r.hits;
        CHECK(r.total == sieve_primes(2, 5001).size());
    }
}

TEST_CASE("rough census validates its hypotheses") {
    CHECK_THROWS_AS(run_rough_census({1, 0, -1}, 0.1, 0.3, 100, true),
                    std::invalid_argument);  // negative lead
    CHECK_THROWS_AS(run_rough_census({-1, 0, 1}, 0.1, 0.3, 100, true),
                    std::invalid_argument);  // real roots
    CHECK_THROWS_AS(run_rough_census({1, 0, 1}, 0.1, 0.6, 100, true),
                    std::invalid_argument);  // c too large
    CHECK_THROWS_AS(run_rough_census({1, 0, 1}, 0.7, 0.3, 100, true),
                    std::invalid_argument);  // epsilon too large
    CHECK_THROWS_AS(run_rough_census({1, 0, 1}, 0.1, 0.3, (u64(1) << 24) + 1, true),
                    budget_error);
}

TEST_CASE("threshold census structure") {
    std::vector<AlgebraicNumberSpec> specs = {AlgebraicNumberSpec({-1, -1, 0, 1}),
                                              AlgebraicNumberSpec({-2, 0, 0, 1})};
    ThresholdCensus t = run_threshold_census(specs, 3, 0.1, 3000);
    CHECK(t.g == 2);
    CHECK(t.pass <= t.total);
    CHECK(t.total > 0);
    // joint total can only shrink when a spec is added
    ThresholdCensus one = run_threshold_census({specs[0]}, 3, 0.1, 3000);
    CHECK(t.total <= one.total);
    // higher epsilon means a stricter threshold
    ThresholdCensus hi = run_threshold_census(specs, 3, 0.4, 3000);
    CHECK(hi.total == t.total);
    CHECK(hi.pass <= t.pass);
    CHECK(run_threshold_census(specs, 4, 0.1, 1000).g == 3);
    CHECK(run_threshold_census(specs, 6, 0.1, 1000).g == 4);
    CHECK_THROWS_AS(run_threshold_census(specs, 5, 0.1, 1000),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_threshold_census({}, 3, 0.1, 1000), std::invalid_argument);
    CHECK_THROWS_AS(run_threshold_census(specs, 3, 0.1, census_prime_cap() + 1),
                    budget_error);
}

TEST_CASE("smooth filter against a brute oracle") {
    AlgebraicNumberSpec spec({-2, 0, 1});
    const unsigned d = 2, k_alpha = 2;
    auto rows = run_smooth_filter(spec, d, k_alpha, 2000);
    std::vector<SmoothRow> expect;
    for (u64 p : sieve_primes(2, 2001)) {
        u64 v = p * p - 1;
        u64 lpf = 1, t = v;
        for (u64 q = 2; q * q <= t; ++q)
            while (t % q == 0) {
                lpf = std::max(lpf, q);
                t /= q;
            }
        lpf = std::max(lpf, t);
        double bound = std::pow(double(p), 1.0 / (2.0 * k_alpha));
        if (double(lpf) < bound && is_in_S(spec, p, d))
            expect.push_back({p, lpf, bound});
    }
    REQUIRE(rows.size() == expect.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].p == expect[i].p);
        CHECK(rows[i].lpf == expect[i].lpf);
        CHECK(rows[i].bound == doctest::Approx(expect[i].bound));
    }
    CHECK_THROWS_AS(run_smooth_filter(spec, 2, 0, 100), std::invalid_argument);
    CHECK_THROWS_AS(run_smooth_filter(spec, 2, 2, census_prime_cap() + 1),
                    budget_error);
}

TEST_CASE("global lemma check against naive orders") {
    u64 expect_viol = 0, expect_total = 0;
    const long long a = 3;
    for (u64 p : sieve_primes(2, 2000)) {
        if (a % (long long)p == 0) continue;
        ++expect_total;
        u64 acc = u64(a) % p, ord = 1;
        while (acc != 1) {
            acc = acc * u64(a % (long long)p) % p;
            ++ord;
        }
        if ((long double)ord <= sqrtl((long double)p) / logl((long double)p))
            ++expect_viol;
    }
    GlobalLemmaResult r = run_global_lemma_check(3, 1999);
    CHECK(r.total == expect_total);
    CHECK(r.violations == expect_viol);
    CHECK_THROWS_AS(run_global_lemma_check(1, 100), std::invalid_argument);
    CHECK_THROWS_AS(run_global_lemma_check(0, 100), std::invalid_argument);
}

TEST_CASE("linrec census rows") {
    RecurrenceSpec fib({-1, -1, 1}, {make_rational(1, 1), make_rational(1, 1)});
    auto rows = run_linrec_census(fib, 100);
    CHECK(rows.size() == 24);  // 25 primes up to 100, p = 5 excluded
    for (const auto& r : rows) {
        CHECK(r.p != 5);
        CHECK(r.pass);
        if (r.p == 11) CHECK(r.T == 10);
    }
    CHECK_THROWS_AS(run_linrec_census(fib, census_prime_cap() + 1), budget_error);
}

TEST_CASE("csv headers and shapes") {
    OrderCensusConfig cfg = sqrt2_config(50);
    OrderCensusResult r = run_order_census(cfg);
    std::ostringstream os;
    write_order_census_csv(os, r);
    CHECK(os.str().rfind("p,in_S,degree,ord,index,passes_h1", 0) == 0);
    os.str("");
    write_density_summary_csv(os, r.table);
    CHECK(os.str().rfind("h,pass_count,s_count,fraction\n1,", 0) == 0);
    os.str("");
    write_density_multi_csv(os, r);
    CHECK(os.str().rfind("x,h,pass_count,s_count,fraction\n12,", 0) == 0);
    // three blocks: x/4, x/2, x
    std::string multi = os.str();
    CHECK(std::count(multi.begin(), multi.end(), '\n') ==
          1 + 3 * long(cfg.h_grid.size()));
}
