#pragma once

#include <array>
#include <iosfwd>
#include <optional>

#include "ordcensus/linrec.hpp"

namespace ordc {

struct config_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fraction rendered to 10 significant digits, round-half-even, exact
// decimal arithmetic.
std::string format_fraction(u128 num, u128 den);

enum class OrderLaw {
    group_order,    // f(p) = p^d - 1
    two_p_plus_one  // f(p) = 2(p+1), the d = 2 unit-norm law
};

struct OrderCensusConfig {
    std::vector<long long> spec_coeffs;
    std::string label;
    unsigned d = 2;
    u64 x = 100000;
    unsigned H = 10;
    std::vector<Rational> h_grid;  // ascending
    std::optional<OrderLaw> law_override;

    bool operator==(const OrderCensusConfig&) const = default;
};

std::vector<Rational> default_h_grid();

/// Streaming census accumulator for the empirical d(h).
struct DensityTable {
    OrderCensusConfig config;
    OrderLaw law = OrderLaw::group_order;
    u64 s_count = 0;
    std::vector<u64> pass_counts;  // per h, nondecreasing along the grid
};

struct OrderCensusRow {
    u64 p = 0;
    bool in_S = false;
    unsigned degree = 0;
    u128 ord = 0;
    u128 index = 0;
    std::vector<bool> passes;
};

struct OrderCensusResult {
    DensityTable table;
    std::vector<OrderCensusRow> rows;  // one per unexcluded prime, ascending
    // tables at x/4 and x/2, for stabilization reporting
    DensityTable table_quarter;
    DensityTable table_half;
};

OrderCensusResult run_order_census(const OrderCensusConfig& cfg,
                                   unsigned workers = 1);

DensityTable merge(const DensityTable& a, const DensityTable& b);

struct RoughCensus {
    double epsilon = 0;
    double c = 0;
    u64 x = 0;
    u64 hits = 0;
    u64 total = 0;
};

// P quadratic with positive leading coefficient and negative
// discriminant. Scans primes (or all integers >= 2) up to x.
RoughCensus run_rough_census(const std::array<long long, 3>& P, double epsilon,
                             double c, u64 x, bool over_primes,
                             unsigned workers = 1);

struct ThresholdCensus {
    unsigned k = 0;
    double epsilon = 0;
    unsigned g = 0;  // g(3)=2, g(4)=3, g(6)=4
    u64 pass = 0;
    u64 total = 0;
};

ThresholdCensus run_threshold_census(const std::vector<AlgebraicNumberSpec>& specs,
                                     unsigned k, double epsilon, u64 x,
                                     unsigned workers = 1);

struct SmoothRow {
    u64 p = 0;
    u128 lpf = 0;
    double bound = 0;  // p^{1/2k}
};

std::vector<SmoothRow> run_smooth_filter(const AlgebraicNumberSpec& spec,
                                         unsigned d, unsigned k_alpha, u64 x,
                                         unsigned workers = 1);

struct GlobalLemmaResult {
    u64 violations = 0;
    u64 total = 0;
};

// Counts unexcluded primes p <= x with ord_p(a) <= sqrt(p)/log(p),
// natural logarithm.
GlobalLemmaResult run_global_lemma_check(long long a, u64 x,
                                         unsigned workers = 1);

struct LinrecRow {
    u64 p = 0;
    u128 T = 0;
    u128 max_dev_num = 0;  // over p
    unsigned k = 0;
    bool pass = false;
};

std::vector<LinrecRow> run_linrec_census(const RecurrenceSpec& rec, u64 x,
                                         unsigned workers = 1);

// CSV emitters (UTF-8, comma-separated, header row)
void write_order_census_csv(std::ostream& os, const OrderCensusResult& r);
void write_density_summary_csv(std::ostream& os, const DensityTable& t);
void write_density_multi_csv(std::ostream& os, const OrderCensusResult& r);
void write_rough_census_csv(std::ostream& os, const std::vector<RoughCensus>& rows);
void write_smooth_filter_csv(std::ostream& os, const std::vector<SmoothRow>& rows);
void write_linrec_csv(std::ostream& os, const std::vector<LinrecRow>& rows);

u64 census_prime_cap();  // 2^20

}  // namespace ordc
