#pragma once

#include <vector>

#include "ordcensus/order.hpp"

namespace ordc {

/// Integer monic characteristic polynomial plus rational initial values.
/// The constant term must be nonzero so the recurrence is invertible
/// modulo almost every prime.
struct RecurrenceSpec {
    std::vector<long long> char_coeffs;  // ascending, back() == 1
    std::vector<Rational> initial;       // k values, not all zero

    RecurrenceSpec(std::vector<long long> char_coeffs_,
                   std::vector<Rational> initial_);

    unsigned degree() const { return unsigned(char_coeffs.size()) - 1; }
    i128 discriminant() const { return disc_; }

private:
    i128 disc_;
};

// p excluded if it divides the constant term, any initial denominator,
// or the discriminant of the characteristic polynomial.
bool linrec_excluded(const RecurrenceSpec& rec, u64 p);

struct PeriodInfo {
    u128 T = 0;  // minimal period of the state sequence
    u128 L = 0;  // lcm of the root orders; T | L
};

PeriodInfo period_info(const RecurrenceSpec& rec, u64 p);
u128 period_mod_p(const RecurrenceSpec& rec, u64 p);

struct EquidistReport {
    u64 p = 0;
    u128 T = 0;
    std::vector<u64> counts;  // per residue, over one period
    u128 max_dev_num = 0;     // max_dev = max_dev_num / p, exact
    unsigned k = 0;           // bound is p^{k/2}

    // max_dev <= p^{k/2}, compared exactly via max_dev_num^2 <= p^{k+2}
    bool within_bound() const;
};

// Iterates exactly T steps; T capped at 2^27 iterations.
EquidistReport residue_histogram(const RecurrenceSpec& rec, u64 p);

bool check_equidist(const RecurrenceSpec& rec, u64 p);

}  // namespace ordc
