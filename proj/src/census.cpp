#include "ordcensus/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

namespace ordc {

u64 census_prime_cap() { return u64(1) << 20; }

namespace {

u128 checked_mul_u128(u128 a, u128 b, bool& overflow) {
    if (b != 0 && a > ~u128(0) / b) {
        overflow = true;
        return 0;
    }
    return a * b;
}

// ord >= f / h, i.e. ord * h.num >= f * h.den
bool order_passes(u128 ord, u128 f, const Rational& h) {
    bool ovl = false, ovr = false;
    u128 lhs = checked_mul_u128(ord, u128(h.num), ovl);
    u128 rhs = checked_mul_u128(f, u128(h.den), ovr);
    if (ovl) return true;
    if (ovr) return false;
    return lhs >= rhs;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Run fn(chunk) for chunk in [0, nchunks) on `workers` threads; results
// land in chunk order, so output is independent of scheduling.
template <class R, class Fn>
std::vector<R> run_chunked(size_t nchunks, unsigned workers, Fn&& fn) {
    std::vector<R> results(nchunks);
    if (workers <= 1 || nchunks <= 1) {
        for (size_t i = 0; i < nchunks; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto body = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= nchunks) return;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    return results;
}

constexpr size_t kChunk = 1024;  // primes per chunk, fixed

}  // namespace

std::string format_fraction(u128 num, u128 den) {
    if (den == 0 || num == 0) return "0";
    // decimal exponent e with 10^e <= num/den < 10^(e+1)
    int e = 0;
    {
        u128 scaled = den;
        while (true) {
            bool ov = false;
            u128 next = checked_mul_u128(scaled, 10, ov);
            if (ov || num < next) break;
            scaled = next;
            ++e;
        }
        if (num < den) {
            u128 n = num;
            while (true) {
                bool ov = false;
                n = checked_mul_u128(n, 10, ov);
                if (ov) throw std::overflow_error("format_fraction: overflow");
                --e;
                if (n >= den) break;
            }
        }
    }
    // scale so the rounded mantissa has exactly 10 digits
    int q = 9 - e;
    u128 n = num, d = den;
    bool ov = false;
    if (q >= 0)
        for (int i = 0; i < q; ++i) n = checked_mul_u128(n, 10, ov);
    else
        for (int i = 0; i < -q; ++i) d = checked_mul_u128(d, 10, ov);
    if (ov) throw std::overflow_error("format_fraction: overflow");
    u128 mant = n / d, rem = n % d;
    u128 twice = checked_mul_u128(rem, 2, ov);
    if (ov || twice > d || (twice == d && (mant & 1)))
        ++mant;
    const u128 ten10 = u128(10000000000ULL);
    if (mant == ten10) {
        mant /= 10;
        ++e;
    }
    std::string digits = to_string(mant);  // exactly 10 digits
    std::string out;
    if (e >= 9) {
        out = digits + std::string(size_t(e - 9), '0');
    } else if (e >= 0) {
        out = digits.substr(0, size_t(e) + 1) + "." + digits.substr(size_t(e) + 1);
    } else {
        out = "0." + std::string(size_t(-e - 1), '0') + digits;
    }
    return out;
}

std::vector<Rational> default_h_grid() {
    std::vector<Rational> g;
    for (long long h : {1, 2, 4, 6, 12, 24, 48, 120, 720, 5040})
        g.push_back(make_rational(h, 1));
    return g;
}

namespace {

double rational_value(const Rational& r) {
    return double(r.num) / double(r.den);
}

void validate_order_config(const OrderCensusConfig& cfg) {
    if (cfg.x > census_prime_cap())
        throw budget_error("order census: x exceeds 2^20 cap");
    if (cfg.h_grid.empty())
        throw std::invalid_argument("order census: empty h grid");
    for (size_t i = 0; i < cfg.h_grid.size(); ++i) {
        if (cfg.h_grid[i].num <= 0)
            throw std::invalid_argument("order census: h values must be positive");
        if (i && rational_value(cfg.h_grid[i - 1]) > rational_value(cfg.h_grid[i]))
            throw std::invalid_argument("order census: h grid must be ascending");
    }
    if (cfg.d == 0 || cfg.d > 6)
        throw std::invalid_argument("order census: d must be in [1,6]");
}

OrderLaw pick_law(const OrderCensusConfig& cfg, const AlgebraicNumberSpec& spec) {
    if (cfg.law_override) return *cfg.law_override;
    Rational nrm = norm_of_alpha(spec);
    bool unit = (nrm.num == 1 || nrm.num == -1) && nrm.den == 1;
    return (cfg.d == 2 && unit) ? OrderLaw::two_p_plus_one : OrderLaw::group_order;
}

}  // namespace

OrderCensusResult run_order_census(const OrderCensusConfig& cfg, unsigned workers) {
    validate_order_config(cfg);
    AlgebraicNumberSpec spec(cfg.spec_coeffs, cfg.label);
    OrderLaw law = pick_law(cfg, spec);
    std::vector<u64> primes = sieve_primes(2, cfg.x + 1);
    size_t nh = cfg.h_grid.size();
    size_t nchunks = (primes.size() + kChunk - 1) / kChunk;

    struct Partial {
        std::vector<OrderCensusRow> rows;
        u64 s_count = 0;
        std::vector<u64> pass;
        u64 s_q = 0, s_h = 0;           // counts at x/4 and x/2
        std::vector<u64> pass_q, pass_h;
    };

    auto work = [&](size_t ci) {
        Partial part;
        part.pass.assign(nh, 0);
        part.pass_q.assign(nh, 0);
        part.pass_h.assign(nh, 0);
        size_t lo = ci * kChunk, hi = std::min(primes.size(), lo + kChunk);
        for (size_t i = lo; i < hi; ++i) {
            u64 p = primes[i];
            PrimeSplitting cls = classify_prime(spec, p);
            if (cls.excluded) continue;
            OrderCensusRow row;
            row.p = p;
            row.passes.assign(nh, false);
            bool inS = std::find(cls.degrees.begin(), cls.degrees.end(), cfg.d) !=
                       cls.degrees.end();
            row.in_S = inS;
            if (inS) {
                auto elems = reductions_of_degree(spec, p, cfg.d);
                FactoredInteger group = factor_pk_minus_1(p, cfg.d);
                row.degree = cfg.d;
                row.ord = mult_order(elems.front(), group);
                row.index = group.value / row.ord;
                u128 f = (law == OrderLaw::two_p_plus_one) ? u128(2) * (p + 1)
                                                          : group.value;
                part.s_count += 1;
                bool quarter = p <= cfg.x / 4, half = p <= cfg.x / 2;
                if (quarter) part.s_q += 1;
                if (half) part.s_h += 1;
                for (size_t j = 0; j < nh; ++j) {
                    bool ok = order_passes(row.ord, f, cfg.h_grid[j]);
                    row.passes[j] = ok;
                    if (ok) {
                        part.pass[j] += 1;
                        if (quarter) part.pass_q[j] += 1;
                        if (half) part.pass_h[j] += 1;
                    }
                }
            }
            part.rows.push_back(std::move(row));
        }
        return part;
    };

    auto parts = run_chunked<Partial>(nchunks, workers, work);

    OrderCensusResult out;
    out.table.config = cfg;
    out.table.law = law;
    out.table.pass_counts.assign(nh, 0);
    out.table_quarter = out.table;
    out.table_quarter.config.x = cfg.x / 4;
    out.table_half = out.table;
    out.table_half.config.x = cfg.x / 2;
    for (auto& part : parts) {
        for (auto& row : part.rows) out.rows.push_back(std::move(row));
        out.table.s_count += part.s_count;
        out.table_quarter.s_count += part.s_q;
        out.table_half.s_count += part.s_h;
        for (size_t j = 0; j < nh; ++j) {
            out.table.pass_counts[j] += part.pass[j];
            out.table_quarter.pass_counts[j] += part.pass_q[j];
            out.table_half.pass_counts[j] += part.pass_h[j];
        }
    }
    return out;
}

DensityTable merge(const DensityTable& a, const DensityTable& b) {
    if (!(a.config == b.config) || a.law != b.law)
        throw config_mismatch("merge: table configurations differ");
    DensityTable r = a;
    r.s_count += b.s_count;
    for (size_t j = 0; j < r.pass_counts.size(); ++j)
        r.pass_counts[j] += b.pass_counts[j];
    return r;
}

RoughCensus run_rough_census(const std::array<long long, 3>& P, double epsilon,
                             double c, u64 x, bool over_primes, unsigned workers) {
    const long long A = P[2], B = P[1], C = P[0];
    if (A <= 0)
        throw std::invalid_argument("rough census: leading coefficient must be positive");
    if (B * B - 4 * A * C >= 0)
        throw std::invalid_argument("rough census: discriminant must be negative");
    if (c <= 0 || c > 0.5)
        throw std::invalid_argument("rough census: c must be in (0, 1/2]");
    if (epsilon < 0 || epsilon > 0.5)
        throw std::invalid_argument("rough census: epsilon must be in [0, 1/2]");
    if (x > (u64(1) << 24)) throw budget_error("rough census: x exceeds 2^24 cap");

    std::vector<u64> args;
    if (over_primes) {
        args = sieve_primes(2, x + 1);
    } else {
        for (u64 n = 2; n <= x; ++n) args.push_back(n);
    }
    size_t nchunks = (args.size() + kChunk - 1) / kChunk;

    auto work = [&](size_t ci) {
        u64 hits = 0;
        size_t lo = ci * kChunk, hi = std::min(args.size(), lo + kChunk);
        for (size_t i = lo; i < hi; ++i) {
            u64 n = args[i];
            i128 v = i128(A) * n * n + i128(B) * n + C;
            FactoredInteger f = factor_integer(u128(v));
            u128 low = u128(std::ceil(std::pow((double)n, 1.0 - epsilon)));
            u128 high = u128(std::floor(std::pow((double)n, 1.0 + epsilon)));
            u128 rough = u128(std::ceil(std::pow((double)n, c)));
            if (low > high) continue;
            if (has_rough_divisor_in_range(f, low, high, rough)) ++hits;
        }
        return hits;
    };
    auto parts = run_chunked<u64>(nchunks, workers, work);

    RoughCensus out;
    out.epsilon = epsilon;
    out.c = c;
    out.x = x;
    out.total = args.size();
    for (u64 h : parts) out.hits += h;
    return out;
}

ThresholdCensus run_threshold_census(const std::vector<AlgebraicNumberSpec>& specs,
                                     unsigned k, double epsilon, u64 x,
                                     unsigned workers) {
    unsigned g;
    switch (k) {
        case 3: g = 2; break;
        case 4: g = 3; break;
        case 6: g = 4; break;
        default:
            throw std::invalid_argument("threshold census: k must be 3, 4 or 6");
    }
    if (specs.empty())
        throw std::invalid_argument("threshold census: no specs");
    if (x > census_prime_cap())
        throw budget_error("threshold census: x exceeds 2^20 cap");

    std::vector<u64> primes = sieve_primes(2, x + 1);
    size_t nchunks = (primes.size() + kChunk - 1) / kChunk;

    auto work = [&](size_t ci) {
        std::pair<u64, u64> part{0, 0};  // pass, total
        size_t lo = ci * kChunk, hi = std::min(primes.size(), lo + kChunk);
        for (size_t i = lo; i < hi; ++i) {
            u64 p = primes[i];
            bool joint = true;
            for (const auto& s : specs)
                if (!is_in_S(s, p, k)) {
                    joint = false;
                    break;
                }
            if (!joint) continue;
            part.second += 1;
            long double bound = powl((long double)p, (long double)g + epsilon);
            for (const auto& s : specs) {
                auto rec = order_record(s, p, k);
                if (rec && (long double)rec->ord >= bound) {
                    part.first += 1;
                    break;
                }
            }
        }
        return part;
    };
    auto parts = run_chunked<std::pair<u64, u64>>(nchunks, workers, work);

    ThresholdCensus out;
    out.k = k;
    out.epsilon = epsilon;
    out.g = g;
    for (auto& [pass, total] : parts) {
        out.pass += pass;
        out.total += total;
    }
    return out;
}

std::vector<SmoothRow> run_smooth_filter(const AlgebraicNumberSpec& spec,
                                         unsigned d, unsigned k_alpha, u64 x,
                                         unsigned workers) {
    if (k_alpha == 0)
        throw std::invalid_argument("smooth filter: k_alpha must be positive");
    if (x > census_prime_cap())
        throw budget_error("smooth filter: x exceeds 2^20 cap");
    std::vector<u64> primes = sieve_primes(2, x + 1);
    size_t nchunks = (primes.size() + kChunk - 1) / kChunk;

    auto work = [&](size_t ci) {
        std::vector<SmoothRow> rows;
        size_t lo = ci * kChunk, hi = std::min(primes.size(), lo + kChunk);
        for (size_t i = lo; i < hi; ++i) {
            u64 p = primes[i];
            u128 pd = 1;
            for (unsigned j = 0; j < d; ++j) pd *= p;
            if (pd - 1 == 1) continue;  // boundary: largest prime factor undefined
            FactoredInteger f = factor_pk_minus_1(p, d);
            u128 lpf = largest_prime_factor(f);
            double bound = std::pow((double)p, 1.0 / (2.0 * k_alpha));
            if ((double)lpf < bound && is_in_S(spec, p, d))
                rows.push_back({p, lpf, bound});
        }
        return rows;
    };
    auto parts = run_chunked<std::vector<SmoothRow>>(nchunks, workers, work);

    std::vector<SmoothRow> out;
    for (auto& part : parts)
        for (auto& r : part) out.push_back(r);
    return out;
}

GlobalLemmaResult run_global_lemma_check(long long a, u64 x, unsigned workers) {
    if (a == 0 || a == 1 || a == -1)
        throw std::invalid_argument("global lemma check: |a| must exceed 1");
    if (x > census_prime_cap())
        throw budget_error("global lemma check: x exceeds 2^20 cap");
    std::vector<u64> primes = sieve_primes(2, x + 1);
    size_t nchunks = (primes.size() + kChunk - 1) / kChunk;

    auto work = [&](size_t ci) {
        GlobalLemmaResult part;
        size_t lo = ci * kChunk, hi = std::min(primes.size(), lo + kChunk);
        for (size_t i = lo; i < hi; ++i) {
            u64 p = primes[i];
            long long r = a % (long long)p;
            if (r < 0) r += (long long)p;
            if (r == 0) continue;
            part.total += 1;
            PolyModP modulus(p, {0, 1});
            FieldElement elem = make_constant(u64(r), p, modulus);
            u128 ord = mult_order(elem, factor_pk_minus_1(p, 1));
            long double limit = sqrtl((long double)p) / logl((long double)p);
            if ((long double)ord <= limit) part.violations += 1;
        }
        return part;
    };
    auto parts = run_chunked<GlobalLemmaResult>(nchunks, workers, work);

    GlobalLemmaResult out;
    for (auto& part : parts) {
        out.violations += part.violations;
        out.total += part.total;
    }
    return out;
}

std::vector<LinrecRow> run_linrec_census(const RecurrenceSpec& rec, u64 x,
                                         unsigned workers) {
    if (x > census_prime_cap())
        throw budget_error("linrec census: x exceeds 2^20 cap");
    std::vector<u64> primes = sieve_primes(2, x + 1);
    size_t nchunks = (primes.size() + kChunk - 1) / kChunk;

    auto work = [&](size_t ci) {
        std::vector<LinrecRow> rows;
        size_t lo = ci * kChunk, hi = std::min(primes.size(), lo + kChunk);
        for (size_t i = lo; i < hi; ++i) {
            u64 p = primes[i];
            if (linrec_excluded(rec, p)) continue;
            EquidistReport rep = residue_histogram(rec, p);
            rows.push_back({p, rep.T, rep.max_dev_num, rep.k, rep.within_bound()});
        }
        return rows;
    };
    auto parts = run_chunked<std::vector<LinrecRow>>(nchunks, workers, work);

    std::vector<LinrecRow> out;
    for (auto& part : parts)
        for (auto& r : part) out.push_back(r);
    return out;
}

namespace {

std::string rational_str(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace

void write_order_census_csv(std::ostream& os, const OrderCensusResult& r) {
    os << "p,in_S,degree,ord,index";
    for (size_t j = 1; j <= r.table.config.h_grid.size(); ++j)
        os << ",passes_h" << j;
    os << "\n";
    for (const auto& row : r.rows) {
        os << row.p << "," << (row.in_S ? 1 : 0) << "," << row.degree << ","
           << to_string(row.ord) << "," << to_string(row.index);
        for (bool b : row.passes) os << "," << (b ? 1 : 0);
        os << "\n";
    }
}

void write_density_summary_csv(std::ostream& os, const DensityTable& t) {
    os << "h,pass_count,s_count,fraction\n";
    for (size_t j = 0; j < t.config.h_grid.size(); ++j) {
        os << rational_str(t.config.h_grid[j]) << "," << t.pass_counts[j] << ","
           << t.s_count << "," << format_fraction(t.pass_counts[j], t.s_count)
           << "\n";
    }
}

void write_density_multi_csv(std::ostream& os, const OrderCensusResult& r) {
    os << "x,h,pass_count,s_count,fraction\n";
    for (const DensityTable* t :
         {&r.table_quarter, &r.table_half, &r.table}) {
        for (size_t j = 0; j < t->config.h_grid.size(); ++j) {
            os << t->config.x << "," << rational_str(t->config.h_grid[j]) << ","
               << t->pass_counts[j] << "," << t->s_count << ","
               << format_fraction(t->pass_counts[j], t->s_count) << "\n";
        }
    }
}

void write_rough_census_csv(std::ostream& os, const std::vector<RoughCensus>& rows) {
    os << "epsilon,c,x,hits,total,fraction\n";
    for (const auto& r : rows) {
        os << fmt_double(r.epsilon) << "," << fmt_double(r.c) << "," << r.x << ","
           << r.hits << "," << r.total << "," << format_fraction(r.hits, r.total)
           << "\n";
    }
}

void write_smooth_filter_csv(std::ostream& os, const std::vector<SmoothRow>& rows) {
    os << "p,largest_prime_factor,bound\n";
    for (const auto& r : rows)
        os << r.p << "," << to_string(r.lpf) << "," << fmt_double(r.bound) << "\n";
}

void write_linrec_csv(std::ostream& os, const std::vector<LinrecRow>& rows) {
    os << "p,T,max_dev,bound,pass\n";
    for (const auto& r : rows) {
        double bound = std::pow((double)r.p, double(r.k) / 2.0);
        os << r.p << "," << to_string(r.T) << ","
           << format_fraction(r.max_dev_num, r.p) << "," << fmt_double(bound)
           << "," << (r.pass ? 1 : 0) << "\n";
    }
}

}  // namespace ordc
