#pragma once

#include <optional>
#include <string>

#include "ordcensus/census.hpp"

namespace ordc {

struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what),
          line(line_) {}
};

struct SpecSection {
    std::vector<long long> coeffs;  // lowest degree first
    std::string label;
};

struct CensusSection {
    u64 x = 100000;
    unsigned d = 2;
    unsigned H = 10;
    std::vector<Rational> h_grid;  // empty = default grid
    std::optional<OrderLaw> law;   // absent = auto-detect
};

struct RoughSection {
    std::array<long long, 3> P{1, 0, 1};  // ascending coefficients
    std::vector<double> epsilon;
    double c = 0.3;
    u64 x = 100000;
    bool over_primes = true;
};

struct ThresholdSection {
    unsigned k = 3;
    double epsilon = 0.1;
    u64 x = 10000;
};

struct SmoothSection {
    unsigned d = 1;
    unsigned k_alpha = 1;
    u64 x = 100000;
};

struct LinrecSection {
    std::vector<long long> char_coeffs;  // ascending, monic
    std::vector<Rational> initial;       // "num" or "num/den" tokens
    u64 x = 1000;
};

struct RunConfig {
    std::vector<SpecSection> specs;
    std::optional<CensusSection> census;
    std::optional<RoughSection> rough;
    std::optional<ThresholdSection> threshold;
    std::optional<SmoothSection> smooth;
    std::optional<LinrecSection> linrec;
    std::string out_dir = ".";
    unsigned workers = 1;
    u64 seed = 0;
};

// Key-value sections, '#' comments, whitespace-separated lists.
// Throws ConfigError with the offending line number.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace ordc
