#include "ordcensus/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ordc {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

long long parse_ll(const std::string& tok, int line) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ConfigError(line, "expected integer, got '" + tok + "'");
    return v;
}

u64 parse_u64(const std::string& tok, int line) {
    u64 v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ConfigError(line, "expected nonnegative integer, got '" + tok + "'");
    return v;
}

unsigned parse_unsigned(const std::string& tok, int line) {
    u64 v = parse_u64(tok, line);
    if (v > 0xffffffffULL)
        throw ConfigError(line, "value out of range: '" + tok + "'");
    return unsigned(v);
}

double parse_double(const std::string& tok, int line) {
    try {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError(line, "expected number, got '" + tok + "'");
    }
}

bool parse_bool(const std::string& tok, int line) {
    if (tok == "true" || tok == "1" || tok == "yes") return true;
    if (tok == "false" || tok == "0" || tok == "no") return false;
    throw ConfigError(line, "expected boolean, got '" + tok + "'");
}

Rational parse_rational(const std::string& tok, int line) {
    size_t slash = tok.find('/');
    try {
        if (slash == std::string::npos)
            return make_rational(parse_ll(tok, line), 1);
        return make_rational(parse_ll(tok.substr(0, slash), line),
                             parse_ll(tok.substr(slash + 1), line));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(line, std::string(e.what()) + ": '" + tok + "'");
    }
}

std::vector<long long> parse_ll_list(const std::string& val, int line) {
    std::vector<long long> out;
    for (const auto& tok : split_ws(val)) out.push_back(parse_ll(tok, line));
    if (out.empty()) throw ConfigError(line, "empty list");
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::string section;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(line, "unterminated section header");
            section = s.substr(1, s.size() - 2);
            if (section == "spec") {
                cfg.specs.emplace_back();
            } else if (section == "census") {
                if (cfg.census) throw ConfigError(line, "duplicate [census]");
                cfg.census.emplace();
            } else if (section == "rough") {
                if (cfg.rough) throw ConfigError(line, "duplicate [rough]");
                cfg.rough.emplace();
            } else if (section == "threshold") {
                if (cfg.threshold) throw ConfigError(line, "duplicate [threshold]");
                cfg.threshold.emplace();
            } else if (section == "smooth") {
                if (cfg.smooth) throw ConfigError(line, "duplicate [smooth]");
                cfg.smooth.emplace();
            } else if (section == "linrec") {
                if (cfg.linrec) throw ConfigError(line, "duplicate [linrec]");
                cfg.linrec.emplace();
            } else if (section == "run") {
                // singleton by convention; later keys overwrite
            } else {
                throw ConfigError(line, "unknown section [" + section + "]");
            }
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "missing key");
        if (val.empty()) throw ConfigError(line, "missing value for '" + key + "'");

        if (section == "spec") {
            auto& sp = cfg.specs.back();
            if (key == "coeffs")
                sp.coeffs = parse_ll_list(val, line);
            else if (key == "label")
                sp.label = val;
            else
                throw ConfigError(line, "unknown key '" + key + "' in [spec]");
        } else if (section == "census") {
            auto& c = *cfg.census;
            if (key == "x")
                c.x = parse_u64(val, line);
            else if (key == "d")
                c.d = parse_unsigned(val, line);
            else if (key == "H")
                c.H = parse_unsigned(val, line);
            else if (key == "h_grid") {
                c.h_grid.clear();
                for (const auto& tok : split_ws(val))
                    c.h_grid.push_back(parse_rational(tok, line));
            } else if (key == "law") {
                if (val == "auto")
                    c.law = std::nullopt;
                else if (val == "group")
                    c.law = OrderLaw::group_order;
                else if (val == "2p+2")
                    c.law = OrderLaw::two_p_plus_one;
                else
                    throw ConfigError(line, "law must be auto, group or 2p+2");
            } else {
                throw ConfigError(line, "unknown key '" + key + "' in [census]");
            }
        } else if (section == "rough") {
            auto& r = *cfg.rough;
            if (key == "P") {
                auto v = parse_ll_list(val, line);
                if (v.size() != 3)
                    throw ConfigError(line, "P needs 3 coefficients, ascending");
                r.P = {v[0], v[1], v[2]};
            } else if (key == "epsilon") {
                r.epsilon.clear();
                for (const auto& tok : split_ws(val))
                    r.epsilon.push_back(parse_double(tok, line));
            } else if (key == "c") {
                r.c = parse_double(val, line);
            } else if (key == "x") {
                r.x = parse_u64(val, line);
            } else if (key == "over_primes") {
                r.over_primes = parse_bool(val, line);
            } else {
                throw ConfigError(line, "unknown key '" + key + "' in [rough]");
            }
        } else if (section == "threshold") {
            auto& t = *cfg.threshold;
            if (key == "k")
                t.k = parse_unsigned(val, line);
            else if (key == "epsilon")
                t.epsilon = parse_double(val, line);
            else if (key == "x")
                t.x = parse_u64(val, line);
            else
                throw ConfigError(line, "unknown key '" + key + "' in [threshold]");
        } else if (section == "smooth") {
            auto& m = *cfg.smooth;
            if (key == "d")
                m.d = parse_unsigned(val, line);
            else if (key == "k_alpha")
                m.k_alpha = parse_unsigned(val, line);
            else if (key == "x")
                m.x = parse_u64(val, line);
            else
                throw ConfigError(line, "unknown key '" + key + "' in [smooth]");
        } else if (section == "linrec") {
            auto& l = *cfg.linrec;
            if (key == "char_coeffs") {
                l.char_coeffs = parse_ll_list(val, line);
            } else if (key == "initial") {
                l.initial.clear();
                for (const auto& tok : split_ws(val))
                    l.initial.push_back(parse_rational(tok, line));
            } else if (key == "x") {
                l.x = parse_u64(val, line);
            } else {
                throw ConfigError(line, "unknown key '" + key + "' in [linrec]");
            }
        } else if (section == "run") {
            if (key == "out")
                cfg.out_dir = val;
            else if (key == "workers") {
                cfg.workers = parse_unsigned(val, line);
                if (cfg.workers < 1)
                    throw ConfigError(line, "workers must be >= 1");
            } else if (key == "seed")
                cfg.seed = parse_u64(val, line);
            else
                throw ConfigError(line, "unknown key '" + key + "' in [run]");
        } else {
            throw ConfigError(line, "key outside any section");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace ordc
