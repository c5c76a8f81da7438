#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ordcensus/config.hpp"
#include "ordcensus/selftest.hpp"

namespace {

using namespace ordc;

constexpr int kExitOk = 0;
constexpr int kExitSelftest = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct Overrides {
    std::string config_path;
    std::string out_dir;
    unsigned workers = 0;  // 0 = no override
    std::optional<u64> seed;
};

RunConfig load(const Overrides& o) {
    if (o.config_path.empty())
        throw ConfigError(0, "--config is required for this subcommand");
    RunConfig cfg = parse_config_file(o.config_path);
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.workers) cfg.workers = o.workers;
    if (o.seed) cfg.seed = *o.seed;
    set_factor_seed(cfg.seed);
    return cfg;
}

std::ofstream open_csv(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    auto path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    std::cout << "writing " << path.string() << "\n";
    return out;
}

const SpecSection& first_spec(const RunConfig& cfg) {
    if (cfg.specs.empty())
        throw ConfigError(0, "config needs a [spec] section");
    return cfg.specs.front();
}

int cmd_order_census(const Overrides& o) {
    RunConfig cfg = load(o);
    const SpecSection& sp = first_spec(cfg);
    if (!cfg.census) throw ConfigError(0, "config needs a [census] section");
    OrderCensusConfig oc;
    oc.spec_coeffs = sp.coeffs;
    oc.label = sp.label;
    oc.d = cfg.census->d;
    oc.x = cfg.census->x;
    oc.H = cfg.census->H;
    oc.h_grid = cfg.census->h_grid.empty() ? default_h_grid()
                                           : cfg.census->h_grid;
    oc.law_override = cfg.census->law;
    OrderCensusResult res = run_order_census(oc, cfg.workers);
    {
        auto out = open_csv(cfg, "order_census.csv");
        write_order_census_csv(out, res);
    }
    {
        auto out = open_csv(cfg, "density_summary.csv");
        write_density_summary_csv(out, res.table);
    }
    {
        auto out = open_csv(cfg, "density_summary_multi.csv");
        write_density_multi_csv(out, res);
    }
    std::cout << "spec " << (sp.label.empty() ? "(unlabeled)" : sp.label)
              << "  d=" << oc.d << "  x=" << oc.x << "  law="
              << (res.table.law == OrderLaw::two_p_plus_one ? "2p+2" : "group")
              << "\n"
              << "primes in S: " << res.table.s_count << "\n";
    for (size_t j = 0; j < oc.h_grid.size(); ++j) {
        const Rational& h = oc.h_grid[j];
        std::cout << "  h=" << h.num;
        if (h.den != 1) std::cout << "/" << h.den;
        std::cout << "  pass " << res.table.pass_counts[j] << "/"
                  << res.table.s_count << " = "
                  << format_fraction(res.table.pass_counts[j], res.table.s_count)
                  << "\n";
    }
    return kExitOk;
}

int cmd_rough(const Overrides& o) {
    RunConfig cfg = load(o);
    if (!cfg.rough) throw ConfigError(0, "config needs a [rough] section");
    const RoughSection& r = *cfg.rough;
    if (r.epsilon.empty())
        throw ConfigError(0, "[rough] needs an epsilon list");
    std::vector<RoughCensus> rows;
    for (double eps : r.epsilon)
        rows.push_back(run_rough_census(r.P, eps, r.c, r.x, r.over_primes,
                                        cfg.workers));
    auto out = open_csv(cfg, "rough_census.csv");
    write_rough_census_csv(out, rows);
    for (const auto& row : rows)
        std::cout << "epsilon=" << row.epsilon << "  hits " << row.hits << "/"
                  << row.total << " = " << format_fraction(row.hits, row.total)
                  << "\n";
    return kExitOk;
}

int cmd_smooth(const Overrides& o) {
    RunConfig cfg = load(o);
    const SpecSection& sp = first_spec(cfg);
    if (!cfg.smooth) throw ConfigError(0, "config needs a [smooth] section");
    AlgebraicNumberSpec spec(sp.coeffs, sp.label);
    auto rows = run_smooth_filter(spec, cfg.smooth->d, cfg.smooth->k_alpha,
                                  cfg.smooth->x, cfg.workers);
    auto out = open_csv(cfg, "smooth_filter.csv");
    write_smooth_filter_csv(out, rows);
    std::cout << rows.size() << " primes pass the smoothness filter\n";
    return kExitOk;
}

int cmd_threshold(const Overrides& o) {
    RunConfig cfg = load(o);
    if (cfg.specs.empty())
        throw ConfigError(0, "config needs at least one [spec] section");
    if (!cfg.threshold) throw ConfigError(0, "config needs a [threshold] section");
    std::vector<AlgebraicNumberSpec> specs;
    for (const auto& sp : cfg.specs) specs.emplace_back(sp.coeffs, sp.label);
    ThresholdCensus t = run_threshold_census(specs, cfg.threshold->k,
                                             cfg.threshold->epsilon,
                                             cfg.threshold->x, cfg.workers);
    auto out = open_csv(cfg, "threshold_census.csv");
    out << "k,epsilon,g,pass,total,fraction\n";
    char eps[64];
    std::snprintf(eps, sizeof eps, "%.10g", t.epsilon);
    out << t.k << "," << eps << "," << t.g << "," << t.pass << "," << t.total
        << "," << format_fraction(t.pass, t.total) << "\n";
    std::cout << "k=" << t.k << "  pass " << t.pass << "/" << t.total << " = "
              << format_fraction(t.pass, t.total) << "\n";
    return kExitOk;
}

int cmd_linrec(const Overrides& o) {
    RunConfig cfg = load(o);
    if (!cfg.linrec) throw ConfigError(0, "config needs a [linrec] section");
    RecurrenceSpec rec(cfg.linrec->char_coeffs, cfg.linrec->initial);
    auto rows = run_linrec_census(rec, cfg.linrec->x, cfg.workers);
    auto out = open_csv(cfg, "linrec_census.csv");
    write_linrec_csv(out, rows);
    u64 passes = 0;
    for (const auto& r : rows) passes += r.pass;
    std::cout << passes << "/" << rows.size()
              << " unexcluded primes satisfy the deviation bound\n";
    return kExitOk;
}

int cmd_selftest() {
    return run_selftest(std::cout) ? kExitOk : kExitSelftest;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"order and equidistribution censuses over finite fields"};
    app.require_subcommand(1);

    Overrides o;
    u64 seed_flag = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "config file path");
        sub->add_option("--out", o.out_dir, "output directory override");
        sub->add_option("--workers", o.workers, "worker count override");
        sub->add_option("--seed", seed_flag, "RNG seed override")
            ->each([&](const std::string&) { seed_set = true; });
    };

    auto* c_order = app.add_subcommand("order-census",
                                       "order census and density summary");
    auto* c_rough = app.add_subcommand("rough", "rough-divisor census");
    auto* c_smooth = app.add_subcommand("smooth", "smooth group-order filter");
    auto* c_linrec = app.add_subcommand("linrec",
                                        "linear recurrence equidistribution");
    auto* c_thresh = app.add_subcommand("threshold", "order threshold census");
    auto* c_self = app.add_subcommand("selftest", "embedded oracle suites");
    for (auto* sub : {c_order, c_rough, c_smooth, c_linrec, c_thresh})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }
    if (seed_set) o.seed = seed_flag;

    try {
        if (c_self->parsed()) return cmd_selftest();
        if (c_order->parsed()) return cmd_order_census(o);
        if (c_rough->parsed()) return cmd_rough(o);
        if (c_smooth->parsed()) return cmd_smooth(o);
        if (c_thresh->parsed()) return cmd_threshold(o);
        if (c_linrec->parsed()) return cmd_linrec(o);
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
