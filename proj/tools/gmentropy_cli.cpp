// gmentropy: estimate, sweep and oracle commands over Gaussian-mixture configs.
//
// Exit codes: 0 ok, 2 bad input (flags, config, unknown preset), 3 numerical
// domain error, 1 anything else.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmentropy/bounds.hpp"
#include "gmentropy/csv.hpp"
#include "gmentropy/errors.hpp"
#include "gmentropy/mixture_io.hpp"
#include "gmentropy/oracle.hpp"
#include "gmentropy/polyfit.hpp"
#include "gmentropy/power_integrals.hpp"
#include "gmentropy/presets.hpp"
#include "gmentropy/taylor.hpp"

using namespace gmentropy;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

/// Bad command-line or config input; maps to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure tagged with the estimator and its parameters; exit 3.
struct EstimatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NamedMixture {
    std::string id;
    GaussianMixture mix;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

double parse_real(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError(flag + ": '" + text + "' is not a number");
}

int parse_int(const std::string& text, const std::string& flag) {
    const double v = parse_real(text, flag);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw InputError(flag + ": '" + text + "' is not an integer");
    return static_cast<int>(v);
}

/// "3..8", "2,4,6" or a mix ("2,5..7").
std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split_list(text)) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_int(item, "--C"));
            continue;
        }
        const int lo = parse_int(item.substr(0, dots), "--C");
        const int hi = parse_int(item.substr(dots + 2), "--C");
        if (hi < lo) throw InputError("--C: empty range '" + item + "'");
        for (int c = lo; c <= hi; ++c) out.push_back(c);
    }
    if (out.empty()) throw InputError("--C: no orders given");
    return out;
}

std::vector<double> parse_reals(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_real(item, flag));
    if (out.empty()) throw InputError(flag + ": no values given");
    return out;
}

std::vector<NamedMixture> load_sources(const std::vector<std::string>& presets, const std::vector<std::string>& configs) {
    std::vector<NamedMixture> out;
    for (const auto& list : presets) {
        for (const auto& name : split_list(list)) {
            if (name == "all") {
                for (const auto& p : preset_names()) out.push_back({p, preset(p)});
                continue;
            }
            auto found = find_preset(name);
            if (!found) {
                std::string known;
                for (const auto& p : preset_names()) known += " " + p;
                throw InputError("unknown preset '" + name + "' (known:" + known + ")");
            }
            out.push_back({name, std::move(*found)});
        }
    }
    for (const auto& path : configs) {
        try {
            out.push_back({std::filesystem::path(path).stem().string(), load_mixture(path)});
        } catch (const MixtureParseError& e) {
            throw InputError(path + ":" + std::to_string(e.line()) + ": " +
                             std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
        }
    }
    if (out.empty()) throw InputError("no mixture given (use --preset or --config)");
    return out;
}

/// Runs `fn`, rethrowing numerical failures with the estimator named.
template <typename Fn>
auto tagged(const std::string& label, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const DomainError& e) {
        throw EstimatorError(label + ": " + e.what());
    } catch (const UnsupportedDimensionError& e) {
        throw EstimatorError(label + ": " + e.what());
    } catch (const ResourceLimitError& e) {
        throw EstimatorError(label + ": " + e.what());
    } catch (const NonConvergenceError& e) {
        throw EstimatorError(label + ": " + e.what());
    }
}

std::string fmt_param(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

// ---------------------------------------------------------------------------
// Oracle with an optional JSON cache keyed by mixture hash and settings.

struct OracleSettings {
    std::string kind = "auto";  // auto | mc | grid | none
    std::int64_t samples = 10'000'000;
    std::uint64_t seed = 20240229;
    int grid_nodes = 2001;
    std::string cache_path;
};

class OracleCache {
public:
    explicit OracleCache(std::string path) : path_(std::move(path)) {
        if (path_.empty() || !std::filesystem::exists(path_)) return;
        std::ifstream in(path_);
        try {
            data_ = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("oracle cache " + path_ + " is not valid JSON: " + e.what());
        }
    }

    std::optional<EntropyEstimate> find(const std::string& key) const {
        if (!data_.contains(key)) return std::nullopt;
        const auto& j = data_.at(key);
        EntropyEstimate e;
        e.method = method_from_string(j.at("method").get<std::string>());
        e.value = j.at("value").get<double>();
        if (j.contains("std_error")) e.std_error = j.at("std_error").get<double>();
        if (j.contains("sample_count")) e.sample_count = j.at("sample_count").get<std::int64_t>();
        if (j.contains("grid_nodes_per_axis")) e.grid_nodes_per_axis = j.at("grid_nodes_per_axis").get<int>();
        if (j.contains("grid_mass")) e.grid_mass = j.at("grid_mass").get<double>();
        return e;
    }

    void store(const std::string& key, const EntropyEstimate& e) {
        if (path_.empty()) return;
        nlohmann::json j{{"method", to_string(e.method)}, {"value", e.value}};
        if (e.std_error) j["std_error"] = *e.std_error;
        if (e.sample_count) j["sample_count"] = *e.sample_count;
        if (e.grid_nodes_per_axis) j["grid_nodes_per_axis"] = *e.grid_nodes_per_axis;
        if (e.grid_mass) j["grid_mass"] = *e.grid_mass;
        data_[key] = j;
        std::ofstream out(path_);
        out << data_.dump(2) << "\n";
    }

private:
    std::string path_;
    nlohmann::json data_ = nlohmann::json::object();
};

std::string resolve_oracle_kind(const std::string& kind, const GaussianMixture& mix) {
    if (kind == "auto") return mix.dimension() <= 2 ? "grid" : "mc";
    return kind;
}

EntropyEstimate run_oracle(const NamedMixture& m, const std::string& kind, const OracleSettings& settings,
                           OracleCache& cache) {
    std::string key = mixture_hash(m.mix) + ":" + kind;
    if (kind == "mc")
        key += ":N=" + std::to_string(settings.samples) + ":seed=" + std::to_string(settings.seed);
    else
        key += ":nodes=" + std::to_string(settings.grid_nodes);
    if (auto hit = cache.find(key)) return *hit;

    EntropyEstimate est;
    if (kind == "mc") {
        if (settings.samples < 1000) throw InputError("--N must be at least 1000");
        est = mc_entropy(m.mix, settings.samples, settings.seed);
    } else if (kind == "grid") {
        est = tagged("grid oracle on " + m.id, [&] {
            return grid_entropy(m.mix, GridSpec{settings.grid_nodes, 8.0});
        });
    } else {
        throw InputError("unknown oracle '" + kind + "'");
    }
    cache.store(key, est);
    return est;
}

void add_oracle_options(CLI::App* cmd, OracleSettings& o) {
    cmd->add_option("--N", o.samples, "Monte Carlo sample count")->check(CLI::Range(std::int64_t{1000}, std::int64_t{1} << 40));
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--grid-nodes", o.grid_nodes, "Simpson nodes per axis (odd)");
    cmd->add_option("--oracle-cache", o.cache_path, "JSON file caching oracle values per mixture hash");
}

// ---------------------------------------------------------------------------

struct CommonOptions {
    std::vector<std::string> presets;
    std::vector<std::string> configs;
    std::string output;
    bool bits = false;
    bool timing = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& c) {
    cmd->add_option("--preset", c.presets, "Bundled mixture(s): table1_row1..table1_row5, or 'all'");
    cmd->add_option("--config", c.configs, "Mixture config file(s) (YAML or JSON)");
    cmd->add_option("-o,--output", c.output, "Write CSV here instead of stdout");
    cmd->add_flag("--bits", c.bits, "Report entropies in bits");
    cmd->add_flag("--timing", c.timing, "Fill the runtime_ms column (makes output non-reproducible)");
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InputError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

struct EstimateRequest {
    std::vector<Method> methods;
    std::vector<int> orders;
    std::vector<double> rs;
    std::vector<std::string> betas;  // numbers or "peaks"
};

/// Every (method, parameter) row for one mixture. The power-integral table and
/// mode are shared across rows.
std::vector<CsvRow> estimate_rows(const NamedMixture& m, const EstimateRequest& req, const OracleSettings& oracle,
                                  OracleCache& cache, bool timing) {
    std::vector<CsvRow> rows;
    bool needs_table = false;
    bool needs_oracle_rows = false;
    for (Method method : req.methods) {
        needs_table = needs_table || method == Method::taylor || method == Method::polyfit;
        needs_oracle_rows = needs_oracle_rows || method == Method::mc || method == Method::grid;
    }

    std::optional<EntropyEstimate> reference;
    const std::string oracle_kind = resolve_oracle_kind(oracle.kind, m.mix);
    if (oracle_kind != "none") reference = run_oracle(m, oracle_kind, oracle, cache);

    auto push = [&](EntropyEstimate est, std::optional<double> ms) {
        std::optional<double> pct;
        if (reference) pct = percent_error(reference->value, est.value);
        rows.push_back({m.id, std::move(est), pct, timing ? ms : std::nullopt});
    };

    std::optional<ModeResult> mode;
    std::optional<PowerIntegralTable> table;
    if (needs_table) {
        mode = tagged("mode search on " + m.id, [&] { return find_f_max(m.mix); });
        int max_order = 1;
        for (int c : req.orders) max_order = std::max(max_order, c);
        table = tagged("power integrals up to order " + std::to_string(max_order),
                       [&] { return build_table(m.mix, max_order); });
    }

    for (Method method : req.methods) {
        const auto start = std::chrono::steady_clock::now();
        switch (method) {
            case Method::polyfit:
                for (double r : req.rs)
                    for (int c : req.orders) {
                        const auto t0 = std::chrono::steady_clock::now();
                        auto est = tagged("polyfit C=" + std::to_string(c) + " r=" + fmt_param(r),
                                          [&] { return polyfit_entropy(m.mix, *table, c, r, *mode); });
                        push(std::move(est), elapsed_ms(t0));
                    }
                break;
            case Method::taylor:
                for (const auto& beta_text : req.betas)
                    for (int c : req.orders) {
                        const auto t0 = std::chrono::steady_clock::now();
                        TaylorParams params;
                        params.order = c;
                        if (beta_text == "peaks") {
                            params.policy = ScalePolicy::sum_of_peaks;
                        } else {
                            params.beta = parse_real(beta_text, "--beta");
                        }
                        auto est = tagged("taylor C=" + std::to_string(c) + " beta=" + beta_text,
                                          [&] { return taylor_entropy(m.mix, *table, params, *mode); });
                        push(std::move(est), elapsed_ms(t0));
                    }
                break;
            case Method::moment_bound: {
                EntropyEstimate est;
                est.method = Method::moment_bound;
                est.value = moment_upper_bound(m.mix);
                push(std::move(est), elapsed_ms(start));
                break;
            }
            case Method::component_bound: {
                EntropyEstimate est;
                est.method = Method::component_bound;
                est.value = component_upper_bound(m.mix);
                push(std::move(est), elapsed_ms(start));
                break;
            }
            case Method::mc:
            case Method::grid: {
                const std::string kind = method == Method::mc ? "mc" : "grid";
                auto est = run_oracle(m, kind, oracle, cache);
                // An oracle row is compared against the reference only when they differ.
                std::optional<double> pct;
                if (reference && kind != oracle_kind) pct = percent_error(reference->value, est.value);
                rows.push_back({m.id, std::move(est), pct, timing ? std::optional<double>(elapsed_ms(start)) : std::nullopt});
                break;
            }
        }
    }
    (void)needs_oracle_rows;
    return rows;
}

std::vector<Method> parse_methods(const std::vector<std::string>& lists) {
    std::vector<Method> out;
    for (const auto& list : lists)
        for (const auto& name : split_list(list)) {
            try {
                out.push_back(method_from_string(name));
            } catch (const std::invalid_argument&) {
                throw InputError("unknown method '" + name +
                                 "' (taylor, polyfit, moment_bound, component_bound, mc, grid)");
            }
        }
    if (out.empty()) throw InputError("no method given");
    return out;
}

/// Without an explicit choice, bounds alone skip the oracle; anything else
/// gets the dimension-appropriate one so pct_error is filled.
std::string default_oracle(const std::vector<Method>& methods) {
    for (Method m : methods)
        if (m != Method::moment_bound && m != Method::component_bound) return "auto";
    return "none";
}

// ---------------------------------------------------------------------------

void write_fit_curves(std::ostream& out, double b, const std::vector<double>& rs, const std::vector<int>& orders,
                      int points) {
    if (!(b > 0.0)) throw InputError("--b must be positive");
    if (points < 1) throw InputError("--points must be >= 1");
    std::vector<double> grid;
    for (int k = 1; k <= points; ++k) grid.push_back(b * k / points);
    out << kFitCurveHeader << "\n";
    for (double r : rs)
        for (int c : orders) {
            PolyfitParams params{c, r, b};
            const auto values = tagged("fit curve C=" + std::to_string(c) + " r=" + fmt_param(r),
                                       [&] { return eval_fit_curve(params, grid); });
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const double s = grid[k];
                out << format_real(r) << "," << c << "," << format_real(b) << "," << format_real(s) << ","
                    << format_real(values[k]) << "," << format_real(-s * std::log(s)) << "\n";
            }
        }
}

void write_table_csv(std::ostream& out, const NamedMixture& m, int max_order) {
    const auto table = tagged("power integrals", [&] { return build_table(m.mix, max_order); });
    out << "mixture_id,a,log_integral,integral\n";
    for (int a = 1; a <= max_order; ++a) {
        const double v = table.at(a);
        out << m.id << "," << a << "," << format_real(std::log(v)) << "," << format_real(v) << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Differential entropy of Gaussian mixtures"};
    app.require_subcommand(1);

    CommonOptions common;
    OracleSettings oracle;
    std::vector<std::string> method_lists;
    std::string orders_text = "5";
    std::string rs_text = "-2";
    std::string betas_text = "1";
    std::string oracle_choice;

    auto* estimate = app.add_subcommand("estimate", "One CSV row per method and parameter tuple");
    add_common_options(estimate, common);
    add_oracle_options(estimate, oracle);
    estimate->add_option("--method", method_lists, "Comma-separated methods")->required();
    estimate->add_option("--C", orders_text, "Orders: '5', '3..8' or '2,4,6'");
    estimate->add_option("--r", rs_text, "Polyfit weight exponents, comma-separated");
    estimate->add_option("--beta", betas_text, "Taylor scales m = beta f_max; 'peaks' for sum of peaks");
    estimate->add_option("--oracle", oracle_choice, "Reference for pct_error")
        ->check(CLI::IsMember({"auto", "mc", "grid", "none"}));

    auto* sweep = app.add_subcommand("sweep", "Grid over C and r (polyfit) or beta (taylor)");
    add_common_options(sweep, common);
    add_oracle_options(sweep, oracle);
    sweep->add_option("--method", method_lists, "taylor and/or polyfit");
    sweep->add_option("--C", orders_text, "Orders");
    sweep->add_option("--r", rs_text, "Polyfit weight exponents");
    sweep->add_option("--beta", betas_text, "Taylor beta values");
    sweep->add_option("--oracle", oracle_choice, "Reference for pct_error")
        ->check(CLI::IsMember({"auto", "mc", "grid", "none"}));
    bool fit_curve = false;
    double fit_b = 1.0;
    int fit_points = 200;
    sweep->add_flag("--fit-curve", fit_curve, "Emit fitted curves g(s) against -s ln s instead of entropies");
    sweep->add_option("--b", fit_b, "Fit interval (0, b] for --fit-curve");
    sweep->add_option("--points", fit_points, "Samples per curve for --fit-curve");

    auto* oracle_cmd = app.add_subcommand("oracle", "Reference entropies (mc and/or grid)");
    add_common_options(oracle_cmd, common);
    add_oracle_options(oracle_cmd, oracle);
    oracle_cmd->add_option("--method", method_lists, "auto, mc or grid");

    auto* table_cmd = app.add_subcommand("table", "Power integrals int f^a dx for a = 1..C");
    add_common_options(table_cmd, common);
    table_cmd->add_option("--C", orders_text, "Highest order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    const double unit = common.bits ? std::numbers::ln2 : 1.0;
    OracleCache cache(oracle.cache_path);

    if (sweep->parsed() && fit_curve) {
        Output out(common.output);
        write_fit_curves(out.stream(), fit_b, parse_reals(rs_text, "--r"), parse_orders(orders_text), fit_points);
        return 0;
    }

    const auto sources = load_sources(common.presets, common.configs);

    if (table_cmd->parsed()) {
        Output out(common.output);
        const auto orders = parse_orders(orders_text);
        for (const auto& m : sources) write_table_csv(out.stream(), m, *std::max_element(orders.begin(), orders.end()));
        return 0;
    }

    std::vector<CsvRow> rows;
    if (oracle_cmd->parsed()) {
        std::vector<std::string> kinds = method_lists.empty() ? std::vector<std::string>{"auto"} : std::vector<std::string>{};
        for (const auto& list : method_lists)
            for (const auto& k : split_list(list)) {
                if (k != "auto" && k != "mc" && k != "grid") throw InputError("oracle method must be auto, mc or grid");
                kinds.push_back(k);
            }
        for (const auto& m : sources)
            for (const auto& k : kinds) {
                const auto t0 = std::chrono::steady_clock::now();
                auto est = run_oracle(m, resolve_oracle_kind(k, m.mix), oracle, cache);
                rows.push_back({m.id, std::move(est), std::nullopt,
                                common.timing ? std::optional<double>(elapsed_ms(t0)) : std::nullopt});
            }
    } else {
        EstimateRequest req;
        if (method_lists.empty()) method_lists = {"polyfit"};
        req.methods = parse_methods(method_lists);
        req.orders = parse_orders(orders_text);
        req.rs = parse_reals(rs_text, "--r");
        req.betas = split_list(betas_text);
        if (req.betas.empty()) throw InputError("--beta: no values given");
        if (sweep->parsed())
            for (Method m : req.methods)
                if (m != Method::taylor && m != Method::polyfit) throw InputError("sweep supports taylor and polyfit");
        oracle.kind = oracle_choice.empty() ? default_oracle(req.methods) : oracle_choice;
        for (const auto& m : sources) {
            auto part = estimate_rows(m, req, oracle, cache, common.timing);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    }

    Output out(common.output);
    write_csv(out.stream(), rows, unit);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "gmentropy: " << e.what() << "\n";
        return kExitInput;
    } catch (const EstimatorError& e) {
        std::cerr << "gmentropy: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "gmentropy: " << e.what() << "\n";
        return 1;
    }
}
