// SPDX-License-Identifier: Apache-2.0
#include "coopnet/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "coopnet/analysis.hpp"

namespace coopnet::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::size_t pos = 0;
    while (true) {
        const auto comma = value.find(',', pos);
        items.push_back(trim(value.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return items;
}

double parse_double(const std::string& token, const std::string& context) {
    const std::string t = trim(token);
    if (t.empty()) throw ConfigError(context + ": empty number");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
        throw ConfigError(context + ": cannot parse number '" + t + "'");
    return v;
}

// Plain linear value, or `<x> dB` converted to 10^(x/10).
double parse_linear_maybe_db(const std::string& token, const std::string& context) {
    const std::string t = trim(token);
    if (t.size() > 2 && t.compare(t.size() - 2, 2, "dB") == 0)
        return std::pow(10.0, parse_double(t.substr(0, t.size() - 2), context) / 10.0);
    return parse_double(t, context);
}

std::uint64_t parse_u64(const std::string& token, const std::string& context) {
    const std::string t = trim(token);
    if (t.empty() || t[0] == '-') throw ConfigError(context + ": expected unsigned integer");
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size() || errno == ERANGE)
        throw ConfigError(context + ": cannot parse integer '" + t + "'");
    return v;
}

int parse_positive_int(const std::string& token, const std::string& context) {
    const std::uint64_t v = parse_u64(token, context);
    if (v < 1 || v > 1000000) throw ConfigError(context + ": value out of range");
    return static_cast<int>(v);
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        const std::string where = "config line " + std::to_string(line_no);
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");

        if (key == "schemes") {
            for (const auto& item : split_list(value)) {
                const auto s = parse_scheme(item);
                if (!s) throw ConfigError(where + ": unknown scheme '" + item + "'");
                cfg.schemes.push_back(*s);
            }
        } else if (key == "M") {
            cfg.relay_count = parse_positive_int(value, where);
        } else if (key == "K") {
            cfg.decode_threshold = parse_positive_int(value, where);
        } else if (key == "Nr") {
            cfg.rx_antennas = parse_positive_int(value, where);
        } else if (key == "N") {
            cfg.block_length = parse_positive_int(value, where);
        } else if (key == "rate") {
            for (const auto& item : split_list(value)) {
                const double r = parse_double(item, where);
                if (!(r > 0.0)) throw ConfigError(where + ": rates must be > 0");
                cfg.rates.push_back(r);
            }
        } else if (key == "snr_db_start") {
            cfg.snr_start_db = parse_double(value, where);
        } else if (key == "snr_db_stop") {
            cfg.snr_stop_db = parse_double(value, where);
        } else if (key == "snr_db_step") {
            cfg.snr_step_db = parse_double(value, where);
            if (!(cfg.snr_step_db > 0.0)) throw ConfigError(where + ": snr_db_step must be > 0");
        } else if (key == "trials") {
            cfg.trials = parse_u64(value, where);
            if (cfg.trials < 1) throw ConfigError(where + ": trials must be >= 1");
        } else if (key == "seed") {
            cfg.seed = parse_u64(value, where);
        } else if (key == "target_pout") {
            cfg.target_pout = parse_double(value, where);
            if (!(cfg.target_pout > 0.0 && cfg.target_pout < 1.0))
                throw ConfigError(where + ": target_pout must be in (0, 1)");
        } else if (key == "sigma2_sr") {
            cfg.sigma2_sr = parse_linear_maybe_db(value, where);
        } else if (key == "sigma2_d") {
            cfg.sigma2_d = parse_linear_maybe_db(value, where);
        } else if (key == "relay_powers") {
            for (const auto& item : split_list(value))
                cfg.relay_powers.push_back(parse_linear_maybe_db(item, where));
        } else if (key == "rate_tolerance") {
            cfg.rate_tolerance = parse_double(value, where);
            if (!(cfg.rate_tolerance > 0.0))
                throw ConfigError(where + ": rate_tolerance must be > 0");
        } else if (key == "delta_r") {
            cfg.delta_r = parse_double(value, where);
            if (!(cfg.delta_r > 0.0)) throw ConfigError(where + ": delta_r must be > 0");
        } else if (key == "out") {
            cfg.out = value;
        } else {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

CliOptions parse_args(int argc, const char* const* argv) {
    CliOptions opt;
    if (argc < 2 || argv[1][0] == '-')
        throw ConfigError("usage: coopnet <simulate|capacity|bound|dmt|trt|shift> --config <file> "
                          "[--out <file>] [--workers <n>] [--seed <n>] [--plot-script <file>] "
                          "[--trace <file>]");
    opt.subcommand = argv[1];
    const std::set<std::string> known = {"simulate", "capacity", "bound", "dmt", "trt", "shift"};
    if (!known.count(opt.subcommand))
        throw ConfigError("unknown subcommand '" + opt.subcommand + "'");

    for (int i = 2; i < argc; ++i) {
        const std::string flag = argv[i];
        const auto need_value = [&]() -> std::string {
            if (i + 1 >= argc) throw ConfigError("flag " + flag + " needs a value");
            return argv[++i];
        };
        if (flag == "--config")
            opt.config_path = need_value();
        else if (flag == "--out")
            opt.out = need_value();
        else if (flag == "--workers")
            opt.workers = parse_positive_int(need_value(), "--workers");
        else if (flag == "--seed")
            opt.seed = parse_u64(need_value(), "--seed");
        else if (flag == "--plot-script")
            opt.plot_script = need_value();
        else if (flag == "--trace")
            opt.trace_path = need_value();
        else
            throw ConfigError("unknown flag '" + flag + "'");
    }
    if (opt.config_path.empty()) throw ConfigError("--config is required");
    return opt;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<double> snr_grid(const ScenarioConfig& cfg) {
    if (!cfg.snr_start_db || !cfg.snr_stop_db)
        throw ConfigError("snr_db_start and snr_db_stop are required");
    if (*cfg.snr_stop_db < *cfg.snr_start_db)
        throw ConfigError("snr_db_stop must be >= snr_db_start");
    std::vector<double> grid;
    const int count =
        static_cast<int>(std::floor((*cfg.snr_stop_db - *cfg.snr_start_db) / cfg.snr_step_db +
                                    1e-9)) + 1;
    grid.reserve(count);
    for (int i = 0; i < count; ++i) grid.push_back(*cfg.snr_start_db + i * cfg.snr_step_db);
    return grid;
}

SystemParams build_params(const ScenarioConfig& cfg, double rate) {
    if (!cfg.relay_count) throw ConfigError("key M is required");
    if (!cfg.decode_threshold) throw ConfigError("key K is required");
    if (!cfg.rx_antennas) throw ConfigError("key Nr is required");
    SystemParams p;
    p.relay_count = *cfg.relay_count;
    p.decode_threshold = *cfg.decode_threshold;
    p.rx_antennas = *cfg.rx_antennas;
    p.block_length = cfg.block_length;
    p.rate = rate;
    p.rho_s = 1.0;
    p.relay_powers = cfg.relay_powers;
    p.sigma2_sr = cfg.sigma2_sr;
    p.sigma2_d = cfg.sigma2_d;
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

void require_schemes(const ScenarioConfig& cfg) {
    if (cfg.schemes.empty()) throw ConfigError("key schemes is required");
}

double first_rate(const ScenarioConfig& cfg) {
    if (cfg.rates.empty()) throw ConfigError("key rate is required");
    return cfg.rates[0];
}

struct RunContext {
    const ScenarioConfig& cfg;
    const CliOptions& opt;
    std::uint64_t seed;
};

std::string run_simulate(const RunContext& ctx) {
    require_schemes(ctx.cfg);
    first_rate(ctx.cfg);
    const auto grid = snr_grid(ctx.cfg);
    std::string csv = "scheme,snr_db,rate,trials,outages,p_out,ci_low,ci_high,bound,seed\n";
    for (Scheme scheme : ctx.cfg.schemes) {
        for (double rate : ctx.cfg.rates) {
            const SystemParams params = build_params(ctx.cfg, rate);
            const SweepResult sweep = snr_sweep(scheme, params, grid, ctx.cfg.trials, ctx.seed,
                                                ctx.opt.workers);
            for (const SweepRow& row : sweep.rows) {
                csv += std::string(scheme_name(scheme)) + ',' + fmt(row.snr_db) + ',' +
                       fmt(row.rate) + ',' + std::to_string(row.estimate.trials) + ',' +
                       std::to_string(row.estimate.outages) + ',' + fmt(row.estimate.p_out) +
                       ',' + fmt(row.estimate.ci_low) + ',' + fmt(row.estimate.ci_high) + ',' +
                       (row.bound ? fmt(*row.bound) : std::string()) + ',' +
                       std::to_string(ctx.seed) + '\n';
            }
        }
    }
    return csv;
}

std::string run_capacity(const RunContext& ctx) {
    require_schemes(ctx.cfg);
    const auto grid = snr_grid(ctx.cfg);
    std::string csv = "scheme,snr_db,target_pout,trials,capacity,seed\n";
    for (Scheme scheme : ctx.cfg.schemes) {
        for (double snr_db : grid) {
            SystemParams params = build_params(ctx.cfg, 1.0);
            params.rho_s = std::pow(10.0, snr_db / 10.0);
            const double cap = outage_capacity(scheme, params, ctx.cfg.target_pout,
                                               ctx.cfg.rate_tolerance, ctx.cfg.trials, ctx.seed,
                                               ctx.opt.workers);
            csv += std::string(scheme_name(scheme)) + ',' + fmt(snr_db) + ',' +
                   fmt(ctx.cfg.target_pout) + ',' + std::to_string(ctx.cfg.trials) + ',' +
                   fmt(cap) + ',' + std::to_string(ctx.seed) + '\n';
        }
    }
    return csv;
}

std::string run_bound(const RunContext& ctx) {
    first_rate(ctx.cfg);
    const auto grid = snr_grid(ctx.cfg);
    std::string csv = "snr_db,rate,bound\n";
    for (double rate : ctx.cfg.rates) {
        SystemParams params = build_params(ctx.cfg, rate);
        for (double snr_db : grid) {
            params.rho_s = std::pow(10.0, snr_db / 10.0);
            csv += fmt(snr_db) + ',' + fmt(rate) + ',' + fmt(outage_upper_bound(params)) + '\n';
        }
    }
    return csv;
}

std::string run_dmt(const RunContext& ctx) {
    if (!ctx.cfg.relay_count) throw ConfigError("key M is required");
    if (!ctx.cfg.rx_antennas) throw ConfigError("key Nr is required");
    const int m = *ctx.cfg.relay_count;
    const int nr = *ctx.cfg.rx_antennas;
    std::string csv = "scheme,r,d\n";
    const auto emit = [&](const char* name, auto&& f) {
        for (int i = 0; i <= 100; ++i) {
            const double r = i / 100.0;
            csv += std::string(name) + ',' + fmt(r) + ',' + fmt(f(r)) + '\n';
        }
    };
    emit("DF-MSC-opt", [&](double r) { return dmt_msc_opt(r, m, nr).d; });
    emit("DDF", [&](double r) { return dmt_ddf(r, m, nr); });
    emit("DF-SDiv", [&](double r) { return dmt_sdiv(r, m, nr); });
    emit("AF-SDiv", [&](double r) { return dmt_sdiv(r, m, nr); });
    return csv;
}

std::string run_trt(const RunContext& ctx) {
    if (!ctx.cfg.decode_threshold) throw ConfigError("key K is required");
    if (!ctx.cfg.rx_antennas) throw ConfigError("key Nr is required");
    const int k = *ctx.cfg.decode_threshold;
    const int nr = *ctx.cfg.rx_antennas;
    std::string csv = "z,c,g,t,delta_r,predicted_shift_db\n";
    for (int z = 0; z < std::min(nr, k + 1); ++z) {
        const TrtCoefficients co = trt_coefficients(z, k, nr);
        csv += std::to_string(co.z) + ',' + std::to_string(co.c) + ',' + std::to_string(co.g) +
               ',' + fmt(co.t) + ',' + fmt(ctx.cfg.delta_r) + ',' +
               fmt(predicted_snr_shift_db(ctx.cfg.delta_r, z, k, nr)) + '\n';
    }
    return csv;
}

std::string run_shift(const RunContext& ctx) {
    require_schemes(ctx.cfg);
    const double rate_a = first_rate(ctx.cfg);
    const double rate_b = rate_a + ctx.cfg.delta_r;
    const auto grid = snr_grid(ctx.cfg);
    std::string csv = "scheme,rate_a,rate_b,target_pout,trials,snr_a_db,snr_b_db,shift_db,seed\n";
    for (Scheme scheme : ctx.cfg.schemes) {
        const SystemParams params = build_params(ctx.cfg, rate_a);
        const ShiftResult res = measure_snr_shift_db(scheme, params, rate_a, rate_b,
                                                     ctx.cfg.target_pout, ctx.cfg.trials, ctx.seed,
                                                     ctx.opt.workers, grid.front(), grid.back(),
                                                     ctx.cfg.snr_step_db);
        csv += std::string(scheme_name(scheme)) + ',' + fmt(rate_a) + ',' + fmt(rate_b) + ',' +
               fmt(ctx.cfg.target_pout) + ',' + std::to_string(ctx.cfg.trials) + ',' +
               fmt(res.snr_a_db) + ',' + fmt(res.snr_b_db) + ',' + fmt(res.shift_db) + ',' +
               std::to_string(ctx.seed) + '\n';
    }
    return csv;
}

// Per-trial diagnostics at the first (scheme, rate, SNR) point of a simulate
// run; the pattern column is the node activation bit string.
void write_trace(const RunContext& ctx, const std::string& path) {
    require_schemes(ctx.cfg);
    const Scheme scheme = ctx.cfg.schemes.front();
    SystemParams params = build_params(ctx.cfg, first_rate(ctx.cfg));
    params.rho_s = std::pow(10.0, snr_grid(ctx.cfg).front() / 10.0);

    std::string csv = "trial,n1,decoded,pattern,mi,outage\n";
    const std::uint64_t count = std::min<std::uint64_t>(ctx.cfg.trials, 256);
    for (std::uint64_t t = 0; t < count; ++t) {
        const TrialResult res = run_trial(scheme, params, t, ctx.seed);
        std::string pattern;
        if (res.n1 && (scheme == Scheme::DfMscOpt || scheme == Scheme::DfMscRand))
            pattern = encode_feedback_pattern(res.selection, res.decoding_set,
                                              params.relay_count)
                          .to_string();
        csv += std::to_string(t) + ',' + (res.n1 ? std::to_string(*res.n1) : std::string()) +
               ',' + std::to_string(res.decoding_set.size()) + ',' + pattern + ',' +
               fmt(res.mi) + ',' + (res.outage ? "1" : "0") + '\n';
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open trace file " + path);
    f << csv;
}

std::string plot_header(const std::string& csv_path) {
    return "set datafile separator ','\nset grid\nset key outside\ncsv = '" + csv_path + "'\n";
}

std::string plot_script_text(const RunContext& ctx, const std::string& csv_path) {
    std::string s = plot_header(csv_path);
    if (ctx.opt.subcommand == "simulate") {
        s += "set logscale y\nset xlabel 'SNR (dB)'\nset ylabel 'outage probability'\n";
        std::string body;
        bool any = false;
        for (Scheme scheme : ctx.cfg.schemes) {
            for (double rate : ctx.cfg.rates) {
                const std::string name = scheme_name(scheme);
                const std::string label = name + " R=" + fmt(rate);
                body += std::string(any ? ",\\\n     " : "plot ") + "csv skip 1 using " +
                        "($2):(strcol(1) eq '" + name + "' && $3 == " + fmt(rate) +
                        " ? $6 : NaN) title '" + label + "' with linespoints";
                any = true;
            }
        }
        s += body + ",\\\n     csv skip 1 using ($2):(strcol(1) eq 'DF-MSC-opt' && "
             "strlen(strcol(9)) > 0 ? $9 : NaN) title 'closed-form bound' with lines\n";
    } else if (ctx.opt.subcommand == "capacity") {
        s += "set xlabel 'SNR (dB)'\nset ylabel 'outage capacity (bits/use)'\n";
        std::string body;
        for (std::size_t i = 0; i < ctx.cfg.schemes.size(); ++i) {
            const std::string name = scheme_name(ctx.cfg.schemes[i]);
            body += std::string(i == 0 ? "plot " : ",\\\n     ") + "csv skip 1 using " +
                    "($2):(strcol(1) eq '" + name + "' ? $5 : NaN) title '" + name +
                    "' with linespoints";
        }
        s += body + "\n";
    } else if (ctx.opt.subcommand == "bound") {
        s += "set logscale y\nset xlabel 'SNR (dB)'\nset ylabel 'outage bound'\n"
             "plot csv skip 1 using 1:3 title 'bound' with linespoints\n";
    } else if (ctx.opt.subcommand == "dmt") {
        s += "set xlabel 'multiplexing gain r'\nset ylabel 'diversity order d'\n";
        std::string body;
        const char* names[] = {"DF-MSC-opt", "DDF", "DF-SDiv", "AF-SDiv"};
        for (int i = 0; i < 4; ++i) {
            body += std::string(i == 0 ? "plot " : ",\\\n     ") + "csv skip 1 using " +
                    "($2):(strcol(1) eq '" + names[i] + "' ? $3 : NaN) title '" + names[i] +
                    "' with lines";
        }
        s += body + "\n";
    } else if (ctx.opt.subcommand == "trt") {
        s += "set xlabel 'segment z'\nset ylabel 'predicted shift (dB)'\n"
             "plot csv skip 1 using 1:6 title 'predicted shift' with linespoints\n";
    } else {  // shift
        s += "set ylabel 'measured shift (dB)'\nset style fill solid 0.4\nset boxwidth 0.5\n"
             "plot csv skip 1 using 0:8:xtic(1) title 'shift' with boxes\n";
    }
    return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    try {
        const CliOptions opt = parse_args(argc, argv);

        std::ifstream cfg_file(opt.config_path);
        if (!cfg_file) throw ConfigError("cannot open config file " + opt.config_path);
        std::stringstream buffer;
        buffer << cfg_file.rdbuf();
        const ScenarioConfig cfg = parse_config(buffer.str());

        std::uint64_t seed = cfg.seed;
        if (const char* env = std::getenv("COOPNET_SEED")) seed = parse_u64(env, "COOPNET_SEED");
        if (opt.seed) seed = *opt.seed;

        const RunContext ctx{cfg, opt, seed};
        std::string csv;
        if (opt.subcommand == "simulate")
            csv = run_simulate(ctx);
        else if (opt.subcommand == "capacity")
            csv = run_capacity(ctx);
        else if (opt.subcommand == "bound")
            csv = run_bound(ctx);
        else if (opt.subcommand == "dmt")
            csv = run_dmt(ctx);
        else if (opt.subcommand == "trt")
            csv = run_trt(ctx);
        else
            csv = run_shift(ctx);

        std::optional<std::string> out_path = opt.out ? opt.out : cfg.out;
        if (out_path) {
            std::ofstream f(*out_path);
            if (!f) throw std::runtime_error("cannot open output file " + *out_path);
            f << csv;
            if (!f.flush()) throw std::runtime_error("failed writing output file " + *out_path);
        } else {
            std::cout << csv;
        }

        if (opt.trace_path) {
            if (opt.subcommand != "simulate")
                throw ConfigError("--trace is only available for simulate");
            write_trace(ctx, *opt.trace_path);
        }

        if (opt.plot_script) {
            if (!out_path) throw ConfigError("--plot-script requires an output file");
            std::ofstream f(*opt.plot_script);
            if (!f) throw std::runtime_error("cannot open plot script " + *opt.plot_script);
            f << plot_script_text(ctx, *out_path);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace coopnet::cli
