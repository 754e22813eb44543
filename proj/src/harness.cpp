#include "drf/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "drf/transform.hpp"

namespace drf {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config line " + std::to_string(line) +
                                 ": not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw std::runtime_error("config line " + std::to_string(line) +
                                 ": trailing characters in number: '" + v + "'");
    return x;
}

int parse_int(const std::string& v, int line) {
    double x = parse_double(v, line);
    if (x != std::floor(x))
        throw std::runtime_error("config line " + std::to_string(line) +
                                 ": expected an integer: '" + v + "'");
    return int(x);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

ModulusKind parse_kind(const std::string& v, int line) {
    if (v == "power") return ModulusKind::power;
    if (v == "power_log") return ModulusKind::power_log;
    if (v == "power_loglog") return ModulusKind::power_loglog;
    throw std::runtime_error("config line " + std::to_string(line) +
                             ": unknown modulus_kind '" + v + "'");
}

}  // namespace

const std::vector<std::string>& check_registry() {
    static const std::vector<std::string> names = {
        "lemma-phi-bounds", "thm-forward", "lem-dyadic", "thm-converse",
        "cor-lipcor",       "thm-besov",   "thm-holder"};
    return names;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open '" + path + "'");
    RunConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line) +
                                     ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key == "m")
            cfg.m = parse_int(val, line);
        else if (key == "k")
            cfg.k = parse_int(val, line);
        else if (key == "t_max")
            cfg.t_max = parse_double(val, line);
        else if (key == "lambda_max")
            cfg.lambda_max = parse_double(val, line);
        else if (key == "t_grid_n")
            cfg.t_grid_n = parse_int(val, line);
        else if (key == "t_grid_lo")
            cfg.t_grid_lo = parse_double(val, line);
        else if (key == "t_grid_hi")
            cfg.t_grid_hi = parse_double(val, line);
        else if (key == "profile")
            cfg.profile = val;
        else if (key == "profile_alpha")
            cfg.profile_alpha = parse_double(val, line);
        else if (key == "profile_gamma")
            cfg.profile_gamma = parse_double(val, line);
        else if (key == "profile_lambda_max")
            cfg.profile_lambda_max = parse_double(val, line);
        else if (key == "modulus_kind")
            cfg.modulus_kind = parse_kind(val, line);
        else if (key == "modulus_alpha")
            cfg.modulus_alpha = parse_double(val, line);
        else if (key == "modulus_gamma")
            cfg.modulus_gamma = parse_double(val, line);
        else if (key == "modulus_k")
            cfg.modulus_k = parse_double(val, line);
        else if (key == "modulus_delta0")
            cfg.modulus_delta0 = parse_double(val, line);
        else if (key == "modulus_tail")
            cfg.modulus_tail = val;
        else if (key == "checks")
            cfg.checks = split_list(val);
        else if (key == "tol_scale")
            cfg.tol_scale = parse_double(val, line);
        else if (key == "output_dir")
            cfg.output_dir = val;
        else if (key == "seed")
            cfg.seed = parse_int(val, line);
        else if (key == "jobs")
            cfg.jobs = parse_int(val, line);
        else
            throw std::runtime_error("config line " + std::to_string(line) +
                                     ": unknown key '" + key + "'");
    }

    // Validation with config context.
    try {
        derive_params(cfg.m, cfg.k);
    } catch (const std::exception& e) {
        throw std::runtime_error("config: invalid space (m=" + std::to_string(cfg.m) +
                                 ", k=" + std::to_string(cfg.k) + "): " + e.what());
    }
    if (!(cfg.t_grid_lo > 0 && cfg.t_grid_lo < cfg.t_grid_hi && cfg.t_grid_hi < 1))
        throw std::runtime_error("config: need 0 < t_grid_lo < t_grid_hi < 1");
    if (cfg.t_grid_n < 2) throw std::runtime_error("config: t_grid_n must be >= 2");
    if (!(cfg.tol_scale > 0)) throw std::runtime_error("config: tol_scale must be positive");
    if (cfg.jobs < 1) throw std::runtime_error("config: jobs must be >= 1");
    if (cfg.profile != "power_tail" && cfg.profile != "log_damped" &&
        cfg.profile.rfind("file:", 0) != 0)
        throw std::runtime_error("config: unknown profile '" + cfg.profile + "'");
    if (cfg.profile.rfind("file:", 0) == 0) {
        std::ifstream probe(cfg.profile.substr(5));
        if (!probe)
            throw std::runtime_error("config: profile file not found: '" +
                                     cfg.profile.substr(5) + "'");
    }
    if (cfg.modulus_tail != "constant" && cfg.modulus_tail != "bounded_below")
        throw std::runtime_error("config: modulus_tail must be constant or bounded_below");
    for (const auto& c : cfg.checks) {
        const auto& reg = check_registry();
        if (std::find(reg.begin(), reg.end(), c) == reg.end())
            throw std::runtime_error("config: unknown check '" + c + "'");
    }
    return cfg;
}

Modulus build_modulus(const RunConfig& cfg) {
    Modulus w = standard_modulus(cfg.modulus_kind, cfg.modulus_alpha, cfg.modulus_gamma,
                                 cfg.modulus_k, cfg.modulus_delta0);
    if (cfg.modulus_tail == "bounded_below") {
        w.tail = ModulusTail::bounded_below;
        w.tail_lower_bound = w.core(w.delta0);
    }
    return w;
}

SpectralFunction build_profile(const RunConfig& cfg, const DRParams& p) {
    if (cfg.profile == "power_tail")
        return power_tail_profile(p, cfg.profile_alpha, cfg.profile_gamma,
                                  cfg.profile_lambda_max);
    if (cfg.profile == "log_damped")
        return log_damped_profile(p, cfg.profile_alpha, cfg.profile_lambda_max);
    RadialFunction f = read_radial(cfg.profile.substr(5), p);
    return spherical_transform(p, f, default_spectral_grid(cfg.lambda_max));
}

int run_checks(const RunConfig& cfg) {
    set_tolerance_scale(cfg.tol_scale);
    DRParams p = derive_params(cfg.m, cfg.k);
    calibrate(p);

    std::vector<double> grid =
        default_check_t_grid(cfg.t_grid_n, cfg.t_grid_lo, cfg.t_grid_hi);
    Modulus w = build_modulus(cfg);
    SpectralFunction fhat = build_profile(cfg, p);

    bool needs_ctx = false;
    for (const auto& c : cfg.checks)
        if (c == "thm-forward" || c == "thm-converse" || c == "cor-lipcor")
            needs_ctx = true;
    CheckContext ctx;
    if (needs_ctx) ctx = make_check_context(p);

    if (cfg.checks.empty())
        std::cerr << "warning: empty checks list; nothing to run\n";

    std::vector<std::function<CheckReport()>> tasks;
    for (const auto& name : cfg.checks) {
        if (name == "lemma-phi-bounds") {
            tasks.emplace_back([&p, &cfg] {
                std::vector<double> lams(100), ts(100);
                for (int i = 0; i < 100; ++i) lams[i] = ts[i] = 10.0 * (i + 1) / 100.0;
                return phi_bounds_audit(p, lams, ts, 1e-10 * cfg.tol_scale);
            });
        } else if (name == "thm-forward") {
            tasks.emplace_back(
                [&] { return forward_titchmarsh(p, fhat, w, grid, ctx); });
        } else if (name == "lem-dyadic") {
            tasks.emplace_back([&] { return dyadic_shell_equiv(p, fhat, w, grid); });
        } else if (name == "thm-converse") {
            tasks.emplace_back(
                [&] { return converse_titchmarsh(p, fhat, w, grid, ctx); });
        } else if (name == "cor-lipcor") {
            tasks.emplace_back([&] {
                return lipcor_two_sided(p, cfg.profile_alpha, cfg.profile_gamma, grid,
                                        ctx);
            });
        } else if (name == "thm-besov") {
            tasks.emplace_back([&] {
                if (cfg.profile == "log_damped")
                    return besov_check(p, fhat, cfg.profile_alpha);
                SpectralFunction borderline = log_damped_profile(p, cfg.profile_alpha);
                return besov_check(p, borderline, cfg.profile_alpha);
            });
        } else if (name == "thm-holder") {
            tasks.emplace_back([&] {
                SpectralFunction extremal =
                    cfg.profile == "power_tail" && cfg.profile_gamma == 0
                        ? fhat
                        : power_tail_profile(p, cfg.profile_alpha, 0.0);
                const double betas[] = {1.4, 1.8, 2.0};
                return holder_integrability(
                    p, extremal, HolderParams::for_p2(cfg.profile_alpha, 2.0), betas);
            });
        }
    }

    // Bounded worker pool; reports are collected and written in config order.
    std::vector<CheckReport> reports(tasks.size());
    std::size_t next = 0;
    while (next < tasks.size()) {
        std::size_t batch = std::min<std::size_t>(cfg.jobs, tasks.size() - next);
        std::vector<std::future<CheckReport>> futs;
        for (std::size_t i = 0; i < batch; ++i)
            futs.push_back(std::async(std::launch::async, tasks[next + i]));
        for (std::size_t i = 0; i < batch; ++i) reports[next + i] = futs[i].get();
        next += batch;
    }

    std::string dir = cfg.output_dir.empty() ? "." : cfg.output_dir;
    try {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        std::string text;
        std::string csv = "check,verdict,ratio_sup,ratio_inf\n";
        for (const auto& rep : reports) {
            emit_plot_data(rep, dir + "/" + rep.check_name + ".csv");
            text += summarize(rep) + "\n";
            csv += rep.check_name + "," + to_string(rep.verdict) + "," +
                   format_full(rep.ratio_sup) + "," + format_full(rep.ratio_inf) + "\n";
        }
        std::ofstream sum(dir + "/summary.txt", std::ios::binary);
        std::ofstream scsv(dir + "/summary.csv", std::ios::binary);
        if (!sum || !scsv) throw std::runtime_error("cannot open summary outputs");
        sum << text;
        scsv << csv;
        if (!sum.flush() || !scsv.flush())
            throw std::runtime_error("failed writing summary outputs");
        std::cout << text;
    } catch (const std::exception& e) {
        std::cerr << "error: output failure in '" << dir << "': " << e.what() << "\n";
        return 4;
    }

    bool any_fail = false, any_inconclusive = false;
    for (const auto& rep : reports) {
        if (rep.verdict == Verdict::fail) any_fail = true;
        if (rep.verdict == Verdict::inconclusive) any_inconclusive = true;
    }
    if (any_fail) return 2;
    if (any_inconclusive) return 3;
    return 0;
}

}  // namespace drf
