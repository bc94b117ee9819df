#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mharm/report.hpp"
#include "mharm/suite.hpp"

namespace mharm {

// Command-line front end. Exit codes: 0 success, 1 check failure,
// 2 usage/config error, 3 kernel error. Documented mismatches and skips do
// not fail a verify run.

namespace cli_detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Flat key=value config file: each key maps to the matching --key flag.
// Keys whose flag is already on the command line are ignored, so explicit
// flags always win. Returns false (with a message) on unreadable input.
inline bool expand_config(std::vector<std::string>& args, std::string& error) {
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) { path = args[i + 1]; break; }
        if (args[i].rfind("--config=", 0) == 0) { path = args[i].substr(9); break; }
    }
    if (path.empty()) return true;
    std::ifstream file(path);
    if (!file) { error = "cannot open config file '" + path + "'"; return false; }

    auto given = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(file, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) { error = "malformed config line '" + line + "'"; return false; }
        const std::string key = "--" + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (given(key)) continue;
        if (value == "true") tokens.push_back(key);
        else if (value == "false") continue;
        else { tokens.push_back(key); tokens.push_back(value); }
    }
    args.insert(args.size() > 1 ? args.begin() + 1 : args.end(), tokens.begin(), tokens.end());
    return true;
}

struct ComputeOpts {
    long long n = 0, m = 1, limit = 1, coprime_to = 1, mult = 1;
    long long prime = 3;
    int exponent = 1, k = 0, l = 1, s = 1;
    long long rational_bound = 60;
    bool force_naive = false;
};

inline void put_modulus(ordered_json& j, const PrimePowerModulus& mod) {
    j["modulus_p"] = mod.p;
    j["modulus_r"] = mod.r;
}

inline int emit_kernel_error(std::ostream& err, const std::exception& e) {
    err << "kernel error: " << e.what() << "\n";
    return 3;
}

inline double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    return xs[xs.size() / 2];
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using cli_detail::ComputeOpts;

    CLI::App app{"exact verification of multiharmonic-sum congruences modulo odd prime powers"};
    app.require_subcommand(1);

    // ---- compute ----
    auto* compute = app.add_subcommand("compute", "evaluate one sum or Bernoulli number");
    compute->require_subcommand(1);
    ComputeOpts o;

    auto add_modulus_flags = [&](CLI::App* c) {
        c->add_option("--prime", o.prime, "odd modulus base prime");
        c->add_option("--exp", o.exponent, "modulus exponent r");
        c->add_option("--rational-bound", o.rational_bound,
                      "emit the exact rational when the driving size is at most this");
    };

    auto* cz = compute->add_subcommand("z", "triple sum over i+j+k = n with parts coprime to n");
    cz->add_option("--n", o.n, "summation target n")->required();
    cz->add_flag("--naive", o.force_naive, "force the naive double-loop evaluator");
    add_modulus_flags(cz);

    auto* ck = compute->add_subcommand("kfold", "k-fold composition sum");
    ck->add_option("--n", o.n, "composition target N")->required();
    ck->add_option("--k", o.k, "number of parts")->required();
    ck->add_option("--coprime-to", o.coprime_to, "parts restricted coprime to this");
    add_modulus_flags(ck);

    auto* cs = compute->add_subcommand("s", "weighted double harmonic sum S(m, limit; p)");
    cs->add_option("--m", o.m, "inner multiplier m")->required();
    cs->add_option("--limit", o.limit, "outer bound (exclusive)")->required();
    add_modulus_flags(cs);

    auto* ct = compute->add_subcommand("t", "class-restricted double harmonic sum T(m, limit; p)");
    ct->add_option("--m", o.m, "inner multiplier m")->required();
    ct->add_option("--limit", o.limit, "outer bound (exclusive)")->required();
    add_modulus_flags(ct);

    auto* cp = compute->add_subcommand("power_sum", "coprime power-reciprocal sum to mult*p^l");
    cp->add_option("--mult", o.mult, "block count")->required();
    cp->add_option("--l", o.l, "power of p in the bound")->required();
    cp->add_option("--s", o.s, "reciprocal power s")->required();
    add_modulus_flags(cp);

    auto* cf = compute->add_subcommand("floor_sum", "floor-weighted reciprocal sum");
    cf->add_option("--m", o.m, "floor multiplier m")->required();
    cf->add_option("--n", o.n, "outer bound is n*p")->required();
    cf->add_option("--k", o.k, "reciprocal power k")->required();
    add_modulus_flags(cf);

    auto* cb = compute->add_subcommand("bernoulli", "exact Bernoulli number B_k");
    long long bk = 0;
    bool bmod = false;
    cb->add_option("--k", bk, "index k")->required();
    cb->add_flag("--mod", bmod, "also reduce modulo prime^exp");
    add_modulus_flags(cb);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run congruence check families and emit a report");
    SuiteConfig cfg;
    std::vector<std::string> families = {"all"};
    std::string format = "json_lines";
    bool no_timing = false;
    verify->add_option("--families", families, "check families (comma separated, or 'all')")
        ->delimiter(',');
    verify->add_option("--prime-bound", cfg.prime_bound, "override per-family prime cap");
    verify->add_option("--exponent-bound", cfg.exponent_bound, "cap on modulus exponents");
    verify->add_option("--factor-count-bound", cfg.factor_count_bound, "cap on prime factors per instance");
    verify->add_option("--naive-crosscheck-bound", cfg.naive_crosscheck_bound,
                       "double-check instances with n up to this via the naive kernel");
    verify->add_option("--seed", cfg.seed, "seed for randomized oracle sampling");
    verify->add_option("--format", format, "json_lines or csv");
    verify->add_flag("--no-timing", no_timing, "omit elapsed_ms fields (byte-identical reruns)");
    std::string config_path;
    verify->add_option("--config", config_path, "flat key=value file with the same keys");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "time the naive and fast Z evaluators");
    std::vector<long long> bench_n;
    long long bench_prime = 5;
    int bench_exp = 1, bench_reps = 3;
    bench->add_option("--n", bench_n, "values of n (comma separated)")->required()->delimiter(',');
    bench->add_option("--prime", bench_prime, "odd modulus base prime");
    bench->add_option("--exp", bench_exp, "modulus exponent r");
    bench->add_option("--reps", bench_reps, "repetitions per timing (median reported)");
    bench->add_option("--config", config_path, "flat key=value file with the same keys");

    {
        std::string config_error;
        if (!cli_detail::expand_config(args, config_error)) {
            err << "config error: " << config_error << "\n";
            return 2;
        }
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        const CLI::App* target = &app;
        while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
        out << target->help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (compute->parsed()) {
            ordered_json j;
            try {
                if (cz->parsed()) {
                    const PrimePowerModulus mod(o.prime, o.exponent);
                    j["target"] = "z";
                    j["n"] = o.n;
                    cli_detail::put_modulus(j, mod);
                    const Factorization f = factorize(o.n);
                    const bool fast_ok = !o.force_naive && o.n >= 3 && f.all_odd() &&
                                         o.n % o.prime == 0;
                    const Residue v = fast_ok ? z_fast(f, mod) : z_naive(o.n, mod);
                    j["value"] = v.value();
                    if (o.n <= o.rational_bound) j["rational"] = z_exact(o.n).str();
                } else if (ck->parsed()) {
                    const PrimePowerModulus mod(o.prime, o.exponent);
                    j["target"] = "kfold";
                    j["n"] = o.n;
                    j["k"] = o.k;
                    j["coprime_to"] = o.coprime_to;
                    cli_detail::put_modulus(j, mod);
                    j["value"] = kfold_sum(o.n, o.k, o.coprime_to, mod).value();
                    if (o.n <= o.rational_bound) j["rational"] = kfold_exact(o.n, o.k, o.coprime_to).str();
                } else if (cs->parsed() || ct->parsed()) {
                    const PrimePowerModulus mod(o.prime, o.exponent);
                    j["target"] = cs->parsed() ? "s" : "t";
                    j["m"] = o.m;
                    j["limit"] = o.limit;
                    cli_detail::put_modulus(j, mod);
                    j["value"] = cs->parsed() ? s_sum(o.m, o.limit, o.prime, mod).value()
                                              : t_sum(o.m, o.limit, o.prime, mod).value();
                    if (o.limit <= o.rational_bound)
                        j["rational"] = cs->parsed() ? s_sum_exact(o.m, o.limit, o.prime).str()
                                                     : t_sum_exact(o.m, o.limit, o.prime).str();
                } else if (cp->parsed()) {
                    const PrimePowerModulus mod(o.prime, o.exponent);
                    j["target"] = "power_sum";
                    j["mult"] = o.mult;
                    j["l"] = o.l;
                    j["s"] = o.s;
                    cli_detail::put_modulus(j, mod);
                    j["value"] = coprime_power_sum(o.mult, o.l, o.s, o.prime, mod).value();
                    if (o.mult * detail::checked_pow_ll(o.prime, o.l) <= o.rational_bound)
                        j["rational"] = coprime_power_sum_exact(o.mult, o.l, o.s, o.prime).str();
                } else if (cf->parsed()) {
                    const PrimePowerModulus mod(o.prime, o.exponent);
                    j["target"] = "floor_sum";
                    j["m"] = o.m;
                    j["n"] = o.n;
                    j["k"] = o.k;
                    cli_detail::put_modulus(j, mod);
                    j["value"] = floor_weighted_sum(o.m, o.n, o.k, o.prime, mod).value();
                    if (o.n * o.prime <= o.rational_bound)
                        j["rational"] = floor_weighted_sum_exact(o.m, o.n, o.k, o.prime).str();
                } else if (cb->parsed()) {
                    j["target"] = "bernoulli";
                    j["k"] = bk;
                    j["rational"] = bernoulli_exact(static_cast<int>(bk)).str();
                    if (bmod) {
                        const PrimePowerModulus mod(o.prime, o.exponent);
                        cli_detail::put_modulus(j, mod);
                        j["value"] = bernoulli_mod(static_cast<int>(bk), mod).value();
                    }
                }
            } catch (const std::exception& e) {
                return cli_detail::emit_kernel_error(err, e);
            }
            out << j.dump() << "\n";
            return 0;
        }

        if (verify->parsed()) {
            cfg.families = families;
            if (format == "csv") cfg.output_format = SuiteConfig::Format::csv;
            else if (format == "json_lines") cfg.output_format = SuiteConfig::Format::json_lines;
            else {
                err << "config error: unknown format '" << format << "'\n";
                return 2;
            }
            std::vector<CheckResult> results;
            try {
                results = run_suite(cfg);
            } catch (const std::invalid_argument& e) {
                err << "config error: " << e.what() << "\n";
                return 2;
            }
            emit_report(out, results, cfg.output_format, !no_timing);
            for (const auto& r : results)
                if (r.status == CheckStatus::fail) return 1;
            return 0;
        }

        if (bench->parsed()) {
            if (bench_reps < 1) {
                err << "config error: --reps must be >= 1\n";
                return 2;
            }
            const PrimePowerModulus mod(bench_prime, bench_exp);
            for (long long n : bench_n) {
                const Factorization f = factorize(n);
                if (n < 3 || n % bench_prime != 0 || !f.all_odd()) {
                    err << "config error: bench needs odd n >= 3 divisible by the prime, got n = "
                        << n << "\n";
                    return 2;
                }
            }
            for (long long n : bench_n) {
                const Factorization f = factorize(n);
                std::vector<double> naive_ms, fast_ms;
                uint64_t naive_val = 0, fast_val = 0;
                for (int rep = 0; rep < bench_reps; ++rep) {
                    detail::Stopwatch sn;
                    naive_val = z_naive(n, mod).value();
                    naive_ms.push_back(sn.ms());
                    detail::Stopwatch sf;
                    fast_val = z_fast(f, mod).value();
                    fast_ms.push_back(sf.ms());
                }
                if (naive_val != fast_val) {
                    err << "equality failure at n = " << n << ": naive " << naive_val
                        << " vs fast " << fast_val << "\n";
                    return 1;
                }
                const double nm = cli_detail::median(naive_ms), fm = cli_detail::median(fast_ms);
                ordered_json j;
                j["n"] = n;
                cli_detail::put_modulus(j, mod);
                j["value"] = fast_val;
                j["naive_ms"] = round_ms(nm);
                j["fast_ms"] = round_ms(fm);
                j["speedup"] = fm > 0 ? std::round(nm / fm * 100.0) / 100.0 : 0.0;
                out << j.dump() << "\n";
            }
            return 0;
        }
    } catch (const NonInvertible& e) {
        return cli_detail::emit_kernel_error(err, e);
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        return cli_detail::emit_kernel_error(err, e);
    }
    return 2;
}

}  // namespace mharm
