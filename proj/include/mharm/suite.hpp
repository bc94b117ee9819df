#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mharm/congruence.hpp"

namespace mharm {

// Grid configuration for run_suite. prime_bound = 0 means each family keeps
// its default cap; a positive value overrides the cap for all families.
struct SuiteConfig {
    std::vector<std::string> families;
    long long prime_bound = 0;
    int exponent_bound = 3;
    int factor_count_bound = 4;
    long long naive_crosscheck_bound = 400;
    uint64_t seed = 1;
    enum class Format { json_lines, csv } output_format = Format::json_lines;
};

inline const std::vector<std::string>& all_families() {
    static const std::vector<std::string> fams = {
        "zhao_1_1", "zhoucai_1_2", "wangcai_1_3", "wang_1_4", "wangzhao_1_5",
        "thm1", "thm2", "corollary2",
        "lemma2.1", "lemma2.2", "lemma2.3", "lemma2.4", "lemma2.5", "note2.12",
        "oracle", "rational",
    };
    return fams;
}

namespace detail {

inline std::vector<long long> odd_primes_upto(long long lo, long long hi) {
    std::vector<long long> ps;
    for (long long p = std::max<long long>(3, lo); p <= hi; p += 2)
        if (is_prime(p)) ps.push_back(p);
    return ps;
}

inline CheckResult skipped_record(std::string id, std::map<std::string, long long> params,
                                  long long p, int r) {
    CheckResult res;
    res.check_id = std::move(id);
    res.params = std::move(params);
    res.modulus_p = p;
    res.modulus_r = r;
    res.status = CheckStatus::skipped;
    return res;
}

// run one check, capturing any kernel error into an identifiable record
template <typename Fn>
inline void capture(std::vector<CheckResult>& out, const std::string& id,
                    std::map<std::string, long long> params, Fn&& fn) {
    try {
        out.push_back(fn());
    } catch (const std::exception&) {
        CheckResult res;
        res.check_id = id;
        res.params = std::move(params);
        res.params["kernel_error"] = 1;
        res.status = CheckStatus::fail;
        out.push_back(res);
    }
}

inline long long cap_or(const SuiteConfig& cfg, long long family_default) {
    return cfg.prime_bound > 0 ? cfg.prime_bound : family_default;
}

inline void theorem_checks(std::vector<CheckResult>& out, const SuiteConfig& cfg,
                           const Factorization& f) {
    for (size_t dist = 0; dist < f.factors.size(); ++dist) {
        capture(out, "thm", {{"n", f.value}, {"p1", f.factors[dist].prime}}, [&] {
            TheoremInstance inst(f, dist);
            CheckResult res = check_theorem(inst, false);
            if (f.value <= cfg.naive_crosscheck_bound) {
                const uint64_t nv = z_naive(f.value, inst.modulus()).value();
                res.params["naive_agrees"] = (nv == res.lhs) ? 1 : 0;
                if (nv != res.lhs) res.status = CheckStatus::fail;
            }
            return res;
        });
    }
}

inline void family_thm1(std::vector<CheckResult>& out, const SuiteConfig& cfg) {
    const auto primes = odd_primes_upto(3, cap_or(cfg, 13));
    const long long value_cap = 5000;
    const size_t want_max = static_cast<size_t>(std::max(2, cfg.factor_count_bound));
    // enumerate subsets of size >= 2 in lexicographic order
    for (size_t mask = 1; mask < (size_t(1) << primes.size()); ++mask) {
        Factorization f;
        f.value = 1;
        size_t bits = 0;
        bool ok = true;
        for (size_t i = 0; i < primes.size() && ok; ++i) {
            if (!(mask & (size_t(1) << i))) continue;
            ++bits;
            if (f.value > value_cap / primes[i]) { ok = false; break; }
            f.value *= primes[i];
            f.factors.push_back({primes[i], 1});
        }
        if (!ok || bits < 2 || bits > want_max) continue;
        theorem_checks(out, cfg, f);
    }
}

inline void family_thm2(std::vector<CheckResult>& out, const SuiteConfig& cfg) {
    const auto primes = odd_primes_upto(3, cap_or(cfg, 11));
    const long long value_cap = 50000;
    const int emax = std::min(3, cfg.exponent_bound);
    const size_t kmax = static_cast<size_t>(std::max(1, cfg.factor_count_bound));
    for (size_t mask = 1; mask < (size_t(1) << primes.size()); ++mask) {
        std::vector<long long> sel;
        for (size_t i = 0; i < primes.size(); ++i)
            if (mask & (size_t(1) << i)) sel.push_back(primes[i]);
        if (sel.size() > kmax) continue;
        // odometer over exponent vectors
        std::vector<int> exps(sel.size(), 1);
        while (true) {
            bool some_higher = false;
            long long value = 1;
            bool ok = true;
            for (size_t i = 0; i < sel.size() && ok; ++i) {
                some_higher = some_higher || (exps[i] >= 2);
                for (int e = 0; e < exps[i]; ++e) {
                    if (value > value_cap / sel[i]) { ok = false; break; }
                    value *= sel[i];
                }
            }
            if (ok && some_higher) {
                Factorization f;
                f.value = value;
                for (size_t i = 0; i < sel.size(); ++i) f.factors.push_back({sel[i], exps[i]});
                theorem_checks(out, cfg, f);
            }
            size_t pos = 0;
            while (pos < exps.size() && exps[pos] == emax) { exps[pos] = 1; ++pos; }
            if (pos == exps.size()) break;
            ++exps[pos];
        }
    }
}

inline void family_known(std::vector<CheckResult>& out, const SuiteConfig& cfg, KnownId id) {
    switch (id) {
        case KnownId::zhao_1_1:
            for (long long p : odd_primes_upto(3, cap_or(cfg, 199)))
                capture(out, "zhao_1_1", {{"p", p}}, [&] { return check_known(id, {{"p", p}}); });
            break;
        case KnownId::zhoucai_1_2:
            for (long long p : odd_primes_upto(3, cap_or(cfg, 31))) {
                for (long long n = 2; n <= 6; ++n) {
                    if (p < 5 || n > p - 2) {
                        out.push_back(skipped_record("zhoucai_1_2", {{"p", p}, {"n", n}},
                                                     p, n % 2 == 1 ? 1 : 2));
                        continue;
                    }
                    capture(out, "zhoucai_1_2", {{"p", p}, {"n", n}},
                            [&] { return check_known(id, {{"p", p}, {"n", n}}); });
                }
            }
            break;
        case KnownId::wangcai_1_3:
            for (long long p : odd_primes_upto(3, cap_or(cfg, 13)))
                for (long long r = 1; r <= std::min(3, cfg.exponent_bound); ++r)
                    capture(out, "wangcai_1_3", {{"p", p}, {"r", r}},
                            [&] { return check_known(id, {{"p", p}, {"r", r}}); });
            break;
        case KnownId::wang_1_4:
        case KnownId::wangzhao_1_5: {
            const long long pmin = (id == KnownId::wang_1_4) ? 7 : 11;
            const char* name = (id == KnownId::wang_1_4) ? "wang_1_4" : "wangzhao_1_5";
            for (long long p : odd_primes_upto(3, cap_or(cfg, 13))) {
                for (long long r = 1; r <= std::min(2, cfg.exponent_bound); ++r) {
                    if (p < pmin) {
                        out.push_back(skipped_record(name, {{"p", p}, {"r", r}}, p, static_cast<int>(r)));
                        continue;
                    }
                    capture(out, name, {{"p", p}, {"r", r}},
                            [&] { return check_known(id, {{"p", p}, {"r", r}}); });
                }
            }
            break;
        }
    }
}

inline void family_corollary2(std::vector<CheckResult>& out, const SuiteConfig& cfg) {
    const auto primes = odd_primes_upto(3, cap_or(cfg, 31));
    const int emax = std::min(3, cfg.exponent_bound);
    for (long long p1 : primes)
        for (long long p2 : primes) {
            if (p1 == p2) continue;
            for (int r1 = 1; r1 <= emax; ++r1)
                for (int r2 = 1; r2 <= emax; ++r2)
                    capture(out, "corollary2", {{"p1", p1}, {"r1", r1}, {"p2", p2}, {"r2", r2}},
                            [&] { return check_corollary2_forms(p1, r1, p2, r2); });
        }
}

inline void family_lemma21(std::vector<CheckResult>& out, const SuiteConfig& cfg) {
    for (long long p : odd_primes_upto(3, cap_or(cfg, 13))) {
        for (long long l = 1; l <= 3; ++l) {
            for (long long mult = 1; mult <= 6; ++mult) {
                if (mult % p == 0) continue;
                for (long long s = 1; s <= 10; ++s) {
                    capture(out, "lemma2.1", {{"p", p}, {"l", l}, {"mult", mult}, {"s", s}}, [&] {
                        return check_lemma(LemmaId::l2_1, {{"p", p}, {"l", l}, {"mult", mult}, {"s", s}});
                    });
                    capture(out, "lemma2.1.blocks", {{"p", p}, {"l", l}, {"mult", mult}, {"s", s}}, [&] {
                        // telescoping: block sums over b < mult rebuild the full sum
                        detail::Stopwatch clock;
                        const PrimePowerModulus wide(p, 2 * static_cast<int>(l));
                        Residue total(0, wide);
                        for (long long b = 0; b < mult; ++b)
                            total += block_power_sum(b, static_cast<int>(l), static_cast<int>(s), p, wide);
                        const Residue full = coprime_power_sum(mult, static_cast<int>(l), static_cast<int>(s), p, wide);
                        CheckResult res;
                        res.check_id = "lemma2.1.blocks";
                        res.params = {{"p", p}, {"l", l}, {"mult", mult}, {"s", s}};
                        res.modulus_p = p;
                        res.modulus_r = 2 * static_cast<int>(l);
                        res.lhs = total.value();
                        res.rhs = full.value();
                        res.status = compare(res.lhs, res.rhs);
                        res.elapsed_ms = clock.ms();
                        return res;
                    });
                }
            }
        }
    }
}

inline void family_lemma_small(std::vector<CheckResult>& out, const SuiteConfig& cfg, LemmaId id) {
    for (long long p : odd_primes_upto(5, cap_or(cfg, 13))) {
        for (long long n = 1; n <= 6; ++n) {
            if (n % p == 0) continue;
            for (long long m = 1; m <= 6; ++m) {
                if (m % p == 0) continue;
                switch (id) {
                    case LemmaId::l2_2:
                    case LemmaId::note2_12:
                        capture(out, id == LemmaId::l2_2 ? "lemma2.2" : "note2.12",
                                {{"p", p}, {"n", n}, {"m", m}},
                                [&] { return check_lemma(id, {{"p", p}, {"n", n}, {"m", m}}); });
                        break;
                    case LemmaId::l2_3:
                    case LemmaId::l2_5:
                        for (long long alpha = 2; alpha <= 3; ++alpha)
                            capture(out, id == LemmaId::l2_3 ? "lemma2.3" : "lemma2.5",
                                    {{"p", p}, {"n", n}, {"m", m}, {"alpha", alpha}}, [&] {
                                return check_lemma(id, {{"p", p}, {"n", n}, {"m", m}, {"alpha", alpha}});
                            });
                        break;
                    case LemmaId::l2_4:
                        for (long long k = 0; k <= p - 2; ++k)
                            capture(out, "lemma2.4", {{"p", p}, {"n", n}, {"m", m}, {"k", k}}, [&] {
                                return check_lemma(id, {{"p", p}, {"n", n}, {"m", m}, {"k", k}});
                            });
                        break;
                    default:
                        break;
                }
            }
        }
    }
}

inline void oracle_record(std::vector<CheckResult>& out, long long n) {
    const Factorization f = factorize(n);
    for (const auto& pp : f.factors) {
        Stopwatch clock;
        const PrimePowerModulus mod(pp.prime, 1);
        CheckResult res;
        res.check_id = "oracle";
        res.params = {{"n", n}, {"p", pp.prime}};
        res.modulus_p = pp.prime;
        res.modulus_r = 1;
        res.lhs = z_fast(f, mod).value();
        res.rhs = z_naive(n, mod).value();
        res.status = compare(res.lhs, res.rhs);
        res.elapsed_ms = clock.ms();
        out.push_back(res);
    }
}

inline void family_oracle(std::vector<CheckResult>& out, const SuiteConfig& cfg) {
    for (long long n = 3; n <= cfg.naive_crosscheck_bound; n += 2)
        oracle_record(out, n);
    std::vector<long long> pool;  // odd n above the exhaustive range, <= 5000
    for (long long n = std::max<long long>(3, cfg.naive_crosscheck_bound + 1) | 1; n <= 5000; n += 2)
        pool.push_back(n);
    std::mt19937_64 rng(cfg.seed);
    std::set<long long> chosen;
    const size_t target = std::min<size_t>(50, pool.size());
    while (chosen.size() < target) {
        const long long n = pool[rng() % pool.size()];
        if (chosen.insert(n).second) oracle_record(out, n);
    }
}

inline void family_rational(std::vector<CheckResult>& out, const SuiteConfig&) {
    for (long long n = 3; n <= 60; n += 2) {
        const Rational exact = z_exact(n);
        for (const auto& pp : factorize(n).factors) {
            Stopwatch clock;
            const PrimePowerModulus mod(pp.prime, 1);
            CheckResult res;
            res.check_id = "rational";
            res.params = {{"n", n}, {"p", pp.prime}};
            res.modulus_p = pp.prime;
            res.modulus_r = 1;
            res.lhs = rational_to_residue(exact, mod).value();
            res.rhs = z_naive(n, mod).value();
            res.status = compare(res.lhs, res.rhs);
            res.elapsed_ms = clock.ms();
            out.push_back(res);
        }
    }
}

}  // namespace detail

// Deterministic grid run; ordering is lexicographic by (check_id, params)
// regardless of generation order. Individual kernel errors are captured into
// their records, never aborting the suite.
inline std::vector<CheckResult> run_suite(const SuiteConfig& cfg) {
    if (cfg.families.empty()) return {};  // empty config selects nothing
    if (cfg.exponent_bound < 1 || cfg.factor_count_bound < 1 || cfg.naive_crosscheck_bound < 1)
        throw std::invalid_argument("run_suite: bounds must be positive");

    std::set<std::string> wanted;
    for (const auto& f : cfg.families) {
        if (f == "all") {
            wanted.insert(all_families().begin(), all_families().end());
            continue;
        }
        if (std::find(all_families().begin(), all_families().end(), f) == all_families().end())
            throw std::invalid_argument("run_suite: unknown family '" + f + "'");
        wanted.insert(f);
    }

    std::vector<CheckResult> out;
    for (const auto& fam : wanted) {
        if (fam == "zhao_1_1") detail::family_known(out, cfg, KnownId::zhao_1_1);
        else if (fam == "zhoucai_1_2") detail::family_known(out, cfg, KnownId::zhoucai_1_2);
        else if (fam == "wangcai_1_3") detail::family_known(out, cfg, KnownId::wangcai_1_3);
        else if (fam == "wang_1_4") detail::family_known(out, cfg, KnownId::wang_1_4);
        else if (fam == "wangzhao_1_5") detail::family_known(out, cfg, KnownId::wangzhao_1_5);
        else if (fam == "thm1") detail::family_thm1(out, cfg);
        else if (fam == "thm2") detail::family_thm2(out, cfg);
        else if (fam == "corollary2") detail::family_corollary2(out, cfg);
        else if (fam == "lemma2.1") detail::family_lemma21(out, cfg);
        else if (fam == "lemma2.2") detail::family_lemma_small(out, cfg, LemmaId::l2_2);
        else if (fam == "lemma2.3") detail::family_lemma_small(out, cfg, LemmaId::l2_3);
        else if (fam == "lemma2.4") detail::family_lemma_small(out, cfg, LemmaId::l2_4);
        else if (fam == "lemma2.5") detail::family_lemma_small(out, cfg, LemmaId::l2_5);
        else if (fam == "note2.12") detail::family_lemma_small(out, cfg, LemmaId::note2_12);
        else if (fam == "oracle") detail::family_oracle(out, cfg);
        else if (fam == "rational") detail::family_rational(out, cfg);
    }

    std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) {
        if (a.check_id != b.check_id) return a.check_id < b.check_id;
        if (a.params != b.params) return a.params < b.params;
        if (a.modulus_p != b.modulus_p) return a.modulus_p < b.modulus_p;
        return a.modulus_r < b.modulus_r;
    });
    return out;
}

}  // namespace mharm
