#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mharm/numeric.hpp"
#include "mharm/numtheory.hpp"

namespace mharm {

// Kernels for the multiharmonic sums. All modular kernels are pure and return
// residues in the caller's prime-power ring; empty sums are the zero residue.
//
//   Z(n)              = sum_{i+j+k=n, gcd(i,n)=gcd(j,n)=gcd(k,n)=1} 1/(ijk)
//   kfold(N,k,c)      = sum over compositions l_1+..+l_k = N, gcd(l_i,c)=1, of 1/(l_1...l_k)
//   S(m,n;p)          = sum_{a<n, p∤a} a^-2 sum_{i<am, p∤i} i^-1
//   T(m,n;p)          = sum_{a<n, p∤a} a^-2 sum_{i<am, i≡am (p)} i^-1
//   coprime power sum = sum_{k<mult*p^l, p∤k} k^-s
//   floor sum         = sum_{a<np, p∤a} a^-k floor(am/p)

namespace detail {

constexpr uint64_t kNoInverse = std::numeric_limits<uint64_t>::max();

// inv(i) mod q for indices coprime to n; kNoInverse marks indices coprime to
// n but sharing a factor with q (consumed lazily so the sum only fails when
// such a term actually appears).
inline std::vector<uint64_t> inverse_table(long long n, const std::vector<uint8_t>& coprime, uint64_t q) {
    std::vector<uint64_t> inv(static_cast<size_t>(n), 0);
    for (long long i = 1; i < n; ++i) {
        if (!coprime[static_cast<size_t>(i)]) continue;
        const uint64_t im = static_cast<uint64_t>(i) % q;
        uint64_t g = gcd_ll(static_cast<long long>(im), static_cast<long long>(q));
        inv[static_cast<size_t>(i)] = (g == 1) ? inv_mod(im, q) : kNoInverse;
    }
    return inv;
}

inline uint64_t consume(uint64_t inv_value, long long index, uint64_t q) {
    if (inv_value == kNoInverse)
        throw NonInvertible("index " + std::to_string(index) + " not invertible mod " + std::to_string(q));
    return inv_value;
}

inline long long checked_pow_ll(long long base, int e) {
    long long acc = 1;
    for (int i = 0; i < e; ++i) {
        if (acc > std::numeric_limits<long long>::max() / base)
            throw std::overflow_error("power overflows long long");
        acc *= base;
    }
    return acc;
}

}  // namespace detail

// Direct double-loop enumeration (the third index is forced).
inline Residue z_naive(long long n, PrimePowerModulus m) {
    if (n < 1) throw std::domain_error("z_naive: n must be >= 1");
    if (n < 3) return Residue(0, m);
    const uint64_t q = m.q;
    const auto coprime = coprime_table(n, n);
    const auto inv = detail::inverse_table(n, coprime, q);
    uint64_t acc = 0;
    for (long long i = 1; i + 2 <= n; ++i) {
        if (!coprime[static_cast<size_t>(i)]) continue;
        for (long long j = 1; i + j + 1 <= n; ++j) {
            if (!coprime[static_cast<size_t>(j)]) continue;
            const long long k = n - i - j;
            if (!coprime[static_cast<size_t>(k)]) continue;
            // consume inverses only for indices of realized terms
            uint64_t t = mul_mod(detail::consume(inv[static_cast<size_t>(i)], i, q),
                                 detail::consume(inv[static_cast<size_t>(j)], j, q), q);
            t = mul_mod(t, detail::consume(inv[static_cast<size_t>(k)], k, q), q);
            acc = add_mod(acc, t, q);
        }
    }
    return Residue::from_raw(acc, m);
}

// Exact rational Z(n); desk scale only (cost grows like n^2 big-rational adds).
inline Rational z_exact(long long n) {
    if (n < 1) throw std::domain_error("z_exact: n must be >= 1");
    Rational acc(0);
    for (long long i = 1; i + 2 <= n; ++i) {
        if (gcd_ll(i, n) != 1) continue;
        for (long long j = 1; i + j + 1 <= n; ++j) {
            if (gcd_ll(j, n) != 1) continue;
            const long long k = n - i - j;
            if (gcd_ll(k, n) != 1) continue;
            acc += Rational(mpz_class(1), mpz_class(static_cast<long>(i)) * static_cast<long>(j) * static_cast<long>(k));
        }
    }
    return acc;
}

// Moebius-split evaluation of Z(n), O(n * 2^omega(n)).
//
//   Z(n) = sum_{k, gcd(k,n)=1} 2 (k(n-k))^-1 G(n-k),
//   G(a) = sum_{i<a, gcd(i,n)=1, gcd(a-i,n)=1} i^-1
//        = sum_{d | rad(n)} mu(d) H_d(a, a mod d),
//
// where H_d(a,c) = sum_{i<a, gcd(i,n)=1, i≡c (d)} i^-1 is kept as per-class
// running prefix sums, updated once per index. Must agree with z_naive
// exactly; the oracle-equivalence suite asserts the tie.
inline Residue z_fast(const Factorization& f, PrimePowerModulus m) {
    const long long n = f.value;
    if (n < 3) throw std::domain_error("z_fast: n must be >= 3");
    if (!f.all_odd()) throw std::domain_error("z_fast: even prime factor");
    bool divides = false;
    for (const auto& pp : f.factors) divides = divides || (pp.prime == m.p);
    if (!divides) throw std::domain_error("z_fast: modulus prime must divide n");

    const uint64_t q = m.q;
    const auto divs = mobius_over_radical(f);
    std::vector<std::vector<uint64_t>> cls;
    cls.reserve(divs.size());
    for (const auto& [d, mu] : divs) cls.emplace_back(static_cast<size_t>(d), 0);

    const auto coprime = coprime_table(n, n);
    uint64_t acc = 0;
    for (long long a = 1; a < n; ++a) {
        if (!coprime[static_cast<size_t>(a)]) continue;
        uint64_t g = 0;
        for (size_t t = 0; t < divs.size(); ++t) {
            const uint64_t h = cls[t][static_cast<size_t>(a % divs[t].first)];
            g = divs[t].second > 0 ? add_mod(g, h, q) : sub_mod(g, h, q);
        }
        const uint64_t ia = inv_mod(static_cast<uint64_t>(a) % q, q);
        if (g != 0) {
            const uint64_t ik = inv_mod(static_cast<uint64_t>(n - a) % q, q);
            uint64_t term = mul_mod(mul_mod(ia, ik, q), g, q);
            term = add_mod(term, term, q);
            acc = add_mod(acc, term, q);
        }
        for (size_t t = 0; t < divs.size(); ++t) {
            uint64_t& slot = cls[t][static_cast<size_t>(a % divs[t].first)];
            slot = add_mod(slot, ia, q);
        }
    }
    return Residue::from_raw(acc, m);
}

// DP convolution: g_1(a) = a^-1 [gcd(a,c)=1], g_s = g_{s-1} * g_1 truncated
// to the reachable range, answer g_k(N). O(k N^2) ring operations.
inline Residue kfold_sum(long long N, int k, long long coprime_to, PrimePowerModulus m) {
    if (N < 1) throw std::domain_error("kfold_sum: N must be >= 1");
    if (k < 2) throw std::domain_error("kfold_sum: k must be >= 2");
    if (coprime_to < 1) throw std::domain_error("kfold_sum: coprime_to must be >= 1");
    const uint64_t q = m.q;
    const long long maxpart = N - k + 1;
    if (maxpart < 1) return Residue(0, m);

    std::vector<uint64_t> g1(static_cast<size_t>(maxpart) + 1, 0);
    for (long long a = 1; a <= maxpart; ++a) {
        if (gcd_ll(a, coprime_to) != 1) continue;
        if (a % m.p == 0)
            throw NonInvertible("kfold_sum: admissible index " + std::to_string(a) +
                                " divisible by " + std::to_string(m.p));
        g1[static_cast<size_t>(a)] = inv_mod(static_cast<uint64_t>(a) % q, q);
    }
    std::vector<uint64_t> g = g1;
    for (int s = 2; s <= k; ++s) {
        const long long hi = N - (k - s);
        std::vector<uint64_t> h(static_cast<size_t>(hi) + 1, 0);
        for (long long t = s; t <= hi; ++t) {
            uint64_t acc = 0;
            const long long atop = std::min(maxpart, t - (s - 1));
            for (long long a = 1; a <= atop; ++a) {
                const uint64_t ga = g1[static_cast<size_t>(a)];
                if (ga == 0) continue;
                const uint64_t gb = g[static_cast<size_t>(t - a)];
                if (gb == 0) continue;
                acc = add_mod(acc, mul_mod(ga, gb, q), q);
            }
            h[static_cast<size_t>(t)] = acc;
        }
        g = std::move(h);
    }
    return Residue::from_raw(g[static_cast<size_t>(N)], m);
}

inline Rational kfold_exact(long long N, int k, long long coprime_to) {
    if (N < 1 || k < 2 || coprime_to < 1) throw std::domain_error("kfold_exact: bad parameters");
    const long long maxpart = N - k + 1;
    if (maxpart < 1) return Rational(0);
    std::vector<Rational> g1(static_cast<size_t>(maxpart) + 1, Rational(0));
    for (long long a = 1; a <= maxpart; ++a)
        if (gcd_ll(a, coprime_to) == 1) g1[static_cast<size_t>(a)] = Rational(1, a);
    std::vector<Rational> g = g1;
    for (int s = 2; s <= k; ++s) {
        const long long hi = N - (k - s);
        std::vector<Rational> h(static_cast<size_t>(hi) + 1, Rational(0));
        for (long long t = s; t <= hi; ++t) {
            Rational acc(0);
            const long long atop = std::min(maxpart, t - (s - 1));
            for (long long a = 1; a <= atop; ++a) {
                if (g1[static_cast<size_t>(a)].is_zero()) continue;
                acc += g1[static_cast<size_t>(a)] * g[static_cast<size_t>(t - a)];
            }
            h[static_cast<size_t>(t)] = acc;
        }
        g = std::move(h);
    }
    return g[static_cast<size_t>(N)];
}

namespace detail {

inline void check_st_params(long long mult, long long limit, long long p, const PrimePowerModulus& mod) {
    if (mod.p != p) throw std::invalid_argument("sum: modulus prime differs from p");
    if (mult < 1 || limit < 1) throw std::domain_error("sum: parameters must be >= 1");
    if (mult % p == 0) throw std::domain_error("sum: m must be coprime to p");
    if (limit > std::numeric_limits<long long>::max() / (mult + 1))
        throw std::overflow_error("sum: limit * m overflows");
}

}  // namespace detail

// S(m, limit; p): inner prefix advances by m per outer step, one pass total.
inline Residue s_sum(long long m_mult, long long limit, long long p, PrimePowerModulus mod) {
    detail::check_st_params(m_mult, limit, p, mod);
    const uint64_t q = mod.q;
    uint64_t total = 0, h = 0;
    long long cur = 0;
    for (long long a = 1; a < limit; ++a) {
        const long long target = a * m_mult - 1;
        while (cur < target) {
            ++cur;
            if (cur % p != 0) h = add_mod(h, inv_mod(static_cast<uint64_t>(cur) % q, q), q);
        }
        if (a % p != 0) {
            const uint64_t ia = inv_mod(static_cast<uint64_t>(a) % q, q);
            total = add_mod(total, mul_mod(mul_mod(ia, ia, q), h, q), q);
        }
    }
    return Residue::from_raw(total, mod);
}

inline Rational s_sum_exact(long long m_mult, long long limit, long long p) {
    Rational total(0), h(0);
    long long cur = 0;
    for (long long a = 1; a < limit; ++a) {
        const long long target = a * m_mult - 1;
        while (cur < target) {
            ++cur;
            if (cur % p != 0) h += Rational(1, cur);
        }
        if (a % p != 0) total += Rational(1, a * a) * h;
    }
    return total;
}

// T(m, limit; p): like S but the inner index is pinned to the class
// i ≡ am (mod p); per-class prefix sums advance in the same single pass.
inline Residue t_sum(long long m_mult, long long limit, long long p, PrimePowerModulus mod) {
    detail::check_st_params(m_mult, limit, p, mod);
    const uint64_t q = mod.q;
    std::vector<uint64_t> cls(static_cast<size_t>(p), 0);
    uint64_t total = 0;
    long long cur = 0;
    for (long long a = 1; a < limit; ++a) {
        const long long target = a * m_mult - 1;
        while (cur < target) {
            ++cur;
            if (cur % p != 0)
                cls[static_cast<size_t>(cur % p)] =
                    add_mod(cls[static_cast<size_t>(cur % p)], inv_mod(static_cast<uint64_t>(cur) % q, q), q);
        }
        if (a % p != 0) {
            const uint64_t ia = inv_mod(static_cast<uint64_t>(a) % q, q);
            const uint64_t inner = cls[static_cast<size_t>((a * m_mult) % p)];
            total = add_mod(total, mul_mod(mul_mod(ia, ia, q), inner, q), q);
        }
    }
    return Residue::from_raw(total, mod);
}

inline Rational t_sum_exact(long long m_mult, long long limit, long long p) {
    std::vector<Rational> cls(static_cast<size_t>(p), Rational(0));
    Rational total(0);
    long long cur = 0;
    for (long long a = 1; a < limit; ++a) {
        const long long target = a * m_mult - 1;
        while (cur < target) {
            ++cur;
            if (cur % p != 0) cls[static_cast<size_t>(cur % p)] += Rational(1, cur);
        }
        if (a % p != 0) total += Rational(1, a * a) * cls[static_cast<size_t>((a * m_mult) % p)];
    }
    return total;
}

// sum_{k=1, p∤k}^{mult p^l - 1} k^-s
inline Residue coprime_power_sum(long long mult, int l, int s, long long p, PrimePowerModulus mod) {
    if (mod.p != p) throw std::invalid_argument("coprime_power_sum: modulus prime differs from p");
    if (mult < 1 || l < 1 || s < 1) throw std::domain_error("coprime_power_sum: parameters must be >= 1");
    const long long bound = mult * detail::checked_pow_ll(p, l);
    const uint64_t q = mod.q;
    uint64_t acc = 0;
    for (long long k = 1; k < bound; ++k) {
        if (k % p == 0) continue;
        acc = add_mod(acc, inv_mod(pow_mod(static_cast<uint64_t>(k) % q, static_cast<uint64_t>(s), q), q), q);
    }
    return Residue::from_raw(acc, mod);
}

inline Rational coprime_power_sum_exact(long long mult, int l, int s, long long p) {
    const long long bound = mult * detail::checked_pow_ll(p, l);
    Rational acc(0);
    for (long long k = 1; k < bound; ++k) {
        if (k % p == 0) continue;
        acc += Rational(mpz_class(1), mpz_pow(mpz_class(static_cast<long>(k)), static_cast<unsigned>(s)));
    }
    return acc;
}

// single block: k in (nblock p^l, (nblock+1) p^l), p∤k
inline Residue block_power_sum(long long nblock, int l, int s, long long p, PrimePowerModulus mod) {
    if (mod.p != p) throw std::invalid_argument("block_power_sum: modulus prime differs from p");
    if (nblock < 0 || l < 1 || s < 1) throw std::domain_error("block_power_sum: bad parameters");
    const long long pl = detail::checked_pow_ll(p, l);
    const uint64_t q = mod.q;
    uint64_t acc = 0;
    for (long long k = nblock * pl + 1; k < (nblock + 1) * pl; ++k) {
        if (k % p == 0) continue;
        acc = add_mod(acc, inv_mod(pow_mod(static_cast<uint64_t>(k) % q, static_cast<uint64_t>(s), q), q), q);
    }
    return Residue::from_raw(acc, mod);
}

// sum_{a=1, p∤a}^{np-1} a^-k floor(am/p)
inline Residue floor_weighted_sum(long long m_mult, long long n, int k, long long p, PrimePowerModulus mod) {
    if (mod.p != p) throw std::invalid_argument("floor_weighted_sum: modulus prime differs from p");
    if (m_mult < 1 || n < 1 || k < 0) throw std::domain_error("floor_weighted_sum: bad parameters");
    if (m_mult % p == 0) throw std::domain_error("floor_weighted_sum: m must be coprime to p");
    if (n > std::numeric_limits<long long>::max() / p / (m_mult + 1))
        throw std::overflow_error("floor_weighted_sum: n*p*m overflows");
    const uint64_t q = mod.q;
    uint64_t acc = 0;
    for (long long a = 1; a < n * p; ++a) {
        if (a % p == 0) continue;
        const uint64_t w = static_cast<uint64_t>((a * m_mult) / p) % q;
        if (w == 0) continue;
        const uint64_t ak = inv_mod(pow_mod(static_cast<uint64_t>(a) % q, static_cast<uint64_t>(k), q), q);
        acc = add_mod(acc, mul_mod(ak, w, q), q);
    }
    return Residue::from_raw(acc, mod);
}

inline Rational floor_weighted_sum_exact(long long m_mult, long long n, int k, long long p) {
    Rational acc(0);
    for (long long a = 1; a < n * p; ++a) {
        if (a % p == 0) continue;
        const long long w = (a * m_mult) / p;
        if (w == 0) continue;
        acc += Rational(mpz_class(static_cast<long>(w)),
                        mpz_pow(mpz_class(static_cast<long>(a)), static_cast<unsigned>(k)));
    }
    return acc;
}

}  // namespace mharm
