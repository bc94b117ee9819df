#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mharm/numeric.hpp"

namespace mharm {

inline bool is_prime(long long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// The residue ring Z/qZ with q = p^r, p an odd prime. q is capped at 2^62 so
// that uint64 sums and 128-bit products stay exact.
struct PrimePowerModulus {
    long long p = 3;
    int r = 1;
    uint64_t q = 3;

    PrimePowerModulus(long long p_, int r_) : p(p_), r(r_) {
        if (p < 3 || p % 2 == 0 || !is_prime(p))
            throw std::domain_error("PrimePowerModulus: p must be an odd prime, got " + std::to_string(p));
        if (r < 1)
            throw std::domain_error("PrimePowerModulus: exponent must be >= 1");
        const uint64_t cap = uint64_t(1) << 62;
        uint64_t acc = 1;
        for (int i = 0; i < r; ++i) {
            if (acc > cap / static_cast<uint64_t>(p))
                throw std::overflow_error("PrimePowerModulus: p^r exceeds 2^62");
            acc *= static_cast<uint64_t>(p);
        }
        q = acc;
    }

    bool operator==(const PrimePowerModulus& o) const { return p == o.p && r == o.r; }
    bool operator!=(const PrimePowerModulus& o) const { return !(*this == o); }
};

// Canonical element of Z/qZ. Always reduced into [0, q); mixing moduli throws.
class Residue {
public:
    Residue(long long value, PrimePowerModulus m) : m_(m) {
        long long red = value % static_cast<long long>(m_.q);
        if (red < 0) red += static_cast<long long>(m_.q);
        v_ = static_cast<uint64_t>(red);
    }
    static Residue from_raw(uint64_t v, PrimePowerModulus m) {
        Residue r(0, m);
        r.v_ = v % m.q;
        return r;
    }

    uint64_t value() const { return v_; }
    const PrimePowerModulus& modulus() const { return m_; }

    Residue operator+(const Residue& o) const { check(o); return from_raw(add_mod(v_, o.v_, m_.q), m_); }
    Residue operator-(const Residue& o) const { check(o); return from_raw(sub_mod(v_, o.v_, m_.q), m_); }
    Residue operator*(const Residue& o) const { check(o); return from_raw(mul_mod(v_, o.v_, m_.q), m_); }
    Residue operator-() const { return from_raw(v_ == 0 ? 0 : m_.q - v_, m_); }

    Residue& operator+=(const Residue& o) { return *this = *this + o; }
    Residue& operator-=(const Residue& o) { return *this = *this - o; }
    Residue& operator*=(const Residue& o) { return *this = *this * o; }

    Residue inverse() const { return from_raw(inv_mod(v_, m_.q), m_); }
    Residue pow(uint64_t e) const { return from_raw(pow_mod(v_, e, m_.q), m_); }

    bool operator==(const Residue& o) const { check(o); return v_ == o.v_; }
    bool operator!=(const Residue& o) const { return !(*this == o); }

private:
    void check(const Residue& o) const {
        if (m_ != o.m_)
            throw std::invalid_argument("Residue: mixed moduli " + std::to_string(m_.q) + " vs " + std::to_string(o.m_.q));
    }
    uint64_t v_;
    PrimePowerModulus m_;
};

struct PrimePower {
    long long prime;
    int exponent;
    bool operator==(const PrimePower& o) const { return prime == o.prime && exponent == o.exponent; }
};

// n = prod of prime powers, primes strictly increasing. Empty factor list is
// the unit marker for n = 1 (so Z-style evaluators can return the empty sum).
struct Factorization {
    std::vector<PrimePower> factors;
    long long value = 1;

    bool is_unit() const { return factors.empty(); }
    bool all_odd() const {
        for (const auto& f : factors)
            if (f.prime == 2) return false;
        return true;
    }
    long long radical() const {
        long long r = 1;
        for (const auto& f : factors) r *= f.prime;
        return r;
    }
};

// Trial division; desk scale by design.
inline Factorization factorize(long long n) {
    if (n < 1) throw std::domain_error("factorize: n must be >= 1");
    Factorization f;
    f.value = n;
    long long rest = n;
    for (long long d = 2; d * d <= rest; d += (d == 2 ? 1 : 2)) {
        if (rest % d == 0) {
            int e = 0;
            while (rest % d == 0) { rest /= d; ++e; }
            f.factors.push_back({d, e});
        }
    }
    if (rest > 1) f.factors.push_back({rest, 1});
    return f;
}

inline Residue mod_inverse(long long a, PrimePowerModulus m) {
    return Residue(a, m).inverse();
}

// num * den^-1 mod q; throws NonInvertible when p divides den.
inline Residue rational_to_residue(const Rational& x, PrimePowerModulus m) {
    mpz_class den = x.den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(m.p)))
        throw NonInvertible("rational_to_residue: denominator " + den.get_str() +
                            " shares factor " + std::to_string(m.p));
    uint64_t dm = mpz_fdiv_ui(den.get_mpz_t(), m.q);
    mpz_class num = x.num();
    uint64_t nm = mpz_fdiv_ui(num.get_mpz_t(), m.q);  // fdiv: nonnegative for negative num
    return Residue::from_raw(mul_mod(nm, inv_mod(dm, m.q), m.q), m);
}

// All 2^omega squarefree divisors d of rad(n) with mu(d), ascending by d.
inline std::vector<std::pair<long long, int>> mobius_over_radical(const Factorization& f) {
    std::vector<std::pair<long long, int>> out;
    const size_t k = f.factors.size();
    out.reserve(size_t(1) << k);
    for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
        long long d = 1;
        int mu = 1;
        for (size_t i = 0; i < k; ++i)
            if (mask & (size_t(1) << i)) { d *= f.factors[i].prime; mu = -mu; }
        out.emplace_back(d, mu);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// 1 on indices coprime to n, 0 elsewhere; table covers [0, size).
inline std::vector<uint8_t> coprime_table(long long n, long long size) {
    std::vector<uint8_t> t(static_cast<size_t>(size), 1);
    if (size > 0) t[0] = 0;
    for (const auto& f : factorize(n).factors)
        for (long long i = f.prime; i < size; i += f.prime)
            t[static_cast<size_t>(i)] = 0;
    return t;
}

}  // namespace mharm
