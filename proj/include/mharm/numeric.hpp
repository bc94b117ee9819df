#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace mharm {

// Raised when a modular inverse is requested for a value sharing a factor
// with the modulus base prime.
struct NonInvertible : std::domain_error {
    explicit NonInvertible(const std::string& what) : std::domain_error(what) {}
};

// Raised by bernoulli_mod when p divides den(B_k), i.e. (p-1) | k.
struct DenominatorNotInvertible : NonInvertible {
    explicit DenominatorNotInvertible(const std::string& what) : NonInvertible(what) {}
};

// Raised if an exact rational that must be an integer is not one.
struct InternalNonInteger : std::logic_error {
    explicit InternalNonInteger(const std::string& what) : std::logic_error(what) {}
};

// Modular arithmetic on uint64 with q <= 2^62: sums stay below 2^63,
// products go through 128-bit intermediates.
inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t q) {
    uint64_t s = a + b;
    return s >= q ? s - q : s;
}

inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t q) {
    return a >= b ? a - b : a + q - b;
}

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t q) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

inline uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t q) {
    uint64_t result = 1 % q;
    base %= q;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, q);
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    return result;
}

// Extended Euclid. q <= 2^62 so the Bezout coefficients fit in int64.
inline uint64_t inv_mod(uint64_t a, uint64_t q) {
    a %= q;
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(q), nr = static_cast<int64_t>(a);
    while (nr != 0) {
        int64_t quo = r / nr;
        int64_t tmp = t - quo * nt; t = nt; nt = tmp;
        tmp = r - quo * nr; r = nr; nr = tmp;
    }
    if (r != 1)
        throw NonInvertible("inv_mod: " + std::to_string(a) + " not invertible mod " + std::to_string(q));
    if (t < 0) t += static_cast<int64_t>(q);
    return static_cast<uint64_t>(t);
}

inline long long gcd_ll(long long a, long long b) {
    while (b) { long long t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

// Exact reduced fraction. Canonical form is maintained on every path:
// gcd(|num|, den) = 1, den >= 1, zero is 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(static_cast<long>(n)) {}
    Rational(long long num, long long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
        v_.canonicalize();
    }
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

    // "num/den", or just "num" for integers
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}  // arithmetic results are canonical
    mpq_class v_;
};

inline Rational rational_pow(const Rational& x, unsigned e) {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i) r *= x;
    return r;
}

inline mpz_class mpz_pow(const mpz_class& base, unsigned e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class factorial_mpz(long long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

}  // namespace mharm
