#pragma once

#include <mutex>
#include <vector>

#include "mharm/numeric.hpp"
#include "mharm/numtheory.hpp"

namespace mharm {

namespace detail {

// Growing table of exact Bernoulli numbers, convention B_1 = -1/2.
// Computed once per process via sum_{j=0}^{m} C(m+1,j) B_j = 0; reads hand
// out copies. Growth is mutex-guarded so concurrent callers are safe.
class BernoulliCache {
public:
    Rational get(int k) {
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<int>(table_.size()) <= k) {
            const size_t m = table_.size();
            if (m % 2 == 1 && m >= 3) {
                table_.emplace_back(0);
                continue;
            }
            Rational acc(0);
            for (size_t j = 0; j < m; ++j) {
                if (j % 2 == 1 && j >= 3) continue;
                acc += Rational(binomial(static_cast<unsigned long>(m + 1),
                                         static_cast<unsigned long>(j))) * table_[j];
            }
            table_.push_back(-acc / Rational(static_cast<long long>(m + 1)));
        }
        return table_[static_cast<size_t>(k)];
    }

private:
    std::mutex mu_;
    std::vector<Rational> table_{Rational(1), Rational(-1, 2)};
};

inline BernoulliCache& bernoulli_cache() {
    static BernoulliCache cache;
    return cache;
}

}  // namespace detail

// Exact B_k.
inline Rational bernoulli_exact(int k) {
    if (k < 0) throw std::domain_error("bernoulli_exact: k must be >= 0");
    return detail::bernoulli_cache().get(k);
}

// B_k reduced mod p^r. By von Staudt-Clausen this fails exactly when
// (p-1) | k for even k >= 2; in particular k = p-3 is always fine.
inline Residue bernoulli_mod(int k, PrimePowerModulus m) {
    Rational b = bernoulli_exact(k);
    mpz_class den = b.den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(m.p)))
        throw DenominatorNotInvertible("bernoulli_mod: p = " + std::to_string(m.p) +
                                       " divides den(B_" + std::to_string(k) + ")");
    return rational_to_residue(b, m);
}

// sum_{a=1}^{n-1} a^r, evaluated through the Bernoulli closed form
// (1/(r+1)) sum_{k=0}^{r} C(r+1,k) B_k n^{r+1-k} and asserted integral.
inline mpz_class faulhaber_power_sum(long long n, int r) {
    if (n < 1) throw std::domain_error("faulhaber_power_sum: n must be >= 1");
    if (r < 0) throw std::domain_error("faulhaber_power_sum: r must be >= 0");
    if (r == 0) return mpz_class(static_cast<long>(n - 1));  // the closed form counts a = 0 here
    const mpz_class nz(static_cast<long>(n));
    Rational acc(0);
    for (int k = 0; k <= r; ++k) {
        Rational bk = bernoulli_exact(k);
        if (bk.is_zero()) continue;
        acc += Rational(binomial(static_cast<unsigned long>(r + 1), static_cast<unsigned long>(k))) *
               bk * Rational(mpz_pow(nz, static_cast<unsigned>(r + 1 - k)));
    }
    acc /= Rational(r + 1);
    if (!acc.is_integer())
        throw InternalNonInteger("faulhaber_power_sum: non-integral result for n=" +
                                 std::to_string(n) + " r=" + std::to_string(r));
    return acc.num();
}

}  // namespace mharm
