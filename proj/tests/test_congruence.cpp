#include <doctest.h>

#include "mharm/suite.hpp"

using namespace mharm;

namespace {

TheoremInstance instance_of(long long n, long long distinguished_prime) {
    const Factorization f = factorize(n);
    for (size_t i = 0; i < f.factors.size(); ++i)
        if (f.factors[i].prime == distinguished_prime) return TheoremInstance(f, i);
    throw std::invalid_argument("prime does not divide n");
}

}  // namespace

TEST_SUITE("congruence") {

TEST_CASE("rhs_theorem worked examples") {
    CHECK(rhs_theorem(instance_of(25, 5)).value() == 15);
    CHECK(rhs_theorem(instance_of(15, 5)).value() == 4);
    CHECK(rhs_theorem(instance_of(15, 3)).value() == 0);
}

TEST_CASE("single-prime degeneration reproduces -2 p^(r-1) B_{p-3}") {
    for (long long p = 5; p <= 31; p += 2) {
        if (!is_prime(p)) continue;
        for (int r = 1; r <= 3; ++r) {
            Factorization f;
            f.factors = {{p, r}};
            f.value = 1;
            for (int i = 0; i < r; ++i) f.value *= p;
            const PrimePowerModulus mod(p, r);
            const Rational direct = Rational(-2) *
                Rational(mpz_pow(mpz_class(static_cast<long>(p)), static_cast<unsigned>(r - 1))) *
                bernoulli_exact(static_cast<int>(p) - 3);
            CHECK(rhs_theorem(TheoremInstance(f, 0)).value() ==
                  rational_to_residue(direct, mod).value());
        }
    }
}

TEST_CASE("two-prime degeneration equals both corollary forms") {
    for (long long p1 : {3LL, 5LL, 7LL, 11LL, 13LL})
        for (long long p2 : {3LL, 5LL, 7LL, 11LL, 13LL}) {
            if (p1 == p2) continue;
            for (int r1 = 1; r1 <= 2; ++r1)
                for (int r2 = 1; r2 <= 2; ++r2) {
                    const auto res = check_corollary2_forms(p1, r1, p2, r2);
                    CHECK(res.status == CheckStatus::pass);
                    CHECK(res.params.at("matches_theorem") == 1);
                }
        }
}

TEST_CASE("corollary2 form equivalence examples") {
    auto a = check_corollary2_forms(5, 1, 3, 1);
    CHECK(a.status == CheckStatus::pass);
    CHECK(a.lhs == 4);
    auto b = check_corollary2_forms(3, 1, 5, 1);
    CHECK(b.status == CheckStatus::pass);
    CHECK(b.lhs == 0);
    CHECK(check_corollary2_forms(7, 2, 5, 3).status == CheckStatus::pass);
    CHECK_THROWS_AS(check_corollary2_forms(5, 1, 5, 2), std::invalid_argument);
}

TEST_CASE("exponent scaling of the theorem RHS") {
    // rhs at exponents (r1,...) is the (1,...,1) value scaled by
    // p1^(r1-1) prod p_l^(r_l-1), exactly as rationals
    auto scaled = [](const TheoremInstance& inst) {
        Factorization ones = inst.factorization;
        Rational scale(1);
        for (size_t i = 0; i < ones.factors.size(); ++i) {
            scale = scale * Rational(mpz_pow(mpz_class(static_cast<long>(ones.factors[i].prime)),
                                             static_cast<unsigned>(ones.factors[i].exponent - 1)));
            ones.factors[i].exponent = 1;
        }
        ones.value = 1;
        for (const auto& pp : ones.factors) ones.value *= pp.prime;
        return scale * rhs_theorem_exact(TheoremInstance(ones, inst.distinguished));
    };
    for (auto [n, p] : std::vector<std::pair<long long, long long>>{
             {45, 5}, {45, 3}, {75, 5}, {75, 3}, {1225, 7}, {1225, 5}, {6125, 7}}) {
        const TheoremInstance inst = instance_of(n, p);
        CHECK(rhs_theorem_exact(inst) == scaled(inst));
    }
}

TEST_CASE("check_theorem on one- and two-prime instances") {
    CHECK(check_theorem(instance_of(15, 5)).status == CheckStatus::pass);
    CHECK(check_theorem(instance_of(15, 3)).status == CheckStatus::pass);
    CHECK(check_theorem(instance_of(25, 5)).status == CheckStatus::pass);
    auto deg = check_theorem(instance_of(45, 3));  // p1 = 3 routes through B_0
    CHECK(deg.status == CheckStatus::pass);
    CHECK(deg.lhs == 0);
    CHECK(deg.rhs == 0);
    CHECK(deg.modulus_p == 3);
    CHECK(deg.modulus_r == 2);
    // naive and fast evaluation paths agree on the record
    auto fast = check_theorem(instance_of(45, 5), false);
    auto naive = check_theorem(instance_of(45, 5), true);
    CHECK(fast.lhs == naive.lhs);
    CHECK(fast.status == CheckStatus::pass);
}

TEST_CASE("check_theorem ids follow the instance shape") {
    CHECK(check_theorem(instance_of(15, 5)).check_id == "thm1");
    CHECK(check_theorem(instance_of(45, 5)).check_id == "thm2");
}

TEST_CASE("three-prime instances report the printed-formula disagreement") {
    // Z(105) ≡ 0 (mod 5) while the printed closed form gives 3; two
    // independent enumerations agree, so the checker must say fail.
    // See docs/FORMULAS.md.
    auto res = check_theorem(instance_of(105, 5));
    CHECK(res.lhs == 0);
    CHECK(res.rhs == 3);
    CHECK(res.status == CheckStatus::fail);
    CHECK(res.lhs == z_naive(105, PrimePowerModulus(5, 1)).value());
}

TEST_CASE("check_known examples") {
    auto zhao5 = check_known(KnownId::zhao_1_1, {{"p", 5}});
    CHECK(zhao5.status == CheckStatus::pass);
    CHECK(zhao5.lhs == 3);
    CHECK(zhao5.rhs == 3);
    CHECK(check_known(KnownId::zhao_1_1, {{"p", 3}}).status == CheckStatus::pass);

    auto zc = check_known(KnownId::zhoucai_1_2, {{"p", 7}, {"n", 4}});
    CHECK(zc.status == CheckStatus::pass);
    CHECK(zc.modulus_r == 2);
    CHECK(zc.lhs == 28);

    auto wc = check_known(KnownId::wangcai_1_3, {{"p", 5}, {"r", 2}});
    CHECK(wc.status == CheckStatus::pass);
    CHECK(wc.lhs == 15);
    CHECK(wc.rhs == 15);
}

TEST_CASE("check_known parameter domains are configuration errors") {
    CHECK_THROWS_AS(check_known(KnownId::zhao_1_1, {{"p", 4}}), std::invalid_argument);
    CHECK_THROWS_AS(check_known(KnownId::zhoucai_1_2, {{"p", 7}, {"n", 6}}), std::invalid_argument);
    CHECK_THROWS_AS(check_known(KnownId::wang_1_4, {{"p", 5}, {"r", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(check_known(KnownId::wangzhao_1_5, {{"p", 7}, {"r", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(check_known(KnownId::zhao_1_1, {}), std::invalid_argument);
}

TEST_CASE("five-fold and seven-fold sums: r >= 2 passes, r = 1 does not") {
    // frozen finding: at r = 1 the sums satisfy the -(k-1)! law instead of
    // the printed -5!/6 and -7!/10 constants; see docs/FORMULAS.md
    CHECK(check_known(KnownId::wang_1_4, {{"p", 7}, {"r", 2}}).status == CheckStatus::pass);
    CHECK(check_known(KnownId::wangzhao_1_5, {{"p", 11}, {"r", 2}}).status == CheckStatus::pass);
    auto w1 = check_known(KnownId::wang_1_4, {{"p", 7}, {"r", 1}});
    CHECK(w1.status == CheckStatus::fail);
    CHECK(w1.lhs == 3);  // 25/6 mod 7
    CHECK(w1.rhs == 6);
    auto w2 = check_known(KnownId::wangzhao_1_5, {{"p", 11}, {"r", 1}});
    CHECK(w2.status == CheckStatus::fail);
    CHECK(w2.lhs == 2);
    CHECK(w2.rhs == 8);
}

TEST_CASE("check_lemma examples") {
    auto l22 = check_lemma(LemmaId::l2_2, {{"p", 5}, {"n", 1}, {"m", 2}});
    CHECK(l22.status == CheckStatus::pass);
    CHECK(l22.lhs == 4);

    auto l24 = check_lemma(LemmaId::l2_4, {{"p", 5}, {"n", 1}, {"m", 2}, {"k", 3}});
    CHECK(l24.status == CheckStatus::pass);
    CHECK(l24.lhs == 2);

    auto note = check_lemma(LemmaId::note2_12, {{"p", 5}, {"n", 1}, {"m", 2}});
    CHECK(note.status == CheckStatus::pass);
    CHECK(note.lhs == 1);

    auto l21 = check_lemma(LemmaId::l2_1, {{"p", 3}, {"l", 1}, {"mult", 2}, {"s", 1}});
    CHECK(l21.status == CheckStatus::pass);
    CHECK(l21.params.at("e") == 1);
}

TEST_CASE("lemma 2.4 k = 0 is a documented mismatch, not an assertion") {
    auto res = check_lemma(LemmaId::l2_4, {{"p", 5}, {"n", 1}, {"m", 1}, {"k", 0}});
    CHECK(res.check_id == "lemma2.4.k0");
    CHECK(res.status == CheckStatus::paper_mismatch_documented);
    CHECK(res.lhs == 0);
    CHECK(res.rhs == 4);
    CHECK(res.params.at("corrected_matches") == 1);
    CHECK(res.params.at("rhs_corrected") == 0);
    // the brute-force-determined candidate -n(mn-1)/2 holds across the grid
    for (long long p : {5LL, 7LL, 11LL, 13LL})
        for (long long n = 1; n <= 6; ++n)
            for (long long m = 1; m <= 6; ++m) {
                if (n % p == 0 || m % p == 0) continue;
                auto r = check_lemma(LemmaId::l2_4, {{"p", p}, {"n", n}, {"m", m}, {"k", 0}});
                CHECK(r.params.at("corrected_matches") == 1);
            }
}

TEST_CASE("lemma 2.1 vacuous grid points are skipped") {
    // even s with (p-1) | s at l = 1 claims vanishing mod p^0
    auto res = check_lemma(LemmaId::l2_1, {{"p", 3}, {"l", 1}, {"mult", 1}, {"s", 2}});
    CHECK(res.status == CheckStatus::skipped);
    CHECK(res.params.at("e") == 0);
    CHECK(res.modulus_r == 0);
}

TEST_CASE("alpha-lifted lemmas") {
    CHECK(check_lemma(LemmaId::l2_3, {{"p", 5}, {"n", 2}, {"m", 3}, {"alpha", 2}}).status ==
          CheckStatus::pass);
    CHECK(check_lemma(LemmaId::l2_5, {{"p", 7}, {"n", 1}, {"m", 2}, {"alpha", 3}}).status ==
          CheckStatus::pass);
    CHECK_THROWS_AS(check_lemma(LemmaId::l2_3, {{"p", 5}, {"n", 1}, {"m", 1}, {"alpha", 1}}),
                    std::invalid_argument);
}

TEST_CASE("run_suite basics") {
    SuiteConfig empty;
    CHECK(run_suite(empty).empty());

    SuiteConfig bad;
    bad.families = {"nonsense"};
    CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);

    SuiteConfig cfg;
    cfg.families = {"zhao_1_1"};
    cfg.prime_bound = 13;
    auto rs = run_suite(cfg);
    CHECK(rs.size() == 5);  // 3, 5, 7, 11, 13
    for (const auto& r : rs) CHECK(r.status == CheckStatus::pass);
}

TEST_CASE("run_suite is deterministic and ordered") {
    SuiteConfig cfg;
    cfg.families = {"lemma2.2", "zhao_1_1"};
    cfg.prime_bound = 7;
    auto a = run_suite(cfg);
    auto b = run_suite(cfg);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].check_id == b[i].check_id);
        CHECK(a[i].params == b[i].params);
        CHECK(a[i].lhs == b[i].lhs);
        CHECK(a[i].rhs == b[i].rhs);
        CHECK(a[i].status == b[i].status);
    }
    for (size_t i = 1; i < a.size(); ++i) {
        CHECK((a[i - 1].check_id < a[i].check_id ||
               (a[i - 1].check_id == a[i].check_id && !(a[i].params < a[i - 1].params))));
    }
}

TEST_CASE("out-of-domain grid points become skip records") {
    SuiteConfig cfg;
    cfg.families = {"wang_1_4"};
    cfg.prime_bound = 5;
    auto rs = run_suite(cfg);
    REQUIRE(!rs.empty());
    for (const auto& r : rs) CHECK(r.status == CheckStatus::skipped);  // p = 3, 5 < 7
}

TEST_CASE("theorem families carry the naive cross-check flag") {
    SuiteConfig cfg;
    cfg.families = {"thm1"};
    cfg.prime_bound = 5;  // only n = 15
    auto rs = run_suite(cfg);
    REQUIRE(rs.size() == 2);
    for (const auto& r : rs) {
        CHECK(r.params.at("naive_agrees") == 1);
        CHECK(r.status == CheckStatus::pass);
    }
}

TEST_CASE("distinguished-prime completeness on two-prime instances") {
    SuiteConfig cfg;
    cfg.families = {"thm1"};
    cfg.prime_bound = 7;
    auto rs = run_suite(cfg);
    int pair_checks = 0;
    for (const auto& r : rs) {
        if (r.params.count("p3")) continue;  // triples: see FORMULAS.md
        ++pair_checks;
        CHECK(r.status == CheckStatus::pass);
    }
    CHECK(pair_checks == 6);  // {15, 21, 35} x two distinguished primes
}

TEST_CASE("check results are idempotent under re-evaluation") {
    auto a = check_known(KnownId::wangcai_1_3, {{"p", 7}, {"r", 2}});
    auto b = check_known(KnownId::wangcai_1_3, {{"p", 7}, {"r", 2}});
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK(a.status == b.status);
}

}  // TEST_SUITE
