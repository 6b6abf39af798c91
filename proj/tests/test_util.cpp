#include "doctest.h"
#include "iwasawa/util.hpp"

using namespace iwasawa;

TEST_CASE("integer helpers") {
    CHECK(pow_z(3, 5) == 243);
    CHECK(pow_p(7, 12) == mpz_class("13841287201"));
    CHECK(valp(mpz_class(392), 7, 10) == 2);
    CHECK(valp(mpz_class(-98), 7, 10) == 2);
    CHECK(valp(pow_p(3, 40), 3, 20) == 20);  // capped
    CHECK(valp_long(54, 3) == 3);

    CHECK(is_prime_long(2));
    CHECK(is_prime_long(7919));
    CHECK_FALSE(is_prime_long(1));
    CHECK_FALSE(is_prime_long(7917));

    auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<long, int>(2, 3));
    CHECK(f[1] == std::pair<long, int>(3, 2));
    CHECK(f[2] == std::pair<long, int>(5, 1));

    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(49) == 42);
    CHECK(euler_phi(360) == 96);
    CHECK(mult_order(3, 11) == 5);
    CHECK(mult_order(2, 9) == 6);
    CHECK(mult_order(7, 11) == 10);
    CHECK(lcm_long(12, 18) == 36);
}

TEST_CASE("primitive roots generate all prime-power moduli") {
    for (long q : {3L, 5L, 7L, 11L, 13L}) {
        long g = primitive_root_odd(q);
        CHECK(mult_order(g, q) == q - 1);
        CHECK(mult_order(g, q * q) == q * (q - 1));
    }
    CHECK(primitive_root_odd(7) == 3);
    CHECK(primitive_root_odd(11) == 2);
    CHECK(primitive_root_odd(3) == 2);
}

TEST_CASE("modular inverses") {
    CHECK(inv_mod_long(3, 50) * 3 % 50 == 1);
    mpz_class m = pow_p(7, 12);
    mpz_class a = 123456789;
    CHECK(inv_mod(a, m) * a % m == 1);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == PolyZ{-1, 1});
    CHECK(cyclotomic_poly(4) == PolyZ{1, 0, 1});
    CHECK(cyclotomic_poly(9) == PolyZ{1, 0, 0, 1, 0, 0, 1});
    CHECK(cyclotomic_poly(12) == PolyZ{1, 0, -1, 0, 1});
    // first index with a coefficient outside {-1,0,1}
    PolyZ c105 = cyclotomic_poly(105);
    CHECK(c105[7] == -2);
    CHECK(c105.size() == 49);
}

TEST_CASE("poly arithmetic over Z/m") {
    mpz_class m = 1000;
    PolyZ a{1, 2, 3}, b{5, 7};
    PolyZ ab = poly_mul(a, b, m);
    CHECK(ab == PolyZ{5, 17, 29, 21});
    auto [q, r] = poly_divrem(ab, PolyZ{0, 0, 0, 1}, m);  // divide by x^3
    CHECK(q == PolyZ{21});
    CHECK(r == PolyZ{5, 17, 29});
    CHECK(poly_trim(PolyZ{1, 0, 0}) == PolyZ{1});
}

TEST_CASE("equal-degree factorization of Phi_11 mod 3") {
    // ord_11(3) = 5, so Phi_11 splits into two monic quintics over F_3
    PolyZ f = cyclotomic_poly(11);
    for (auto& c : f) c = ((c % 3) + 3) % 3;
    auto facs = equal_degree_factor_fp(f, 3, 5);
    REQUIRE(facs.size() == 2);
    for (const auto& g : facs) {
        CHECK(g.size() == 6);
        CHECK(g.back() == 1);
    }
    CHECK(poly_trim(poly_sub(poly_mul(facs[0], facs[1], 3), f, 3)).empty());
    // deterministic and sorted
    auto facs2 = equal_degree_factor_fp(f, 3, 5);
    CHECK(facs == facs2);
    CHECK(facs[0] < facs[1]);
}

TEST_CASE("hensel lift of a factor of Phi_11 to mod 3^12") {
    PolyZ f0 = cyclotomic_poly(11);
    PolyZ fp = f0;
    for (auto& c : fp) c = ((c % 3) + 3) % 3;
    auto facs = equal_degree_factor_fp(fp, 3, 5);
    mpz_class m = pow_p(3, 12);
    PolyZ fw = f0;
    for (auto& c : fw) c = ((c % m) + m) % m;
    PolyZ g = hensel_lift_factor(fw, facs[0], 3, 12);
    CHECK(g.size() == 6);
    CHECK(g.back() == 1);
    auto [q, r] = poly_divrem(fw, g, m);
    CHECK(poly_trim(r).empty());
    for (size_t i = 0; i < g.size(); ++i) CHECK((g[i] - facs[0][i]) % 3 == 0);
}
