#include <algorithm>

#include "doctest.h"
#include "iwasawa/characters.hpp"

using namespace iwasawa;

TEST_CASE("trivial character") {
    DirichletChar t(1);
    CHECK(t.modulus() == 1);
    CHECK(t.conductor() == 1);
    CHECK(t.order() == 1);
    CHECK(t.is_trivial());
    CHECK(t.is_even());
    CHECK(t.exponent_in(5, 1) == 0);
    CHECK(t.label() == "1.1");
}

TEST_CASE("quadratic character mod 3 is Conrey 3.2") {
    DirichletChar c = DirichletChar::from_conrey(3, 2);
    CHECK(c.order() == 2);
    CHECK(c.conductor() == 3);
    CHECK_FALSE(c.is_even());                 // chi(-1) = chi(2) = -1
    CHECK(c.exponent_in(1, 2) == 0);
    CHECK(c.exponent_in(2, 2) == 1);
    CHECK(c.exponent_in(3, 2) == -1);         // non-unit
    CHECK(c.exponent_in(4, 2) == 0);
    CHECK(c.conrey() == 2);
    CHECK(c.label() == "3.2");
    CHECK((c * c).is_trivial());
    CHECK(c.inverse() == c);
}

TEST_CASE("quadratic character mod 11 is Conrey 11.10") {
    DirichletChar c = DirichletChar::from_conrey(11, 10);
    CHECK(c.order() == 2);
    CHECK(c.conductor() == 11);
    CHECK_FALSE(c.is_even());
    // quadratic residues mod 11: 1,3,4,5,9
    for (long a : {1, 3, 4, 5, 9}) CHECK(c.exponent_in(a, 2) == 0);
    for (long a : {2, 6, 7, 8, 10}) CHECK(c.exponent_in(a, 2) == 1);
    CHECK(c.label() == "11.10");
}

TEST_CASE("omega-like character mod 7") {
    DirichletChar w = DirichletChar::omega_like(7);
    CHECK(w.order() == 6);
    CHECK(w.conductor() == 7);
    CHECK_FALSE(w.is_even());                 // odd: omega(-1) = -1
    CHECK(w.pow(2).is_even());
    CHECK(w.pow(2).order() == 3);
    CHECK(w.pow(3).order() == 2);
    CHECK(w.pow(6).is_trivial());
    // chi(3) = zeta_6 since 3 generates (Z/7)^*
    CHECK(w.exponent_in(3, 6) == 1);
    CHECK(w.exponent_in(2, 6) == 2);          // 2 = 3^2 mod 7
    // multiplicativity
    CHECK((w.exponent_in(2, 6) + w.exponent_in(5, 6)) % 6 == w.exponent_in(10, 6));
}

TEST_CASE("induction and primitivity") {
    DirichletChar c3 = DirichletChar::from_conrey(3, 2);
    DirichletChar ind = c3.induced_to(21);
    CHECK(ind.modulus() == 21);
    CHECK(ind.conductor() == 3);
    CHECK(ind.order() == 2);
    CHECK(ind.exponent_in(7, 2) == -1);       // 7 shares a factor with 21
    CHECK(ind.exponent_in(2, 2) == 1);
    CHECK(ind.primitive() == c3);

    // inducing then multiplying by a trivial char preserves the primitive part
    DirichletChar t21(21);
    CHECK((ind * t21).primitive() == c3);
}

TEST_CASE("character mod 9 decomposes into tame and wild parts at 3") {
    // order-6 character mod 9: exponent 1 against phi(9)=6
    DirichletChar c = DirichletChar::from_exponents(9, {1});
    CHECK(c.order() == 6);
    CHECK(c.conductor() == 9);
    auto [tame, wild] = c.decompose_at_p(3);
    CHECK(tame.conductor() == 3);
    CHECK(tame.order() == 2);
    CHECK(tame.is_tame_at(3));
    CHECK(wild.conductor() == 9);
    CHECK(wild.order() == 3);
    CHECK(wild.is_wild_at(3));
    CHECK((tame.induced_to(9) * wild) == c);

    // order-3 character mod 9 is already wild
    DirichletChar w = DirichletChar::from_exponents(9, {2});
    auto [t2, w2] = w.decompose_at_p(3);
    CHECK(t2.order() == 1);
    CHECK(w2 == w);
    CHECK(w.is_wild_at(3));
    CHECK_FALSE(w.is_tame_at(3));
}

TEST_CASE("decomposition at p=7 of a mixed character mod 147") {
    // 147 = 3 * 49
    DirichletChar c = DirichletChar::from_exponents(147, {1, 5});
    auto [tame, wild] = c.decompose_at_p(7);
    CHECK(tame.modulus() == 21);
    CHECK(tame.conductor() % 49 != 0);
    CHECK(wild.is_wild_at(7));
    CHECK(wild.order() == 7);
    CHECK((tame.induced_to(147) * wild.induced_to(147)) == c);
}

TEST_CASE("order-3 wild characters mod 9") {
    auto all = DirichletChar::enumerate_mod(9);
    CHECK(all.size() == 6);
    int wild_order3 = 0;
    for (const auto& c : all)
        if (c.order() == 3) {
            ++wild_order3;
            CHECK(c.is_even());
            CHECK(c.conductor() == 9);
            CHECK(c.is_wild_at(3));
        }
    CHECK(wild_order3 == 2);
}

TEST_CASE("even nontrivial conductor-49 characters number 18") {
    auto all = DirichletChar::enumerate_mod(49);
    CHECK(all.size() == 42);
    int count = 0;
    for (const auto& c : all)
        if (c.is_even() && !c.is_trivial() && c.conductor() == 49) ++count;
    CHECK(count == 18);
}

TEST_CASE("enumeration is deterministic and complete") {
    auto a = DirichletChar::enumerate_mod(21);
    auto b = DirichletChar::enumerate_mod(21);
    REQUIRE(a.size() == 12);
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    // conductors partition: 1, 3, 7, 21
    int c1 = 0, c3 = 0, c7 = 0, c21 = 0;
    for (const auto& c : a) {
        long f = c.conductor();
        if (f == 1) ++c1;
        if (f == 3) ++c3;
        if (f == 7) ++c7;
        if (f == 21) ++c21;
    }
    CHECK(c1 == 1);
    CHECK(c3 == 1);
    CHECK(c7 == 5);
    CHECK(c21 == 5);
}

TEST_CASE("even modulus support") {
    DirichletChar c4 = DirichletChar::from_conrey(4, 3);
    CHECK(c4.order() == 2);
    CHECK(c4.conductor() == 4);
    CHECK_FALSE(c4.is_even());
    CHECK(c4.exponent_in(3, 2) == 1);
    DirichletChar c2(2);
    CHECK(c2.conductor() == 1);

    // mod 8: four characters with conductors 1, 4, 8, 8
    auto all8 = DirichletChar::enumerate_mod(8);
    REQUIRE(all8.size() == 4);
    std::vector<long> conds;
    for (const auto& c : all8) conds.push_back(c.conductor());
    std::sort(conds.begin(), conds.end());
    CHECK(conds == std::vector<long>{1, 4, 8, 8});

    // the even primitive character mod 8 takes +1 exactly on a = +-1 mod 8
    DirichletChar c8 = DirichletChar::from_exponents(8, {0, 1});
    CHECK(c8.conductor() == 8);
    CHECK(c8.is_even());
    CHECK(c8.exponent_in(1, 2) == 0);
    CHECK(c8.exponent_in(7, 2) == 0);
    CHECK(c8.exponent_in(3, 2) == 1);
    CHECK(c8.exponent_in(5, 2) == 1);

    // mod 16: the <5>-part has order 4
    auto all16 = DirichletChar::enumerate_mod(16);
    CHECK(all16.size() == 8);
    int prim16 = 0;
    for (const auto& c : all16)
        if (c.conductor() == 16) {
            ++prim16;
            CHECK(c.order() == 4);
        }
    CHECK(prim16 == 4);
}

TEST_CASE("conrey round trip") {
    for (long m : {3L, 7L, 9L, 11L, 21L, 49L}) {
        for (const auto& c : DirichletChar::enumerate_mod(m)) {
            long n = c.conrey();
            CHECK(gcd_long(n, m) == 1);
            CHECK(DirichletChar::from_conrey(m, n) == c);
        }
    }
}
