#pragma once

#include <utility>

#include "iwasawa/util.hpp"

namespace iwasawa {

// Dirichlet character mod m, stored per cyclic factor of (Z/m)^* as an exponent
// against a fixed generator. For odd q the generator is the smallest primitive
// root mod q^2, which generates (Z/q^e)^* for every e, so exponents transport
// across powers of q; this matches the Conrey labeling convention. The 2-part
// contributes a sign factor <-1> and, for 2^a with a >= 3, a cyclic factor <5>.
class DirichletChar {
  public:
    struct Factor {
        long q;     // prime
        int a;      // exponent, modulus component q^a
        long qa;    // q^a
        int role;   // 0: odd cyclic part; 1: sign part at 2; 2: <5> part at 2
        long gen;   // fixed generator of this cyclic factor
        long n;     // factor order
        long e;     // character exponent: chi(gen) = zeta_n^e, 0 <= e < n
        bool operator==(const Factor&) const = default;
    };

    explicit DirichletChar(long modulus = 1);            // trivial character
    static DirichletChar from_conrey(long modulus, long conrey_n);
    // chi(gen_i) = zeta_{n_i}^{exps[i]} per ascending prime factor of modulus
    static DirichletChar from_exponents(long modulus, const std::vector<long>& exps);
    static DirichletChar omega_like(long p);             // mod p, full order p-1

    long modulus() const { return m_; }
    long conductor() const;
    long order() const;
    bool is_trivial() const { return order() == 1; }
    bool is_even() const;                                // chi(-1) == 1
    long conrey() const;                                 // Conrey index n for label m.n
    std::string label() const;                           // "m.n"

    // exponent k with chi(a) = zeta_E^k; requires order | E. Returns -1 when
    // gcd(a, m) > 1 (the value is 0).
    long exponent_in(long a, long E) const;
    bool is_unit_arg(long a) const { return gcd_long(((a % m_) + m_) % m_, m_) == 1; }

    DirichletChar primitive() const;                     // same character mod conductor
    DirichletChar induced_to(long new_modulus) const;    // new_modulus multiple of conductor
    DirichletChar operator*(const DirichletChar& o) const;
    DirichletChar inverse() const;                       // complex conjugate
    DirichletChar pow(long k) const;
    bool operator==(const DirichletChar& o) const { return m_ == o.m_ && fac_ == o.fac_; }

    // split chi = (tame part) * (wild part) at odd p: the first factor has
    // conductor not divisible by p^2, the second p-power order and conductor.
    std::pair<DirichletChar, DirichletChar> decompose_at_p(long p) const;
    bool is_tame_at(long p) const;   // p^2 does not divide the conductor
    bool is_wild_at(long p) const;   // p-power conductor and p-power order

    // all characters mod m, deterministic order (lexicographic exponent tuples)
    static std::vector<DirichletChar> enumerate_mod(long m);

    const std::vector<Factor>& factors() const { return fac_; }

  private:
    long m_;
    std::vector<Factor> fac_;

    static long dlog(const Factor& f, long a);  // brute-force, cached
};

// The order-2 character of conductor N, when it is unique (always for odd
// prime N). Throws when none exists or several do.
DirichletChar quadratic_char(long N);

}  // namespace iwasawa
