#pragma once

#include <limits>

#include "iwasawa/util.hpp"

namespace iwasawa {

// Element of Q_p with bounded denominator, tracked to absolute precision:
//     value = res / p^den,  known modulo p^prec,  0 <= res < p^(prec+den).
// den == 0 for elements of Z_p, which is the normal state at module boundaries.
// Exact zero is den == 0, res == 0, prec == kExact.
class Zp {
  public:
    static constexpr long kExact = std::numeric_limits<long>::max() / 4;

    Zp() : p_(0), prec_(0), den_(0), res_(0) {}
    Zp(long p, long prec, mpz_class value);      // integral value mod p^prec
    static Zp zero(long p);                      // exact zero
    static Zp one(long p, long prec);
    static Zp from_ratio(long p, long prec, const mpz_class& num, const mpz_class& den);

    long p() const { return p_; }
    long prec() const { return prec_; }          // absolute precision of the value
    long den_exp() const { return den_; }        // p-power denominator exponent
    bool is_exact_zero() const { return prec_ >= kExact; }
    bool is_integral() const { return den_ == 0; }

    // residue of the value, only for integral elements
    const mpz_class& residue() const;

    // v_p(value), capped by the precision: res==0 within precision returns prec().
    long valuation() const;
    bool is_zero_at_precision() const;           // indistinguishable from 0 mod p^prec
    bool is_unit() const { return valuation() == 0; }

    Zp operator-() const;
    Zp operator+(const Zp& o) const;
    Zp operator-(const Zp& o) const;
    Zp operator*(const Zp& o) const;
    Zp& operator+=(const Zp& o) { return *this = *this + o; }
    Zp& operator-=(const Zp& o) { return *this = *this - o; }
    Zp& operator*=(const Zp& o) { return *this = *this * o; }

    Zp inv() const;                              // any nonzero value; precision drops by 2*valuation
    Zp mul_ratio(const mpz_class& num, const mpz_class& den) const;  // exact rational factor

    // Exact division by p^k: errors unless valuation() >= k. Precision drops by k.
    Zp div_exact_p_pow(long k) const;
    // Division by p^k tracked through the denominator exponent; never errors.
    Zp shift_down(long k) const;

    Zp with_prec(long newPrec) const;            // cap/demote precision
    Zp require_integral(const char* what) const; // errors if a denominator remains

    // difference valuation, i.e. exponent s with a == b mod p^s (capped at min prec)
    static long agree_exponent(const Zp& a, const Zp& b);

    std::string str() const;                     // decimal residue string (integral only)

  private:
    void normalize();

    long p_;
    long prec_;
    long den_;
    mpz_class res_;
};

// Teichmuller lift: the unique (p-1)-st root of unity congruent to a mod p.
// Requires p odd, p coprime to a.
Zp teichmuller(long p, long prec, const mpz_class& a);

// Iwasawa logarithm of a 1-unit x (v(x-1) >= 1): principal branch power series.
// Certified output precision trails the input by at most log_p of the term count.
Zp log_1unit(const Zp& x);

// log_u(x) = log(x)/log(1+p) for a 1-unit x; the wild discrete logarithm in Z_p.
Zp wild_log_ratio(const Zp& x);

Zp pow_zp(const Zp& x, const mpz_class& e);

}  // namespace iwasawa
