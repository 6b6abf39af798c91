#pragma once

#include <memory>

#include "iwasawa/padic.hpp"

namespace iwasawa {

// R = (Z/p^Wmax)[x, y] / (Phi_{p^r}(x), g(y)): the ring of integers of the
// compositum of the ramified field Q_p(zeta_{p^r}) and the unramified field
// generated by zeta_tame, at working precision Wmax. g is the Hensel lift of
// the lexicographically smallest irreducible factor of Phi_tame mod p, so the
// construction is deterministic. x has order p^r, y has order tame.
// Monomials x^i y^j (i < e, j < d) form a Z_p-basis of the maximal order, so
// p-integrality can be read off coefficientwise.
class CycRing {
  public:
    static std::shared_ptr<const CycRing> make(long p, long r, long tame, long Wmax);

    long p, r, tame, Wmax;
    long e;     // ramification degree phi(p^r)
    long d;     // residue degree ord_tame(p)
    long n;     // rank e*d
    long pr;    // p^r
    PolyZ g;    // monic degree d, divides Phi_tame mod p^Wmax

    const std::vector<mpz_class>& xpow(long k) const { return xpow_[((k % pr) + pr) % pr]; }

  private:
    CycRing() = default;
    std::vector<std::vector<mpz_class>> xpow_;  // x^k reduced, k in [0, p^r)
};

using RingPtr = std::shared_ptr<const CycRing>;

// Element with tracked absolute precision, mirroring Zp: coefficient vector of
// length e*d (index i + e*j for x^i y^j), each stored mod p^(prec+den), value
// = coeffs / p^den. den == 0 is the normal state at module boundaries.
class CycElem {
  public:
    CycElem() : prec_(0), den_(0) {}
    static CycElem zero(RingPtr R);
    static CycElem one(RingPtr R, long prec);
    static CycElem from_int(RingPtr R, long prec, const mpz_class& v);
    static CycElem from_zp(RingPtr R, const Zp& z);
    static CycElem monomial(RingPtr R, long prec, long i, long j);
    static CycElem gen_x(RingPtr R, long prec) { return monomial(R, prec, 1 % R->e, 0); }
    // for residue degree 1 the tame root is the scalar root of g, not a monomial
    static CycElem gen_y(RingPtr R, long prec) {
        return R->d > 1 ? monomial(R, prec, 0, 1) : from_int(R, prec, -R->g[0]);
    }

    const RingPtr& ring() const { return R_; }
    long prec() const { return prec_; }
    long den_exp() const { return den_; }
    bool is_exact_zero() const { return prec_ >= Zp::kExact; }
    bool is_integral() const { return den_ == 0; }
    const mpz_class& coeff(long i, long j) const { return c_[i + R_->e * j]; }

    CycElem operator-() const;
    CycElem operator+(const CycElem& o) const;
    CycElem operator-(const CycElem& o) const;
    CycElem operator*(const CycElem& o) const;
    CycElem& operator+=(const CycElem& o) { return *this = *this + o; }
    CycElem& operator-=(const CycElem& o) { return *this = *this - o; }
    CycElem& operator*=(const CycElem& o) { return *this = *this * o; }

    CycElem mul_ratio(const mpz_class& num, const mpz_class& den) const;
    CycElem inv() const;  // requires pi-adic unit after stripping the p-power part

    // min_i v_p(coeff_i) - den, capped at prec: the largest k with value in p^k O
    long int_valuation() const;
    bool is_zero_at_precision() const;
    bool is_unit() const;  // nonzero residue in the residue field

    CycElem div_exact_p_pow(long k) const;
    CycElem shift_down(long k) const;
    CycElem with_prec(long newPrec) const;
    CycElem require_integral(const char* what) const;

    CycElem galois_ramified(long c) const;  // x -> x^c, c a unit mod p^r
    CycElem trace_ramified() const;         // sum of galois_ramified over (Z/p^r)^*

    static long agree_exponent(const CycElem& a, const CycElem& b);
    std::string str() const;

  private:
    void normalize();
    mpz_class modulus() const { return pow_p(R_->p, prec_ + den_); }

    RingPtr R_;
    long prec_;
    long den_;
    std::vector<mpz_class> c_;

    friend CycElem ring_pow(const CycElem& a, const mpz_class& k);
};

CycElem ring_pow(const CycElem& a, const mpz_class& k);

// Canonical root of unity of order m. Per prime power l^k || m: powers of x if
// l == p, else powers of y if l^k divides the order of y, else the Teichmuller
// root if l^k | p-1; the parts are combined multiplicatively. Deterministic,
// shared by character evaluation and L-value materialization.
CycElem ring_zeta(RingPtr R, long prec, long m);

// Iwasawa logarithm (branch log p = 0) of a unit u: log(u^K)/K with
// K = (p^d - 1) p^r, evaluated by the exactly-convergent series. The result may
// carry a p-power denominator of exponent up to r; it is tracked. Throws if u
// is not a unit.
CycElem iwasawa_log_unit(const CycElem& u);

}  // namespace iwasawa
