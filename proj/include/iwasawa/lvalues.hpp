#pragma once

#include "iwasawa/characters.hpp"
#include "iwasawa/cyclo.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

// Exact element of Q(zeta_E), stored as a polynomial in T = zeta_E reduced mod
// Phi_E(T), with rational coefficients. Supports exact zero tests, which is the
// point: L-value identities are checked here with no rounding anywhere.
class CycQ {
  public:
    CycQ() : E_(0) {}
    static CycQ zero(long E);
    static CycQ one(long E);
    static CycQ from_q(long E, const mpq_class& v);
    static CycQ zeta_pow(long E, long k);

    long level() const { return E_; }
    long degree() const { return static_cast<long>(c_.size()); }
    const mpq_class& coeff(long i) const { return c_[i]; }

    CycQ operator+(const CycQ& o) const;
    CycQ operator-(const CycQ& o) const;
    CycQ operator*(const CycQ& o) const;
    CycQ operator-() const;
    CycQ& operator+=(const CycQ& o) { return *this = *this + o; }
    CycQ scale(const mpq_class& s) const;

    bool is_zero() const;
    bool operator==(const CycQ& o) const;
    // true when the element lies in Q; then *out is the rational value
    bool rational_value(mpq_class* out) const;
    std::string str() const;

  private:
    long E_;
    std::vector<mpq_class> c_;  // size = deg Phi_E
};

// Bernoulli number B_n with the convention B_1 = -1/2; exact, cached.
const mpq_class& bernoulli(long n);
// Bernoulli polynomial value B_n(x) at a rational point.
mpq_class bernoulli_poly(long n, const mpq_class& x);

// Generalized Bernoulli number B_{n,chi} of the primitive character attached to
// chi, at the conductor: B_{n,chi} = F^{n-1} sum_{a=1}^{F} chi(a) B_n(a/F).
CycQ gen_bernoulli(const DirichletChar& chi, long n);

// L(1-n, chi) = -B_{n,chi}/n for n >= 1, primitive chi (exact).
CycQ dirichlet_L_minus(const DirichletChar& chi, long n);

// partial zeta value at s = 0 for the ray a mod F
mpq_class partial_zeta0(long a, long F);

// Gauss sum sum_a chi(a) zeta_F^a of the primitive character, F = conductor,
// as an exact element of Q(zeta_lcm(order, F)).
CycQ gauss_sum_exact(const DirichletChar& chi);

// Embed an exact cyclotomic rational into Z_p by zeta_E -> omega(g_p)^((p-1)/E),
// g_p the fixed generator mod p. Requires E | p-1 and p-integral coefficients.
Zp embed_cycq(const CycQ& v, long p, long prec);

// Interpolated p-adic L-value L_p(1-n, eta) for n >= 1, materialized in Q_p:
//     L(1-n, eta*omega^{-n}) * (1 - (eta*omega^{-n})(p) p^{n-1}),
// cyclotomic values embedded as above. Requires ord(eta*omega^{-n}) | p-1.
// Integral except possibly for trivial eta (e.g. the s-chart value at 0 of the
// p-adic zeta function has valuation -1); the denominator is tracked.
Zp lp_value_tame(const DirichletChar& eta, long n, long p, long prec);

// L_p(1, psi) for even nontrivial psi of conductor p^r (p = R->p), materialized
// in a ring containing zeta_{p^r}:
//     -(1 - psi(p)/p) tau(psi) p^{-r} sum_a psibar(a) log_p(1 - zeta_{p^r}^a),
// sum over units a mod p^r. Here psi(p) = 0, so the prefactor is -1. Each
// 1 - zeta^a is a non-unit, but the weighted sum is unchanged on replacing it
// with the unit (1 - zeta^a)/(1 - zeta) = 1 + zeta + ... + zeta^{a-1} because
// the psibar(a) sum to zero; the logs are taken of that form. The p^{-r} and
// the log denominators are tracked.
CycElem lp_at_one_wild(const DirichletChar& psi, RingPtr R, long prec);

// q-expansion of the weight-one Eisenstein series attached to an odd primitive
// character: a_0 = L(0,chi)/2 and a_n = sum_{d | n} chi(d), exact in Q(zeta_ord).
std::vector<CycQ> eisenstein_q_expansion(const DirichletChar& chi, long nTerms);

}  // namespace iwasawa
