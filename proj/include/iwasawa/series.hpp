#pragma once

#include <algorithm>
#include <vector>

#include "iwasawa/cyclo.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

// Shims so the series template runs over Zp and CycElem coefficients alike.
inline Zp scalar_zero_like(const Zp& a) { return Zp::zero(a.p()); }
inline Zp scalar_one_like(const Zp& a, long prec) { return Zp::one(a.p(), prec); }
inline long scalar_valuation(const Zp& a) { return a.valuation(); }
inline CycElem scalar_zero_like(const CycElem& a) { return CycElem::zero(a.ring()); }
inline CycElem scalar_one_like(const CycElem& a, long prec) { return CycElem::one(a.ring(), prec); }
inline long scalar_valuation(const CycElem& a) { return a.int_valuation(); }

// pi-adic valuation of the coefficient (pi the maximal-ideal generator) and the
// ramification index, for tail bounds: v_p = pi_valuation / pi_ramification.
long pi_valuation(const Zp& a);
long pi_ramification(const Zp& a);
long pi_valuation(const CycElem& a);
long pi_ramification(const CycElem& a);

// Truncated Iwasawa algebra O[[X]] mod X^D. Coefficients carry their own
// p-adic precision; a coefficient may be an exact zero of the ring.
template <class C>
class IwasawaSeries {
  public:
    explicit IwasawaSeries(std::vector<C> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("IwasawaSeries: empty");
    }
    static IwasawaSeries zeros(const C& proto, long D) {
        if (D < 1) throw std::invalid_argument("IwasawaSeries: D < 1");
        return IwasawaSeries(std::vector<C>(D, scalar_zero_like(proto)));
    }

    long D() const { return static_cast<long>(c_.size()); }
    const C& coeff(long i) const { return c_.at(i); }
    void set_coeff(long i, C v) { c_.at(i) = std::move(v); }
    C proto() const { return scalar_zero_like(c_[0]); }

    // smallest coefficient precision: the modulus actually achieved
    long min_prec() const {
        long m = Zp::kExact;
        for (const C& a : c_)
            if (!a.is_exact_zero()) m = std::min(m, a.prec());
        return m;
    }
    bool is_integral() const {
        for (const C& a : c_)
            if (a.den_exp() != 0) return false;
        return true;
    }
    bool is_zero_at_precision() const {
        for (const C& a : c_)
            if (!a.is_zero_at_precision()) return false;
        return true;
    }

    IwasawaSeries operator-() const {
        IwasawaSeries r = *this;
        for (C& a : r.c_) a = -a;
        return r;
    }
    IwasawaSeries operator+(const IwasawaSeries& o) const {
        long d = std::min(D(), o.D());
        std::vector<C> v;
        v.reserve(d);
        for (long i = 0; i < d; ++i) v.push_back(c_[i] + o.c_[i]);
        return IwasawaSeries(std::move(v));
    }
    IwasawaSeries operator-(const IwasawaSeries& o) const { return *this + (-o); }
    IwasawaSeries operator*(const IwasawaSeries& o) const {
        long d = std::min(D(), o.D());
        std::vector<C> v(d, proto());
        for (long i = 0; i < d; ++i) {
            if (c_[i].is_exact_zero()) continue;
            for (long j = 0; i + j < d; ++j) {
                if (o.c_[j].is_exact_zero()) continue;
                v[i + j] += c_[i] * o.c_[j];
            }
        }
        return IwasawaSeries(std::move(v));
    }

    IwasawaSeries scale(const C& s) const {
        IwasawaSeries r = *this;
        for (C& a : r.c_) a = a * s;
        return r;
    }
    IwasawaSeries mul_ratio(const mpz_class& num, const mpz_class& den) const {
        IwasawaSeries r = *this;
        for (C& a : r.c_) a = a.mul_ratio(num, den);
        return r;
    }
    IwasawaSeries truncated(long newD) const {
        if (newD < 1 || newD > D()) throw std::invalid_argument("truncated: bad D");
        return IwasawaSeries(std::vector<C>(c_.begin(), c_.begin() + newD));
    }
    // multiply by X^k (top coefficients fall off the truncation)
    IwasawaSeries shift_up_x(long k) const {
        IwasawaSeries r = zeros(c_[0], D());
        for (long i = 0; i + k < D(); ++i) r.c_[i + k] = c_[i];
        return r;
    }
    // divide by X^k; the dropped low coefficients must vanish at precision
    IwasawaSeries div_x(long k) const {
        for (long i = 0; i < k; ++i)
            if (!c_[i].is_zero_at_precision())
                throw precision_error("div_x: low coefficient does not vanish");
        std::vector<C> v(c_.begin() + k, c_.end());
        return IwasawaSeries(std::move(v));
    }
    IwasawaSeries with_coeff_prec(long M) const {
        IwasawaSeries r = *this;
        for (C& a : r.c_) a = a.with_prec(M);
        return r;
    }

  private:
    std::vector<C> c_;
};

struct SeriesInvariants {
    long mu;
    long lambda;
    bool certified;
};

// mu = min coefficient valuation, lambda = least index attaining it.
// Certified only when the anchoring coefficient is provably nonzero; earlier
// coefficients then provably exceed mu by the least-index rule.
template <class C>
SeriesInvariants invariants(const IwasawaSeries<C>& F) {
    long mu = Zp::kExact, lambda = -1;
    for (long i = 0; i < F.D(); ++i) {
        const C& a = F.coeff(i);
        if (a.is_exact_zero()) continue;
        long v = scalar_valuation(a);
        if (v < mu) {
            mu = v;
            lambda = i;
        }
    }
    if (lambda < 0) throw precision_error("invariants: series vanishes at working precision");
    bool certified = !F.coeff(lambda).is_zero_at_precision();
    return {mu, lambda, certified};
}

// multiplicative inverse of a series with unit constant term
template <class C>
IwasawaSeries<C> invert_unit(const IwasawaSeries<C>& F) {
    if (scalar_valuation(F.coeff(0)) != 0)
        throw precision_error("invert_unit: constant term is not a unit");
    long d = F.D();
    IwasawaSeries<C> r = IwasawaSeries<C>::zeros(F.proto(), d);
    C b0 = F.coeff(0).inv();
    r.set_coeff(0, b0);
    for (long k = 1; k < d; ++k) {
        C s = F.proto();
        for (long i = 1; i <= k; ++i) {
            if (F.coeff(i).is_exact_zero()) continue;
            s += F.coeff(i) * r.coeff(k - i);
        }
        r.set_coeff(k, -(b0 * s));
    }
    return r;
}

// Long division of a series by a monic polynomial (exact: the pivot is a unit,
// so no precision is created or lost beyond ordinary min-propagation).
template <class C>
struct PolyDivMod {
    IwasawaSeries<C> quotient;
    std::vector<C> remainder;  // degree < deg P
};

template <class C>
PolyDivMod<C> poly_divmod(const IwasawaSeries<C>& S, const std::vector<C>& P) {
    long lam = static_cast<long>(P.size()) - 1;
    if (lam < 0 || scalar_valuation(P[lam]) != 0)
        throw std::invalid_argument("poly_divmod: divisor must be monic up to a unit");
    long d = S.D();
    std::vector<C> w;
    w.reserve(d);
    for (long i = 0; i < d; ++i) w.push_back(S.coeff(i));
    C lead_inv = P[lam].inv();
    IwasawaSeries<C> Q = IwasawaSeries<C>::zeros(S.proto(), d);
    for (long m = d - 1; m >= lam; --m) {
        if (w[m].is_exact_zero()) continue;
        C c = w[m] * lead_inv;
        Q.set_coeff(m - lam, c);
        for (long i = 0; i < lam; ++i) w[m - lam + i] -= c * P[i];
        w[m] = scalar_zero_like(w[m]);
    }
    w.erase(w.begin() + lam, w.end());
    return {std::move(Q), std::move(w)};
}

template <class C>
struct WeierstrassDecomposition {
    long mu;
    long lambda;
    std::vector<C> distinguished;  // monic degree lambda, lower coeffs = 0 mod p
    IwasawaSeries<C> unit;
};

// F = p^mu * P * U by Hensel iteration: correct (P, U) by the division defect
// E = F2 - P U, splitting E U^{-1} into its residue mod P (goes to P) and the
// quotient (goes to U). The defect valuation strictly grows, so at most
// min-precision rounds are needed.
template <class C>
WeierstrassDecomposition<C> weierstrass(const IwasawaSeries<C>& F) {
    SeriesInvariants inv = invariants(F);
    if (!inv.certified) throw precision_error("weierstrass: invariants not certified");
    long lam = inv.lambda, d = F.D();
    IwasawaSeries<C> F2 = F;
    if (inv.mu > 0)
        for (long i = 0; i < d; ++i) F2.set_coeff(i, F.coeff(i).div_exact_p_pow(inv.mu));
    long prec = F2.min_prec();

    std::vector<C> P(lam, F.proto());
    P.push_back(scalar_one_like(F2.coeff(lam), prec));
    IwasawaSeries<C> U = IwasawaSeries<C>::zeros(F.proto(), d);
    for (long i = 0; i + lam < d; ++i) U.set_coeff(i, F2.coeff(lam + i));

    IwasawaSeries<C> Ppad = IwasawaSeries<C>::zeros(F.proto(), d);
    for (long i = 0; i <= lam; ++i) Ppad.set_coeff(i, P[i]);
    for (long round = 0; round <= prec + 1; ++round) {
        IwasawaSeries<C> E = F2 - Ppad * U;
        if (E.is_zero_at_precision()) break;
        PolyDivMod<C> dm = poly_divmod(E * invert_unit(U), P);
        for (long i = 0; i < lam; ++i) {
            P[i] += dm.remainder[i];
            Ppad.set_coeff(i, P[i]);
        }
        U = U + dm.quotient * U;
    }
    IwasawaSeries<C> Efin = F2 - Ppad * U;
    if (!Efin.is_zero_at_precision())
        throw precision_error("weierstrass: lifting did not converge");
    for (long i = 0; i < lam; ++i)
        if (!P[i].is_exact_zero() && !P[i].is_zero_at_precision() && scalar_valuation(P[i]) < 1)
            throw precision_error("weierstrass: non-distinguished factor");
    // The factorization of a germ known mod X^D determines the distinguished
    // polynomial only mod p^(D/lambda): multiplication by P has a kernel seeded
    // in the top lambda degrees that gains one power of p per lambda-descent
    // (e.g. X^D = p^(D/lambda) X^(D mod lambda) mod X^lambda - p). Cap the
    // claimed precisions accordingly; the unit loses its top lambda terms.
    if (lam > 0) {
        long capP = d / lam;
        for (long i = 0; i < lam; ++i)
            if (!P[i].is_exact_zero() && P[i].prec() > capP) P[i] = P[i].with_prec(capP);
        U = U.truncated(d - lam);
        for (long j = 0; j < U.D(); ++j) {
            long capU = (d - 1 - j) / lam;
            if (!U.coeff(j).is_exact_zero() && U.coeff(j).prec() > capU)
                U.set_coeff(j, U.coeff(j).with_prec(capU));
        }
    }
    return {inv.mu, lam, std::move(P), std::move(U)};
}

template <class C>
struct LambdaDivision {
    IwasawaSeries<C> quotient;
    std::vector<C> remainder;  // degree < lambda(G)
    long lambda;
};

// H = q G + r with deg r < lambda(G): r is H reduced mod the distinguished
// polynomial of G, and q = ((H - r) div P) U^{-1}.
template <class C>
LambdaDivision<C> lambda_division(const IwasawaSeries<C>& H, const IwasawaSeries<C>& G) {
    WeierstrassDecomposition<C> w = weierstrass(G);
    if (w.mu > 0) throw precision_error("lambda_division: divisor has mu > 0");
    PolyDivMod<C> dm = poly_divmod(H, w.distinguished);
    IwasawaSeries<C> q = dm.quotient * invert_unit(w.unit);
    return {std::move(q), std::move(dm.remainder), w.lambda};
}

// Substitute X -> B(X) where B lies in the maximal ideal (m, X). Coefficient k
// of the result is honest only up to the truncation tail sum_{i >= D} a_i B^i,
// whose X^k term has p-valuation at least (D-k) v_pi(B(0)) / e; precision is
// capped accordingly, and top coefficients with no certified digits are dropped
// (series coefficients are assumed p-integral).
template <class C>
IwasawaSeries<C> substitute_ideal(const IwasawaSeries<C>& F, const IwasawaSeries<C>& B) {
    if (!F.is_integral()) throw precision_error("substitute: non-integral series");
    long d = F.D();
    long e = pi_ramification(B.coeff(0));
    long vb = B.coeff(0).is_exact_zero() ? Zp::kExact : pi_valuation(B.coeff(0));
    if (vb < 1) throw precision_error("substitute: image of X is not in the maximal ideal");
    IwasawaSeries<C> res = IwasawaSeries<C>::zeros(F.proto(), d);
    for (long i = d - 1; i >= 0; --i) {
        res = res * B;
        res.set_coeff(0, res.coeff(0) + F.coeff(i));
    }
    if (vb >= Zp::kExact / 2) return res;
    long dOut = d;
    while (dOut > 1 && (d - (dOut - 1)) * vb / e < 1) --dOut;
    if ((d - (dOut - 1)) * vb / e < 1)
        throw precision_error("substitute: truncation tail dominates every coefficient");
    res = res.truncated(dOut);
    for (long k = 0; k < dOut; ++k) {
        if (res.coeff(k).is_exact_zero()) continue;
        long cap = (d - k) * vb / e;
        if (res.coeff(k).prec() > cap) res.set_coeff(k, res.coeff(k).with_prec(cap));
    }
    return res;
}

// X -> a(1+X) - 1, for a congruent to 1 mod the maximal ideal
template <class C>
IwasawaSeries<C> substitute_scale(const IwasawaSeries<C>& F, const C& a) {
    IwasawaSeries<C> B = IwasawaSeries<C>::zeros(F.proto(), F.D());
    C one = scalar_one_like(a, a.prec());
    B.set_coeff(0, a - one);
    if (F.D() > 1) B.set_coeff(1, a);
    return substitute_ideal(F, B);
}

// X -> u(1+X)^{-1} - 1, for a 1-unit u (an involution of the algebra)
template <class C>
IwasawaSeries<C> substitute_reciprocal(const IwasawaSeries<C>& F, const C& u) {
    IwasawaSeries<C> B = IwasawaSeries<C>::zeros(F.proto(), F.D());
    C one = scalar_one_like(u, u.prec());
    B.set_coeff(0, u - one);
    C t = u;
    for (long k = 1; k < F.D(); ++k) {
        t = -t;
        B.set_coeff(k, t);
    }
    return substitute_ideal(F, B);
}

// Horner evaluation at x in the maximal ideal. The unknown tail beyond X^D
// contributes at least p^(D v_pi(x)/e) because the series is p-integral.
template <class C>
C evaluate(const IwasawaSeries<C>& F, const C& x) {
    if (!F.is_integral()) throw precision_error("evaluate: non-integral series");
    C xi = x.require_integral("evaluate argument");
    long d = F.D();
    C acc = F.coeff(d - 1);
    for (long i = d - 2; i >= 0; --i) acc = acc * xi + F.coeff(i);
    if (!x.is_exact_zero()) {
        long vx = pi_valuation(x);
        if (vx < 1) throw precision_error("evaluate: argument is not in the maximal ideal");
        if (vx < Zp::kExact / 2) {
            long cap = d * vx / pi_ramification(x);
            if (cap < 1) throw precision_error("evaluate: truncation tail dominates");
            if (!acc.is_exact_zero() && acc.prec() > cap) acc = acc.with_prec(cap);
        }
    }
    return acc;
}

}  // namespace iwasawa
