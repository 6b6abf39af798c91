#include "iwasawa/kl.hpp"

#include <algorithm>

namespace iwasawa {

namespace {

// Everything in the bracket
//     sum_{a=1..F, gcd(a,F)=1} chi(a) <a>^s sum_j binom(s,j) B_j (F/a)^j
// except the character values: part[k] is the subsum over the a-class with
// chi(a) = zeta_E^k, written in the X-chart (s = log(1+X)/log u) and already
// multiplied by the unit X/log(1+X). The two assemblies attach the values,
// one in Z_p and one in a cyclotomic ring.
struct ClassParts {
    long F = 0;
    long E = 0;
    std::vector<IwasawaSeries<Zp>> part;
};

ClassParts class_parts(const DirichletChar& chi, long p, long Dw, long W, long Wb) {
    ClassParts out;
    long f = chi.conductor();
    if (f > 1000000) throw std::invalid_argument("kl: conductor too large");
    long ap = valp_long(f, p);
    long vF = std::max(2L, ap);
    long F = f;
    for (long i = 0; i < ap; ++i) F /= p;
    for (long i = 0; i < vF; ++i) F *= p;
    out.F = F;
    out.E = chi.order();

    Zp u = Zp(p, W, 1 + p);
    Zp logu = log_1unit(u);
    Zp logu_inv = logu.inv();

    // S(X) = log(1+X)/log(u) sends u^s - 1 to s
    IwasawaSeries<Zp> S = IwasawaSeries<Zp>::zeros(Zp::zero(p), Dw);
    for (long k = 1; k < Dw; ++k)
        S.set_coeff(k, logu_inv.mul_ratio((k % 2) ? 1 : -1, k));

    // j runs over 0, 1 and even numbers below Jcut (B_j = 0 for odd j > 1).
    // Tail bound: an X^m coefficient of binom(S, j) is a sum over ways of
    // spreading m across t <= min(j, m) logarithm coefficients +-1/(k log u),
    // each with denominator exponent 1 + v_p(k) <= k, all divided by j!; with
    // the scalar B_j F^j (valuation >= 2j - 1) the whole j-th term has
    // coefficient valuation >= 2j - 1 - v_p(j!) - (Dw-1) >= (2 - 1/(p-1)) j - Dw,
    // so the terms from Jcut on are invisible at the bracket target Wb + 1.
    long Jcut = ((Wb + Dw + 1) * (p - 1) + (2 * p - 4)) / (2 * p - 3);
    std::vector<long> keep;
    for (long j = 0; j < Jcut; ++j)
        if (j <= 1 || j % 2 == 0) keep.push_back(j);

    std::vector<IwasawaSeries<Zp>> C;
    C.reserve(keep.size());
    IwasawaSeries<Zp> cur = IwasawaSeries<Zp>::zeros(Zp::zero(p), Dw);
    cur.set_coeff(0, Zp::one(p, W));
    C.push_back(cur);
    for (long j = 1; j <= keep.back(); ++j) {
        // binom(S, j) = binom(S, j-1) (S - (j-1)) / j
        IwasawaSeries<Zp> Sm = S;
        if (j > 1) Sm.set_coeff(0, -Zp(p, W, j - 1));
        cur = (cur * Sm).mul_ratio(1, j);
        if (j <= 1 || j % 2 == 0) C.push_back(cur);
    }

    std::vector<std::vector<IwasawaSeries<Zp>>> A(
        out.E, std::vector<IwasawaSeries<Zp>>(
                   keep.size(), IwasawaSeries<Zp>::zeros(Zp::zero(p), Dw)));
    for (long a = 1; a < F; ++a) {
        if (a % p == 0) continue;
        long k = chi.exponent_in(a, out.E);
        if (k < 0) continue;
        // <a>^s = (1+X)^(log<a>/log u), coefficients binom(log<a>/log u, i)
        Zp ell = log_1unit(Zp(p, W, a) * teichmuller(p, W, a).inv()) * logu_inv;
        IwasawaSeries<Zp> U = IwasawaSeries<Zp>::zeros(Zp::zero(p), Dw);
        U.set_coeff(0, Zp::one(p, W));
        Zp b = Zp::one(p, W);
        for (long i = 1; i < Dw; ++i) {
            b = (b * (ell - Zp(p, W, i - 1))).mul_ratio(1, i);
            U.set_coeff(i, b);
        }
        Zp ainv = Zp(p, W, a).inv();
        Zp apow = Zp::one(p, W);
        long jprev = 0;
        for (size_t t = 0; t < keep.size(); ++t) {
            for (; jprev < keep[t]; ++jprev) apow = apow * ainv;
            A[k][t] = A[k][t] + (keep[t] == 0 ? U : U.scale(apow));
        }
    }

    // X/log(1+X), the unit carrying 1/s up to the pending division by X
    IwasawaSeries<Zp> Lam = IwasawaSeries<Zp>::zeros(Zp::zero(p), Dw);
    for (long k = 0; k < Dw; ++k)
        Lam.set_coeff(k, Zp::from_ratio(p, W, (k % 2) ? -1 : 1, k + 1));
    IwasawaSeries<Zp> Rx = invert_unit(Lam);

    out.part.reserve(out.E);
    for (long k = 0; k < out.E; ++k) {
        IwasawaSeries<Zp> w = IwasawaSeries<Zp>::zeros(Zp::zero(p), Dw);
        for (size_t t = 0; t < keep.size(); ++t) {
            mpq_class bf = bernoulli(keep[t]) * mpq_class(pow_z(F, keep[t]));
            w = w + (C[t] * A[k][t]).mul_ratio(bf.get_num(), bf.get_den());
        }
        out.part.push_back(Rx * w);
    }
    return out;
}

template <class C>
IwasawaSeries<C> require_integral_series(IwasawaSeries<C> g, const char* what) {
    for (long i = 0; i < g.D(); ++i) g.set_coeff(i, g.coeff(i).require_integral(what));
    return g;
}

}  // namespace

long kl_working_prec(long p, long D, long M, long wild_exp) {
    long Dw = D + 1, Wb = M + 6;
    long Jcut = ((Wb + Dw + 1) * (p - 1) + (2 * p - 4)) / (2 * p - 3);
    // bracket target, twice the worst denominator the binomial chain can pile
    // up, the factorials of the <a>^s coefficients, unit factors, conductor
    return (Wb + 1) + 2 * (Dw - 1 + Jcut / (p - 1)) + 2 * Dw / (p - 1) +
           2 * std::max(2L, wild_exp) + 24;
}

KLBranch kl_series(const DirichletChar& eta0, long p, long D, long M, bool verify) {
    if (p < 3 || !is_prime_long(p))
        throw std::invalid_argument("kl_series: p must be an odd prime");
    if (D < 4 || M < 2) throw std::invalid_argument("kl_series: need D >= 4 and M >= 2");
    DirichletChar eta = eta0.primitive();
    if (!eta.is_even())
        throw std::invalid_argument("kl_series: odd character, the branch vanishes identically");
    if ((p - 1) % eta.order() != 0)
        throw std::invalid_argument(
            "kl_series: order does not divide p-1 (values leave Z_p), use kl_series_in_ring");
    // order | p-1 also forces the conductor prime to p^2: no wildness to check
    long Dw = D + 1, Wb = M + 6;
    long W = kl_working_prec(p, D, M, valp_long(eta.conductor(), p));
    ClassParts cp = class_parts(eta, p, Dw, W, Wb);
    // the same Teichmuller realization of zeta_E as the exact L-value embedding
    Zp root = pow_zp(teichmuller(p, W, primitive_root_odd(p)), (p - 1) / cp.E);
    IwasawaSeries<Zp> comb = cp.part[0];
    Zp zk = Zp::one(p, W);
    for (long k = 1; k < cp.E; ++k) {
        zk = zk * root;
        comb = comb + cp.part[k].scale(zk);
    }
    bool pole = eta.is_trivial();
    // nontrivial eta: the bracket vanishes at X = 0 (orthogonality); div_x checks
    IwasawaSeries<Zp> g = pole ? comb.truncated(D) : comb.div_x(1);
    g = g.scale(log_1unit(Zp(p, W, 1 + p))).mul_ratio(-1, cp.F);
    g = require_integral_series(std::move(g), "kl_series coefficient");
    if (g.min_prec() < M) throw precision_error("kl_series: working precision shortfall");
    KLBranch out{eta, p, pole, g.with_coeff_prec(M)};
    if (verify) {
        Zp uM = Zp(p, M, 1 + p);
        for (long k = 1; k <= 5; ++k) {
            Zp x = pow_zp(uM, k) - Zp::one(p, M);
            Zp lhs = evaluate(out.series, x);
            Zp rhs = lp_value_tame(eta, k, p, M);
            if (pole) rhs = rhs * x;
            if (Zp::agree_exponent(lhs, rhs) < M - 3)
                throw std::logic_error("kl_series: interpolation check failed at s = " +
                                       std::to_string(k));
        }
    }
    return out;
}

IwasawaSeries<CycElem> kl_series_in_ring(const DirichletChar& chi0, RingPtr R, long D,
                                         long M, bool verify) {
    if (!R) throw std::invalid_argument("kl_series_in_ring: null ring");
    if (D < 4 || M < 2)
        throw std::invalid_argument("kl_series_in_ring: need D >= 4 and M >= 2");
    long p = R->p;
    DirichletChar chi = chi0.primitive();
    if (chi.is_trivial())
        throw std::invalid_argument("kl_series_in_ring: trivial character has a pole, use kl_series");
    if (!chi.is_even())
        throw std::invalid_argument(
            "kl_series_in_ring: odd character, the branch vanishes identically");
    long Dw = D + 1, Wb = M + 6;
    long W = kl_working_prec(p, D, M, valp_long(chi.conductor(), p));
    if (R->Wmax < W)
        throw std::invalid_argument("kl_series_in_ring: ring precision below kl_working_prec = " +
                                    std::to_string(W));
    ClassParts cp = class_parts(chi, p, Dw, W, Wb);
    CycElem root = ring_zeta(R, W, cp.E);
    IwasawaSeries<CycElem> comb = IwasawaSeries<CycElem>::zeros(CycElem::zero(R), Dw);
    CycElem zk = CycElem::one(R, W);
    for (long k = 0; k < cp.E; ++k) {
        if (k > 0) zk = zk * root;
        IwasawaSeries<CycElem> pk = IwasawaSeries<CycElem>::zeros(CycElem::zero(R), Dw);
        for (long i = 0; i < Dw; ++i)
            if (!cp.part[k].coeff(i).is_exact_zero())
                pk.set_coeff(i, k == 0 ? CycElem::from_zp(R, cp.part[k].coeff(i))
                                       : CycElem::from_zp(R, cp.part[k].coeff(i)) * zk);
        comb = comb + pk;
    }
    IwasawaSeries<CycElem> g = comb.div_x(1);
    g = g.scale(CycElem::from_zp(R, log_1unit(Zp(p, W, 1 + p)))).mul_ratio(-1, cp.F);
    g = require_integral_series(std::move(g), "kl_series_in_ring coefficient");
    if (g.min_prec() < M)
        throw precision_error("kl_series_in_ring: working precision shortfall");
    g = g.with_coeff_prec(M);
    if (verify) {
        Zp uM = Zp(p, M, 1 + p);
        for (long k = 1; k <= 5; ++k) {
            CycElem x = CycElem::from_zp(R, pow_zp(uM, k) - Zp::one(p, M));
            if (CycElem::agree_exponent(evaluate(g, x), lp_value_in_ring(chi, k, R, M)) < M - 3)
                throw std::logic_error("kl_series_in_ring: interpolation check failed at s = " +
                                       std::to_string(k));
        }
    }
    return g;
}

CycElem embed_cycq_ring(const CycQ& v, RingPtr R, long prec) {
    CycElem root = ring_zeta(R, prec, v.level());
    CycElem s = CycElem::zero(R);
    CycElem rp = CycElem::one(R, prec);
    for (long i = 0; i < v.degree(); ++i) {
        if (v.coeff(i) != 0) s += rp.mul_ratio(v.coeff(i).get_num(), v.coeff(i).get_den());
        if (i + 1 < v.degree()) rp = rp * root;
    }
    return s;
}

CycElem lp_value_in_ring(const DirichletChar& eta, long n, RingPtr R, long prec) {
    if (n < 1) throw std::invalid_argument("lp_value_in_ring: n must be >= 1");
    long p = R->p;
    DirichletChar chi = (eta * DirichletChar::omega_like(p).pow(-n)).primitive();
    CycQ L = dirichlet_L_minus(chi, n);
    long E = L.level();
    long kp = chi.exponent_in(p, E);
    if (kp >= 0)
        L = L * (CycQ::one(E) - CycQ::zeta_pow(E, kp).scale(mpq_class(pow_z(p, n - 1))));
    long W = std::min(R->Wmax, prec + n + R->r + 6);  // room for Bernoulli denominators
    CycElem out = embed_cycq_ring(L, R, W);
    return out.is_exact_zero() || out.prec() <= prec ? out : out.with_prec(prec);
}

TwistCheck kl_twist_check(const DirichletChar& eta0, const DirichletChar& psi0, long p,
                          long D, long M) {
    DirichletChar eta = eta0.primitive(), psi = psi0.primitive();
    if (psi.is_trivial() || !psi.is_wild_at(p))
        throw std::invalid_argument("kl_twist_check: twister must be nontrivial wild at p");
    if (eta.is_trivial())
        throw std::invalid_argument("kl_twist_check: trivial eta twists the pole chart, not handled");
    if ((p - 1) % eta.order() != 0)
        throw std::invalid_argument("kl_twist_check: eta must take values in Z_p");
    long r = valp_long(psi.conductor(), p);
    long W = kl_working_prec(p, D, M, r);
    RingPtr R = CycRing::make(p, r, 1, W);
    IwasawaSeries<CycElem> direct = kl_series_in_ring((eta * psi).primitive(), R, D, M, true);
    KLBranch tame = kl_series(eta, p, D, M, true);
    IwasawaSeries<CycElem> lifted = IwasawaSeries<CycElem>::zeros(CycElem::zero(R), D);
    for (long i = 0; i < D; ++i)
        if (!tame.series.coeff(i).is_exact_zero())
            lifted.set_coeff(i, CycElem::from_zp(R, tame.series.coeff(i)));
    long s_ord = psi.order();
    CycElem zpsi = ring_pow(ring_zeta(R, W, s_ord), psi.exponent_in(1 + p, s_ord));
    IwasawaSeries<CycElem> sub = substitute_scale(lifted, zpsi);
    TwistCheck out;
    out.required = M - 4;
    out.agree = Zp::kExact;
    Zp uM = Zp(p, M, 1 + p);
    for (long k = 0; k <= 4; ++k) {
        CycElem x = k == 0 ? CycElem::zero(R)
                           : CycElem::from_zp(R, pow_zp(uM, k) - Zp::one(p, M));
        out.agree =
            std::min(out.agree, CycElem::agree_exponent(evaluate(sub, x), evaluate(direct, x)));
    }
    out.pass = out.agree >= out.required;
    return out;
}

}  // namespace iwasawa
