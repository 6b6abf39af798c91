#include "iwasawa/reciprocity.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "iwasawa/kl.hpp"
#include "iwasawa/lvalues.hpp"
#include "iwasawa/util.hpp"

namespace iwasawa {

namespace {

// powers zeta^0 .. zeta^{E-1} of a root of unity of order E
std::vector<CycElem> zeta_powers(const CycElem& zE, long E, long prec) {
    std::vector<CycElem> out;
    out.reserve(static_cast<size_t>(E));
    CycElem v = CycElem::one(zE.ring(), prec);
    for (long k = 0; k < E; ++k) {
        out.push_back(v);
        if (k + 1 < E) v = v * zE;
    }
    return out;
}

DirichletChar require_wild_even(const ReciprocityContext& C, const DirichletChar& psi,
                                const char* who) {
    DirichletChar ps = psi.primitive();
    if (ps.is_trivial() || !ps.is_even() || ps.conductor() != C.pr)
        throw std::invalid_argument(std::string(who) +
                                    ": psi must be even nontrivial of conductor p^r");
    return ps;
}

}  // namespace

ReciprocityContext make_reciprocity_context(const DirichletChar& chi, long p, long r,
                                            long prec) {
    if (!is_prime_long(p) || p == 2)
        throw std::invalid_argument("make_reciprocity_context: p must be an odd prime");
    if (r < 2) throw std::invalid_argument("make_reciprocity_context: r must be >= 2");
    DirichletChar c = chi.primitive();
    long N = c.conductor();
    if (N <= 1 || c.is_even())
        throw std::invalid_argument("make_reciprocity_context: chi must be odd");
    if (N % p == 0)
        throw std::invalid_argument("make_reciprocity_context: cond(chi) must be prime to p");
    if (c.exponent_in(p, c.order()) != 0)
        throw std::invalid_argument("make_reciprocity_context: chi(p) = 1 is required");
    if (prec < r + 2)
        throw std::invalid_argument("make_reciprocity_context: working precision too small");

    ReciprocityContext C;
    C.chi = c;
    C.N = N;
    C.p = p;
    C.r = r;
    C.pr = pow_p(p, r).get_si();
    C.W = prec;
    C.R = CycRing::make(p, r, N, prec);

    C.idxP.assign(static_cast<size_t>(C.pr), -1);
    for (long a = 1; a < C.pr; ++a) {
        if (a % p == 0) continue;
        C.idxP[static_cast<size_t>(a)] = static_cast<long>(C.unitsP.size());
        C.unitsP.push_back(a);
    }
    for (long g = 1; g < N; ++g)
        if (gcd_long(g, N) == 1) C.unitsN.push_back(g);
    for (long k = 1; k < p; ++k)
        C.teich.push_back(teichmuller(p, r, k).residue().get_si());

    long W = C.W;
    CycElem z = ring_zeta(C.R, W, C.pr);
    CycElem zN = ring_zeta(C.R, W, N);
    CycElem one = CycElem::one(C.R, W);

    // logs of the cyclotomic units, through the geometric sums 1 + z + ... + z^{a-1}
    C.logc.reserve(C.unitsP.size());
    CycElem run = one;
    CycElem za = z;
    for (long a = 1; a < C.pr; ++a) {
        if (a % p != 0) C.logc.push_back(iwasawa_log_unit(run));
        run = run + za;
        za = za * z;
    }

    std::vector<CycElem> zh;
    zh.reserve(C.unitsP.size());
    for (long h : C.unitsP) zh.push_back(ring_pow(z, h));
    C.w.resize(C.unitsN.size());
    for (size_t gi = 0; gi < C.unitsN.size(); ++gi) {
        CycElem zg = ring_pow(zN, C.unitsN[gi]);
        C.w[gi].reserve(zh.size());
        for (const CycElem& xh : zh) {
            CycElem zz = zg * xh;
            C.w[gi].push_back(zz * (zz - one).inv());
        }
    }

    C.traced.resize(C.logc.size());
    for (size_t ai = 0; ai < C.logc.size(); ++ai) {
        C.traced[ai].resize(C.unitsN.size());
        for (size_t gi = 0; gi < C.unitsN.size(); ++gi) {
            auto& row = C.traced[ai][gi];
            row.reserve(C.teich.size());
            for (long t : C.teich)
                row.push_back(
                    (C.logc[ai] * C.w[gi][static_cast<size_t>(C.idxP[static_cast<size_t>(t)])])
                        .trace_ramified());
        }
    }
    return C;
}

CycElem trace_pairing_sum(const ReciprocityContext& C, const DirichletChar& psi) {
    DirichletChar ps = require_wild_even(C, psi, "trace_pairing_sum");
    long E = ps.order();
    long Ec = C.chi.order();
    std::vector<CycElem> pv = zeta_powers(ring_zeta(C.R, C.W, E), E, C.W);
    std::vector<CycElem> cv = zeta_powers(ring_zeta(C.R, C.W, Ec), Ec, C.W);

    CycElem lam = CycElem::zero(C.R);
    for (size_t ai = 0; ai < C.unitsP.size(); ++ai) {
        long k = ps.exponent_in(C.unitsP[ai], E);
        lam += pv[static_cast<size_t>((E - k) % E)] * C.logc[ai];
    }
    CycElem ds = CycElem::zero(C.R);
    for (size_t gi = 0; gi < C.unitsN.size(); ++gi) {
        long kc = C.chi.exponent_in(C.unitsN[gi], Ec);
        CycElem inner = CycElem::zero(C.R);
        for (size_t hi = 0; hi < C.unitsP.size(); ++hi)
            inner += pv[static_cast<size_t>(ps.exponent_in(C.unitsP[hi], E))] * C.w[gi][hi];
        ds += cv[static_cast<size_t>((Ec - kc) % Ec)] * inner;
    }
    long phiNp = euler_phi(C.N) * (C.p - 1);
    CycElem out = (lam * ds).mul_ratio(C.p - 1, mpz_class(C.pr) * phiNp);
    if (out.prec() < C.r)
        throw precision_error("trace_pairing_sum: certified precision fell below p^r");
    return out;
}

CycElem pre_trace_pairing_sum(const ReciprocityContext& C, const DirichletChar& psi) {
    DirichletChar ps = require_wild_even(C, psi, "pre_trace_pairing_sum");
    long E = ps.order();
    long Ec = C.chi.order();
    std::vector<CycElem> pv = zeta_powers(ring_zeta(C.R, C.W, E), E, C.W);
    std::vector<CycElem> cv = zeta_powers(ring_zeta(C.R, C.W, Ec), Ec, C.W);

    CycElem acc = CycElem::zero(C.R);
    for (size_t gi = 0; gi < C.unitsN.size(); ++gi) {
        long kc = C.chi.exponent_in(C.unitsN[gi], Ec);
        CycElem cg = cv[static_cast<size_t>((Ec - kc) % Ec)];
        for (size_t k = 0; k < C.teich.size(); ++k) {
            long t = C.teich[k];
            CycElem inner = CycElem::zero(C.R);
            for (size_t ai = 0; ai < C.unitsP.size(); ++ai) {
                long ka = ps.exponent_in(C.unitsP[ai], E);
                inner += pv[static_cast<size_t>((E - ka) % E)] * C.traced[ai][gi][k];
            }
            acc += cg * pv[static_cast<size_t>(ps.exponent_in(t, E))] * inner;
        }
    }
    long phiNp = euler_phi(C.N) * (C.p - 1);
    CycElem out = acc.mul_ratio(1, mpz_class(C.pr) * phiNp);
    if (out.prec() < C.r)
        throw precision_error("pre_trace_pairing_sum: certified precision fell below p^r");
    return out;
}

CycElem rhs_product(const ReciprocityContext& C, const DirichletChar& psi,
                    bool corollary_variant) {
    DirichletChar ps = require_wild_even(C, psi, "rhs_product");
    CycElem tauc = embed_cycq_ring(gauss_sum_exact(C.chi.inverse()), C.R, C.W);
    CycElem lp1 = lp_at_one_wild(ps, C.R, C.W);
    CycElem t0 =
        embed_cycq_ring(dirichlet_L_minus((C.chi * ps.inverse()).primitive(), 1), C.R, C.W);
    CycElem out = (tauc * lp1 * t0).mul_ratio(-1, euler_phi(C.N));
    if (corollary_variant)
        out = out * CycElem::from_zp(C.R, teichmuller(C.p, C.W, C.N).inv());
    return out;
}

bool char_sum_identity_check(const ReciprocityContext& C, const DirichletChar& psi,
                             long alpha) {
    DirichletChar ps = require_wild_even(C, psi, "char_sum_identity_check");
    long E = ps.order();
    long Ec = C.chi.order();
    long F = C.N * C.pr;
    long a0 = ((alpha - 1) % F + F) % F + 1;  // representative in 1..F
    std::vector<CycElem> pv = zeta_powers(ring_zeta(C.R, C.W, E), E, C.W);
    std::vector<CycElem> cv = zeta_powers(ring_zeta(C.R, C.W, Ec), Ec, C.W);
    std::vector<CycElem> zpow = zeta_powers(ring_zeta(C.R, C.W, C.pr), C.pr, C.W);
    std::vector<CycElem> zNpow = zeta_powers(ring_zeta(C.R, C.W, C.N), C.N, C.W);

    CycElem lhs = CycElem::zero(C.R);
    for (long g : C.unitsN) {
        long kc = C.chi.exponent_in(g, Ec);
        CycElem cgz = cv[static_cast<size_t>((Ec - kc) % Ec)] *
                      zNpow[static_cast<size_t>(g * a0 % C.N)];
        for (long h : C.unitsP)
            lhs += cgz * (pv[static_cast<size_t>(ps.exponent_in(h, E))] *
                          zpow[static_cast<size_t>(h * a0 % C.pr)]);
    }
    lhs = lhs.mul_ratio(F - 2 * a0, 1);

    CycElem rhs = CycElem::zero(C.R);
    if (gcd_long(a0, C.N * C.p) == 1) {
        CycElem tauc = CycElem::zero(C.R);
        for (long g : C.unitsN) {
            long kc = C.chi.exponent_in(g, Ec);
            tauc += cv[static_cast<size_t>((Ec - kc) % Ec)] * zNpow[static_cast<size_t>(g)];
        }
        CycElem taup = CycElem::zero(C.R);
        for (long h : C.unitsP)
            taup += pv[static_cast<size_t>(ps.exponent_in(h, E))] *
                    zpow[static_cast<size_t>(h)];
        long kca = C.chi.exponent_in(a0, Ec);
        long kpa = ps.exponent_in(a0, E);
        rhs = tauc * taup * cv[static_cast<size_t>(kca)] *
              pv[static_cast<size_t>((E - kpa) % E)];
        rhs = rhs.mul_ratio(F - 2 * a0, 1);
    }
    return (lhs - rhs).is_zero_at_precision();
}

bool partial_fraction_expansion_check(const CycElem& z, long F) {
    if (F < 1)
        throw std::invalid_argument("partial_fraction_expansion_check: F must be >= 1");
    RingPtr R = z.ring();
    if (!R) throw std::invalid_argument("partial_fraction_expansion_check: null ring");
    CycElem one = CycElem::one(R, z.prec());
    if ((z - one).is_zero_at_precision())
        throw std::invalid_argument("partial_fraction_expansion_check: z must differ from 1");
    CycElem acc = CycElem::zero(R);
    CycElem zp = z;
    for (long a = 1; a <= F; ++a) {
        acc += zp.mul_ratio(F - 2 * a, 1);
        zp = zp * z;
    }
    // the loop leaves zp = z^{F+1}, so z^F = 1 is equivalent to zp = z
    if (!(zp - z).is_zero_at_precision())
        throw std::invalid_argument("partial_fraction_expansion_check: z^F != 1");
    CycElem diff = (z - one) * acc + z.mul_ratio(2 * F, 1);
    return diff.is_zero_at_precision();
}

std::vector<DirichletChar> even_wild_characters(long p, long r) {
    if (!is_prime_long(p) || p == 2 || r < 1)
        throw std::invalid_argument("even_wild_characters: need an odd prime and r >= 1");
    long pr = pow_p(p, r).get_si();
    std::vector<DirichletChar> out;
    for (const DirichletChar& c : DirichletChar::enumerate_mod(pr))
        if (!c.is_trivial() && c.is_even() && c.conductor() == pr) out.push_back(c);
    return out;
}

std::vector<ReciprocityReport> reciprocity_sweep(const DirichletChar& chi, long p, long r,
                                                 long prec) {
    long W = prec > 0 ? prec : 8 * r + 24;
    return reciprocity_sweep(make_reciprocity_context(chi, p, r, W));
}

std::vector<ReciprocityReport> reciprocity_sweep(const ReciprocityContext& C) {
    long p = C.p;
    long r = C.r;
    std::vector<ReciprocityReport> out;
    long sign = 0;
    for (const DirichletChar& ps : even_wild_characters(p, r)) {
        ReciprocityReport rep;
        rep.N = C.N;
        rep.p = p;
        rep.r = r;
        rep.psi = ps;
        rep.lhs = trace_pairing_sum(C, ps);
        CycElem pre = pre_trace_pairing_sum(C, ps);
        rep.pre_equal = (rep.lhs - pre).is_zero_at_precision();
        CycElem rhsP = rhs_product(C, ps, false);
        if (sign == 0) {
            long dp = CycElem::agree_exponent(rep.lhs, rhsP);
            long dm = CycElem::agree_exponent(rep.lhs, -rhsP);
            sign = dm >= dp ? -1 : 1;
        }
        rep.sign = sign;
        rep.rhs = sign < 0 ? -rhsP : rhsP;
        rep.agree = CycElem::agree_exponent(rep.lhs, rep.rhs);
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace iwasawa
