#include "iwasawa/lvalues.hpp"

#include <map>

namespace iwasawa {

static const std::vector<mpz_class>& phi_poly(long E) {
    static std::map<long, std::vector<mpz_class>> cache;
    auto it = cache.find(E);
    if (it == cache.end()) it = cache.emplace(E, cyclotomic_poly(E)).first;
    return it->second;
}

CycQ CycQ::zero(long E) {
    CycQ r;
    r.E_ = E;
    r.c_.assign(phi_poly(E).size() - 1, mpq_class(0));
    return r;
}

CycQ CycQ::one(long E) { return from_q(E, 1); }

CycQ CycQ::from_q(long E, const mpq_class& v) {
    CycQ r = zero(E);
    r.c_[0] = v;
    return r;
}

CycQ CycQ::zeta_pow(long E, long k) {
    k = ((k % E) + E) % E;
    CycQ r = zero(E);
    long d = r.degree();
    if (k < d) {
        r.c_[k] = 1;
        return r;
    }
    // reduce T^k mod Phi_E by repeated substitution of the leading relation
    std::vector<mpq_class> poly(k + 1, mpq_class(0));
    poly[k] = 1;
    const auto& phi = phi_poly(E);
    for (long i = k; i >= d; --i) {
        if (poly[i] == 0) continue;
        mpq_class lead = poly[i];
        poly[i] = 0;
        for (long j = 0; j < d; ++j) poly[i - d + j] -= lead * phi[j];
    }
    for (long j = 0; j < d; ++j) r.c_[j] = poly[j];
    return r;
}

CycQ CycQ::operator+(const CycQ& o) const {
    if (E_ != o.E_) throw std::invalid_argument("CycQ: mixed levels");
    CycQ r = *this;
    for (long i = 0; i < degree(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CycQ CycQ::operator-(const CycQ& o) const { return *this + (-o); }

CycQ CycQ::operator-() const {
    CycQ r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycQ CycQ::operator*(const CycQ& o) const {
    if (E_ != o.E_) throw std::invalid_argument("CycQ: mixed levels");
    long d = degree();
    std::vector<mpq_class> prod(2 * d - 1, mpq_class(0));
    for (long i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (long j = 0; j < d; ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    const auto& phi = phi_poly(E_);
    for (long i = 2 * d - 2; i >= d; --i) {
        if (prod[i] == 0) continue;
        mpq_class lead = prod[i];
        prod[i] = 0;
        for (long j = 0; j < d; ++j) prod[i - d + j] -= lead * phi[j];
    }
    CycQ r = zero(E_);
    for (long j = 0; j < d; ++j) r.c_[j] = prod[j];
    return r;
}

CycQ CycQ::scale(const mpq_class& s) const {
    CycQ r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

bool CycQ::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycQ::operator==(const CycQ& o) const { return E_ == o.E_ && c_ == o.c_; }

bool CycQ::rational_value(mpq_class* out) const {
    for (long i = 1; i < degree(); ++i)
        if (c_[i] != 0) return false;
    if (out) *out = c_[0];
    return true;
}

std::string CycQ::str() const {
    std::string s;
    bool first = true;
    for (long i = 0; i < degree(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) s += " + ";
        s += c_[i].get_str();
        if (i > 0) s += "*z^" + std::to_string(i);
        first = false;
    }
    return first ? "0" : s;
}

const mpq_class& bernoulli(long n) {
    static std::vector<mpq_class> cache{mpq_class(1)};
    while (static_cast<long>(cache.size()) <= n) {
        long m = static_cast<long>(cache.size());
        // sum_{j=0}^{m} C(m+1,j) B_j = 0
        mpq_class s = 0;
        for (long j = 0; j < m; ++j) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), m + 1, j);
            s += mpq_class(b) * cache[j];
        }
        cache.push_back(-s / mpq_class(m + 1));
    }
    return cache[n];
}

mpq_class bernoulli_poly(long n, const mpq_class& x) {
    mpq_class s = 0, xp = 1;
    for (long j = n; j >= 0; --j) {
        // accumulate C(n,j) B_j x^(n-j); xp tracks x^(n-j)
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), n, j);
        s += mpq_class(b) * bernoulli(j) * xp;
        xp *= x;
    }
    return s;
}

CycQ gen_bernoulli(const DirichletChar& chi, long n) {
    DirichletChar c = chi.primitive();
    long F = c.conductor();
    long E = c.order();
    CycQ s = CycQ::zero(E);
    for (long a = 1; a <= F; ++a) {
        long k = c.exponent_in(a, E);
        if (k < 0) continue;
        s += CycQ::zeta_pow(E, k).scale(bernoulli_poly(n, mpq_class(a, F)));
    }
    mpz_class Fn = pow_z(F, static_cast<unsigned long>(n - 1));
    return s.scale(mpq_class(Fn));
}

CycQ dirichlet_L_minus(const DirichletChar& chi, long n) {
    if (n < 1) throw std::invalid_argument("dirichlet_L_minus: n must be >= 1");
    return gen_bernoulli(chi, n).scale(mpq_class(-1, n));
}

mpq_class partial_zeta0(long a, long F) {
    mpq_class r(F - 2 * a, 2 * F);
    r.canonicalize();
    return r;
}

CycQ gauss_sum_exact(const DirichletChar& chi) {
    DirichletChar c = chi.primitive();
    long F = c.conductor();
    long E = c.order();
    long L = lcm_long(E, F);
    CycQ s = CycQ::zero(L);
    for (long a = 1; a <= F; ++a) {
        long k = c.exponent_in(a, E);
        if (k < 0) continue;
        s += CycQ::zeta_pow(L, k * (L / E) + a * (L / F));
    }
    return s;
}

Zp embed_cycq(const CycQ& v, long p, long prec) {
    long E = v.level();
    if ((p - 1) % E != 0) throw std::invalid_argument("embed_cycq: level does not divide p-1");
    Zp root = pow_zp(teichmuller(p, prec, primitive_root_odd(p)), (p - 1) / E);
    Zp s = Zp::zero(p);
    Zp rp = Zp::one(p, prec);
    for (long i = 0; i < v.degree(); ++i) {
        if (v.coeff(i) != 0)
            s += rp.mul_ratio(v.coeff(i).get_num(), v.coeff(i).get_den());
        if (i + 1 < v.degree()) rp = rp * root;
    }
    return s;
}

Zp lp_value_tame(const DirichletChar& eta, long n, long p, long prec) {
    if (n < 1) throw std::invalid_argument("lp_value_tame: n must be >= 1");
    DirichletChar chi = (eta * DirichletChar::omega_like(p).pow(-n)).primitive();
    long E = chi.order();
    if ((p - 1) % E != 0)
        throw std::invalid_argument("lp_value_tame: character order does not divide p-1");
    long F = chi.conductor();
    long W = prec + n + 4;  // headroom for the p-denominators of B_n(a/F)
    Zp root = pow_zp(teichmuller(p, W, primitive_root_odd(p)), (p - 1) / E);
    Zp B = Zp::zero(p);
    for (long a = 1; a <= F; ++a) {
        long k = chi.exponent_in(a, E);
        if (k < 0) continue;
        mpq_class bv = bernoulli_poly(n, mpq_class(a, F));
        B += pow_zp(root, k).mul_ratio(bv.get_num(), bv.get_den());
    }
    B = B.mul_ratio(pow_z(F, static_cast<unsigned long>(n - 1)), 1);
    Zp L = B.mul_ratio(-1, n);
    // Euler factor 1 - chi(p) p^(n-1)
    Zp euler = Zp::one(p, W);
    long kp = chi.exponent_in(p, E);
    if (kp >= 0)
        euler = euler - pow_zp(root, kp).mul_ratio(pow_p(p, n - 1), 1);
    // the value is p-integral except for trivial eta, where v = -1 is possible
    Zp out = L * euler;
    return out.with_prec(std::min(out.prec(), prec));
}

CycElem lp_at_one_wild(const DirichletChar& psi, RingPtr R, long prec) {
    if (!R) throw std::invalid_argument("lp_at_one_wild: null ring");
    long p = R->p;
    DirichletChar ps = psi.primitive();
    if (ps.is_trivial() || !ps.is_even())
        throw std::invalid_argument("lp_at_one_wild: psi must be even and nontrivial");
    long f = ps.conductor();
    long rr = 0;
    long m = f;
    while (m % p == 0) {
        m /= p;
        ++rr;
    }
    if (m != 1 || rr < 1)
        throw std::invalid_argument("lp_at_one_wild: conductor must be a positive power of p");
    if (f > R->pr)
        throw std::invalid_argument("lp_at_one_wild: ring lacks a root of unity of order p^r");
    long W = std::min(prec + 2 * rr + 4, R->Wmax);
    long E = ps.order();
    CycElem zf = ring_zeta(R, W, f);
    CycElem zpsi = ring_zeta(R, W, E);
    CycElem tau = CycElem::zero(R);
    CycElem logsum = CycElem::zero(R);
    CycElem run = CycElem::one(R, W);  // 1 + zeta + ... + zeta^{a-1}
    CycElem zfa = zf;                  // zeta^a
    for (long a = 1; a < f; ++a) {
        long k = ps.exponent_in(a, E);
        if (k >= 0) {
            tau = tau + ring_pow(zpsi, k) * zfa;
            logsum = logsum + ring_pow(zpsi, (E - k) % E) * iwasawa_log_unit(run);
        }
        run = run + zfa;
        zfa = zfa * zf;
    }
    CycElem out = (tau * logsum).mul_ratio(-1, pow_p(p, rr));
    return out.with_prec(std::min(out.prec(), prec));
}

std::vector<CycQ> eisenstein_q_expansion(const DirichletChar& chi, long nTerms) {
    DirichletChar c = chi.primitive();
    if (c.is_even())
        throw std::invalid_argument("eisenstein_q_expansion: character must be odd");
    if (nTerms < 1) throw std::invalid_argument("eisenstein_q_expansion: nTerms must be >= 1");
    long E = c.order();
    std::vector<CycQ> out;
    out.reserve(static_cast<size_t>(nTerms));
    out.push_back(dirichlet_L_minus(c, 1).scale(mpq_class(1, 2)));
    for (long n = 1; n < nTerms; ++n) {
        CycQ s = CycQ::zero(E);
        for (long d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            long k = c.exponent_in(d, E);
            if (k >= 0) s += CycQ::zeta_pow(E, k);
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace iwasawa
