#include "iwasawa/cyclo.hpp"

#include <algorithm>

namespace iwasawa {

static mpz_class modred(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    return r;
}

std::shared_ptr<const CycRing> CycRing::make(long p, long r, long tame, long Wmax) {
    if (p < 3 || !is_prime_long(p)) throw std::invalid_argument("CycRing: p must be an odd prime");
    if (r < 0 || tame < 1 || tame % p == 0 || Wmax < 1)
        throw std::invalid_argument("CycRing: bad parameters");
    auto R = std::shared_ptr<CycRing>(new CycRing());
    R->p = p;
    R->r = r;
    R->tame = tame;
    R->Wmax = Wmax;
    R->pr = 1;
    for (long i = 0; i < r; ++i) R->pr *= p;
    R->e = r == 0 ? 1 : euler_phi(R->pr);
    R->d = tame == 1 ? 1 : mult_order(p, tame);
    R->n = R->e * R->d;
    mpz_class m = pow_p(p, Wmax);
    if (tame == 1) {
        R->g = PolyZ{m - 1, 1};
    } else {
        PolyZ f = cyclotomic_poly(tame);
        PolyZ fp = f, fw = f;
        for (auto& c : fp) c = modred(c, p);
        for (auto& c : fw) c = modred(c, m);
        auto facs = equal_degree_factor_fp(fp, p, R->d);
        R->g = hensel_lift_factor(fw, facs[0], p, Wmax);
    }
    // x^k reduced mod Phi_{p^r}: x^e = -sum_{t<p-1} x^{tP}, P = p^(r-1)
    long P = r >= 1 ? R->pr / p : 1;
    R->xpow_.assign(R->pr, std::vector<mpz_class>(R->e, mpz_class(0)));
    R->xpow_[0][0] = 1;
    for (long k = 1; k < R->pr; ++k) {
        std::vector<mpz_class>& cur = R->xpow_[k];
        const std::vector<mpz_class>& prev = R->xpow_[k - 1];
        for (long i = 0; i + 1 < R->e; ++i) cur[i + 1] = prev[i];
        const mpz_class& top = prev[R->e - 1];
        if (top != 0)
            for (long t = 0; t < p - 1; ++t) cur[t * P] = modred(cur[t * P] - top, m);
    }
    return R;
}

CycElem CycElem::zero(RingPtr R) {
    CycElem z;
    z.R_ = std::move(R);
    z.prec_ = Zp::kExact;
    z.den_ = 0;
    z.c_.assign(z.R_->n, mpz_class(0));
    return z;
}

CycElem CycElem::one(RingPtr R, long prec) { return from_int(std::move(R), prec, 1); }

CycElem CycElem::from_int(RingPtr R, long prec, const mpz_class& v) {
    if (prec <= 0 || prec > R->Wmax) throw precision_error("CycElem: bad precision");
    CycElem z;
    z.R_ = std::move(R);
    z.prec_ = prec;
    z.den_ = 0;
    z.c_.assign(z.R_->n, mpz_class(0));
    z.c_[0] = modred(v, pow_p(z.R_->p, prec));
    return z;
}

CycElem CycElem::from_zp(RingPtr R, const Zp& z) {
    if (z.p() != R->p) throw std::invalid_argument("CycElem: mixed primes");
    if (z.is_exact_zero()) return zero(std::move(R));
    long den = z.den_exp();
    // numerator = z * p^den is integral with the raw residue of z
    Zp num = den == 0 ? z : z.mul_ratio(pow_p(z.p(), den), 1);
    CycElem r;
    r.R_ = std::move(R);
    r.prec_ = std::min(z.prec(), r.R_->Wmax - den);
    if (r.prec_ <= 0) throw precision_error("CycElem: precision exhausted");
    r.den_ = den;
    r.c_.assign(r.R_->n, mpz_class(0));
    r.c_[0] = modred(num.residue(), r.modulus());
    r.normalize();
    return r;
}

CycElem CycElem::monomial(RingPtr R, long prec, long i, long j) {
    if (i < 0 || i >= R->e || j < 0 || j >= R->d)
        throw std::invalid_argument("CycElem: monomial out of range");
    CycElem z = from_int(std::move(R), prec, 0);
    z.c_[i + z.R_->e * j] = 1;
    return z;
}

void CycElem::normalize() {
    if (is_exact_zero()) return;
    while (den_ > 0) {
        bool all = true;
        for (const auto& x : c_)
            if (x != 0 && !mpz_divisible_ui_p(x.get_mpz_t(), R_->p)) { all = false; break; }
        if (!all) break;
        for (auto& x : c_)
            if (x != 0) mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), R_->p);
        --den_;
    }
}

CycElem CycElem::operator-() const {
    CycElem r = *this;
    if (is_exact_zero()) return r;
    mpz_class m = modulus();
    for (auto& x : r.c_) x = x == 0 ? x : m - x;
    return r;
}

CycElem CycElem::operator+(const CycElem& o) const {
    if (!R_ || !o.R_ || R_ != o.R_) throw std::invalid_argument("CycElem: mixed rings");
    if (is_exact_zero()) return o;
    if (o.is_exact_zero()) return *this;
    CycElem r;
    r.R_ = R_;
    r.den_ = std::max(den_, o.den_);
    r.prec_ = std::min(prec_, o.prec_);
    if (r.prec_ <= 0) throw precision_error("CycElem::+: precision exhausted");
    mpz_class m = r.modulus();
    mpz_class sa = pow_p(R_->p, r.den_ - den_), sb = pow_p(R_->p, r.den_ - o.den_);
    r.c_.resize(R_->n);
    for (long i = 0; i < R_->n; ++i) r.c_[i] = modred(c_[i] * sa + o.c_[i] * sb, m);
    r.normalize();
    return r;
}

CycElem CycElem::operator-(const CycElem& o) const { return *this + (-o); }

CycElem CycElem::operator*(const CycElem& o) const {
    if (!R_ || !o.R_ || R_ != o.R_) throw std::invalid_argument("CycElem: mixed rings");
    if (is_exact_zero() || o.is_exact_zero()) return zero(R_);
    const CycRing& R = *R_;
    CycElem r;
    r.R_ = R_;
    r.den_ = den_ + o.den_;
    r.prec_ = std::min(prec_ + o.int_valuation(), o.prec_ + int_valuation());
    if (r.prec_ + r.den_ > R.Wmax) r.prec_ = R.Wmax - r.den_;
    if (r.prec_ <= 0) throw precision_error("CycElem::*: precision exhausted");
    mpz_class m = r.modulus();
    long we = 2 * R.e - 1, wd = 2 * R.d - 1;
    std::vector<mpz_class> w(we * wd, mpz_class(0));
    for (long j = 0; j < R.d; ++j)
        for (long i = 0; i < R.e; ++i) {
            const mpz_class& a = c_[i + R.e * j];
            if (a == 0) continue;
            for (long jj = 0; jj < R.d; ++jj)
                for (long ii = 0; ii < R.e; ++ii) {
                    const mpz_class& b = o.c_[ii + R.e * jj];
                    if (b == 0) continue;
                    w[(i + ii) + we * (j + jj)] += a * b;
                }
        }
    // reduce y-degree by monic g
    for (long jj = wd - 1; jj >= R.d; --jj)
        for (long ii = 0; ii < we; ++ii) {
            mpz_class& top = w[ii + we * jj];
            if (top == 0) continue;
            for (long k = 0; k < R.d; ++k)
                w[ii + we * (jj - R.d + k)] -= top * R.g[k];
            top = 0;
        }
    // reduce x-degree by Phi_{p^r}
    long P = R.r >= 1 ? R.pr / R.p : 1;
    for (long jj = 0; jj < R.d; ++jj)
        for (long ii = we - 1; ii >= R.e; --ii) {
            mpz_class& top = w[ii + we * jj];
            if (top == 0) continue;
            for (long t = 0; t < R.p - 1; ++t)
                w[(ii - R.e + t * P) + we * jj] -= top;
            top = 0;
        }
    r.c_.resize(R.n);
    for (long j = 0; j < R.d; ++j)
        for (long i = 0; i < R.e; ++i) r.c_[i + R.e * j] = modred(w[i + we * j], m);
    r.normalize();
    return r;
}

CycElem CycElem::mul_ratio(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw std::invalid_argument("CycElem::mul_ratio: zero denominator");
    if (is_exact_zero()) return *this;
    if (num == 0) return zero(R_);
    mpz_class n = num, d = den;
    long cap = prec_ + den_ + 64;
    long p = R_->p;
    long vn = valp(n, p, cap), vd = valp(d, p, cap);
    mpz_class pe = pow_p(p, vn);
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), pe.get_mpz_t());
    pe = pow_p(p, vd);
    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), pe.get_mpz_t());
    long s = vn - vd;
    CycElem r;
    r.R_ = R_;
    r.prec_ = prec_ + s;
    r.den_ = s < 0 ? den_ - s : den_;
    // ring structure constants are only stored mod p^Wmax
    if (r.prec_ + r.den_ > R_->Wmax) r.prec_ = R_->Wmax - r.den_;
    if (r.prec_ <= 0) throw precision_error("CycElem::mul_ratio: precision exhausted");
    mpz_class m = r.modulus();
    mpz_class f = modred(n, m) * inv_mod(modred(d, m), m) % m;
    if (s > 0) f = f * pow_p(p, s) % m;
    r.c_.resize(R_->n);
    for (long i = 0; i < R_->n; ++i) r.c_[i] = modred(c_[i] * f, m);
    r.normalize();
    return r;
}

long CycElem::int_valuation() const {
    if (is_exact_zero()) return Zp::kExact;
    long cap = prec_ + den_;
    long v = cap;
    for (const auto& x : c_) {
        if (x == 0) continue;
        v = std::min(v, valp(x, R_->p, cap));
        if (v == 0) break;
    }
    return v - den_;
}

bool CycElem::is_zero_at_precision() const {
    return is_exact_zero() || int_valuation() >= prec_;
}

bool CycElem::is_unit() const {
    if (is_exact_zero()) return false;
    CycElem t = *this;
    t.normalize();
    if (t.den_ != 0) return false;
    // reduce modulo (p, x - 1): a nonzero image in F_p[y]/(g) is a unit
    const CycRing& R = *R_;
    for (long j = 0; j < R.d; ++j) {
        mpz_class s = 0;
        for (long i = 0; i < R.e; ++i) s += t.c_[i + R.e * j];
        if (s % R.p != 0) return true;
    }
    return false;
}

CycElem CycElem::div_exact_p_pow(long k) const {
    if (k == 0) return *this;
    if (k < 0) throw std::invalid_argument("CycElem::div_exact_p_pow: negative exponent");
    if (is_exact_zero()) return *this;
    if (den_ != 0) throw std::logic_error("CycElem::div_exact_p_pow: element has a denominator");
    if (int_valuation() < k)
        throw precision_error("CycElem::div_exact_p_pow: valuation smaller than divisor");
    CycElem r = *this;
    r.prec_ = prec_ - k;
    if (r.prec_ <= 0) throw precision_error("CycElem::div_exact_p_pow: precision exhausted");
    mpz_class pe = pow_p(R_->p, k);
    for (auto& x : r.c_)
        if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pe.get_mpz_t());
    return r;
}

CycElem CycElem::shift_down(long k) const {
    if (is_exact_zero() || k == 0) return *this;
    CycElem r = *this;
    r.den_ += k;
    r.prec_ -= k;
    if (r.prec_ <= 0) throw precision_error("CycElem::shift_down: precision exhausted");
    r.normalize();
    return r;
}

CycElem CycElem::with_prec(long newPrec) const {
    if (newPrec <= 0) throw precision_error("CycElem::with_prec: nonpositive precision");
    if (is_exact_zero()) {
        CycElem r = *this;
        r.prec_ = newPrec;
        return r;
    }
    if (newPrec >= prec_) return *this;
    CycElem r = *this;
    r.prec_ = newPrec;
    mpz_class m = r.modulus();
    for (auto& x : r.c_) x = modred(x, m);
    r.normalize();
    return r;
}

CycElem CycElem::require_integral(const char* what) const {
    if (is_exact_zero()) return *this;
    CycElem r = *this;
    r.normalize();
    if (r.den_ != 0)
        throw precision_error(std::string(what) + ": non-integral value (denominator p^" +
                              std::to_string(r.den_) + ")");
    return r;
}

CycElem CycElem::galois_ramified(long c) const {
    if (is_exact_zero()) return *this;
    const CycRing& R = *R_;
    if (R.r == 0) return *this;
    long cm = ((c % R.pr) + R.pr) % R.pr;
    if (gcd_long(cm, R.pr) != 1)
        throw std::invalid_argument("CycElem::galois_ramified: exponent not a unit");
    CycElem r = *this;
    mpz_class m = modulus();
    std::fill(r.c_.begin(), r.c_.end(), mpz_class(0));
    for (long j = 0; j < R.d; ++j)
        for (long i = 0; i < R.e; ++i) {
            const mpz_class& a = c_[i + R.e * j];
            if (a == 0) continue;
            const auto& xp = R.xpow(i * cm);
            for (long t = 0; t < R.e; ++t)
                if (xp[t] != 0) r.c_[t + R.e * j] = modred(r.c_[t + R.e * j] + a * xp[t], m);
        }
    return r;
}

CycElem CycElem::trace_ramified() const {
    const CycRing& R = *R_;
    if (R.r == 0) return *this;
    CycElem s = zero(R_);
    for (long c = 1; c < R.pr; ++c) {
        if (c % R.p == 0) continue;
        s += galois_ramified(c);
    }
    return s;
}

long CycElem::agree_exponent(const CycElem& a, const CycElem& b) {
    return (a - b).int_valuation();
}

std::string CycElem::str() const {
    std::string s = "[";
    for (long i = 0; i < R_->n; ++i) {
        if (i) s += ", ";
        s += c_[i].get_str();
    }
    s += "]";
    if (den_ != 0) s += " / p^" + std::to_string(den_);
    return s;
}

// solve A v = rhs over Z/p^W by Gauss-Jordan; pivots must be units.
static std::vector<mpz_class> solve_linear(const std::vector<std::vector<mpz_class>>& cols,
                                           const std::vector<mpz_class>& rhs, long p,
                                           const mpz_class& m) {
    long n = static_cast<long>(rhs.size());
    // augmented row-major matrix [A | rhs]
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n + 1));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) M[i][j] = cols[j][i];
        M[i][n] = rhs[i];
    }
    for (long c = 0; c < n; ++c) {
        long piv = -1;
        for (long i = c; i < n; ++i)
            if (M[i][c] % p != 0) { piv = i; break; }
        if (piv < 0) throw precision_error("CycElem: matrix not invertible");
        std::swap(M[c], M[piv]);
        mpz_class inv = inv_mod(modred(M[c][c], m), m);
        for (long j = c; j <= n; ++j) M[c][j] = modred(M[c][j] * inv, m);
        for (long i = 0; i < n; ++i) {
            if (i == c || M[i][c] == 0) continue;
            mpz_class f = M[i][c];
            for (long j = c; j <= n; ++j) M[i][j] = modred(M[i][j] - f * M[c][j], m);
        }
    }
    std::vector<mpz_class> v(n);
    for (long i = 0; i < n; ++i) v[i] = M[i][n];
    return v;
}

CycElem CycElem::inv() const {
    if (is_exact_zero()) throw std::invalid_argument("CycElem::inv: exact zero");
    CycElem t = *this;
    t.normalize();
    long v = t.int_valuation();
    if (v >= t.prec_) throw precision_error("CycElem::inv: zero at working precision");
    long wprec = std::min(t.prec_ - v, R_->Wmax);
    long rprec = std::min(t.prec_ - 2 * v, R_->Wmax);
    if (rprec <= 0) throw precision_error("CycElem::inv: precision exhausted");
    const CycRing& R = *R_;
    // strip p^(v+den): residues of the unit part mod p^wprec
    mpz_class strip = pow_p(R.p, v + t.den_);
    mpz_class m = pow_p(R.p, wprec);
    CycElem u;
    u.R_ = R_;
    u.prec_ = wprec;
    u.den_ = 0;
    u.c_.resize(R.n);
    for (long i = 0; i < R.n; ++i) {
        mpz_class q = t.c_[i];
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), strip.get_mpz_t());
        u.c_[i] = modred(q, m);
    }
    if (!u.is_unit()) throw precision_error("CycElem::inv: not invertible");
    // columns of multiplication by u in the monomial basis
    std::vector<std::vector<mpz_class>> cols(R.n);
    CycElem cur = u;
    for (long j = 0; j < R.d; ++j) {
        CycElem rowStart = cur;
        for (long i = 0; i < R.e; ++i) {
            cols[i + R.e * j] = cur.c_;
            if (i + 1 < R.e) cur = cur * gen_x(R_, wprec);
        }
        if (j + 1 < R.d) cur = rowStart * gen_y(R_, wprec);
    }
    std::vector<mpz_class> rhs(R.n, mpz_class(0));
    rhs[0] = 1;
    std::vector<mpz_class> sol = solve_linear(std::move(cols), std::move(rhs), R.p, m);
    CycElem r;
    r.R_ = R_;
    r.prec_ = rprec;
    r.c_.resize(R.n);
    if (v >= 0) {
        r.den_ = v;
        mpz_class mm = r.modulus();
        for (long i = 0; i < R.n; ++i) r.c_[i] = modred(sol[i], mm);
    } else {
        r.den_ = 0;
        mpz_class mm = r.modulus();
        mpz_class sc = pow_p(R.p, -v);
        for (long i = 0; i < R.n; ++i) r.c_[i] = modred(sol[i] * sc, mm);
    }
    r.normalize();
    return r;
}

CycElem ring_pow(const CycElem& a, const mpz_class& k) {
    if (k < 0) return ring_pow(a.inv(), mpz_class(-k));
    CycElem r = CycElem::one(a.ring(), a.prec());
    CycElem b = a;
    mpz_class e = k;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

CycElem ring_zeta(RingPtr R, long prec, long m) {
    if (m <= 0) throw std::invalid_argument("ring_zeta: order must be positive");
    CycElem z = CycElem::one(R, prec);
    for (auto [l, k] : factorize(m)) {
        long lk = 1;
        for (int i = 0; i < k; ++i) lk *= l;
        CycElem part = CycElem::zero(R);
        if (l == R->p) {
            if (R->pr % lk != 0)
                throw std::invalid_argument("ring_zeta: p-power order exceeds the ring");
            part = ring_pow(CycElem::gen_x(R, prec), R->pr / lk);
        } else if (R->tame % lk == 0) {
            part = ring_pow(CycElem::gen_y(R, prec), R->tame / lk);
        } else if ((R->p - 1) % lk == 0) {
            Zp w = pow_zp(teichmuller(R->p, prec, primitive_root_odd(R->p)), (R->p - 1) / lk);
            part = CycElem::from_zp(R, w);
        } else {
            throw std::invalid_argument("ring_zeta: no root of unity of order " +
                                        std::to_string(lk) + " in this ring");
        }
        long b = inv_mod_long(((m / lk) % lk + lk) % lk, lk);
        z = z * ring_pow(part, b);
    }
    return z;
}

CycElem iwasawa_log_unit(const CycElem& u0) {
    CycElem u = u0.require_integral("iwasawa_log_unit");
    if (!u.is_unit()) throw std::invalid_argument("iwasawa_log_unit: not a unit");
    const CycRing& R = *u.ring();
    long W = u.prec();
    mpz_class K = pow_z(R.p, static_cast<unsigned long>(R.d)) - 1;
    if (R.r >= 1) K *= R.pr;
    CycElem beta = ring_pow(u, K);
    CycElem gamma = beta - CycElem::one(u.ring(), W);
    if (!gamma.is_zero_at_precision() && gamma.int_valuation() < 1)
        throw std::logic_error("iwasawa_log_unit: series argument not small");
    CycElem sum = CycElem::zero(u.ring());
    CycElem tp = CycElem::one(u.ring(), W);
    long cap = 4 * W + R.pr + 16;
    for (long n = 1; n <= cap; ++n) {
        tp = tp * gamma;
        if (tp.is_zero_at_precision()) break;
        sum += tp.mul_ratio((n % 2) ? 1 : -1, n);
    }
    if (sum.is_exact_zero()) return sum;
    return sum.mul_ratio(1, K);
}

}  // namespace iwasawa
