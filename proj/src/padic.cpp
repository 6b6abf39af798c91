#include "iwasawa/padic.hpp"

namespace iwasawa {

static mpz_class modred(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    return r;
}

static long floor_log_base(long n, long p) {
    long k = 0, q = p;
    while (q <= n) { q *= p; ++k; }
    return k;
}

Zp::Zp(long p, long prec, mpz_class value) : p_(p), prec_(prec), den_(0), res_(std::move(value)) {
    if (p < 3) throw std::invalid_argument("Zp: p must be an odd prime");
    if (prec <= 0) throw precision_error("Zp: nonpositive precision");
    res_ = modred(res_, pow_p(p_, prec_));
}

Zp Zp::zero(long p) {
    Zp z;
    z.p_ = p; z.prec_ = kExact; z.den_ = 0; z.res_ = 0;
    return z;
}

Zp Zp::one(long p, long prec) { return Zp(p, prec, 1); }

Zp Zp::from_ratio(long p, long prec, const mpz_class& num, const mpz_class& den) {
    return Zp::one(p, prec).mul_ratio(num, den);
}

const mpz_class& Zp::residue() const {
    if (den_ != 0) throw std::logic_error("Zp::residue: element has a denominator");
    return res_;
}

long Zp::valuation() const {
    if (is_exact_zero()) return kExact;
    if (res_ == 0) return prec_;
    return valp(res_, p_, prec_ + den_) - den_;
}

bool Zp::is_zero_at_precision() const { return is_exact_zero() || valuation() >= prec_; }

void Zp::normalize() {
    if (is_exact_zero()) return;
    if (res_ == 0) { den_ = 0; return; }
    while (den_ > 0 && mpz_divisible_ui_p(res_.get_mpz_t(), p_)) {
        mpz_divexact_ui(res_.get_mpz_t(), res_.get_mpz_t(), p_);
        --den_;
    }
}

Zp Zp::operator-() const {
    Zp r = *this;
    if (is_exact_zero()) return r;
    r.res_ = modred(-res_, pow_p(p_, prec_ + den_));
    return r;
}

Zp Zp::operator+(const Zp& o) const {
    if (p_ == 0) return o;
    if (o.p_ == 0) return *this;
    if (p_ != o.p_) throw std::invalid_argument("Zp: mixed primes");
    if (is_exact_zero()) return o;
    if (o.is_exact_zero()) return *this;
    long den = std::max(den_, o.den_);
    long prec = std::min(prec_, o.prec_);
    if (prec <= 0) throw precision_error("Zp::+: precision exhausted");
    mpz_class m = pow_p(p_, prec + den);
    Zp r;
    r.p_ = p_; r.den_ = den; r.prec_ = prec;
    r.res_ = modred(res_ * pow_p(p_, den - den_) + o.res_ * pow_p(p_, den - o.den_), m);
    r.normalize();
    return r;
}

Zp Zp::operator-(const Zp& o) const { return *this + (-o); }

Zp Zp::operator*(const Zp& o) const {
    if (p_ != o.p_) throw std::invalid_argument("Zp: mixed primes");
    if (is_exact_zero() || o.is_exact_zero()) return Zp::zero(p_);
    // error = x*eps_y + y*eps_x, so v(error) >= min(v(x) + prec_y, v(y) + prec_x)
    long prec = std::min(prec_ + o.valuation(), o.prec_ + valuation());
    long den = den_ + o.den_;
    if (prec <= 0) throw precision_error("Zp::*: precision exhausted");
    Zp r;
    r.p_ = p_; r.den_ = den; r.prec_ = prec;
    r.res_ = modred(res_ * o.res_, pow_p(p_, prec + den));
    r.normalize();
    return r;
}

Zp Zp::inv() const {
    if (is_exact_zero()) throw std::invalid_argument("Zp::inv: exact zero");
    long v = valuation();
    if (v >= prec_) throw precision_error("Zp::inv: zero at working precision");
    // value = p^v * w with w a unit known mod p^(prec-v)
    long wprec = prec_ - v;
    long rprec = prec_ - 2 * v;
    if (rprec <= 0) throw precision_error("Zp::inv: precision exhausted");
    mpz_class w = res_;
    mpz_class pe = pow_p(p_, v + den_);
    mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), pe.get_mpz_t());
    mpz_class u = inv_mod(modred(w, pow_p(p_, wprec)), pow_p(p_, wprec));
    Zp r;
    r.p_ = p_;
    r.prec_ = rprec;
    if (v >= 0) {
        r.den_ = v;
        r.res_ = modred(u, pow_p(p_, rprec + v));
    } else {
        r.den_ = 0;
        r.res_ = modred(u * pow_p(p_, -v), pow_p(p_, rprec));
    }
    r.normalize();
    return r;
}

Zp Zp::mul_ratio(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw std::invalid_argument("Zp::mul_ratio: zero denominator");
    if (is_exact_zero()) return *this;
    if (num == 0) return Zp::zero(p_);
    mpz_class n = num, d = den;
    long cap = prec_ + den_ + 64;
    long vn = valp(n, p_, cap), vd = valp(d, p_, cap);
    mpz_class pe = pow_p(p_, vn);
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), pe.get_mpz_t());
    pe = pow_p(p_, vd);
    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), pe.get_mpz_t());
    long s = vn - vd;  // value scales by p^s * (n/d), n and d now units
    Zp r;
    r.p_ = p_;
    r.prec_ = prec_ + s;
    r.den_ = s < 0 ? den_ - s : den_;
    if (r.prec_ <= 0) throw precision_error("Zp::mul_ratio: precision exhausted");
    mpz_class m = pow_p(p_, r.prec_ + r.den_);
    mpz_class t = res_;
    if (s > 0) t *= pow_p(p_, s);
    r.res_ = modred(t % m * modred(n, m) % m * inv_mod(modred(d, m), m), m);
    r.normalize();
    return r;
}

Zp Zp::div_exact_p_pow(long k) const {
    if (k == 0) return *this;
    if (k < 0) throw std::invalid_argument("div_exact_p_pow: negative exponent");
    if (is_exact_zero()) return *this;
    if (den_ != 0) throw std::logic_error("div_exact_p_pow: element has a denominator");
    if (valuation() < k)
        throw precision_error("div_exact_p_pow: valuation smaller than divisor");
    Zp r = *this;
    r.prec_ = prec_ - k;
    if (r.prec_ <= 0) throw precision_error("div_exact_p_pow: precision exhausted");
    if (res_ != 0) {
        mpz_class pe = pow_p(p_, k);
        mpz_divexact(r.res_.get_mpz_t(), r.res_.get_mpz_t(), pe.get_mpz_t());
    }
    return r;
}

Zp Zp::shift_down(long k) const {
    if (is_exact_zero() || k == 0) return *this;
    Zp r = *this;
    r.den_ += k;
    r.prec_ -= k;
    if (r.prec_ <= 0) throw precision_error("shift_down: precision exhausted");
    r.normalize();
    return r;
}

Zp Zp::with_prec(long newPrec) const {
    if (newPrec <= 0) throw precision_error("with_prec: nonpositive precision");
    if (is_exact_zero()) {
        Zp r;
        r.p_ = p_; r.prec_ = newPrec; r.den_ = 0; r.res_ = 0;
        return r;
    }
    if (newPrec >= prec_) return *this;
    Zp r = *this;
    r.prec_ = newPrec;
    r.res_ = modred(res_, pow_p(p_, newPrec + den_));
    r.normalize();
    return r;
}

Zp Zp::require_integral(const char* what) const {
    if (is_exact_zero()) return *this;
    Zp r = *this;
    r.normalize();
    if (r.den_ != 0)
        throw precision_error(std::string(what) + ": non-integral value (denominator p^" +
                              std::to_string(r.den_) + ")");
    return r;
}

long Zp::agree_exponent(const Zp& a, const Zp& b) { return (a - b).valuation(); }

std::string Zp::str() const {
    if (is_exact_zero()) return "0";
    if (den_ != 0) throw std::logic_error("Zp::str: element has a denominator");
    return res_.get_str();
}

Zp teichmuller(long p, long prec, const mpz_class& a) {
    if (p < 3) throw std::invalid_argument("teichmuller: p must be an odd prime");
    mpz_class m = pow_p(p, prec);
    mpz_class z = modred(a, m);
    if (z == 0 || mpz_divisible_ui_p(z.get_mpz_t(), p))
        throw std::invalid_argument("teichmuller: a divisible by p");
    // z <- z^p gains one digit of agreement per step
    for (long i = 0; i <= prec; ++i) {
        mpz_class nz;
        mpz_powm_ui(nz.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p), m.get_mpz_t());
        if (nz == z) return Zp(p, prec, z);
        z = nz;
    }
    throw std::logic_error("teichmuller: iteration did not stabilize");
}

Zp log_1unit(const Zp& x) {
    long p = x.p();
    long M = x.prec();
    Zp t = x - Zp::one(p, M);
    if (t.is_exact_zero()) return Zp::zero(p);
    t = t.require_integral("log_1unit");
    long vt = t.valuation();
    if (vt < 1) throw std::invalid_argument("log_1unit: argument is not a 1-unit");
    if (vt >= M) return Zp(p, M, 0);
    long nmax = 1;
    while (nmax * vt - floor_log_base(nmax, p) < M) ++nmax;
    ++nmax;
    // certified output precision: M - max v_p(n) over summed terms
    Zp sum = Zp::zero(p);
    Zp tp = Zp::one(p, M);
    for (long n = 1; n <= nmax; ++n) {
        tp = tp * t;
        sum += tp.mul_ratio((n % 2) ? 1 : -1, n);
    }
    return sum.require_integral("log_1unit");
}

Zp wild_log_ratio(const Zp& x) {
    long p = x.p();
    Zp lx = log_1unit(x);
    Zp lu = log_1unit(Zp(p, x.prec(), 1 + p));
    if (lx.is_exact_zero()) return Zp::zero(p);
    // both logs have valuation >= 1; the ratio lies in Z_p
    return (lx.shift_down(1) * lu.shift_down(1).inv()).require_integral("wild_log_ratio");
}

Zp pow_zp(const Zp& x, const mpz_class& e) {
    if (e < 0) return pow_zp(x.inv(), mpz_class(-e));
    Zp r = Zp::one(x.p(), x.prec());
    Zp b = x;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

}  // namespace iwasawa
