#include "iwasawa/util.hpp"

#include <algorithm>
#include <numeric>

namespace iwasawa {

mpz_class pow_z(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class pow_p(long p, long e) {
    if (e < 0) throw std::invalid_argument("pow_p: negative exponent");
    return pow_z(mpz_class(p), static_cast<unsigned long>(e));
}

long valp(const mpz_class& n, long p, long cap) {
    if (n == 0) return cap;
    mpz_class r = n;
    long v = 0;
    while (v < cap && mpz_divisible_ui_p(r.get_mpz_t(), p)) {
        mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
        ++v;
    }
    return v;
}

long valp_long(long n, long p) {
    if (n == 0) throw std::invalid_argument("valp_long: zero");
    long v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
    if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<long, int>> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long euler_phi(long n) {
    long r = 1;
    for (auto [q, e] : factorize(n)) {
        long qe = 1;
        for (int i = 1; i < e; ++i) qe *= q;
        r *= qe * (q - 1);
    }
    return n == 1 ? 1 : r;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

long mult_order(long a, long n) {
    a %= n; if (a < 0) a += n;
    if (std::gcd(a, n) != 1) throw std::invalid_argument("mult_order: not a unit");
    long o = 1, x = a;
    while (x != 1 % n) {
        x = static_cast<long>((static_cast<__int128>(x) * a) % n);
        ++o;
        if (o > n) throw std::logic_error("mult_order: no order found");
    }
    return o;
}

long primitive_root_odd(long q) {
    if (!is_prime_long(q) || q == 2) throw std::invalid_argument("primitive_root_odd: q must be an odd prime");
    long q2 = q * q;
    for (long g = 2; g < q2; ++g) {
        if (g % q == 0) continue;
        // primitive mod q^2 implies primitive mod q^e for all e >= 1
        if (mult_order(g, q2) == q * (q - 1)) return g;
    }
    throw std::logic_error("primitive_root_odd: none found");
}

long inv_mod_long(long a, long n) {
    mpz_class r = inv_mod(mpz_class(a), mpz_class(n));
    return r.get_si();
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& n) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()))
        throw std::invalid_argument("inv_mod: not invertible");
    return r;
}

// exact division in Z[x], g monic divisor of f
static std::vector<mpz_class> poly_divexact_z(std::vector<mpz_class> f, const std::vector<mpz_class>& g) {
    std::vector<mpz_class> q(f.size() - g.size() + 1, 0);
    for (long i = static_cast<long>(f.size()) - 1; i >= static_cast<long>(g.size()) - 1; --i) {
        mpz_class c = f[i];
        if (c == 0) continue;
        long shift = i - (static_cast<long>(g.size()) - 1);
        q[shift] = c;
        for (size_t j = 0; j < g.size(); ++j) f[shift + j] -= c * g[j];
    }
    for (auto& c : f)
        if (c != 0) throw std::logic_error("poly_divexact_z: not divisible");
    return q;
}

std::vector<mpz_class> cyclotomic_poly(long n) {
    // x^n - 1 divided by all Phi_d, d | n, d < n
    std::vector<mpz_class> f(n + 1, 0);
    f[0] = -1; f[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d) continue;
        f = poly_divexact_z(f, cyclotomic_poly(d));
    }
    return f;
}

PolyZ poly_trim(PolyZ f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

static mpz_class modred(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    return r;
}

PolyZ poly_add(const PolyZ& a, const PolyZ& b, const mpz_class& m) {
    PolyZ r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        mpz_class s = (i < a.size() ? a[i] : mpz_class(0)) + (i < b.size() ? b[i] : mpz_class(0));
        r[i] = modred(s, m);
    }
    return poly_trim(r);
}

PolyZ poly_sub(const PolyZ& a, const PolyZ& b, const mpz_class& m) {
    PolyZ r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        mpz_class s = (i < a.size() ? a[i] : mpz_class(0)) - (i < b.size() ? b[i] : mpz_class(0));
        r[i] = modred(s, m);
    }
    return poly_trim(r);
}

PolyZ poly_mul(const PolyZ& a, const PolyZ& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    PolyZ r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& c : r) c = modred(c, m);
    return poly_trim(r);
}

std::pair<PolyZ, PolyZ> poly_divrem(const PolyZ& f, const PolyZ& g, const mpz_class& m) {
    if (g.empty() || g.back() != 1) throw std::invalid_argument("poly_divrem: divisor must be monic");
    PolyZ r = f;
    if (r.size() < g.size()) return {{}, poly_trim(r)};
    PolyZ q(r.size() - g.size() + 1, 0);
    for (long i = static_cast<long>(r.size()) - 1; i >= static_cast<long>(g.size()) - 1; --i) {
        mpz_class c = modred(r[i], m);
        if (c == 0) { r[i] = 0; continue; }
        long shift = i - (static_cast<long>(g.size()) - 1);
        q[shift] = c;
        for (size_t j = 0; j < g.size(); ++j) r[shift + j] = modred(r[shift + j] - c * g[j], m);
    }
    return {poly_trim(q), poly_trim(r)};
}

static PolyZ poly_make_monic_fp(PolyZ f, long p) {
    f = poly_trim(std::move(f));
    if (f.empty()) return f;
    mpz_class inv = inv_mod(f.back(), p);
    for (auto& c : f) c = modred(c * inv, p);
    return f;
}

PolyZ poly_gcd_fp(PolyZ a, PolyZ b, long p) {
    a = poly_make_monic_fp(std::move(a), p);
    b = poly_make_monic_fp(std::move(b), p);
    while (!b.empty()) {
        auto [q, r] = poly_divrem(a, b, p);
        (void)q;
        a = std::move(b);
        b = poly_make_monic_fp(std::move(r), p);
    }
    return a;
}

PolyZ poly_powmod_fp(const PolyZ& base, const mpz_class& e, const PolyZ& mod, long p) {
    PolyZ r{1};
    PolyZ b = poly_divrem(base, mod, p).second;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = poly_divrem(poly_mul(r, b, p), mod, p).second;
        b = poly_divrem(poly_mul(b, b, p), mod, p).second;
        k >>= 1;
    }
    return r;
}

namespace {
// deterministic splitting elements for Cantor-Zassenhaus
struct XorShift {
    uint64_t s;
    uint64_t next() {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        return s;
    }
};
}  // namespace

std::vector<PolyZ> equal_degree_factor_fp(const PolyZ& f, long p, long d) {
    std::vector<PolyZ> work{poly_make_monic_fp(f, p)}, done;
    long deg = static_cast<long>(work[0].size()) - 1;
    if (deg % d) throw std::invalid_argument("equal_degree_factor_fp: degree mismatch");
    mpz_class exp = (pow_z(mpz_class(p), d) - 1) / 2;  // p odd here
    XorShift rng{0x9e3779b97f4a7c15ull};
    while (!work.empty()) {
        PolyZ g = work.back();
        work.pop_back();
        if (static_cast<long>(g.size()) - 1 == d) { done.push_back(g); continue; }
        // random a of degree < deg(g); gcd(a^((p^d-1)/2) - 1, g) splits with prob >= 1/2
        PolyZ a(g.size() - 1, 0);
        for (auto& c : a) c = mpz_class(static_cast<unsigned long>(rng.next() % p));
        a = poly_trim(a);
        if (a.empty()) continue;
        PolyZ h = poly_powmod_fp(a, exp, g, p);
        h = poly_sub(h, PolyZ{1}, p);
        PolyZ gg = poly_gcd_fp(h, g, p);
        if (gg.empty() || gg.size() == 1 || gg.size() == g.size()) { work.push_back(g); continue; }
        work.push_back(gg);
        work.push_back(poly_divrem(g, gg, p).first);
    }
    std::sort(done.begin(), done.end(), [](const PolyZ& x, const PolyZ& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        for (size_t i = 0; i < x.size(); ++i)
            if (x[i] != y[i]) return x[i] < y[i];
        return false;
    });
    return done;
}

PolyZ hensel_lift_factor(const PolyZ& f, const PolyZ& g0, long p, long W) {
    // quadratic lift of f = g*h with s*g + t*h = 1
    mpz_class m = p;
    PolyZ g = poly_make_monic_fp(g0, p);
    PolyZ h = poly_divrem(f, g, p).first;
    h = poly_make_monic_fp(h, p);
    // extended euclid over F_p for s*g + t*h = 1
    PolyZ r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        mpz_class lead_inv = inv_mod(r1.back(), p);
        PolyZ r1m = r1;
        for (auto& c : r1m) c = modred(c * lead_inv, p);
        auto [q, r] = poly_divrem(r0, r1m, p);
        for (auto& c : q) c = modred(c * lead_inv, p);
        PolyZ s2 = poly_sub(s0, poly_mul(q, s1, p), p);
        PolyZ t2 = poly_sub(t0, poly_mul(q, t1, p), p);
        r0 = r1; r1 = poly_trim(r);
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    // r0 = c (unit constant): normalize bezout to s*g + t*h = 1
    if (r0.size() != 1) throw std::logic_error("hensel_lift_factor: factor not coprime");
    mpz_class cinv = inv_mod(r0[0], p);
    PolyZ s = s0, t = t0;
    for (auto& c : s) c = modred(c * cinv, p);
    for (auto& c : t) c = modred(c * cinv, p);

    long prec = 1;
    while (prec < W) {
        long nprec = std::min(2 * prec, W);
        mpz_class m2 = pow_p(p, nprec);
        // e = f - g*h
        PolyZ e = poly_sub(f, poly_mul(g, h, m2), m2);
        // g' = g + (t*e mod g), h' = h + s*e + q*h adjusted to keep f = g'h'
        auto [q1, r1_] = poly_divrem(poly_mul(t, e, m2), g, m2);
        PolyZ gnew = poly_add(g, r1_, m2);
        PolyZ hnew = poly_add(h, poly_add(poly_mul(s, e, m2), poly_mul(q1, h, m2), m2), m2);
        // refresh bezout: b = s*g' + t*h' - 1, then cancel b from (s, t)
        PolyZ b = poly_sub(poly_add(poly_mul(s, gnew, m2), poly_mul(t, hnew, m2), m2), PolyZ{1}, m2);
        auto [q2, r2_] = poly_divrem(poly_mul(t, b, m2), gnew, m2);
        PolyZ tnew = poly_sub(t, r2_, m2);
        PolyZ snew = poly_sub(s, poly_add(poly_mul(s, b, m2), poly_mul(q2, hnew, m2), m2), m2);
        g = gnew; h = hnew; s = snew; t = tnew;
        prec = nprec;
    }
    return g;
}

std::string mpz_str(const mpz_class& z) { return z.get_str(); }

}  // namespace iwasawa
