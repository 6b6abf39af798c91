#include "iwasawa/characters.hpp"

#include <algorithm>
#include <map>

namespace iwasawa {

static long crt_pair(long r1, long m1, long r2, long m2) {
    // x = r1 mod m1, x = r2 mod m2, gcd(m1,m2)=1
    long d = ((r2 - r1) % m2 + m2) % m2;
    long x = r1 + m1 * (d * inv_mod_long(m1 % m2, m2) % m2);
    return x % (m1 * m2);
}

DirichletChar::DirichletChar(long modulus) : m_(modulus) {
    if (modulus <= 0) throw std::invalid_argument("DirichletChar: modulus must be positive");
    for (auto [q, a] : factorize(modulus)) {
        Factor f;
        f.q = q;
        f.a = a;
        f.qa = 1;
        for (int i = 0; i < a; ++i) f.qa *= q;
        f.e = 0;
        if (q == 2) {
            // (Z/2^a)^* = <-1> x <5>: a sign part and, for a >= 3, a cyclic part
            f.role = 1;
            f.gen = a == 1 ? 1 : f.qa - 1;
            f.n = a == 1 ? 1 : 2;
            fac_.push_back(f);
            if (a >= 3) {
                f.role = 2;
                f.gen = 5;
                f.n = f.qa / 4;
                fac_.push_back(f);
            }
        } else {
            f.role = 0;
            f.gen = primitive_root_odd(q);
            f.n = euler_phi(f.qa);
            fac_.push_back(f);
        }
    }
}

long DirichletChar::dlog(const Factor& f, long a) {
    static std::map<long, std::vector<long>> cache;
    long key = f.qa * 4 + f.role;
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<long> table(f.qa, -1);
        if (f.role == 0 || f.qa <= 4) {
            long x = 1 % f.qa;
            for (long k = 0; k < f.n; ++k) {
                table[x] = k;
                x = x * f.gen % f.qa;
            }
        } else {
            long n5 = f.qa / 4;
            for (long i = 0; i < 2; ++i) {
                long x = i ? f.qa - 1 : 1;
                for (long j = 0; j < n5; ++j) {
                    table[x] = f.role == 1 ? i : j;
                    x = x * 5 % f.qa;
                }
            }
        }
        it = cache.emplace(key, std::move(table)).first;
    }
    long r = ((a % f.qa) + f.qa) % f.qa;
    long k = it->second[r];
    if (k < 0) throw std::invalid_argument("DirichletChar: dlog of a non-unit");
    return k;
}

DirichletChar DirichletChar::from_exponents(long modulus, const std::vector<long>& exps) {
    DirichletChar c(modulus);
    if (exps.size() != c.fac_.size())
        throw std::invalid_argument("DirichletChar: exponent count mismatch");
    for (size_t i = 0; i < exps.size(); ++i)
        c.fac_[i].e = ((exps[i] % c.fac_[i].n) + c.fac_[i].n) % c.fac_[i].n;
    return c;
}

DirichletChar DirichletChar::from_conrey(long modulus, long conrey_n) {
    DirichletChar c(modulus);
    for (auto& f : c.fac_) f.e = dlog(f, conrey_n);  // dlog rejects non-units
    return c;
}

DirichletChar DirichletChar::omega_like(long p) {
    if (p < 3 || !is_prime_long(p))
        throw std::invalid_argument("DirichletChar: omega_like needs an odd prime");
    return from_exponents(p, {1});
}

long DirichletChar::order() const {
    long o = 1;
    for (const auto& f : fac_) o = lcm_long(o, f.n / gcd_long(f.n, f.e));
    return o;
}

long DirichletChar::conductor() const {
    long c = 1;
    long sign_e = 0;
    bool has_two = false;
    long five_o = 1;
    for (const auto& f : fac_) {
        if (f.q == 2) {
            has_two = true;
            if (f.role == 1) sign_e = f.e % f.n;
            if (f.role == 2) five_o = f.n / gcd_long(f.n, f.e);
            continue;
        }
        long o = f.n / gcd_long(f.n, f.e);
        if (o == 1) continue;
        long qb = f.q, phi = f.q - 1;
        while (phi % o != 0) { qb *= f.q; phi *= f.q; }
        c *= qb;
    }
    if (has_two) {
        if (five_o > 1) c *= 4 * five_o;
        else if (sign_e != 0) c *= 4;
    }
    return c;
}

bool DirichletChar::is_even() const {
    if (m_ == 1) return true;
    return exponent_in(m_ - 1, order()) == 0;
}

long DirichletChar::conrey() const {
    long x = 1, mod = 1;
    size_t i = 0;
    while (i < fac_.size()) {
        const Factor& f = fac_[i];
        long r = 1;
        for (long k = 0; k < f.e; ++k) r = r * f.gen % f.qa;
        if (i + 1 < fac_.size() && fac_[i + 1].qa == f.qa) {
            // sign and cyclic part of the same 2-power modulus
            const Factor& g = fac_[i + 1];
            for (long k = 0; k < g.e; ++k) r = r * g.gen % g.qa;
            ++i;
        }
        x = crt_pair(x, mod, r, f.qa);
        mod *= f.qa;
        ++i;
    }
    return x;
}

std::string DirichletChar::label() const {
    return std::to_string(m_) + "." + std::to_string(conrey());
}

long DirichletChar::exponent_in(long a, long E) const {
    long o = order();
    if (E % o != 0) throw std::invalid_argument("DirichletChar: order does not divide E");
    if (!is_unit_arg(a)) return -1;
    long k = 0;
    for (const auto& f : fac_) {
        if (f.e == 0) continue;
        long d = gcd_long(f.e, f.n);
        long oi = f.n / d;                  // order of this local factor
        long step = (f.e / d) % oi * (E / oi) % E;
        k = (k + dlog(f, a) % oi * step) % E;
    }
    return k;
}

DirichletChar DirichletChar::primitive() const {
    long c = conductor();
    DirichletChar r(c);
    for (auto& rf : r.fac_) {
        for (const auto& f : fac_)
            if (f.q == rf.q && f.role == rf.role) rf.e = f.e / (f.n / rf.n);
    }
    return r;
}

DirichletChar DirichletChar::induced_to(long new_modulus) const {
    if (new_modulus % conductor() != 0)
        throw std::invalid_argument("DirichletChar: new modulus not divisible by conductor");
    DirichletChar r(new_modulus);
    for (auto& rf : r.fac_) {
        for (const auto& f : fac_) {
            if (f.q != rf.q || f.role != rf.role || f.e == 0) continue;
            if (rf.n % f.n == 0) {
                rf.e = f.e * (rf.n / f.n);
            } else {
                long d = f.n / rf.n;  // lowering: exactness guaranteed by the conductor check
                rf.e = f.e / d;
            }
        }
    }
    return r;
}

DirichletChar DirichletChar::operator*(const DirichletChar& o) const {
    long M = lcm_long(m_, o.m_);
    DirichletChar a = induced_to(M), b = o.induced_to(M);
    DirichletChar r(M);
    for (size_t i = 0; i < r.fac_.size(); ++i)
        r.fac_[i].e = (a.fac_[i].e + b.fac_[i].e) % r.fac_[i].n;
    return r;
}

DirichletChar DirichletChar::inverse() const {
    DirichletChar r = *this;
    for (auto& f : r.fac_) f.e = (f.n - f.e) % f.n;
    return r;
}

DirichletChar DirichletChar::pow(long k) const {
    DirichletChar r = *this;
    for (auto& f : r.fac_) f.e = ((f.e * (k % f.n)) % f.n + f.n) % f.n;
    return r;
}

std::pair<DirichletChar, DirichletChar> DirichletChar::decompose_at_p(long p) const {
    const Factor* fp = nullptr;
    for (const auto& f : fac_)
        if (f.q == p) fp = &f;
    if (!fp) return {*this, DirichletChar(1)};
    long away = m_ / fp->qa;
    long n1 = p - 1, n2 = fp->n / n1;  // n2 = p^(a-1)
    long e_t, e_w;
    if (n2 == 1) {
        e_t = fp->e % n1;
        e_w = 0;
    } else {
        long alpha = inv_mod_long(n2 % n1, n1);
        long beta = inv_mod_long(n1 % n2, n2);
        e_t = fp->e % n1 * alpha % n1;
        e_w = fp->e % n2 * beta % n2;
    }
    DirichletChar tame(away * p);
    for (auto& rf : tame.fac_) {
        if (rf.q == p) {
            rf.e = e_t;
        } else {
            for (const auto& f : fac_)
                if (f.q == rf.q && f.role == rf.role) rf.e = f.e;
        }
    }
    DirichletChar wild(fp->qa);
    wild.fac_[0].e = e_w * n1 % fp->n;
    return {tame, wild};
}

bool DirichletChar::is_tame_at(long p) const { return conductor() % (p * p) != 0; }

bool DirichletChar::is_wild_at(long p) const {
    long c = conductor();
    while (c % p == 0) c /= p;
    if (c != 1) return false;
    long o = order();
    while (o % p == 0) o /= p;
    return o == 1;
}

std::vector<DirichletChar> DirichletChar::enumerate_mod(long m) {
    DirichletChar base(m);
    std::vector<DirichletChar> out;
    std::vector<long> exps(base.fac_.size(), 0);
    while (true) {
        out.push_back(from_exponents(m, exps));
        size_t i = exps.size();
        bool done = exps.empty();
        while (i > 0) {
            --i;
            if (++exps[i] < base.fac_[i].n) break;
            exps[i] = 0;
            if (i == 0) done = true;
        }
        if (done) return out;
    }
}

DirichletChar quadratic_char(long N) {
    if (N < 3)
        throw std::invalid_argument("no quadratic character of conductor " +
                                    std::to_string(N));
    DirichletChar found(1);
    bool have = false;
    for (const DirichletChar& c : DirichletChar::enumerate_mod(N)) {
        if (c.order() != 2 || c.conductor() != N) continue;
        if (have)
            throw std::invalid_argument("quadratic character mod " + std::to_string(N) +
                                        " is ambiguous");
        found = c;
        have = true;
    }
    if (!have)
        throw std::invalid_argument("no primitive quadratic character mod " +
                                    std::to_string(N));
    return found;
}

}  // namespace iwasawa
