#include "iwasawa/series.hpp"

namespace iwasawa {

long pi_valuation(const Zp& a) { return a.valuation(); }
long pi_ramification(const Zp&) { return 1; }

long pi_ramification(const CycElem& a) { return a.ring()->r >= 1 ? a.ring()->e : 1; }

// v_pi for pi = x - 1 in the ramified tower: pi^e = p * unit, so one pi is
// stripped per round by multiplying with pi^(e-1) * unit^{-1} and dividing by p.
// Returns a lower bound once the element vanishes at its tracked precision.
long pi_valuation(const CycElem& a) {
    if (a.is_exact_zero()) return Zp::kExact;
    RingPtr R = a.ring();
    if (R->r == 0) return a.int_valuation();
    long e = R->e;
    long base = -e * a.den_exp();
    CycElem z = a.den_exp() == 0 ? a : a.mul_ratio(pow_p(R->p, a.den_exp()), 1);
    long W = z.prec();
    CycElem pi = CycElem::gen_x(R, W) - CycElem::one(R, W);
    CycElem w = ring_pow(pi, mpz_class(e)).div_exact_p_pow(1);
    CycElem pistep = ring_pow(pi, mpz_class(e - 1)) * w.inv();
    long v = 0;
    while (true) {
        if (z.is_zero_at_precision()) return base + v + e * z.prec();
        long k = z.int_valuation();
        if (k >= 1) {
            v += e * k;
            z = z.div_exact_p_pow(k);
            continue;
        }
        CycElem t = z * pistep;
        if (t.is_zero_at_precision() || t.int_valuation() < 1) return base + v;
        z = t.div_exact_p_pow(1);
        v += 1;
    }
}

}  // namespace iwasawa
