#pragma once

#include "iwasawa/characters.hpp"
#include "iwasawa/cyclo.hpp"
#include "iwasawa/lvalues.hpp"
#include "iwasawa/series.hpp"

namespace iwasawa {

// Branch series of the p-adic L-function in the chart at u = 1 + p:
//     L_p(1 - s, eta) = G(u^s - 1)
// for an even character eta with values in Z_p (order dividing p-1). For
// trivial eta the function has a simple pole at s = 0, and `series` is the
// numerator N with L_p(1 - s, 1) = N(u^s - 1)/(u^s - 1); `pole` marks this.
// Coefficients are integral, reported exactly mod p^M, X-truncated at D.
struct KLBranch {
    DirichletChar eta;
    long p = 0;
    bool pole = false;
    IwasawaSeries<Zp> series;
};

// Twisted Bernoulli power-sum construction over a = 1..F coprime to F, with
// F = (prime-to-p part of the conductor) * p^max(2, v_p(conductor)). The sum
// is exact at every arithmetic point s = n, so unless `verify` is cleared the
// result is checked in-library against the interpolated values at s = 1..5
// to tolerance p^(M-3). Throws std::invalid_argument for odd eta and for
// orders not dividing p-1 (which includes every wild character).
KLBranch kl_series(const DirichletChar& eta, long p, long D = 24, long M = 12,
                   bool verify = true);

// Working precision the construction carries before cutting to mod p^M; ring
// variant callers must build their CycRing at least this deep. wild_exp is
// v_p of the conductor (0 or 1 for tame characters).
long kl_working_prec(long p, long D, long M, long wild_exp = 0);

// Ring-valued variant for nontrivial even chi whose order need not divide
// p-1, e.g. with a wild p-part. R must contain a root of unity of order
// ord(chi) and be at least kl_working_prec deep. Same in-library check, with
// the reference values materialized in R by exact Bernoulli sums.
IwasawaSeries<CycElem> kl_series_in_ring(const DirichletChar& chi, RingPtr R,
                                         long D = 24, long M = 12,
                                         bool verify = true);

// zeta_(level) -> ring_zeta(R, prec, level), coefficients embedded exactly;
// p-power denominators are tracked, not forbidden.
CycElem embed_cycq_ring(const CycQ& v, RingPtr R, long prec);

// L_p(1-n, eta) for n >= 1 materialized in R:
//     L(1-n, eta omega^-n) * (1 - (eta omega^-n)(p) p^(n-1)),
// generalized Bernoulli sums evaluated exactly before embedding. Wild eta is
// fine; the Euler factor is then 1.
CycElem lp_value_in_ring(const DirichletChar& eta, long n, RingPtr R, long prec);

struct TwistCheck {
    bool pass = false;
    long agree = 0;     // min p-adic agreement exponent over the sample points
    long required = 0;  // M - 4
};

// Check the wild twist identity G_{eta psi}(X) = G_eta(psi(u)(1+X) - 1) at
// the sample points X = u^k - 1, k = 0..4, inside Z_p[zeta_{p^r}]: left side
// built directly from eta*psi, right side by scaling substitution in the
// Z_p-valued eta series. eta must be even nontrivial of order dividing p-1,
// psi wild of conductor p^r.
TwistCheck kl_twist_check(const DirichletChar& eta, const DirichletChar& psi,
                          long p, long D = 24, long M = 12);

}  // namespace iwasawa
