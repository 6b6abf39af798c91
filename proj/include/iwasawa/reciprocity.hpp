#pragma once

#include "iwasawa/characters.hpp"
#include "iwasawa/cyclo.hpp"

#include <vector>

namespace iwasawa {

// Shared precomputation for the pairing identity at fixed (chi, p, r): the
// ring Z_p[zeta_{p^r}, zeta_N], the logs of the cyclotomic units
// (1 - zeta^a)/(1 - zeta), the kernel elements z/(z-1) for z = zeta_N^g zeta^h,
// and the Galois traces of each log against each kernel element at the
// Teichmuller columns. None of this depends on the wild character, so one
// context serves an entire sweep over the characters of conductor p^r.
//
// chi must be odd, primitive of conductor N > 1 prime to p, with chi(p) = 1;
// r >= 2. z - 1 is invertible exactly because N > 1 puts z outside the
// prime-power roots of unity.
struct ReciprocityContext {
    DirichletChar chi;
    long N = 0;
    long p = 0;
    long r = 0;
    long pr = 0;  // p^r
    long W = 0;   // working precision carried by the cached elements
    RingPtr R;
    std::vector<long> unitsP;  // units mod p^r, ascending
    std::vector<long> unitsN;  // units mod N, ascending
    std::vector<long> idxP;    // residue mod p^r -> index into unitsP, -1 on non-units
    std::vector<long> teich;   // teich[k-1] = Teichmuller lift of k mod p^r, k = 1..p-1
    std::vector<CycElem> logc;                              // [ai] log((1-z^a)/(1-z))
    std::vector<std::vector<CycElem>> w;                    // [gi][hi] z/(z-1)
    std::vector<std::vector<std::vector<CycElem>>> traced;  // [ai][gi][k-1] tr(logc * w)
};

ReciprocityContext make_reciprocity_context(const DirichletChar& chi, long p, long r,
                                            long prec);

// One line of the sweep. lhs is the trace-expression side, rhs the signed
// L-value product (proposition normalization); they agree mod p^agree, with
// the same sign for every psi of a given (N, p, r). pre_equal records that the
// conjugate-sum form reproduced lhs exactly at the carried precision.
struct ReciprocityReport {
    long N = 0;
    long p = 0;
    long r = 0;
    DirichletChar psi;
    CycElem lhs;
    CycElem rhs;
    long sign = 0;
    long agree = 0;
    bool pre_equal = false;
};

// Fully traced pairing sum for an even nontrivial psi of conductor exactly p^r:
//     (p-1)/(p^r phi(Np)) * (sum_a psibar(a) log_p(1-zeta^a)) *
//     (sum_{g,h} chi(g^{-1}) psi(h) z/(z-1)),   z = zeta_N^g zeta_{p^r}^h.
// The log factor is computed through the cyclotomic units, as in
// lp_at_one_wild. Throws precision_error if the division by p^r phi(Np)
// exhausts the certified precision below p^r.
CycElem trace_pairing_sum(const ReciprocityContext& C, const DirichletChar& psi);

// The same quantity before collapsing the Galois average:
//     1/(p^r phi(Np)) * sum_{g mod N, t in (Z/p)^*} chi(g^{-1}) psi(omega(t)) *
//         sum_a psibar(a) Tr( log_p(1-zeta^a) * z_{g,omega(t)}/(z_{g,omega(t)}-1) ),
// Tr the ramified trace over (Z/p^r)^*. The character weights stay outside the
// trace: Tr is only O-linear, and conjugating psi-values through it would
// change the sum. (The displayed omega(t^{-1})...omega(t) weight pair
// multiplies to 1 and is folded.) Must equal trace_pairing_sum exactly.
CycElem pre_trace_pairing_sum(const ReciprocityContext& C, const DirichletChar& psi);

// Product side: -(tau(chibar)/phi(N)) * L_p(1, psi) * L_p(0, chi omega psibar),
// the last factor computed as the exact L(0, chi psibar). With
// corollary_variant the whole product carries the extra factor omega(N^{-1})
// coming from the zeta_{N p^r} normalization; the two variants differ by
// exactly that unit.
CycElem rhs_product(const ReciprocityContext& C, const DirichletChar& psi,
                    bool corollary_variant);

// Finite character-sum identity underneath the pairing computation, checked
// exactly at one ray alpha mod F, F = N p^r:
//     sum_{g,h} chi(g^{-1}) psi(h) z_{g,h}^alpha (F - 2 alpha)
//         = tau(chi^{-1}) tau(psi) chi(alpha) psibar(alpha) (F - 2 alpha),
// both Gauss sums formed inside the ring; the right side is zero when
// gcd(alpha, Np) > 1. F - 2 alpha is 2F times the partial zeta value at 0.
bool char_sum_identity_check(const ReciprocityContext& C, const DirichletChar& psi,
                             long alpha);

// Partial-fraction expansion of the pairing kernel at a root of unity z != 1
// with z^F = 1, in the cross-multiplied integral form
//     2F z = -(z - 1) sum_{alpha=1}^{F} (F - 2 alpha) z^alpha,
// i.e. z/(z-1) = -sum_alpha 2 zeta_alpha(0) z^alpha with the minus sign as the
// fixed convention; this avoids inverting z - 1, which is not a unit when z
// has prime-power order. Checked exactly.
bool partial_fraction_expansion_check(const CycElem& z, long F);

// Even nontrivial characters of conductor exactly p^r, in enumeration order.
std::vector<DirichletChar> even_wild_characters(long p, long r);

// Run the identity over every even nontrivial psi of conductor p^r. The global
// sign is fixed on the first character (by whichever of +-rhs matches lhs
// better) and held constant for the rest; per-line agreement is reported
// against that one sign. prec <= 0 selects the default working precision. The
// context overload reuses an existing precomputation.
std::vector<ReciprocityReport> reciprocity_sweep(const DirichletChar& chi, long p, long r,
                                                 long prec = 0);
std::vector<ReciprocityReport> reciprocity_sweep(const ReciprocityContext& C);

}  // namespace iwasawa
