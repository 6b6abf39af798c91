#pragma once

#include <vector>

#include "iwasawa/kl.hpp"

// Independent reconstruction of a branch series: Newton interpolation through
// the nodes (u^k - 1, L_p(1-k, eta)), k = 1..D, at inflated precision. For an
// integral series the Newton coefficients are integral (divided differences
// of X^i at the nodes are complete homogeneous symmetric polynomials, each of
// valuation >= degree), so the dropped tail perturbs the X^i coefficient by
// at most p^(D-i): compare against min(M, tracked precision, D - i).
namespace iwasawa::testsupport {

inline IwasawaSeries<Zp> newton_branch_fit(const DirichletChar& eta0, long p, long D,
                                           long M) {
    DirichletChar eta = eta0.primitive();
    long vfact = 0;
    for (long m = 2; m <= D; ++m) vfact += valp_long(m, p);
    long W = M + D + vfact + 6;  // divided differences divide by u^k(u^m - 1)
    Zp u = Zp(p, W, 1 + p);
    bool pole = eta.is_trivial();
    std::vector<Zp> x, c;
    for (long k = 1; k <= D; ++k) {
        x.push_back(pow_zp(u, k) - Zp::one(p, W));
        Zp y = lp_value_tame(eta, k, p, W);
        c.push_back(pole ? y * x.back() : y);
    }
    for (long m = 1; m < D; ++m)
        for (long k = D - 1; k >= m; --k)
            c[k] = (c[k] - c[k - 1]) * (x[k] - x[k - m]).inv();
    // Horner over the Newton basis: P = c_0 + (X - x_0)(c_1 + (X - x_1)(...))
    std::vector<Zp> poly{c[D - 1]};
    for (long m = D - 2; m >= 0; --m) {
        poly.push_back(Zp::zero(p));
        for (long i = static_cast<long>(poly.size()) - 1; i >= 1; --i)
            poly[i] = poly[i - 1] - x[m] * poly[i];
        poly[0] = c[m] - x[m] * poly[0];
    }
    return IwasawaSeries<Zp>(std::move(poly));
}

}  // namespace iwasawa::testsupport
