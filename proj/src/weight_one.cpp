#include "iwasawa/weight_one.hpp"

namespace iwasawa {

WeightOneBranch weight_one_branch(const DirichletChar& quad, long p, long j, long D, long M) {
    if (p < 3 || !is_prime_long(p))
        throw std::invalid_argument("weight_one_branch: p must be an odd prime");
    if (quad.order() != 2 || quad.is_even())
        throw std::invalid_argument("weight_one_branch: character must be odd quadratic");
    if (quad.conductor() % p == 0)
        throw std::invalid_argument("weight_one_branch: conductor must be prime to p");
    if (j < 0 || j >= p - 1)
        throw std::invalid_argument("weight_one_branch: branch index out of range");
    if (j % 2 != 0)
        return {p, j, true, false, IwasawaSeries<Zp>::zeros(Zp::zero(p), D), 0, 0};

    DirichletChar om = DirichletChar::omega_like(p);
    KLBranch b1 = kl_series(om.pow(j).primitive(), p, D, M);
    KLBranch b2 = kl_series((quad * om.pow(1 - j)).primitive(), p, D, M);
    Zp u(p, M + 6, 1 + p);
    IwasawaSeries<Zp> prod = b1.series * substitute_reciprocal(b2.series, u);
    SeriesInvariants i1 = invariants(b1.series);
    SeriesInvariants i2 = invariants(b2.series);
    bool exceptional = j == 0 && quad.exponent_in(p, 2) == 0;
    return {p,      j,
            false,  exceptional,
            std::move(prod),
            i1.mu + i2.mu,
            i1.lambda + i2.lambda};
}

}  // namespace iwasawa
