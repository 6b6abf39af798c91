#pragma once

#include "iwasawa/kl.hpp"

namespace iwasawa {

// Branch decomposition of the p-adic L-function attached to the weight-one
// theta series of the odd quadratic character quad. On branch j the function
// factors through the two Kubota-Leopoldt series
//
//   W_j(X) = G_{omega^j}(X) * G_{quad omega^{1-j}}(u/(1+X) - 1),   u = 1 + p,
//
// the second factor evaluated through the reciprocal involution of the
// algebra, which preserves mu and lambda. On branch 0 the first factor is the
// pole numerator, so the stored series is X times the actual function there.
// Odd j pairs characters of the wrong parity and the branch is identically
// zero; such branches come back with exact_zero set and an exact-zero series.
struct WeightOneBranch {
    long p = 0;
    long j = 0;
    bool exact_zero = false;   // odd j: the branch vanishes identically
    bool exceptional = false;  // j = 0 and quad(p) = 1: forced zero at X = 0
    IwasawaSeries<Zp> series;
    // invariants predicted by additivity over the two factors;
    // invariants(series) recovers them analytically
    long predicted_mu = 0;
    long predicted_lambda = 0;
};

// quad must be an odd quadratic character of conductor prime to p; 0 <= j < p-1.
WeightOneBranch weight_one_branch(const DirichletChar& quad, long p, long j, long D = 24,
                                  long M = 12);

}  // namespace iwasawa
