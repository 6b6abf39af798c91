#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace iwasawa {

// Thrown when an operation cannot certify the requested p-adic precision.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when external data (LMFDB payload, fixture, cache) is missing or malformed.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

mpz_class pow_z(const mpz_class& b, unsigned long e);
mpz_class pow_p(long p, long e);  // p^e, e >= 0

// v_p(n) for n != 0; returns `cap` when p^cap | n.
long valp(const mpz_class& n, long p, long cap);
long valp_long(long n, long p);

bool is_prime_long(long n);
std::vector<std::pair<long, int>> factorize(long n);
long euler_phi(long n);
long mult_order(long a, long n);  // order of a in (Z/n)^*, requires gcd(a,n)=1
long gcd_long(long a, long b);
long lcm_long(long a, long b);

// Smallest positive primitive root mod q^e (q odd prime). The value is chosen to
// generate (Z/q^e)^* for every e >= 1, so exponents align across powers of q.
long primitive_root_odd(long q);

long inv_mod_long(long a, long n);
mpz_class inv_mod(const mpz_class& a, const mpz_class& n);

// Cyclotomic polynomial Phi_n over Z, ascending coefficients.
std::vector<mpz_class> cyclotomic_poly(long n);

// Dense polynomials over Z/m, ascending coefficients, normalized (no leading zeros).
using PolyZ = std::vector<mpz_class>;
PolyZ poly_trim(PolyZ f);
PolyZ poly_add(const PolyZ& a, const PolyZ& b, const mpz_class& m);
PolyZ poly_sub(const PolyZ& a, const PolyZ& b, const mpz_class& m);
PolyZ poly_mul(const PolyZ& a, const PolyZ& b, const mpz_class& m);
// divrem by monic g
std::pair<PolyZ, PolyZ> poly_divrem(const PolyZ& f, const PolyZ& g, const mpz_class& m);
PolyZ poly_gcd_fp(PolyZ a, PolyZ b, long p);  // monic gcd over F_p
PolyZ poly_powmod_fp(const PolyZ& base, const mpz_class& e, const PolyZ& mod, long p);

// All monic irreducible factors of f over F_p, f squarefree with factors of equal
// degree d. Deterministic output: sorted by ascending coefficient tuple.
std::vector<PolyZ> equal_degree_factor_fp(const PolyZ& f, long p, long d);

// Lift a factor g0 of f mod p to a monic factor of f mod p^W (f monic, f = g0*h0
// with gcd(g0,h0)=1 mod p).
PolyZ hensel_lift_factor(const PolyZ& f, const PolyZ& g0, long p, long W);

std::string mpz_str(const mpz_class& z);

}  // namespace iwasawa
