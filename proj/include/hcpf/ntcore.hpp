#pragma once

// Elementary number theory on machine integers: symbols, valuations,
// factorization, modular square roots and the fundamental decomposition of an
// imaginary quadratic discriminant.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hcpf {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Prime factorization as (prime, exponent) pairs, primes strictly increasing.
struct Factorization
{
    std::vector<std::pair<i64, int>> terms;

    i64 value() const;
    std::vector<i64> primes() const;
    bool empty() const { return terms.empty(); }
    friend bool operator==(Factorization const &, Factorization const &) = default;
};

/// Imaginary quadratic discriminant D = f^2 * D_K.
struct Discriminant
{
    i64 value;        // D
    i64 fundamental;  // D_K
    i64 conductor;    // f

    /// Validates D < 0, D = 0,1 mod 4 and decomposes it; throws InvalidDiscriminant.
    static Discriminant from(i64 D);

    friend bool operator==(Discriminant const &, Discriminant const &) = default;
};

bool is_valid_discriminant(i64 D);

i64 mod(i64 a, i64 m);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
i64 invmod(i64 a, i64 m);
i64 gcd(i64 a, i64 b);

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
struct Xgcd { i64 g, x, y; };
Xgcd xgcd(i64 a, i64 b);

bool is_prime(u64 n);
std::vector<i64> primes_up_to(i64 n);

/// Legendre-Kronecker symbol (a/p) for a prime p. For p = 2 only the cases
/// 2 | a, a = 1 mod 8 and a = 5 mod 8 are defined; a = 3,7 mod 8 yields nullopt.
std::optional<int> kronecker(i64 a, i64 p);

/// Legendre symbol for an odd prime p.
int legendre(i64 a, i64 p);

/// Kronecker symbol (d/p) for a discriminant d (d = 0,1 mod 4), where the
/// p = 2 value is always defined.
int kronecker_disc(i64 d, i64 p);

/// Largest k with p^k | n. Throws InvalidArgument when n == 0.
int valuation(i64 n, i64 p);
int valuation(mpz_class const & n, i64 p);

/// Trial division followed by Pollard rho for the cofactor.
Factorization factor(i64 n);

/// Square root of a modulo an odd prime p (Tonelli-Shanks); nullopt if a is a
/// non-residue.
std::optional<i64> sqrt_mod(i64 a, i64 p);

/// Returns (D_K, f) with D = f^2 D_K.
std::pair<i64, i64> fundamental_decomposition(i64 D);

bool is_squarefree(i64 n);
/// Squarefree part of n keeping the sign: n = s * m^2 with s squarefree.
i64 squarefree_part(i64 n);

/// Prime-to-p part of n.
i64 prime_to_part(i64 n, i64 p);

} // namespace hcpf
