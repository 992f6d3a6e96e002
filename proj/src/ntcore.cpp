#include "hcpf/ntcore.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "hcpf/errors.hpp"

namespace hcpf {

i64 Factorization::value() const
{
    i64 v = 1;
    for (auto const & [q, e] : terms)
        for (int i = 0; i < e; ++i)
            v *= q;
    return v;
}

std::vector<i64> Factorization::primes() const
{
    std::vector<i64> out;
    out.reserve(terms.size());
    for (auto const & t : terms)
        out.push_back(t.first);
    return out;
}

i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m)
{
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

i64 gcd(i64 a, i64 b)
{
    return std::gcd(a, b);
}

Xgcd xgcd(i64 a, i64 b)
{
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0)
        return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

i64 invmod(i64 a, i64 m)
{
    auto [g, x, y] = xgcd(mod(a, m), m);
    (void)y;
    if (g != 1)
        throw InvalidArgument("invmod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
    return mod(x, m);
}

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0)
            return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for 64-bit inputs
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::vector<i64> primes_up_to(i64 n)
{
    std::vector<i64> out;
    if (n < 2)
        return out;
    std::vector<bool> sieve(static_cast<size_t>(n) + 1, true);
    for (i64 i = 2; i <= n; ++i) {
        if (!sieve[i])
            continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i)
            sieve[j] = false;
    }
    return out;
}

std::optional<int> kronecker(i64 a, i64 p)
{
    if (p == 2) {
        i64 r = mod(a, 8);
        if (r % 2 == 0)
            return 0;
        if (r == 1)
            return 1;
        if (r == 5)
            return -1;
        return std::nullopt;
    }
    return legendre(a, p);
}

int legendre(i64 a, i64 p)
{
    i64 r = mod(a, p);
    if (r == 0)
        return 0;
    u64 e = powmod(static_cast<u64>(r), static_cast<u64>(p - 1) / 2, static_cast<u64>(p));
    return e == 1 ? 1 : -1;
}

int kronecker_disc(i64 d, i64 p)
{
    auto k = kronecker(d, p);
    if (!k)
        throw InvalidArgument("kronecker_disc: " + std::to_string(d) + " is not a discriminant");
    return *k;
}

int valuation(i64 n, i64 p)
{
    if (n == 0)
        throw InvalidArgument("valuation of zero");
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

int valuation(mpz_class const & n, i64 p)
{
    if (n == 0)
        throw InvalidArgument("valuation of zero");
    mpz_class m = n;
    mpz_class q = static_cast<long>(p);
    int k = 0;
    while (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
        ++k;
    }
    return k;
}

namespace {

u64 pollard_brent(u64 n)
{
    if (n % 2 == 0)
        return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 const m = 64;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        u64 r = 1;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_rec(u64 n, std::vector<u64> & out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

Factorization factor(i64 n)
{
    if (n < 1)
        throw InvalidArgument("factor expects n >= 1, got " + std::to_string(n));
    std::vector<u64> ps;
    u64 m = static_cast<u64>(n);
    for (u64 q = 2; q < 1000 && q * q <= m; q += (q == 2 ? 1 : 2)) {
        while (m % q == 0) {
            ps.push_back(q);
            m /= q;
        }
    }
    if (m > 1)
        factor_rec(m, ps);
    std::sort(ps.begin(), ps.end());
    Factorization f;
    for (u64 q : ps) {
        if (!f.terms.empty() && f.terms.back().first == static_cast<i64>(q))
            ++f.terms.back().second;
        else
            f.terms.emplace_back(static_cast<i64>(q), 1);
    }
    return f;
}

std::optional<i64> sqrt_mod(i64 a, i64 p)
{
    a = mod(a, p);
    if (a == 0)
        return 0;
    if (p == 2)
        return a;
    if (legendre(a, p) != 1)
        return std::nullopt;
    u64 const P = static_cast<u64>(p);
    u64 const A = static_cast<u64>(a);
    if (p % 4 == 3)
        return static_cast<i64>(powmod(A, (P + 1) / 4, P));

    u64 q = P - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (legendre(static_cast<i64>(z), p) != -1)
        ++z;
    u64 c = powmod(z, q, P);
    u64 x = powmod(A, (q + 1) / 2, P);
    u64 t = powmod(A, q, P);
    int m = s;
    while (t != 1) {
        int i = 0;
        u64 t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, P);
            ++i;
        }
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b = mulmod(b, b, P);
        x = mulmod(x, b, P);
        c = mulmod(b, b, P);
        t = mulmod(t, c, P);
        m = i;
    }
    return static_cast<i64>(x);
}

bool is_valid_discriminant(i64 D)
{
    return D < 0 && (mod(D, 4) == 0 || mod(D, 4) == 1);
}

std::pair<i64, i64> fundamental_decomposition(i64 D)
{
    if (!is_valid_discriminant(D))
        throw InvalidDiscriminant("not a negative discriminant = 0,1 mod 4: " + std::to_string(D));
    i64 square = 1;
    i64 core = 1;
    for (auto const & [q, e] : factor(-D).terms) {
        for (int i = 0; i < e / 2; ++i)
            square *= q;
        if (e % 2)
            core *= q;
    }
    i64 d = -core;
    if (mod(d, 4) == 1)
        return {d, square};
    // d = 2,3 mod 4 forces an even square part
    return {4 * d, square / 2};
}

Discriminant Discriminant::from(i64 D)
{
    auto [dk, f] = fundamental_decomposition(D);
    return {D, dk, f};
}

bool is_squarefree(i64 n)
{
    if (n == 0)
        return false;
    for (auto const & t : factor(std::llabs(n)).terms)
        if (t.second > 1)
            return false;
    return true;
}

i64 squarefree_part(i64 n)
{
    if (n == 0)
        throw InvalidArgument("squarefree part of zero");
    i64 s = 1;
    for (auto const & [q, e] : factor(std::llabs(n)).terms)
        if (e % 2)
            s *= q;
    return n < 0 ? -s : s;
}

i64 prime_to_part(i64 n, i64 p)
{
    if (n == 0)
        throw InvalidArgument("prime-to-p part of zero");
    while (n % p == 0)
        n /= p;
    return n;
}

} // namespace hcpf
