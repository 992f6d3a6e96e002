#include "hcpf/genus.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>

#include "hcpf/errors.hpp"

namespace hcpf {

namespace {

// squarefree part of a*b for squarefree a, b
i64 radicand_product(i64 a, i64 b)
{
    i64 g = std::gcd(std::llabs(a), std::llabs(b));
    return (a / g) * (b / g);
}

std::vector<i64> span(std::vector<i64> const & radicands)
{
    std::set<i64> elems{1};
    for (i64 r : radicands) {
        std::vector<i64> add;
        for (i64 x : elems)
            add.push_back(radicand_product(x, r));
        elems.insert(add.begin(), add.end());
    }
    return {elems.begin(), elems.end()};
}

i64 odd_part_mod4_class(i64 D, i64 divisor)
{
    // residue mod 4 of D / divisor, or -1 if not integral
    if (D % divisor != 0)
        return -1;
    return mod(D / divisor, 4);
}

} // namespace

i64 quadratic_field_discriminant(i64 r)
{
    return mod(r, 4) == 1 ? r : 4 * r;
}

GenusData genus_generators(i64 D)
{
    auto const disc = Discriminant::from(D);
    (void)disc;
    GenusData out;

    i64 const r8 = odd_part_mod4_class(D, 8);
    out.raw.push_back({0, (r8 == 0 || r8 == 1) ? 2 : 1});

    i64 const r1 = odd_part_mod4_class(D, 1);
    i64 const r4 = odd_part_mod4_class(D, 4);
    for (auto const & [q, e] : factor(-D).terms) {
        (void)e;
        if (q == 2)
            continue;
        i64 v;
        if (q % 4 == 1) {
            v = q;
        } else if (r1 == 1 || r4 == 1 || r8 == 1) {
            v = -D / q;
        } else if (r8 == 3) {
            v = 2 * q;
        } else if (r4 == 0 || r4 == 3) {
            v = q;
        } else {
            throw Error("Internal", "genus display does not cover D = " + std::to_string(D));
        }
        out.raw.push_back({q, v});
    }

    // keep an F_2-independent subset, in display order
    std::vector<i64> basis;
    std::set<i64> spanned{1};
    for (auto const & rad : out.raw) {
        i64 s = squarefree_part(rad.value);
        if (spanned.count(s))
            continue;
        basis.push_back(s);
        auto sp = span(basis);
        spanned = {sp.begin(), sp.end()};
    }
    out.generators = basis;
    out.mu = static_cast<int>(basis.size()) + 1;
    return out;
}

MultiquadraticSplitting multiquadratic_splitting(std::vector<i64> const & radicands, i64 p)
{
    auto const elems = span(radicands);
    i64 unramified = 0, split = 0;
    for (i64 v : elems) {
        if (v == 1) {
            ++unramified;
            ++split;
            continue;
        }
        i64 d = quadratic_field_discriminant(v);
        int k = kronecker_disc(d, p);
        if (k != 0)
            ++unramified;
        if (k == 1)
            ++split;
    }
    MultiquadraticSplitting out;
    out.degree = static_cast<i64>(elems.size());
    out.e = static_cast<int>(out.degree / unramified);
    out.f = static_cast<int>(unramified / split);
    out.g = split;
    return out;
}

bool is_special_discriminant(i64 D, i64 p)
{
    return D == -p || D == -2 * p || D == -4 * p;
}

bool splits_completely_in_Fplus(i64 D, i64 p)
{
    auto const disc = Discriminant::from(D);
    if (disc.conductor % p == 0)
        throw InvalidArgument("splits_completely_in_Fplus: p divides the conductor");
    if (kronecker_disc(disc.fundamental, p) == 1)
        throw InvalidArgument("splits_completely_in_Fplus: p = " + std::to_string(p) + " splits in K");
    auto const gd = genus_generators(D);
    for (i64 g : gd.generators)
        if (kronecker_disc(quadratic_field_discriminant(g), p) != 1)
            return false;
    return true;
}

RamificationData ramification_data(i64 D, i64 p)
{
    auto const disc = Discriminant::from(D);
    if (disc.fundamental % p != 0 || disc.conductor % p == 0 || is_special_discriminant(D, p))
        throw InvalidArgument("ramification_data: requires p | D_K, p not dividing f, D not in {-p,-2p,-4p}");
    auto const gd = genus_generators(D);
    auto const plus = multiquadratic_splitting(gd.generators, p);
    auto with_k = gd.generators;
    with_k.push_back(squarefree_part(disc.fundamental));
    auto const full = multiquadratic_splitting(with_k, p);
    RamificationData out;
    out.e_Fplus = plus.e;
    out.f_Fplus = plus.f;
    out.f_F_over_Fplus = full.f / plus.f;
    return out;
}

namespace lemma_p0 {

namespace {

std::vector<i64> odd_primes(i64 D)
{
    std::vector<i64> out;
    for (i64 q : factor(-D).primes())
        if (q != 2)
            out.push_back(q);
    return out;
}

void require_ramified_hypotheses(i64 D, i64 p)
{
    auto const disc = Discriminant::from(D);
    if (disc.fundamental % p != 0 || disc.conductor % p == 0 || is_special_discriminant(D, p))
        throw InvalidArgument("lemma_p0: requires p | D_K, p not dividing f, D not in {-p,-2p,-4p}");
}

} // namespace

bool inert_splits_completely(i64 D, i64 p)
{
    auto const disc = Discriminant::from(D);
    if (disc.conductor % p == 0 || kronecker_disc(disc.fundamental, p) != -1)
        throw InvalidArgument("inert_splits_completely: p must be inert in K and prime to f");
    if (p == 2) {
        std::set<i64> residues;
        for (i64 q : odd_primes(D))
            residues.insert(q % 8);
        bool in13 = std::all_of(residues.begin(), residues.end(), [](i64 r) { return r == 1 || r == 3; });
        bool in17 = std::all_of(residues.begin(), residues.end(), [](i64 r) { return r == 1 || r == 7; });
        return in13 || in17;
    }
    for (auto const & rad : genus_generators(D).raw)
        if (legendre(rad.value, p) != 1)
            return false;
    return true;
}

bool ramified_prime_unramified_in_Fplus(i64 D, i64 p)
{
    require_ramified_hypotheses(D, p);
    if (D % 16 == 0)
        return false;
    if (p % 4 == 1)
        return false;
    for (i64 q : odd_primes(D))
        if ((2 * p) % q != 0 && q % 4 != 1)
            return false;
    return true;
}

bool ramified_prime_splits_completely(i64 D, i64 p)
{
    require_ramified_hypotheses(D, p);
    if (!ramified_prime_unramified_in_Fplus(D, p))
        throw InvalidArgument("ramified_prime_splits_completely: p ramifies in F+");
    std::vector<i64> others;
    for (i64 q : odd_primes(D))
        if (q != p)
            others.push_back(q);
    if (p == 2)
        return std::all_of(others.begin(), others.end(), [](i64 q) { return q % 8 == 1; });
    bool const d_or_d4 = mod(D, 4) == 1 || (D % 4 == 0 && mod(D / 4, 4) == 1);
    if (p % 8 == 7 || (p % 8 == 3 && d_or_d4))
        return std::all_of(others.begin(), others.end(), [&](i64 q) { return legendre(q, p) == 1; });
    throw NotCovered("splitting of p = " + std::to_string(p) + " in F+ for D = " + std::to_string(D)
                     + " is outside the listed residue cases");
}

bool ramified_prime_inert_in_F_over_Fplus(i64 D, i64 p)
{
    require_ramified_hypotheses(D, p);
    auto const disc = Discriminant::from(D);
    if (p == 2) {
        for (i64 q : odd_primes(D))
            if (q % 8 != 1 && q % 8 != 3)
                return false;
        return true;
    }
    for (auto const & rad : genus_generators(D).raw)
        if (legendre(prime_to_part(rad.value, p), p) != 1)
            return false;
    return legendre(disc.fundamental / p, p) == -1;
}

} // namespace lemma_p0

} // namespace hcpf
