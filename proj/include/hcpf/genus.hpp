#pragma once

// Genus field data for the order of discriminant D: the radicands of the real
// multiquadratic field F+ and the splitting of primes in F+ and F = F+(sqrt D_K).

#include <vector>

#include "hcpf/ntcore.hpp"

namespace hcpf {

struct GenusRadicand
{
    i64 prime;  // 0 for the generator attached to 2
    i64 value;  // value given by the case display, before squarefree reduction
};

struct GenusData
{
    std::vector<GenusRadicand> raw;   // p0, p1, ..., pr
    std::vector<i64> generators;      // independent squarefree radicands of F+
    int mu = 1;                       // log2 [F : Q]
};

GenusData genus_generators(i64 D);

/// Splitting data of p in a multiquadratic field Q(sqrt r : r in radicands):
/// ramification index e, residue degree f and number of primes g, e*f*g = 2^rank.
struct MultiquadraticSplitting
{
    int e = 1;
    int f = 1;
    i64 g = 1;
    i64 degree = 1;
};

MultiquadraticSplitting multiquadratic_splitting(std::vector<i64> const & radicands, i64 p);

/// Discriminant of Q(sqrt r) for squarefree r != 1.
i64 quadratic_field_discriminant(i64 r);

/// True iff p splits completely in F+. Requires p non-split in K and p not
/// dividing the conductor.
bool splits_completely_in_Fplus(i64 D, i64 p);

struct RamificationData
{
    int e_Fplus = 1;
    int f_Fplus = 1;
    int f_F_over_Fplus = 1;
};

/// For p | D_K, p not dividing f and D outside {-p, -2p, -4p}.
RamificationData ramification_data(i64 D, i64 p);

/// D in {-p, -2p, -4p}.
bool is_special_discriminant(i64 D, i64 p);

/// The splitting criteria as case lists on residues of the prime factors of D.
/// These are kept independent of the direct computation above and used to
/// cross-check it. Sub-cases the lists leave open raise NotCovered.
namespace lemma_p0 {

/// p inert in K, p not dividing f: p splits completely in F+.
bool inert_splits_completely(i64 D, i64 p);

/// p | D_K, D not special: p is unramified in F+.
bool ramified_prime_unramified_in_Fplus(i64 D, i64 p);

/// Same hypotheses, p unramified in F+: p splits completely in F+.
bool ramified_prime_splits_completely(i64 D, i64 p);

/// Same hypotheses, p ramified in F+: f_p(F/F+) == 2.
bool ramified_prime_inert_in_F_over_Fplus(i64 D, i64 p);

} // namespace lemma_p0

} // namespace hcpf
