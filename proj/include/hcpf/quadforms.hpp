#pragma once

// Primitive positive definite binary quadratic forms a x^2 + b xy + c y^2 and
// the form class group Cl(D).

#include <compare>
#include <optional>
#include <vector>

#include "hcpf/ntcore.hpp"

namespace hcpf {

struct QuadForm
{
    i64 a = 1;
    i64 b = 1;
    i64 c = 1;

    i64 discriminant() const { return b * b - 4 * a * c; }
    bool is_primitive() const;
    bool is_reduced() const;
    /// b = 0, a = b or a = c: the class equals its inverse.
    bool is_ambiguous() const { return b == 0 || a == b || a == c; }
    QuadForm inverse() const;

    auto operator<=>(QuadForm const &) const = default;
};

/// Reduced form equivalent to f (ties |b| = a or a = c normalized to b >= 0).
QuadForm reduce(QuadForm f);

/// The principal form of discriminant D.
QuadForm principal_form(i64 D);

/// All primitive reduced forms of discriminant D, sorted by (a, b, c).
std::vector<QuadForm> reduced_forms(i64 D);

i64 class_number(i64 D);

/// h_D = h_K f / [O_K^x : O^x] prod_{p | f} (1 - (D_K/p)/p).
i64 class_number_formula(i64 D);

/// Size of the unit group O^x for the order of discriminant D.
int unit_count(i64 D);

/// Gauss composition, reduced. Throws DiscriminantMismatch.
QuadForm compose(QuadForm const & f1, QuadForm const & f2);

QuadForm power(QuadForm const & f, i64 k);

/// Least k >= 1 with f^k principal.
i64 order_of(QuadForm const & f);

struct ClassGroupStructure
{
    i64 h = 1;
    std::vector<i64> divisors;         // d_1 | d_2 | ... ; empty for the trivial group
    std::vector<QuadForm> generators;  // a generating set
    int two_rank = 0;
    int mu = 1;
    i64 ambiguous_classes = 1;         // |Cl[2]|
};

ClassGroupStructure group_structure(i64 D);

/// Reduced form of a prime ideal above p, or nullopt when p is inert.
/// Throws InvalidArgument when p divides the conductor.
std::optional<QuadForm> prime_form(i64 D, i64 p);

} // namespace hcpf
