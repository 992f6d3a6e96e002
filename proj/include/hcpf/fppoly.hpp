#pragma once

// Dense univariate polynomials over F_p, complete factorization
// (squarefree, distinct-degree, Cantor-Zassenhaus) and roots in F_{p^2}.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hcpf/hcp.hpp"
#include "hcpf/ntcore.hpp"

namespace hcpf {

class FpPoly
{
  public:
    explicit FpPoly(u64 p);
    FpPoly(u64 p, std::vector<u64> coeffs);  // ascending; reduced mod p

    static FpPoly constant(u64 p, u64 c);
    static FpPoly x(u64 p);
    static FpPoly monomial(u64 p, u64 c, int degree);

    u64 modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    u64 lead() const { return c_.empty() ? 0 : c_.back(); }
    u64 operator[](size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::vector<u64> const & coeffs() const { return c_; }

    FpPoly monic() const;
    FpPoly derivative() const;
    u64 eval(u64 x) const;

    FpPoly & operator+=(FpPoly const & o);
    FpPoly & operator-=(FpPoly const & o);
    friend FpPoly operator+(FpPoly a, FpPoly const & b) { return a += b; }
    friend FpPoly operator-(FpPoly a, FpPoly const & b) { return a -= b; }
    friend FpPoly operator*(FpPoly const & a, FpPoly const & b);
    friend FpPoly operator*(u64 s, FpPoly a);

    /// (quotient, remainder); throws on division by zero.
    friend std::pair<FpPoly, FpPoly> divrem(FpPoly const & a, FpPoly const & b);
    friend FpPoly operator/(FpPoly const & a, FpPoly const & b) { return divrem(a, b).first; }
    friend FpPoly operator%(FpPoly const & a, FpPoly const & b) { return divrem(a, b).second; }

    friend bool operator==(FpPoly const &, FpPoly const &) = default;
    /// Orders by degree, then coefficients from the top.
    friend bool operator<(FpPoly const & a, FpPoly const & b);

    std::string to_string() const;

  private:
    void trim();
    u64 p_;
    std::vector<u64> c_;
};

/// Monic gcd.
FpPoly gcd(FpPoly a, FpPoly b);
FpPoly powmod(FpPoly base, u64 exp, FpPoly const & m);

FpPoly reduce_mod(IntPoly const & H, u64 p);

struct FpFactor
{
    FpPoly factor;  // monic irreducible
    int multiplicity = 1;
};

/// Coprime squarefree parts (part, multiplicity), char p aware.
std::vector<FpFactor> squarefree_decomposition(FpPoly const & f);
/// (product of all irreducible factors of degree d, d) for squarefree monic f.
std::vector<std::pair<FpPoly, int>> distinct_degree_factorization(FpPoly f);
/// Irreducible factors of a squarefree monic f whose factors all have degree d.
std::vector<FpPoly> equal_degree_factorization(FpPoly const & f, int d, std::mt19937_64 & rng);

/// Complete factorization into monic irreducibles, sorted canonically.
/// The leading coefficient of f is dropped. Randomized splitting uses a PRNG
/// seeded with `seed`, so results are reproducible.
std::vector<FpFactor> factor(FpPoly const & f, u64 seed = 0x5eed);

/// Rabin's test: x^(p^n) = x mod g and gcd(x^(p^(n/q)) - x, g) = 1 for q | n.
bool is_irreducible(FpPoly const & g);

/// Multiset of (degree, multiplicity) with counts.
struct FactorSignature
{
    std::map<std::pair<int, int>, i64> counts;

    void add(int degree, int multiplicity, i64 count = 1);
    i64 total_degree() const;
    /// [[d, m, count], ...] in (d, m) order
    std::vector<std::array<i64, 3>> triples() const;
    std::string to_string() const;
    friend bool operator==(FactorSignature const &, FactorSignature const &) = default;
};

FactorSignature signature(std::vector<FpFactor> const & factors);

/// u + v t in F_p[t]/(t^2 - r), r the least positive non-residue mod p; for
/// p = 2 the model is F_2[t]/(t^2 + t + 1).
struct Fp2Element
{
    u64 u = 0;
    u64 v = 0;
    bool in_base_field() const { return v == 0; }
    auto operator<=>(Fp2Element const &) const = default;
};

class Fp2Field
{
  public:
    explicit Fp2Field(u64 p);

    u64 p() const { return p_; }
    /// t^2 = c0 + c1 t
    u64 c0() const { return c0_; }
    u64 c1() const { return c1_; }

    Fp2Element add(Fp2Element a, Fp2Element b) const;
    Fp2Element sub(Fp2Element a, Fp2Element b) const;
    Fp2Element mul(Fp2Element a, Fp2Element b) const;
    Fp2Element pow(Fp2Element a, u64 e) const;
    Fp2Element inv(Fp2Element a) const;
    Fp2Element from_base(u64 a) const { return {a % p_, 0}; }
    /// z^(p+1), an element of F_p.
    u64 norm(Fp2Element a) const;

    std::string to_string(Fp2Element a) const;

  private:
    u64 p_, c0_, c1_;
};

/// Roots of f in F_{p^2} with multiplicities, sorted.
std::vector<std::pair<Fp2Element, int>> roots_in_fp2(std::vector<FpFactor> const & factors, u64 p);
std::vector<std::pair<Fp2Element, int>> roots_in_fp2(FpPoly const & f);

} // namespace hcpf
