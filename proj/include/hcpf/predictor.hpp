#pragma once

// Expected factorization pattern of H_D mod p from the arithmetic of D and p:
// the splitting of p in the real ring class field M, translated into a factor
// signature when p does not divide the index n_D = [O_M : Z[j_D]], and the
// admissible multiple-root structures when 1 <= v_p(n_D) <= 3.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "hcpf/fppoly.hpp"
#include "hcpf/hcp.hpp"
#include "hcpf/ntcore.hpp"

namespace hcpf {

enum class CaseLabel
{
    SPLIT,
    INERT_UNRAMIFIED,
    SPECIAL_D,
    RAMIFIED_UNRAM_FPLUS,
    RAMIFIED_RAM_FPLUS,
    P_DIVIDES_F,
    P_DIVIDES_ND,
    OUT_OF_THEOREM_RANGE,
    SKIPPED_UNSUPPORTED,
};

std::string_view to_string(CaseLabel label);
std::optional<CaseLabel> parse_case_label(std::string_view s);
std::vector<CaseLabel> const & all_case_labels();

/// `count` primes of M above p with ramification index e and residue degree deg.
struct PrimeShape
{
    int e = 1;
    int deg = 1;
    i64 count = 0;
    friend bool operator==(PrimeShape const &, PrimeShape const &) = default;
};

using PomShape = std::vector<PrimeShape>;

/// Sum of e * deg * count.
i64 total_degree(PomShape const & shape);

/// Prime (e, deg) <-> irreducible factor of degree deg and multiplicity e.
FactorSignature signature_from_shape(PomShape const & shape);

enum class RootTag
{
    Zero,
    J1728,
    Other,
};

std::string_view to_string(RootTag tag);
RootTag tag_root(Fp2Element root, u64 p);

struct RootRequirement
{
    int multiplicity = 2;
    RootTag tag = RootTag::Other;
    bool in_Fp = false;  // otherwise anywhere in F_{p^2}
    friend bool operator==(RootRequirement const &, RootRequirement const &) = default;
};

/// The complete list of multiple roots (multiplicity >= 2) of H_D mod p.
struct MultipleRootStructure
{
    std::string id;  // "i_p=2 (b)"
    std::vector<RootRequirement> roots;
    std::string description;
};

struct ObservedRoot
{
    Fp2Element value;
    int multiplicity = 1;
    RootTag tag = RootTag::Other;
};

/// Multiple roots of `roots` match `s` up to order.
bool matches(MultipleRootStructure const & s, std::vector<ObservedRoot> const & roots);

struct PredictionParameters
{
    i64 h = 1;
    int mu = 1;
    std::optional<i64> t, s, g, lambda;
    std::optional<i64> D_p;       // D^(p) when p | f
    std::optional<i64> h_p_part;  // h_D / h_{D^(p)}
    std::optional<int> i_p;
};

struct Prediction
{
    i64 D = 0;
    i64 p = 0;
    CaseLabel label = CaseLabel::OUT_OF_THEOREM_RANGE;
    std::optional<FactorSignature> signature;
    std::vector<FactorSignature> admissible_signatures;
    std::vector<MultipleRootStructure> admissible_structures;
    PomShape pOM_shape;
    PredictionParameters params;
};

/// Lazily computed H_D, its discriminant and p-maximality tests, shared by
/// all primes for one D. Not thread safe.
class HcpData
{
  public:
    explicit HcpData(i64 D, HcpCache * cache = nullptr);

    i64 D() const { return D_; }
    IntPoly const & poly();
    mpz_class const & discriminant();

    /// p | n_D, decided by Dedekind's criterion on H_D.
    bool p_divides_index(i64 p);
    /// v_p(n_D) from the exact discriminant; requires p not dividing D.
    int ip(i64 p);

  private:
    i64 D_;
    HcpCache * cache_;
    std::optional<IntPoly> poly_;
    std::optional<mpz_class> disc_;
};

/// Dedekind's criterion: for monic irreducible H in Z[x] with root theta, true
/// iff p divides [O_{Q(theta)} : Z[theta]].
bool dedekind_index_divisible(IntPoly const & H, u64 p);

CaseLabel classify(i64 D, i64 p, HcpData & data, HcpCache * cache = nullptr);
CaseLabel classify(i64 D, i64 p, HcpCache * cache = nullptr);

/// Splitting of p in M; depends on D and p only.
PomShape predict_pOM(i64 D, i64 p);
PomShape predict_pOM(i64 D, i64 p, PredictionParameters & params);

Prediction predict(i64 D, i64 p, HcpData & data, HcpCache * cache = nullptr);
Prediction predict(i64 D, i64 p, HcpCache * cache = nullptr);

/// Throws NotApplicable when p | n_D or the case is not covered.
FactorSignature predict_signature(i64 D, i64 p, HcpCache * cache = nullptr);

/// Admissible multiple-root structures for 1 <= i_p <= 3; OutOfRange
/// when the hypotheses (p >= 5, p inert, p not dividing D, D > -p^3) fail.
std::vector<MultipleRootStructure> predict_multiplicity_structure(i64 D, i64 p, int ip);
std::vector<MultipleRootStructure> predict_multiplicity_structure(i64 D, i64 p, HcpCache * cache = nullptr);

/// D in {-q, -4q}, q = 3 mod 4 prime, (-q/p) = -1, -p^3 < D < -p and i_p <= 2:
/// the admissible complete signatures. NotApplicable otherwise.
std::vector<FactorSignature> ibukiyama_signatures(i64 D, i64 p, int ip);
/// D defaults to -q.
Prediction ibukiyama_check(i64 q, i64 p, std::optional<i64> D = std::nullopt, HcpCache * cache = nullptr);

} // namespace hcpf
