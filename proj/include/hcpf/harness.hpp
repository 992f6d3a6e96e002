#pragma once

// Prediction versus computation: per-pair verification, range sweeps,
// supersingularity of the roots of H_D mod p by point counting, and the OSIDH
// key space figures.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcpf/fppoly.hpp"
#include "hcpf/hcp.hpp"
#include "hcpf/predictor.hpp"

namespace hcpf {

enum class Verdict
{
    MATCH,
    ADMISSIBLE_MATCH,
    MISMATCH,
    NO_PREDICTION,
};

std::string_view to_string(Verdict v);

struct VerifyReport
{
    i64 D = 0;
    i64 p = 0;
    i64 h = 0;
    CaseLabel label = CaseLabel::OUT_OF_THEOREM_RANGE;
    Prediction prediction;
    FactorSignature observed;
    std::vector<FpFactor> factors;
    std::vector<ObservedRoot> roots;  // roots in F_{p^2}
    Verdict verdict = Verdict::NO_PREDICTION;
    std::optional<std::string> matched_structure;
    /// Whether the observed signature is in the Ibukiyama order list, when
    /// that list applies. Informational; the verdict follows the root structures.
    std::optional<bool> corollary_agrees;
    std::optional<int> i_p;
    std::string detail;
};

constexpr u64 kDefaultSeed = 0x5eed;

VerifyReport verify_pair(i64 D, i64 p, HcpData & data, u64 seed = kDefaultSeed);
VerifyReport verify_pair(i64 D, i64 p, HcpCache * cache = nullptr, u64 seed = kDefaultSeed);

struct SweepOptions
{
    i64 D_min = -200;
    i64 D_max = -3;
    i64 p_max = 50;
    i64 p_min = 2;
    int jobs = 1;
    u64 seed = kDefaultSeed;
    HcpCache * cache = nullptr;
    /// Called once per report, in (D, p) order, from the calling thread.
    std::function<void(VerifyReport const &)> on_report;
    bool keep_reports = true;
};

struct SweepSummary
{
    std::vector<VerifyReport> reports;
    std::map<CaseLabel, i64> label_counts;
    std::map<Verdict, i64> verdict_counts;
    i64 pairs = 0;
    i64 mismatches = 0;
};

/// Every valid D in [D_min, D_max] against every prime p in [p_min, p_max].
SweepSummary sweep(SweepOptions const & options);

/// Brute-force point count over F_{p^2} of a curve with invariant j; true iff
/// #E(F_{p^2}) = 1 mod p. Requires p >= 5.
bool is_supersingular_j(Fp2Element j, u64 p);
/// #E(F_{p^2}) for the model used by is_supersingular_j.
u64 curve_point_count_fp2(Fp2Element j, u64 p);

struct OsidhReport
{
    i64 D0 = 0;
    i64 ell = 0;
    int n = 0;
    i64 p = 0;
    i64 Dn = 0;
    i64 h_Dn = 0;
    double bound_ln = 0;    // sqrt|D_n| ln|D_n|
    double bound_log2 = 0;  // sqrt|D_n| log2|D_n|
    bool bound_holds = true;
    int mu_n = 1;
    std::optional<i64> fp_roots_expected;
    bool valid = false;       // p > |D_n|
    bool p_nonsplit = false;
    std::optional<std::string> error;

    // filled when the factorization of H_{D_n} mod p is computed
    std::optional<FactorSignature> observed;
    std::optional<i64> fp_roots_observed;
    std::optional<i64> fp2_roots_observed;        // conjugate roots counted separately
    std::optional<i64> galois_orbits_observed;    // conjugate roots counted once
};

/// D_n = ell^(2n) D0. The report is always filled; p <= |D_n| sets `error` to
/// InvalidParameters and clears `valid`.
OsidhReport osidh_keyspace(i64 D0, i64 ell, int n, i64 p, bool compute_observed = true, HcpCache * cache = nullptr,
                           u64 seed = kDefaultSeed);

} // namespace hcpf
