#include "hcpf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cmath>
#include <mutex>
#include <thread>

#include "hcpf/errors.hpp"
#include "hcpf/genus.hpp"
#include "hcpf/quadforms.hpp"

namespace hcpf {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::MATCH:
        return "MATCH";
    case Verdict::ADMISSIBLE_MATCH:
        return "ADMISSIBLE_MATCH";
    case Verdict::MISMATCH:
        return "MISMATCH";
    case Verdict::NO_PREDICTION:
        return "NO_PREDICTION";
    }
    return "?";
}

VerifyReport verify_pair(i64 D, i64 p, HcpData & data, u64 seed)
{
    VerifyReport r;
    r.D = D;
    r.p = p;
    r.prediction = predict(D, p, data);
    r.label = r.prediction.label;
    r.i_p = r.prediction.params.i_p;
    r.h = data.poly().degree();

    u64 const up = static_cast<u64>(p);
    r.factors = factor(reduce_mod(data.poly(), up), seed);
    r.observed = signature(r.factors);
    if (r.observed.total_degree() != r.h)
        throw Error("Internal", "factorization lost degree for D = " + std::to_string(D));
    for (auto const & [root, mult] : roots_in_fp2(r.factors, up))
        r.roots.push_back({root, mult, tag_root(root, up)});

    auto const & pr = r.prediction;
    if (pr.signature) {
        r.verdict = *pr.signature == r.observed ? Verdict::MATCH : Verdict::MISMATCH;
        if (r.verdict == Verdict::MISMATCH)
            r.detail = "predicted " + pr.signature->to_string() + ", observed " + r.observed.to_string();
    } else if (!pr.admissible_structures.empty()) {
        bool high_degree_repeat = false;
        for (auto const & f : r.factors)
            if (f.multiplicity >= 2 && f.factor.degree() > 2)
                high_degree_repeat = true;
        for (auto const & s : pr.admissible_structures) {
            if (!high_degree_repeat && matches(s, r.roots)) {
                r.matched_structure = s.id;
                break;
            }
        }
        if (!pr.admissible_signatures.empty()) {
            bool listed = false;
            for (auto const & s : pr.admissible_signatures)
                listed = listed || s == r.observed;
            r.corollary_agrees = listed;
        }
        if (r.matched_structure) {
            r.verdict = Verdict::ADMISSIBLE_MATCH;
        } else {
            r.verdict = Verdict::MISMATCH;
            r.detail = "multiple roots outside the admissible structures";
        }
    } else {
        r.verdict = Verdict::NO_PREDICTION;
    }
    return r;
}

VerifyReport verify_pair(i64 D, i64 p, HcpCache * cache, u64 seed)
{
    HcpData data(D, cache);
    return verify_pair(D, p, data, seed);
}

SweepSummary sweep(SweepOptions const & o)
{
    SweepSummary summary;
    std::vector<i64> Ds;
    for (i64 D = std::min(o.D_max, i64{-3}); D >= o.D_min; --D)
        if (is_valid_discriminant(D))
            Ds.push_back(D);
    std::reverse(Ds.begin(), Ds.end());  // ascending
    std::vector<i64> primes;
    for (i64 p : primes_up_to(o.p_max))
        if (p >= o.p_min)
            primes.push_back(p);
    if (Ds.empty() || primes.empty())
        return summary;

    // results[i] holds the reports of Ds[i]; the calling thread emits them in order
    std::vector<std::vector<VerifyReport>> results(Ds.size());
    std::vector<std::exception_ptr> errors(Ds.size());
    std::vector<char> done(Ds.size(), 0);
    std::mutex m;
    std::condition_variable cv;
    std::atomic<size_t> next{0};

    auto compute = [&](size_t i) {
        try {
            HcpData data(Ds[i], o.cache);
            for (i64 p : primes)
                results[i].push_back(verify_pair(Ds[i], p, data, o.seed));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < Ds.size();) {
            compute(i);
            {
                std::lock_guard lock(m);
                done[i] = 1;
            }
            cv.notify_all();
        }
    };

    int const jobs = std::max(1, o.jobs);
    std::vector<std::jthread> threads;
    if (jobs > 1)
        for (int k = 0; k < jobs; ++k)
            threads.emplace_back(worker);

    for (size_t i = 0; i < Ds.size(); ++i) {
        if (jobs == 1) {
            compute(i);
        } else {
            std::unique_lock lock(m);
            cv.wait(lock, [&] { return done[i] != 0; });
        }
        if (errors[i]) {
            next.store(Ds.size());
            threads.clear();
            std::rethrow_exception(errors[i]);
        }
        for (auto & r : results[i]) {
            ++summary.pairs;
            ++summary.label_counts[r.label];
            ++summary.verdict_counts[r.verdict];
            if (r.verdict == Verdict::MISMATCH)
                ++summary.mismatches;
            if (o.on_report)
                o.on_report(r);
            if (o.keep_reports)
                summary.reports.push_back(std::move(r));
        }
        results[i].clear();
        results[i].shrink_to_fit();
    }
    return summary;
}

// ---------------------------------------------------------------------------

u64 curve_point_count_fp2(Fp2Element j, u64 p)
{
    if (p < 5 || !is_prime(p))
        throw InvalidArgument("point counting needs a prime p >= 5");
    Fp2Field const F(p);
    j = {j.u % p, j.v % p};
    Fp2Element a, b;
    Fp2Element const j1728 = F.from_base(1728);
    if (j == Fp2Element{0, 0}) {
        a = {0, 0};
        b = {1, 0};
    } else if (j == j1728) {
        a = {1, 0};
        b = {0, 0};
    } else {
        Fp2Element const k = F.mul(j, F.inv(F.sub(j1728, j)));
        a = F.mul(F.from_base(3), k);
        b = F.mul(F.from_base(2), k);
    }
    // #E = p^2 + 1 + sum_x chi(x^3 + a x + b), chi(z) = (N(z) / p)
    i64 sum = 0;
    for (u64 u = 0; u < p; ++u) {
        for (u64 v = 0; v < p; ++v) {
            Fp2Element const x{u, v};
            Fp2Element const rhs = F.add(F.mul(F.add(F.mul(x, x), a), x), b);
            u64 const n = F.norm(rhs);
            if (n != 0)
                sum += legendre(static_cast<i64>(n), static_cast<i64>(p));
        }
    }
    return static_cast<u64>(static_cast<i64>(p * p + 1) + sum);
}

bool is_supersingular_j(Fp2Element j, u64 p)
{
    return curve_point_count_fp2(j, p) % p == 1;
}

// ---------------------------------------------------------------------------

OsidhReport osidh_keyspace(i64 D0, i64 ell, int n, i64 p, bool compute_observed, HcpCache * cache, u64 seed)
{
    if (!is_valid_discriminant(D0))
        throw InvalidDiscriminant("invalid discriminant " + std::to_string(D0));
    if (ell < 2 || !is_prime(static_cast<u64>(ell)))
        throw InvalidArgument("ell = " + std::to_string(ell) + " is not prime");
    if (p < 2 || !is_prime(static_cast<u64>(p)))
        throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
    if (n < 0)
        throw InvalidArgument("level n must be non-negative");
    if (ell == p)
        throw InvalidParameters("ell must differ from p");

    OsidhReport r;
    r.D0 = D0;
    r.ell = ell;
    r.n = n;
    r.p = p;
    __int128 Dn = D0;
    for (int i = 0; i < 2 * n; ++i) {
        Dn *= ell;
        if (Dn < -(static_cast<__int128>(1) << 50))
            throw InvalidParameters("|D_n| is too large");
    }
    r.Dn = static_cast<i64>(Dn);
    auto const disc = Discriminant::from(r.Dn);
    if (disc.conductor % p == 0)
        throw InvalidParameters("p divides the conductor of D_n");

    r.h_Dn = class_number(r.Dn);
    double const ad = static_cast<double>(-r.Dn);
    r.bound_ln = std::sqrt(ad) * std::log(ad);
    r.bound_log2 = std::sqrt(ad) * std::log2(ad);
    r.bound_holds = ad < 5 || static_cast<double>(r.h_Dn) <= r.bound_ln;
    r.mu_n = group_structure(r.Dn).mu;
    r.p_nonsplit = kronecker_disc(disc.fundamental, p) != 1;
    r.valid = p > -r.Dn;
    if (!r.valid)
        r.error = "InvalidParameters";
    if (r.p_nonsplit && disc.fundamental % p != 0) {
        r.fp_roots_expected = splits_completely_in_Fplus(r.Dn, p) ? (i64{1} << (r.mu_n - 1)) : 0;
    }

    if (compute_observed) {
        IntPoly const H = cache ? cache->get(r.Dn) : hilbert_class_polynomial(r.Dn);
        auto const factors = factor(reduce_mod(H, static_cast<u64>(p)), seed);
        r.observed = signature(factors);
        i64 fp = 0, fp2 = 0, orbits = 0;
        for (auto const & f : factors) {
            if (f.factor.degree() == 1) {
                ++fp;
                ++fp2;
                ++orbits;
            } else if (f.factor.degree() == 2) {
                fp2 += 2;
                ++orbits;
            }
        }
        r.fp_roots_observed = fp;
        r.fp2_roots_observed = fp2;
        r.galois_orbits_observed = orbits;
    }
    return r;
}

} // namespace hcpf
