#include "doctest.h"

#include <cmath>

#include "hcpf/errors.hpp"
#include "hcpf/harness.hpp"
#include "hcpf/quadforms.hpp"

using namespace hcpf;

namespace {

// #E(F_p) for y^2 = x^3 + A x + B by counting squares.
i64 count_fp(u64 A, u64 B, u64 p)
{
    i64 n = 1;
    for (u64 x = 0; x < p; ++x) {
        u64 const rhs = (x * x % p * x + A * x + B) % p;
        n += rhs == 0 ? 1 : 1 + legendre(static_cast<i64>(rhs), static_cast<i64>(p));
    }
    return n;
}

// The same Weierstrass model the library uses for a given j in F_p.
std::pair<u64, u64> model(u64 j, u64 p)
{
    if (j == 0)
        return {0, 1};
    if (j == 1728 % p)
        return {1, 0};
    u64 const k = j * static_cast<u64>(invmod(static_cast<i64>((1728 + p - j % p) % p), static_cast<i64>(p))) % p;
    return {3 * k % p, 2 * k % p};
}

} // namespace

TEST_CASE("verify examples")
{
    auto r = verify_pair(-20, 5);
    CHECK(r.verdict == Verdict::MATCH);
    CHECK(r.label == CaseLabel::SPECIAL_D);
    CHECK(r.observed.to_string() == "[[1, 2, 1]]");
    REQUIRE(r.roots.size() == 1);
    CHECK(r.roots[0].tag == RootTag::Zero);

    r = verify_pair(-15, 7);
    CHECK(r.verdict == Verdict::ADMISSIBLE_MATCH);
    CHECK(r.matched_structure == "i_p=2 (b)");
    CHECK(r.i_p == 2);
    REQUIRE(r.roots.size() == 1);
    CHECK(r.roots[0].tag == RootTag::J1728);

    r = verify_pair(-23, 5);
    CHECK(r.verdict == Verdict::NO_PREDICTION);
    CHECK(r.observed.to_string() == "[[1, 3, 1]]");
    REQUIRE(r.roots.size() == 1);
    CHECK(r.roots[0].value == Fp2Element{0, 0});
    CHECK(r.roots[0].multiplicity == 3);

    r = verify_pair(-23, 11);
    CHECK(r.verdict == Verdict::ADMISSIBLE_MATCH);
    CHECK(r.corollary_agrees == true);
    r = verify_pair(-47, 29);
    CHECK(r.verdict == Verdict::ADMISSIBLE_MATCH);
    CHECK(r.corollary_agrees == false);
}

TEST_CASE("small sweep")
{
    SweepOptions o;
    o.D_min = -200;
    o.D_max = -3;
    o.p_max = 50;
    auto const s = sweep(o);
    CHECK(s.mismatches == 0);
    CHECK(s.pairs == static_cast<i64>(s.reports.size()));
    i64 valid = 0;
    for (i64 D = -200; D <= -3; ++D)
        valid += is_valid_discriminant(D);
    CHECK(s.pairs == valid * static_cast<i64>(primes_up_to(50).size()));
    i64 total = 0;
    for (auto const & [label, n] : s.label_counts)
        total += n;
    CHECK(total == s.pairs);
    for (size_t i = 1; i < s.reports.size(); ++i) {
        auto const & a = s.reports[i - 1];
        auto const & b = s.reports[i];
        CHECK((a.D < b.D || (a.D == b.D && a.p < b.p)));
    }
}

TEST_CASE("sweep edge cases and determinism")
{
    SweepOptions o;
    o.D_min = -2;
    o.D_max = -2;
    CHECK(sweep(o).reports.empty());

    o.D_min = o.D_max = -23;
    o.p_min = o.p_max = 13;
    auto const one = sweep(o);
    REQUIRE(one.reports.size() == 1);
    CHECK(one.reports[0].label == CaseLabel::SPLIT);
    CHECK(one.reports[0].observed.to_string() == "[[3, 1, 1]]");

    SweepOptions a;
    a.D_min = -120;
    a.D_max = -60;
    a.p_max = 30;
    SweepOptions b = a;
    b.jobs = 3;
    std::vector<std::pair<i64, i64>> streamed;
    b.on_report = [&](VerifyReport const & r) { streamed.emplace_back(r.D, r.p); };
    auto const ra = sweep(a);
    auto const rb = sweep(b);
    REQUIRE(ra.reports.size() == rb.reports.size());
    REQUIRE(streamed.size() == ra.reports.size());
    for (size_t i = 0; i < ra.reports.size(); ++i) {
        CHECK(ra.reports[i].D == rb.reports[i].D);
        CHECK(ra.reports[i].p == rb.reports[i].p);
        CHECK(ra.reports[i].verdict == rb.reports[i].verdict);
        CHECK(ra.reports[i].observed == rb.reports[i].observed);
        CHECK(streamed[i] == std::pair<i64, i64>{ra.reports[i].D, ra.reports[i].p});
    }
}

TEST_CASE("supersingular j for p = 11")
{
    CHECK(is_supersingular_j({0, 0}, 11));
    CHECK(is_supersingular_j({1728 % 11, 0}, 11));
    CHECK_FALSE(is_supersingular_j({5, 0}, 11));
    i64 count = 0;
    for (u64 j = 0; j < 11; ++j)
        count += is_supersingular_j({j, 0}, 11);
    CHECK(count == 2);
    CHECK_THROWS_AS(is_supersingular_j({0, 0}, 3), InvalidArgument);
}

TEST_CASE("point counts over F_p^2 follow from F_p by Frobenius")
{
    for (u64 p : {5, 7, 11, 13, 17, 19, 23}) {
        for (u64 j = 0; j < p; ++j) {
            auto const [A, B] = model(j, p);
            i64 const a = static_cast<i64>(p) + 1 - count_fp(A, B, p);
            i64 const n2 = static_cast<i64>(p * p) + 1 - (a * a - 2 * static_cast<i64>(p));
            CHECK(static_cast<i64>(curve_point_count_fp2({j, 0}, p)) == n2);
            CHECK(is_supersingular_j({j, 0}, p) == (a % static_cast<i64>(p) == 0));
        }
    }
}

TEST_CASE("roots of H_D at non-split primes are supersingular")
{
    for (i64 D : {-15, -20, -23, -47, -84, -131}) {
        for (i64 p : {5, 7, 11, 13, 17, 19, 23}) {
            auto const disc = Discriminant::from(D);
            if (kronecker_disc(disc.fundamental, p) == 1 || disc.conductor % p == 0)
                continue;
            auto const r = verify_pair(D, p);
            for (auto const & root : r.roots)
                CHECK(is_supersingular_j(root.value, static_cast<u64>(p)));
        }
    }
}

TEST_CASE("OSIDH key space")
{
    auto r = osidh_keyspace(-4, 2, 2, 71);
    CHECK(r.Dn == -64);
    CHECK(r.h_Dn == 2);
    CHECK(r.mu_n == 2);
    CHECK(r.valid);
    CHECK(r.fp_roots_expected == 2);
    CHECK(r.fp_roots_observed == 2);
    CHECK(r.bound_holds);
    CHECK(r.bound_ln == doctest::Approx(8 * std::log(64.0)));

    r = osidh_keyspace(-4, 2, 2, 67);
    CHECK(r.h_Dn == 2);
    CHECK(r.fp_roots_expected == 0);
    CHECK(r.fp_roots_observed == 0);
    CHECK(r.observed->to_string() == "[[2, 1, 1]]");
    CHECK(r.galois_orbits_observed == 1);

    r = osidh_keyspace(-4, 2, 0, 7);
    CHECK(r.h_Dn == 1);

    r = osidh_keyspace(-4, 2, 4, 101);
    CHECK_FALSE(r.valid);
    CHECK(r.error == "InvalidParameters");
    CHECK_THROWS_AS(osidh_keyspace(-4, 7, 1, 7), InvalidParameters);

    for (i64 D0 = -3; D0 >= -20; --D0) {
        if (!is_valid_discriminant(D0))
            continue;
        for (i64 ell : {2, 3})
            for (int n = 0; n <= 4; ++n) {
                auto const k = osidh_keyspace(D0, ell, n, 1000003, false);
                CHECK(k.h_Dn == class_number(k.Dn));
                CHECK(k.bound_holds == (static_cast<double>(k.h_Dn) <= k.bound_ln));
                CHECK(k.bound_holds);
            }
    }
}
