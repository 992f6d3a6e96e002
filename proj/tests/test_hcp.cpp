#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "hcpf/errors.hpp"
#include "hcpf/hcp.hpp"

using namespace hcpf;

namespace {

IntPoly poly(std::vector<char const *> ascending)
{
    IntPoly p;
    for (auto const * c : ascending)
        p.coeffs.emplace_back(c);
    return p;
}

// j = E4^3 / Delta from the Lambert series of E4 and the product for Delta.
BigComplex j_qseries(QuadForm const & f, i64 D, long bits)
{
    BigFloat const pi = BigFloat::pi(bits);
    BigFloat const r = exp(-(pi * sqrt(BigFloat(-D, bits)) / BigFloat(f.a, bits)));
    BigFloat const theta = -(pi * BigFloat(f.b, bits) / BigFloat(f.a, bits));
    BigComplex const q(r * cos(theta), r * sin(theta));
    BigComplex const one(BigFloat(1, bits), BigFloat(0, bits));

    BigComplex e4 = one;
    BigComplex prod = one;
    BigComplex qn = q;
    for (long n = 1;; ++n) {
        BigComplex const term = qn / (one - qn);
        BigFloat const n3(n * n * n * 240, bits);
        e4 += BigComplex(term.re * n3, term.im * n3);
        BigComplex factor = one - qn;
        for (int k = 0; k < 24; ++k)
            prod *= factor;
        if (qn.abs().exponent2() < -bits - 16)
            break;
        qn *= q;
    }
    return (e4 * e4 * e4) / (q * prod);
}

IntPoly hcp_qseries(i64 D, long bits)
{
    std::vector<BigComplex> poly{BigComplex(BigFloat(1, bits), BigFloat(0, bits))};
    for (auto const & f : reduced_forms(D)) {
        BigComplex const j = j_qseries(f, D, bits);
        std::vector<BigComplex> next(poly.size() + 1, BigComplex(bits));
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * j;
        }
        poly = std::move(next);
    }
    IntPoly out;
    for (auto const & c : poly) {
        mpz_class const r = c.re.round();
        BigFloat const err = abs(c.re - BigFloat(r, bits));
        REQUIRE(err.to_double() < 0.25);
        REQUIRE(abs(c.im).to_double() < 0.25);
        out.coeffs.push_back(r);
    }
    return out;
}

// Sylvester determinant by fraction-free elimination.
mpz_class det_bareiss(std::vector<std::vector<mpz_class>> m)
{
    size_t const n = m.size();
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

mpz_class disc_sylvester(IntPoly const & f)
{
    int const n = f.degree();
    IntPoly df;
    for (int i = 1; i <= n; ++i)
        df.coeffs.push_back(f.coeffs[size_t(i)] * i);
    int const m = n - 1;
    size_t const size = size_t(n + m);
    std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            s[size_t(r)][size_t(r + i)] = f.coeffs[size_t(n - i)];
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            s[size_t(m + r)][size_t(r + i)] = df.coeffs[size_t(m - i)];
    mpz_class res = det_bareiss(s);
    if ((n * (n - 1) / 2) % 2)
        res = -res;
    return res / f.coeffs.back();
}

} // namespace

TEST_CASE("small class polynomials")
{
    CHECK(hilbert_class_polynomial(-3) == poly({"0", "1"}));
    CHECK(hilbert_class_polynomial(-4) == poly({"-1728", "1"}));
    CHECK(hilbert_class_polynomial(-15) == poly({"-121287375", "191025", "1"}));
    CHECK(hilbert_class_polynomial(-15).to_string() == "x^2 + 191025*x - 121287375");
    CHECK_THROWS_AS(hilbert_class_polynomial(-5), InvalidDiscriminant);
}

TEST_CASE("j at CM points")
{
    long const bits = 200;
    auto j = j_at({1, 1, 1}, -3, bits);
    CHECK(j.abs().to_double() < 1e-30);
    j = j_at({1, 0, 1}, -4, bits);
    CHECK(std::abs(j.re.to_double() - 1728) < 1e-20);
    CHECK(std::abs(j.im.to_double()) < 1e-20);
    j = j_at({1, 1, 6}, -23, bits);
    CHECK(j.re.to_double() == doctest::Approx(-3493225.0).epsilon(1e-3));
    CHECK(std::abs(j.im.to_double()) < 1e-20);
    auto const jq = j_qseries({2, 1, 3}, -23, bits);
    auto const jl = j_at({2, 1, 3}, -23, bits);
    CHECK(std::abs((jq.re - jl.re).to_double()) < 1e-30);
    CHECK(std::abs((jq.im - jl.im).to_double()) < 1e-30);
}

TEST_CASE("precision bound")
{
    CHECK(precision_bound(-4) >= 42);
    CHECK(precision_bound(-4) <= 50);
    CHECK(precision_bound(-3) >= 40);
    CHECK(precision_bound(-163) > precision_bound(-4));
    for (i64 D : {-23, -71, -399, -719, -1151}) {
        size_t bits = 0;
        for (auto const & c : hilbert_class_polynomial(D).coeffs)
            bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
        CHECK(precision_bound(D) > static_cast<long>(bits));
    }
}

TEST_CASE("independent recomputation at doubled precision")
{
    for (i64 D : {-15, -23, -47, -71, -84, -119, -155, -191, -260, -399, -719}) {
        long const bits = 2 * precision_bound(D);
        auto const H = hilbert_class_polynomial_detailed(D);
        CHECK(H.poly == hcp_qseries(D, bits));
        CHECK(H.poly.degree() == class_number(D));
        CHECK(H.poly.is_monic());
        CHECK(H.budget.attempt >= 1);
    }
}

TEST_CASE("exact discriminant")
{
    CHECK(poly_discriminant(poly({"-1728", "1"})) == 1);
    CHECK(poly_discriminant(poly({"0", "0", "1"})) == 0);
    auto const d15 = poly_discriminant(hilbert_class_polynomial(-15));
    CHECK(d15 == mpz_class("36975700125"));
    CHECK(d15 == 5 * mpz_class(85995) * 85995);
    for (i64 D : {-23, -47, -56, -71, -84, -95, -260}) {
        auto const H = hilbert_class_polynomial(D);
        CHECK(poly_discriminant(H) == disc_sylvester(H));
    }
    auto const a = poly({"1", "2", "3"});
    auto const b = poly({"-1", "0", "1"});
    // Res(3x^2+2x+1, x^2-1) = f(1) f(-1) = 6 * 2
    CHECK(resultant(a, b) == 12);
}

TEST_CASE("i_p from the discriminant")
{
    CHECK(ip(-15, 7) == 2);
    CHECK(ip(-15, 11) == 0);
    CHECK(ip(-23, 11) == 2);
    CHECK(ip(-23, 5) > 3);
    CHECK_THROWS_AS(ip(-15, 5), InvalidArgument);
    CHECK_THROWS_AS(ip_from_discriminant(mpz_class(7 * 49), -15, 7), OddValuation);
}

TEST_CASE("cache records")
{
    auto const H = hilbert_class_polynomial(-23);
    std::string const rec = HcpCache::format_record(-23, H);
    CHECK(rec == "-23\t3\t12771880859375,-5151296875,3491750");
    auto const [D, back] = HcpCache::parse_record(rec);
    CHECK(D == -23);
    CHECK(back == H);

    for (std::string bad : {"-23\t3\t1,2", "-23\t3\t1,2,x", "-23 3 1,2,3", "-23\t3\t+1,2,3", "-23\t3\t01,2,3",
                            "-23\t2\t1,2,3", "-23\t0\t", ""})
        CHECK_THROWS_AS(HcpCache::parse_record(bad), CacheCorrupt);
}

TEST_CASE("cache file round trip")
{
    auto const dir = std::filesystem::temp_directory_path() / "hcpf_cache_test";
    std::filesystem::create_directories(dir);
    auto const path = dir / "hcp.tsv";
    std::filesystem::remove(path);
    {
        HcpCache c(path);
        c.load();
        CHECK(c.size() == 0);
        c.get(-23);
        c.get(-15);
        CHECK(c.size() == 2);
        c.save();
    }
    {
        HcpCache c(path);
        c.load();
        CHECK(c.size() == 2);
        REQUIRE(c.find(-15));
        CHECK(*c.find(-15) == hilbert_class_polynomial(-15));
        CHECK_FALSE(c.find(-47));
    }
    {
        std::ofstream(path, std::ios::app) << "-15\t2\t1,2\n";
        HcpCache c(path);
        CHECK_THROWS_AS(c.load(), CacheCorrupt);
    }
    std::filesystem::remove_all(dir);
}
