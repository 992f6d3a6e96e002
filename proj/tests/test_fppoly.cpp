#include "doctest.h"

#include <random>

#include "hcpf/errors.hpp"
#include "hcpf/fppoly.hpp"

using namespace hcpf;

namespace {

FpPoly P(u64 p, std::vector<u64> c) { return FpPoly(p, std::move(c)); }

FpPoly expand(std::vector<FpFactor> const & fs, u64 p)
{
    FpPoly out = FpPoly::constant(p, 1);
    for (auto const & f : fs)
        for (int i = 0; i < f.multiplicity; ++i)
            out = out * f.factor;
    return out;
}

// No monic divisor of degree 1..deg/2, by enumeration.
bool irreducible_by_search(FpPoly const & g)
{
    u64 const p = g.modulus();
    int const n = g.degree();
    for (int d = 1; 2 * d <= n; ++d) {
        std::vector<u64> c(size_t(d) + 1, 0);
        c[size_t(d)] = 1;
        while (true) {
            if ((g % FpPoly(p, c)).is_zero())
                return false;
            size_t i = 0;
            while (i < size_t(d) && ++c[i] == p)
                c[i++] = 0;
            if (i == size_t(d))
                break;
        }
    }
    return n >= 1;
}

Fp2Element eval2(FpPoly const & f, Fp2Element x, Fp2Field const & F)
{
    Fp2Element acc{};
    for (int i = f.degree(); i >= 0; --i)
        acc = F.add(F.mul(acc, x), F.from_base(f[size_t(i)]));
    return acc;
}

FpPoly random_poly(u64 p, int deg, std::mt19937_64 & rng)
{
    std::vector<u64> c(size_t(deg) + 1);
    for (auto & v : c)
        v = rng() % p;
    c.back() = 1 + rng() % (p - 1);
    return FpPoly(p, c);
}

} // namespace

TEST_CASE("arithmetic")
{
    auto const f = P(7, {1, 2, 1});
    CHECK(f.degree() == 2);
    CHECK(f == P(7, {1, 1}) * P(7, {1, 1}));
    CHECK(P(7, {8, 9, 14}) == P(7, {1, 2}));
    CHECK(FpPoly(7).degree() == -1);
    CHECK((f - f).is_zero());
    auto const [q, r] = divrem(P(5, {1, 0, 0, 1}), P(5, {2, 1}));
    CHECK(q * P(5, {2, 1}) + r == P(5, {1, 0, 0, 1}));
    CHECK(r.degree() < 1);
    CHECK(gcd(P(7, {1, 2, 1}), P(7, {6, 0, 1})) == P(7, {1, 1}));
    CHECK(P(5, {1, 2, 3}).derivative() == P(5, {2, 6}));
    CHECK(P(5, {1, 2, 3}).eval(2) == (1 + 4 + 12) % 5);
    CHECK(powmod(FpPoly::x(3), 27, P(3, {1, 2, 0, 1})) == FpPoly::x(3) % P(3, {1, 2, 0, 1}));
    CHECK_THROWS(divrem(f, FpPoly(7)));

    u64 const q61 = (1ULL << 61) - 1;
    auto const g = P(q61, {q61 - 1, 1});
    CHECK((g * g) == P(q61, {1, q61 - 2, 1}));
}

TEST_CASE("reduction of class polynomials")
{
    IntPoly H15;
    for (char const * c : {"-121287375", "191025", "1"})
        H15.coeffs.emplace_back(c);
    CHECK(reduce_mod(H15, 7) == P(7, {1, 2, 1}));
    IntPoly lin;
    lin.coeffs = {-1728, 1};
    CHECK(reduce_mod(lin, 5) == P(5, {2, 1}));
    IntPoly x;
    x.coeffs = {0, 1};
    CHECK(reduce_mod(x, 2) == P(2, {0, 1}));
}

TEST_CASE("factor examples")
{
    auto fs = factor(P(7, {1, 2, 1}));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].factor == P(7, {1, 1}));
    CHECK(fs[0].multiplicity == 2);

    IntPoly H23;
    for (char const * c : {"12771880859375", "-5151296875", "3491750", "1"})
        H23.coeffs.emplace_back(c);
    fs = factor(reduce_mod(H23, 2));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].factor == P(2, {1, 1, 0, 1}));
    CHECK(signature(fs).to_string() == "[[3, 1, 1]]");

    fs = factor(reduce_mod(H23, 11));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].factor == P(11, {0, 1}));
    CHECK(fs[1].factor == P(11, {10, 1}));
    CHECK(fs[1].multiplicity == 2);
    FactorSignature expected;
    expected.add(1, 1);
    expected.add(1, 2);
    CHECK(signature(fs) == expected);

    fs = factor(P(5, {0, 0, 0, 1}));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].factor == P(5, {0, 1}));
    CHECK(fs[0].multiplicity == 3);
}

TEST_CASE("squarefree decomposition with p-th powers")
{
    for (u64 p : {2, 3, 5, 7}) {
        // (x+1)^(2p) (x^2+x+c)^p (x+2): the first two have zero derivative
        FpPoly const a = P(p, {1, 1});
        FpPoly f = FpPoly::constant(p, 1);
        for (u64 i = 0; i < 2 * p; ++i)
            f = f * a;
        FpPoly b = FpPoly::constant(p, 1);
        for (u64 i = 0; i < p; ++i)
            b = b * P(p, {p == 2 ? 1u : 2u % p, 0, 1});
        f = f * b * P(p, {2 % p, 1});
        auto const sq = squarefree_decomposition(f);
        CHECK(expand(sq, p) == f.monic());
        for (auto const & part : sq)
            CHECK(gcd(part.factor, part.factor.derivative()).is_one());
        auto const fs = factor(f);
        CHECK(expand(fs, p) == f.monic());
    }
}

TEST_CASE("distinct and equal degree stages")
{
    std::mt19937_64 rng(7);
    // x^(p^2) - x over F_3: product of all monic irreducibles of degree 1 and 2
    FpPoly const f = FpPoly::monomial(3, 1, 9) - FpPoly::x(3);
    auto const ddf = distinct_degree_factorization(f);
    REQUIRE(ddf.size() == 2);
    CHECK(ddf[0].second == 1);
    CHECK(ddf[0].first.degree() == 3);
    CHECK(ddf[1].second == 2);
    CHECK(ddf[1].first.degree() == 6);
    auto const quads = equal_degree_factorization(ddf[1].first, 2, rng);
    CHECK(quads.size() == 3);
    for (auto const & q : quads)
        CHECK(irreducible_by_search(q));

    // same over F_2, where splitting uses the trace map
    FpPoly const g = FpPoly::monomial(2, 1, 16) - FpPoly::x(2);
    auto const ddf2 = distinct_degree_factorization(g);
    REQUIRE(ddf2.size() == 3);
    CHECK(ddf2[2].second == 4);
    auto const quartics = equal_degree_factorization(ddf2[2].first, 4, rng);
    CHECK(quartics.size() == 3);
}

TEST_CASE("random polynomials: re-multiplication and irreducibility")
{
    std::mt19937_64 rng(2024);
    for (u64 p : {2, 3, 5, 7, 101}) {
        for (int trial = 0; trial < 60; ++trial) {
            int const deg = 1 + int(rng() % 14);
            FpPoly f = random_poly(p, deg, rng);
            if (trial % 3 == 0)
                f = f * f.monic();
            auto const fs = factor(f, rng());
            CHECK(expand(fs, p) == f.monic());
            for (size_t i = 0; i < fs.size(); ++i) {
                CHECK(fs[i].factor.lead() == 1);
                CHECK(is_irreducible(fs[i].factor));
                if (p <= 5 && fs[i].factor.degree() <= 8)
                    CHECK(irreducible_by_search(fs[i].factor));
                if (i) {
                    auto const & a = fs[i - 1];
                    auto const & b = fs[i];
                    bool const ordered = a.factor.degree() != b.factor.degree()
                                             ? a.factor.degree() < b.factor.degree()
                                             : (a.multiplicity != b.multiplicity ? a.multiplicity < b.multiplicity
                                                                                 : a.factor < b.factor);
                    CHECK(ordered);
                }
            }
            CHECK(signature(fs).total_degree() == f.degree());
        }
    }
}

TEST_CASE("factoring is deterministic per seed and canonical across seeds")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        FpPoly const f = random_poly(101, 20, rng);
        auto const a = factor(f, 1);
        auto const b = factor(f, 12345);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].factor == b[i].factor);
            CHECK(a[i].multiplicity == b[i].multiplicity);
        }
    }
}

TEST_CASE("Rabin test against exhaustive search")
{
    for (u64 p : {2, 3}) {
        for (int d = 1; d <= 6; ++d) {
            std::vector<u64> c(size_t(d) + 1, 0);
            c[size_t(d)] = 1;
            while (true) {
                FpPoly const g(p, c);
                CHECK(is_irreducible(g) == irreducible_by_search(g));
                size_t i = 0;
                while (i < size_t(d) && ++c[i] == p)
                    c[i++] = 0;
                if (i == size_t(d))
                    break;
            }
        }
    }
}

TEST_CASE("F_p^2 model")
{
    for (u64 p : {2, 3, 5, 7, 11, 13, 101}) {
        Fp2Field const F(p);
        std::mt19937_64 rng(p);
        for (int i = 0; i < 200; ++i) {
            Fp2Element const a{rng() % p, rng() % p}, b{rng() % p, rng() % p};
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.sub(F.add(a, b), b) == a);
            CHECK(F.norm(a) == F.pow(a, p + 1).u);
            CHECK(F.pow(a, p + 1).v == 0);
            if (a != Fp2Element{}) {
                CHECK(F.mul(a, F.inv(a)) == F.from_base(1));
                CHECK(F.pow(a, p * p - 1) == F.from_base(1));
            }
        }
        // t is not in F_p
        Fp2Element const t{0, 1};
        CHECK(F.pow(t, p) != t);
    }
    CHECK(Fp2Field(3).c0() == 2);
    CHECK(Fp2Field(7).c0() == 3);
}

TEST_CASE("roots in F_p^2")
{
    auto r = roots_in_fp2(P(7, {1, 2, 1}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].first == Fp2Element{6, 0});
    CHECK(r[0].second == 2);
    CHECK(1728 % 7 == 6);

    // x^2 + 1 over F_3, r = -1: roots +-t
    r = roots_in_fp2(P(3, {1, 0, 1}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].first == Fp2Element{0, 1});
    CHECK(r[1].first == Fp2Element{0, 2});

    r = roots_in_fp2(P(5, {0, 1}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].first == Fp2Element{0, 0});

    std::mt19937_64 rng(5);
    for (u64 p : {2, 3, 5, 13, 101}) {
        Fp2Field const F(p);
        for (int trial = 0; trial < 40; ++trial) {
            FpPoly const f = random_poly(p, 1 + int(rng() % 8), rng).monic();
            auto const fs = factor(f);
            i64 expected = 0;
            for (auto const & g : fs)
                if (g.factor.degree() <= 2)
                    expected += g.factor.degree();
            auto const roots = roots_in_fp2(fs, p);
            CHECK(static_cast<i64>(roots.size()) == expected);
            for (auto const & [z, m] : roots) {
                CHECK(eval2(f, z, F) == Fp2Element{});
                (void)m;
            }
        }
    }
}

TEST_CASE("signature")
{
    FactorSignature s;
    s.add(1, 2);
    CHECK(s.to_string() == "[[1, 2, 1]]");
    CHECK(s.total_degree() == 2);
    s.add(2, 1, 3);
    s.add(1, 2);
    CHECK(s.total_degree() == 10);
    CHECK(s.to_string() == "[[1, 2, 2], [2, 1, 3]]");
}
