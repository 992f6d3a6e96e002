#include "doctest.h"

#include <optional>
#include <set>

#include "hcpf/errors.hpp"
#include "hcpf/genus.hpp"
#include "hcpf/quadforms.hpp"

using namespace hcpf;

namespace {

// Squarefree parts of all products of subsets of the radicands.
std::set<i64> span(std::vector<i64> const & gens)
{
    std::set<i64> out{1};
    for (i64 g : gens) {
        std::set<i64> next = out;
        for (i64 v : out)
            next.insert(squarefree_part(v * g));
        out = next;
    }
    return out;
}

template <class F>
std::optional<bool> covered(F && f)
{
    try {
        return f();
    } catch (NotCovered const &) {
        return std::nullopt;
    }
}

} // namespace

TEST_CASE("genus generators")
{
    auto g = genus_generators(-15);
    CHECK(g.generators == std::vector<i64>{5});
    CHECK(g.mu == 2);
    g = genus_generators(-64);
    CHECK(g.generators == std::vector<i64>{2});
    CHECK(g.mu == 2);
    g = genus_generators(-23);
    CHECK(g.generators.empty());
    CHECK(g.mu == 1);
}

TEST_CASE("mu from the radicands equals mu from the class group")
{
    for (i64 D = -3; D >= -3000; --D) {
        if (!is_valid_discriminant(D))
            continue;
        auto const g = genus_generators(D);
        CHECK(g.mu == group_structure(D).mu);
        CHECK(g.mu == static_cast<int>(g.generators.size()) + 1);
        // independent generators: the span has full size, and none is a square
        CHECK(span(g.generators).size() == (size_t(1) << g.generators.size()));
        for (i64 r : g.generators)
            CHECK(r > 1);
    }
}

TEST_CASE("splitting of odd primes in F+ via Legendre symbols over the whole span")
{
    for (i64 D = -3; D >= -1200; --D) {
        if (!is_valid_discriminant(D))
            continue;
        auto const gens = genus_generators(D).generators;
        auto const sp = span(gens);
        for (i64 p : primes_up_to(40)) {
            if (p == 2)
                continue;
            auto const s = multiquadratic_splitting(gens, p);
            CHECK(s.e * s.f * s.g == s.degree);
            CHECK(s.degree == i64(1) << gens.size());
            bool ramified = false;
            i64 squares = 0;
            for (i64 c : sp) {
                if (c % p == 0)
                    ramified = true;
                else if (legendre(c, p) == 1)
                    ++squares;
            }
            CHECK((s.e == 2) == ramified);
            if (!ramified)
                CHECK(s.f == s.degree / squares);
        }
    }
}

TEST_CASE("splits completely in F+")
{
    CHECK(splits_completely_in_Fplus(-15, 11));
    CHECK_FALSE(splits_completely_in_Fplus(-15, 7));
    CHECK(splits_completely_in_Fplus(-23, 5));
    CHECK(splits_completely_in_Fplus(-64, 71));
    CHECK_FALSE(splits_completely_in_Fplus(-64, 67));
}

TEST_CASE("ramification in F+")
{
    CHECK(multiquadratic_splitting(genus_generators(-20).generators, 5).e == 2);
    CHECK(ramification_data(-60, 5).e_Fplus == 2);
    CHECK(ramification_data(-84, 7).e_Fplus == 2);
    CHECK(is_special_discriminant(-20, 5));
    CHECK(is_special_discriminant(-7, 7));
    CHECK(is_special_discriminant(-24, 3) == false);
    CHECK(is_special_discriminant(-8, 2));
    for (i64 D = -3; D >= -1500; --D) {
        if (!is_valid_discriminant(D))
            continue;
        auto const disc = Discriminant::from(D);
        for (i64 p : primes_up_to(50)) {
            if (disc.fundamental % p != 0 || disc.conductor % p == 0 || is_special_discriminant(D, p))
                continue;
            auto const r = ramification_data(D, p);
            auto const s = multiquadratic_splitting(genus_generators(D).generators, p);
            CHECK(r.e_Fplus == s.e);
            CHECK(r.f_Fplus == s.f);
            CHECK((r.f_F_over_Fplus == 1 || r.f_F_over_Fplus == 2));
        }
    }
}

TEST_CASE("the residue case lists agree with the direct computation where they apply")
{
    int compared = 0, uncovered = 0;
    for (i64 D = -3; D >= -2000; --D) {
        if (!is_valid_discriminant(D))
            continue;
        auto const disc = Discriminant::from(D);
        for (i64 p : primes_up_to(60)) {
            if (disc.conductor % p == 0)
                continue;
            int const k = kronecker_disc(disc.fundamental, p);
            std::optional<bool> lemma;
            bool direct = false;
            if (k == -1) {
                lemma = covered([&] { return lemma_p0::inert_splits_completely(D, p); });
                direct = splits_completely_in_Fplus(D, p);
            } else if (k == 0 && !is_special_discriminant(D, p)) {
                auto const r = ramification_data(D, p);
                CHECK(lemma_p0::ramified_prime_unramified_in_Fplus(D, p) == (r.e_Fplus == 1));
                if (r.e_Fplus == 1) {
                    lemma = covered([&] { return lemma_p0::ramified_prime_splits_completely(D, p); });
                    direct = r.f_Fplus == 1;
                } else if (p > 2) {
                    lemma = covered([&] { return lemma_p0::ramified_prime_inert_in_F_over_Fplus(D, p); });
                    direct = r.f_F_over_Fplus == 2;
                }
            } else {
                continue;
            }
            if (lemma) {
                CHECK(*lemma == direct);
                ++compared;
            } else {
                ++uncovered;
            }
        }
    }
    CHECK(compared > 1000);
    MESSAGE("compared " << compared << ", not covered " << uncovered);
}

TEST_CASE("mu = 1 exactly for -4, -8, -16, -q^(2k+1) and -4q^(2k+1) with q = 3 mod 4")
{
    auto odd_power_of_3mod4_prime = [](i64 n) {
        auto const f = factor(n);
        return f.terms.size() == 1 && f.terms[0].first % 4 == 3 && f.terms[0].second % 2 == 1;
    };
    for (i64 D = -3; D >= -5000; --D) {
        if (!is_valid_discriminant(D))
            continue;
        bool const listed = D == -4 || D == -8 || D == -16 || odd_power_of_3mod4_prime(-D)
                            || (D % 4 == 0 && odd_power_of_3mod4_prime(-D / 4));
        CHECK_MESSAGE((genus_generators(D).mu == 1) == listed, "D = " << D);
    }
}
