#include "hcpf/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "hcpf/errors.hpp"

namespace hcpf {

bool QuadForm::is_primitive() const
{
    return std::gcd(std::gcd(a, b), c) == 1;
}

bool QuadForm::is_reduced() const
{
    if (a <= 0 || std::llabs(b) > a || a > c)
        return false;
    if ((std::llabs(b) == a || a == c) && b < 0)
        return false;
    return true;
}

QuadForm QuadForm::inverse() const
{
    return reduce({a, -b, c});
}

QuadForm reduce(QuadForm f)
{
    if (f.a <= 0)
        throw InvalidArgument("reduce expects a positive definite form");
    for (;;) {
        // normalize: -a < b <= a
        if (f.b > f.a || f.b <= -f.a) {
            i64 two_a = 2 * f.a;
            i64 k = static_cast<i64>(std::floor(static_cast<double>(f.a - f.b) / static_cast<double>(two_a)));
            // exact correction of the floating estimate
            while (f.b + k * two_a > f.a)
                --k;
            while (f.b + k * two_a <= -f.a)
                ++k;
            i64 nb = f.b + k * two_a;
            f.c = (nb * nb - f.discriminant()) / (4 * f.a);
            f.b = nb;
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        return f;
    }
}

QuadForm principal_form(i64 D)
{
    i64 b = mod(D, 2);
    return {1, b, (b * b - D) / 4};
}

std::vector<QuadForm> reduced_forms(i64 D)
{
    if (!is_valid_discriminant(D))
        throw InvalidDiscriminant("invalid discriminant " + std::to_string(D));
    std::vector<QuadForm> out;
    i64 const N = -D;
    for (i64 a = 1; 3 * a * a <= N; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (mod(b - D, 2) != 0)
                continue;
            i64 num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            i64 c = num / (4 * a);
            if (c < a)
                continue;
            if (c == a && b < 0)
                continue;
            QuadForm f{a, b, c};
            if (f.is_primitive())
                out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 class_number(i64 D)
{
    return static_cast<i64>(reduced_forms(D).size());
}

int unit_count(i64 D)
{
    if (D == -3)
        return 6;
    if (D == -4)
        return 4;
    return 2;
}

i64 class_number_formula(i64 D)
{
    auto const disc = Discriminant::from(D);
    i64 const hk = class_number(disc.fundamental);
    if (disc.conductor == 1)
        return hk;
    // h = hk * f / idx * prod (1 - (D_K/q)/q), kept in integers as
    // hk * prod q^(e-1) (q - (D_K/q)) / idx
    i64 num = hk;
    for (auto const & [q, e] : factor(disc.conductor).terms) {
        for (int i = 1; i < e; ++i)
            num *= q;
        num *= q - kronecker_disc(disc.fundamental, q);
    }
    i64 const idx = unit_count(disc.fundamental) / 2;
    return num / idx;
}

QuadForm compose(QuadForm const & f1, QuadForm const & f2)
{
    i64 const D = f1.discriminant();
    if (f2.discriminant() != D)
        throw DiscriminantMismatch("compose: discriminants " + std::to_string(D) + " and "
                                   + std::to_string(f2.discriminant()));
    // Shanks/Cohen composition of (a1,b1,c1) and (a2,b2,c2)
    QuadForm g1 = f1, g2 = f2;
    if (g1.a > g2.a)
        std::swap(g1, g2);
    i64 const s = (g1.b + g2.b) / 2;
    i64 const n = g2.b - s;
    i64 d, y1;
    if (g2.a % g1.a == 0) {
        y1 = 0;
        d = g1.a;
    } else {
        auto r = xgcd(g2.a, g1.a);
        d = r.g;
        y1 = r.x;
    }
    i64 d1, x2, y2;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        auto r = xgcd(s, d);
        d1 = r.g;
        x2 = r.x;
        y2 = -r.y;
    }
    i64 const v1 = g1.a / d1;
    i64 const v2 = g2.a / d1;
    __int128 rr = static_cast<__int128>(y1) * y2 % v1 * n - static_cast<__int128>(x2) * g2.c;
    i64 r = static_cast<i64>(((rr % v1) + v1) % v1);
    i64 const b3 = g2.b + 2 * v2 * r;
    i64 const a3 = v1 * v2;
    __int128 const num = static_cast<__int128>(b3) * b3 - D;
    i64 const c3 = static_cast<i64>(num / (4 * static_cast<__int128>(a3)));
    return reduce({a3, b3, c3});
}

QuadForm power(QuadForm const & f, i64 k)
{
    QuadForm result = principal_form(f.discriminant());
    QuadForm base = reduce(f);
    if (k < 0) {
        base = base.inverse();
        k = -k;
    }
    while (k) {
        if (k & 1)
            result = compose(result, base);
        base = compose(base, base);
        k >>= 1;
    }
    return result;
}

i64 order_of(QuadForm const & f)
{
    QuadForm const one = principal_form(f.discriminant());
    QuadForm const g = reduce(f);
    QuadForm x = g;
    i64 k = 1;
    while (x != one) {
        x = compose(x, g);
        ++k;
    }
    return k;
}

namespace {

// Number of elements killed by q^k, for k = 0..max.
std::vector<i64> torsion_counts(std::vector<i64> const & orders, i64 q)
{
    int max_k = 0;
    for (i64 o : orders)
        max_k = std::max(max_k, valuation(o, q));
    std::vector<i64> counts(static_cast<size_t>(max_k) + 1, 0);
    for (i64 o : orders) {
        // o | q^k iff o is a power of q with exponent <= k
        i64 rest = prime_to_part(o, q);
        if (rest != 1)
            continue;
        for (int k = valuation(o, q); k <= max_k; ++k)
            ++counts[k];
    }
    return counts;
}

} // namespace

ClassGroupStructure group_structure(i64 D)
{
    auto const forms = reduced_forms(D);
    ClassGroupStructure out;
    out.h = static_cast<i64>(forms.size());

    std::vector<i64> orders;
    orders.reserve(forms.size());
    for (auto const & f : forms)
        orders.push_back(order_of(f));

    // For each prime q | h, the number of cyclic q-factors of order >= q^k is
    // log_q(|G[q^k]| / |G[q^(k-1)]|). Invariant factors are assembled from
    // the q-parts, largest first.
    std::vector<i64> divisors_desc;
    for (auto const & [q, e] : factor(out.h).terms) {
        (void)e;
        auto counts = torsion_counts(orders, q);
        std::vector<int> at_least;  // at_least[k] for k >= 1
        for (size_t k = 1; k < counts.size(); ++k) {
            i64 ratio = counts[k] / counts[k - 1];
            int r = 0;
            while (ratio > 1) {
                ratio /= q;
                ++r;
            }
            at_least.push_back(r);
        }
        // exponents of the cyclic factors, descending
        std::vector<int> exps;
        int const n_factors = at_least.empty() ? 0 : at_least.front();
        for (int i = 0; i < n_factors; ++i) {
            int ex = 0;
            for (int r : at_least)
                if (r > i)
                    ++ex;
            exps.push_back(ex);
        }
        if (divisors_desc.size() < exps.size())
            divisors_desc.resize(exps.size(), 1);
        for (size_t i = 0; i < exps.size(); ++i)
            for (int j = 0; j < exps[i]; ++j)
                divisors_desc[i] *= q;
    }
    out.divisors.assign(divisors_desc.rbegin(), divisors_desc.rend());

    out.two_rank = 0;
    for (i64 d : out.divisors)
        if (d % 2 == 0)
            ++out.two_rank;

    QuadForm const one = principal_form(D);
    out.ambiguous_classes = 0;
    for (auto const & f : forms)
        if (compose(f, f) == one)
            ++out.ambiguous_classes;
    int log2_amb = 0;
    for (i64 a = out.ambiguous_classes; a > 1; a /= 2)
        ++log2_amb;
    if ((i64{1} << log2_amb) != out.ambiguous_classes || log2_amb != out.two_rank)
        throw Error("Internal", "2-rank from divisors disagrees with ambiguous class count for D = "
                                    + std::to_string(D));
    out.mu = out.two_rank + 1;

    // greedy generating set: repeatedly adjoin an element of largest order
    // outside the current subgroup
    std::set<QuadForm> subgroup{one};
    std::vector<size_t> idx(forms.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return orders[i] > orders[j]; });
    for (size_t i : idx) {
        if (static_cast<i64>(subgroup.size()) == out.h)
            break;
        if (subgroup.count(forms[i]))
            continue;
        out.generators.push_back(forms[i]);
        std::vector<QuadForm> frontier(subgroup.begin(), subgroup.end());
        std::set<QuadForm> grown = subgroup;
        // closure under multiplication by the new generator
        QuadForm const g = forms[i];
        std::vector<QuadForm> work(frontier);
        while (!work.empty()) {
            QuadForm x = compose(work.back(), g);
            work.pop_back();
            if (grown.insert(x).second)
                work.push_back(x);
        }
        subgroup = std::move(grown);
    }
    return out;
}

std::optional<QuadForm> prime_form(i64 D, i64 p)
{
    auto const disc = Discriminant::from(D);
    if (disc.conductor % p == 0)
        throw InvalidArgument("prime_form: p = " + std::to_string(p) + " divides the conductor of "
                              + std::to_string(D));
    i64 b = -1;
    if (p == 2) {
        for (i64 cand = 0; cand < 4; ++cand)
            if (mod(cand * cand - D, 8) == 0) {
                b = cand;
                break;
            }
    } else {
        auto r = sqrt_mod(D, p);
        if (r) {
            b = *r;
            if (mod(b - D, 2) != 0)
                b = p - b;
        }
    }
    if (b < 0)
        return std::nullopt;
    return reduce({p, b, (b * b - D) / (4 * p)});
}

} // namespace hcpf
