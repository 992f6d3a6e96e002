#include "hcpf/predictor.hpp"

#include <algorithm>
#include <array>

#include "hcpf/errors.hpp"
#include "hcpf/genus.hpp"
#include "hcpf/quadforms.hpp"

namespace hcpf {

namespace {

constexpr std::array<std::pair<CaseLabel, std::string_view>, 9> kLabels{{
    {CaseLabel::SPLIT, "SPLIT"},
    {CaseLabel::INERT_UNRAMIFIED, "INERT_UNRAMIFIED"},
    {CaseLabel::SPECIAL_D, "SPECIAL_D"},
    {CaseLabel::RAMIFIED_UNRAM_FPLUS, "RAMIFIED_UNRAM_FPLUS"},
    {CaseLabel::RAMIFIED_RAM_FPLUS, "RAMIFIED_RAM_FPLUS"},
    {CaseLabel::P_DIVIDES_F, "P_DIVIDES_F"},
    {CaseLabel::P_DIVIDES_ND, "P_DIVIDES_ND"},
    {CaseLabel::OUT_OF_THEOREM_RANGE, "OUT_OF_THEOREM_RANGE"},
    {CaseLabel::SKIPPED_UNSUPPORTED, "SKIPPED_UNSUPPORTED"},
}};

i64 pow2(int k)
{
    if (k < 0)
        throw Error("Internal", "negative power of two");
    return i64{1} << k;
}

void check_inputs(i64 D, i64 p)
{
    if (!is_valid_discriminant(D))
        throw InvalidDiscriminant("invalid discriminant " + std::to_string(D));
    if (p < 2 || !is_prime(static_cast<u64>(p)))
        throw InvalidArgument(std::to_string(p) + " is not prime");
}

// D > -p^3 without overflow
bool above_minus_p_cubed(i64 D, i64 p)
{
    if (p > 2000000)
        return true;
    return D > -p * p * p;
}

using ZPoly = std::vector<mpz_class>;

ZPoly lift(FpPoly const & f)
{
    ZPoly out;
    for (u64 c : f.coeffs())
        out.emplace_back(static_cast<unsigned long>(c));
    return out;
}

ZPoly multiply(ZPoly const & a, ZPoly const & b)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            out[i + k] += a[i] * b[k];
    return out;
}

} // namespace

std::string_view to_string(CaseLabel label)
{
    for (auto const & [l, name] : kLabels)
        if (l == label)
            return name;
    return "?";
}

std::optional<CaseLabel> parse_case_label(std::string_view s)
{
    for (auto const & [l, name] : kLabels)
        if (name == s)
            return l;
    return std::nullopt;
}

std::vector<CaseLabel> const & all_case_labels()
{
    static std::vector<CaseLabel> const labels = [] {
        std::vector<CaseLabel> v;
        for (auto const & [l, name] : kLabels)
            v.push_back(l);
        return v;
    }();
    return labels;
}

i64 total_degree(PomShape const & shape)
{
    i64 s = 0;
    for (auto const & ps : shape)
        s += static_cast<i64>(ps.e) * ps.deg * ps.count;
    return s;
}

FactorSignature signature_from_shape(PomShape const & shape)
{
    FactorSignature sig;
    for (auto const & ps : shape)
        sig.add(ps.deg, ps.e, ps.count);
    return sig;
}

std::string_view to_string(RootTag tag)
{
    switch (tag) {
    case RootTag::Zero:
        return "zero";
    case RootTag::J1728:
        return "s1728";
    case RootTag::Other:
        return "other";
    }
    return "?";
}

RootTag tag_root(Fp2Element root, u64 p)
{
    if (root.v != 0)
        return RootTag::Other;
    if (root.u == 0)
        return RootTag::Zero;
    if (root.u == 1728 % p)
        return RootTag::J1728;
    return RootTag::Other;
}

bool matches(MultipleRootStructure const & s, std::vector<ObservedRoot> const & roots)
{
    std::vector<ObservedRoot> multiple;
    for (auto const & r : roots)
        if (r.multiplicity >= 2)
            multiple.push_back(r);
    if (multiple.size() != s.roots.size())
        return false;
    std::vector<size_t> perm(multiple.size());
    for (size_t i = 0; i < perm.size(); ++i)
        perm[i] = i;
    do {
        bool ok = true;
        for (size_t i = 0; i < perm.size() && ok; ++i) {
            auto const & req = s.roots[i];
            auto const & r = multiple[perm[i]];
            ok = r.multiplicity == req.multiplicity && r.tag == req.tag && (!req.in_Fp || r.value.v == 0);
        }
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// ---------------------------------------------------------------------------

HcpData::HcpData(i64 D, HcpCache * cache)
    : D_(D)
    , cache_(cache)
{
}

IntPoly const & HcpData::poly()
{
    if (!poly_)
        poly_ = cache_ ? cache_->get(D_) : hilbert_class_polynomial(D_);
    return *poly_;
}

mpz_class const & HcpData::discriminant()
{
    if (!disc_)
        disc_ = poly_discriminant(poly());
    return *disc_;
}

bool HcpData::p_divides_index(i64 p)
{
    if (D_ % p != 0)
        return ip(p) > 0;
    return dedekind_index_divisible(poly(), static_cast<u64>(p));
}

int HcpData::ip(i64 p)
{
    if (poly().degree() == 1)
        return 0;
    return ip_from_discriminant(discriminant(), D_, p);
}

bool dedekind_index_divisible(IntPoly const & H, u64 p)
{
    if (!H.is_monic())
        throw InvalidArgument("Dedekind criterion needs a monic polynomial");
    FpPoly const Hbar = reduce_mod(H, p);
    FpPoly radical = FpPoly::constant(p, 1);
    for (auto const & f : factor(Hbar))
        radical = radical * f.factor;
    FpPoly const rest = Hbar / radical;
    if (rest.degree() == 0)
        return false;
    // F = (H - G R) / p for monic lifts G, R of the radical and the cofactor
    ZPoly prod = multiply(lift(radical), lift(rest));
    ZPoly diff = H.coeffs;
    diff.resize(std::max(diff.size(), prod.size()), 0);
    mpz_class const pz(static_cast<unsigned long>(p));
    IntPoly F;
    for (size_t i = 0; i < diff.size(); ++i) {
        mpz_class c = diff[i] - (i < prod.size() ? prod[i] : mpz_class(0));
        if (!mpz_divisible_p(c.get_mpz_t(), pz.get_mpz_t()))
            throw Error("Internal", "Dedekind criterion: lift is not congruent to H");
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t());
        F.coeffs.push_back(c);
    }
    FpPoly const Fbar = reduce_mod(F, p);
    return gcd(gcd(Fbar, radical), rest).degree() > 0;
}

// ---------------------------------------------------------------------------

CaseLabel classify(i64 D, i64 p, HcpData & data, HcpCache *)
{
    check_inputs(D, p);
    auto const disc = Discriminant::from(D);
    if (disc.conductor % p == 0)
        return data.p_divides_index(p) ? CaseLabel::SKIPPED_UNSUPPORTED : CaseLabel::P_DIVIDES_F;
    int const k = kronecker_disc(disc.fundamental, p);
    if (k == 0 && is_special_discriminant(D, p))
        return CaseLabel::SPECIAL_D;
    bool divides;
    std::optional<int> ipv;
    if (D % p != 0) {
        ipv = data.ip(p);
        divides = *ipv > 0;
    } else {
        divides = data.p_divides_index(p);
    }
    if (divides) {
        if (k == 1)
            throw Error("Internal", "a split prime divides n_D for D = " + std::to_string(D));
        if (p >= 5 && ipv && above_minus_p_cubed(D, p) && k == -1 && *ipv >= 1 && *ipv <= 3)
            return CaseLabel::P_DIVIDES_ND;
        return CaseLabel::OUT_OF_THEOREM_RANGE;
    }
    if (k == 1)
        return CaseLabel::SPLIT;
    if (k == -1)
        return CaseLabel::INERT_UNRAMIFIED;
    return ramification_data(D, p).e_Fplus == 1 ? CaseLabel::RAMIFIED_UNRAM_FPLUS : CaseLabel::RAMIFIED_RAM_FPLUS;
}

CaseLabel classify(i64 D, i64 p, HcpCache * cache)
{
    HcpData data(D, cache);
    return classify(D, p, data, cache);
}

PomShape predict_pOM(i64 D, i64 p)
{
    PredictionParameters params;
    return predict_pOM(D, p, params);
}

PomShape predict_pOM(i64 D, i64 p, PredictionParameters & params)
{
    check_inputs(D, p);
    auto const disc = Discriminant::from(D);
    i64 const h = class_number(D);
    params.h = h;

    if (disc.conductor % p == 0) {
        i64 const fp = prime_to_part(disc.conductor, p);
        i64 const Dp = fp * fp * disc.fundamental;
        PredictionParameters sub;
        PomShape shape = predict_pOM(Dp, p, sub);
        i64 const hp = h / sub.h;
        params.mu = sub.mu;
        params.t = sub.t;
        params.s = sub.s;
        params.g = sub.g;
        params.lambda = sub.lambda;
        params.D_p = Dp;
        params.h_p_part = hp;
        for (auto & ps : shape)
            ps.e *= static_cast<int>(hp);
        return shape;
    }

    auto const cls = group_structure(D);
    int const mu = cls.mu;
    if (genus_generators(D).mu != mu)
        throw Error("Internal", "genus field degree disagrees with the 2-rank for D = " + std::to_string(D));
    params.mu = mu;

    PomShape shape;
    auto push = [&](int e, int deg, i64 count) {
        if (count < 0)
            throw Error("Internal", "negative prime count in the splitting of p = " + std::to_string(p)
                                        + " for D = " + std::to_string(D));
        if (count > 0)
            shape.push_back({e, deg, count});
    };

    int const k = kronecker_disc(disc.fundamental, p);
    if (k == 1) {
        i64 const lambda = order_of(*prime_form(D, p));
        params.lambda = lambda;
        params.g = h / lambda;
        push(1, static_cast<int>(lambda), h / lambda);
    } else if (k == -1) {
        i64 const t = splits_completely_in_Fplus(D, p) ? pow2(mu - 1) : 0;
        params.t = t;
        params.g = (h + t) / 2;
        push(1, 1, t);
        push(1, 2, (h - t) / 2);
    } else if (is_special_discriminant(D, p)) {
        if (p % 4 == 1) {
            params.g = h / 2;
            push(2, 1, h / 2);
        } else {
            params.g = (h + 1) / 2;
            push(1, 1, 1);
            push(2, 1, (h - 1) / 2);
        }
    } else {
        auto const rd = ramification_data(D, p);
        if (rd.e_Fplus == 1) {
            i64 const s = pow2(mu - 2);
            i64 const t = rd.f_Fplus == 1 ? pow2(mu - 2) : 0;
            // g = (h + 2t)/4 + 2^(mu-3)
            i64 const g8 = 2 * h + 4 * t + pow2(mu);
            if (g8 % 8)
                throw Error("Internal", "non-integral prime count for D = " + std::to_string(D));
            i64 const g = g8 / 8;
            params.s = s;
            params.t = t;
            params.g = g;
            push(1, 2, s);
            push(2, 1, t);
            push(2, 2, g - s - t);
        } else {
            i64 const t = rd.f_F_over_Fplus == 2 ? pow2(mu - 2) : 0;
            if ((h + 2 * t) % 4)
                throw Error("Internal", "non-integral prime count for D = " + std::to_string(D));
            i64 const g = (h + 2 * t) / 4;
            params.t = t;
            params.g = g;
            push(2, 1, t);
            push(2, 2, g - t);
        }
    }
    if (total_degree(shape) != h)
        throw Error("Internal", "prime shape does not account for [M:Q] for D = " + std::to_string(D));
    return shape;
}

std::vector<MultipleRootStructure> predict_multiplicity_structure(i64 D, i64 p, int ip)
{
    check_inputs(D, p);
    auto const disc = Discriminant::from(D);
    if (p < 5 || D % p == 0 || !above_minus_p_cubed(D, p) || kronecker_disc(disc.fundamental, p) != -1)
        throw OutOfRange("multiple-root structure needs p >= 5 inert, p not dividing D and D > -p^3");
    if (ip < 1 || ip > 3)
        throw OutOfRange("multiple-root structure is only known for 1 <= i_p <= 3 (i_p = " + std::to_string(ip) + ")");
    RootRequirement const other2{2, RootTag::Other, false};
    RootRequirement const other2_fp{2, RootTag::Other, true};
    RootRequirement const j1728{2, RootTag::J1728, true};
    switch (ip) {
    case 1:
        return {{"i_p=1", {other2_fp}, "one double root in F_p, not 0 or 1728"}};
    case 2:
        return {{"i_p=2 (a)", {other2, other2}, "two double roots in F_p^2, not 0 or 1728"},
                {"i_p=2 (b)", {j1728}, "one double root at 1728"}};
    default:
        return {{"i_p=3 (i)", {other2, other2, other2}, "three double roots in F_p^2, not 0 or 1728"},
                {"i_p=3 (ii)", {j1728, other2_fp}, "double roots at 1728 and at another value of F_p"},
                {"i_p=3 (iii)", {{2, RootTag::Zero, true}}, "one double root at 0"},
                {"i_p=3 (iv)", {{3, RootTag::Other, true}}, "one triple root in F_p, not 0 or 1728"}};
    }
}

std::vector<MultipleRootStructure> predict_multiplicity_structure(i64 D, i64 p, HcpCache * cache)
{
    check_inputs(D, p);
    if (D % p == 0)
        throw OutOfRange("multiple-root structure needs p not dividing D");
    HcpData data(D, cache);
    return predict_multiplicity_structure(D, p, data.ip(p));
}

namespace {

bool ibukiyama_hypotheses(i64 D, i64 p, i64 & q)
{
    q = D % 4 == 0 ? -D / 4 : -D;
    if (!(D == -q || D == -4 * q))
        return false;
    if (q < 3 || q % 4 != 3 || !is_prime(static_cast<u64>(q)) || p == q)
        return false;
    if (p == 2 || legendre(-q, p) != -1)
        return false;
    return above_minus_p_cubed(D, p) && D < -p;
}

} // namespace

std::vector<FactorSignature> ibukiyama_signatures(i64 D, i64 p, int ip)
{
    check_inputs(D, p);
    i64 q;
    if (!ibukiyama_hypotheses(D, p, q) || ip < 1 || ip > 2)
        throw NotApplicable("outside the hypotheses of the Ibukiyama order corollary for D = " + std::to_string(D)
                            + ", p = " + std::to_string(p));
    i64 const h = class_number(D);
    std::vector<FactorSignature> out;
    if (ip == 1) {
        FactorSignature s;
        s.add(1, 1, 1);
        s.add(1, 2, 1);
        s.add(2, 1, (h - 3) / 2);
        out.push_back(s);
    } else {
        for (int deg : {1, 2}) {
            i64 const rest = h - 2 * deg - 1;
            if (rest < 0)
                continue;
            FactorSignature s;
            s.add(1, 1, 1);
            s.add(deg, 2, 1);
            s.add(2, 1, rest / 2);
            out.push_back(s);
        }
    }
    return out;
}

Prediction predict(i64 D, i64 p, HcpData & data, HcpCache * cache)
{
    Prediction out;
    out.D = D;
    out.p = p;
    out.label = classify(D, p, data, cache);
    out.pOM_shape = predict_pOM(D, p, out.params);
    if (D % p != 0)
        out.params.i_p = data.ip(p);
    switch (out.label) {
    case CaseLabel::SPLIT:
    case CaseLabel::INERT_UNRAMIFIED:
    case CaseLabel::SPECIAL_D:
    case CaseLabel::RAMIFIED_UNRAM_FPLUS:
    case CaseLabel::RAMIFIED_RAM_FPLUS:
    case CaseLabel::P_DIVIDES_F:
        out.signature = signature_from_shape(out.pOM_shape);
        break;
    case CaseLabel::P_DIVIDES_ND: {
        int const ip = *out.params.i_p;
        out.admissible_structures = predict_multiplicity_structure(D, p, ip);
        i64 q;
        if (ip <= 2 && ibukiyama_hypotheses(D, p, q))
            out.admissible_signatures = ibukiyama_signatures(D, p, ip);
        break;
    }
    case CaseLabel::OUT_OF_THEOREM_RANGE:
    case CaseLabel::SKIPPED_UNSUPPORTED:
        break;
    }
    return out;
}

Prediction predict(i64 D, i64 p, HcpCache * cache)
{
    HcpData data(D, cache);
    return predict(D, p, data, cache);
}

FactorSignature predict_signature(i64 D, i64 p, HcpCache * cache)
{
    Prediction const pr = predict(D, p, cache);
    if (!pr.signature)
        throw NotApplicable("no exact signature for D = " + std::to_string(D) + ", p = " + std::to_string(p) + " ("
                            + std::string(to_string(pr.label)) + ")");
    return *pr.signature;
}

Prediction ibukiyama_check(i64 q, i64 p, std::optional<i64> D, HcpCache * cache)
{
    i64 const d = D.value_or(-q);
    if (d != -q && d != -4 * q)
        throw NotApplicable("D must be -q or -4q");
    check_inputs(d, p);
    i64 q2;
    if (!ibukiyama_hypotheses(d, p, q2))
        throw NotApplicable("outside the hypotheses of the Ibukiyama order corollary for q = " + std::to_string(q)
                            + ", p = " + std::to_string(p));
    HcpData data(d, cache);
    int const ip = data.ip(p);
    Prediction out;
    out.D = d;
    out.p = p;
    out.label = classify(d, p, data, cache);
    out.pOM_shape = predict_pOM(d, p, out.params);
    out.params.i_p = ip;
    out.admissible_signatures = ibukiyama_signatures(d, p, ip);
    if (ip >= 1)
        out.admissible_structures = predict_multiplicity_structure(d, p, ip);
    return out;
}

} // namespace hcpf
