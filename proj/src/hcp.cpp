#include "hcpf/hcp.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "hcpf/errors.hpp"

namespace hcpf {

std::string IntPoly::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        mpz_class const & c = coeffs[static_cast<size_t>(i)];
        if (c == 0)
            continue;
        mpz_class mag = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        bool unit = mag == 1 && i > 0;
        if (!unit)
            out << mag.get_str();
        if (i > 0) {
            if (!unit)
                out << "*";
            out << "x";
            if (i > 1)
                out << "^" << i;
        }
        first = false;
    }
    if (first)
        out << "0";
    return out.str();
}

long precision_bound(i64 D)
{
    auto const forms = reduced_forms(D);
    double inv_sum = 0;
    for (auto const & f : forms)
        inv_sum += 1.0 / static_cast<double>(f.a);
    double const bits = std::numbers::pi * std::sqrt(static_cast<double>(-D)) / std::numbers::ln2 * inv_sum;
    return static_cast<long>(std::ceil(bits)) + 32 + static_cast<long>(forms.size());
}

namespace {

// sum_{k in Z} (-1)^k q^(k(3k-1)/2) = prod (1 - q^n)
BigComplex pentagonal_series(BigComplex const & q, long bits)
{
    mpfr_prec_t const prec = q.precision();
    BigComplex sum(BigFloat(1, prec), BigFloat(0, prec));
    BigComplex const q3 = q * q * q;
    BigComplex ratio = q;              // q^(3k-2) for k = 1
    BigComplex a = q;                  // q^(k(3k-1)/2) for k = 1
    BigComplex qk = q;                 // q^k
    long const stop = -bits - 16;
    long last_exp = 0;
    for (long k = 1;; ++k) {
        BigComplex b = a * qk;         // q^(k(3k+1)/2)
        BigComplex term = a + b;
        if (k % 2)
            sum -= term;
        else
            sum += term;
        long e = std::max(a.re.exponent2(), a.im.exponent2());
        if (e < stop)
            break;
        if (k > 2 && e >= last_exp)
            throw NonConvergence("eta q-series terms are not decreasing; check the precision setup");
        last_exp = e;
        ratio *= q3;                   // q^(3(k+1)-2)
        a *= ratio;
        qk *= q;
        if (k > 100000)
            throw NonConvergence("eta q-series did not converge");
    }
    return sum;
}

} // namespace

BigComplex j_at(QuadForm const & form, i64 D, long bits)
{
    if (bits < 64)
        throw InvalidArgument("j_at: precision budget below 64 bits");
    double const mag_bits = std::numbers::pi * std::sqrt(static_cast<double>(-D))
                          / static_cast<double>(form.a) / std::numbers::ln2;
    mpfr_prec_t const prec = bits + static_cast<long>(std::ceil(mag_bits)) + 32;

    // q = exp(2 pi i tau), tau = (-b + i sqrt|D|) / (2a)
    BigFloat const pi = BigFloat::pi(prec);
    BigFloat const a(static_cast<long>(form.a), prec);
    BigFloat const modulus = exp(-(pi * sqrt(BigFloat(static_cast<long>(-D), prec)) / a));
    BigFloat const angle = -(pi * BigFloat(static_cast<long>(form.b), prec) / a);
    BigComplex const q(modulus * cos(angle), modulus * sin(angle));

    // t = (eta(tau) / eta(2 tau))^24 = q^-1 (P(q) / P(q^2))^24, j = (t + 256)^3 / t^2
    BigComplex const ratio = pentagonal_series(q, prec) / pentagonal_series(q * q, prec);
    BigComplex r2 = ratio * ratio;
    BigComplex r8 = r2 * r2;
    r8 *= r8;
    BigComplex r24 = r8 * r8 * r8;
    BigComplex const t = r24 / q;
    BigComplex s = t;
    s.re += BigFloat(256, prec);
    BigComplex j = s * s * s / (t * t);
    return j;
}

namespace {

using RealPoly = std::vector<BigFloat>;

void multiply_into(RealPoly & acc, RealPoly const & factor, mpfr_prec_t prec)
{
    RealPoly out(acc.size() + factor.size() - 1, BigFloat(prec));
    for (size_t i = 0; i < acc.size(); ++i)
        for (size_t k = 0; k < factor.size(); ++k)
            out[i + k] += acc[i] * factor[k];
    acc = std::move(out);
}

// expand prod (x - j) at the given precision and round; nullopt when some
// coefficient is not within 1/4 of an integer
std::optional<IntPoly> expand_and_round(std::vector<QuadForm> const & forms, i64 D, long bits)
{
    mpfr_prec_t const prec = bits;
    RealPoly acc{BigFloat(1, prec)};
    for (auto const & f : forms) {
        if (f.b < 0)
            continue;  // paired with (a, -b, c) below
        BigComplex j = j_at(f, D, bits);
        if (f.is_ambiguous()) {
            multiply_into(acc, {-j.re, BigFloat(1, prec)}, prec);
        } else {
            // (x - j)(x - conj j) = x^2 - 2 Re j x + |j|^2
            BigFloat two_re = j.re * BigFloat(2, prec);
            multiply_into(acc, {j.norm(), -two_re, BigFloat(1, prec)}, prec);
        }
    }
    IntPoly out;
    BigFloat const quarter = BigFloat(1, prec) / BigFloat(4, prec);
    for (auto const & c : acc) {
        mpz_class r = c.round();
        BigFloat err = abs(c - BigFloat(r, prec));
        if (!(err < quarter))
            return std::nullopt;
        out.coeffs.push_back(r);
    }
    return out;
}

} // namespace

HilbertResult hilbert_class_polynomial_detailed(i64 D)
{
    auto const forms = reduced_forms(D);
    long bits = std::max(64L, precision_bound(D));
    std::optional<IntPoly> previous;
    for (int attempt = 0; attempt <= 6; ++attempt, bits *= 2) {
        auto rounded = expand_and_round(forms, D, bits);
        if (!rounded) {
            previous.reset();
            continue;
        }
        if (previous && *previous == *rounded)
            return {std::move(*rounded), {bits, attempt}};
        previous = std::move(rounded);
    }
    throw RoundingUnstable("H_D coefficients did not stabilize for D = " + std::to_string(D));
}

IntPoly hilbert_class_polynomial(i64 D)
{
    return hilbert_class_polynomial_detailed(D).poly;
}

namespace {

using ZPoly = std::vector<mpz_class>;

void trim(ZPoly & a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

int deg(ZPoly const & a)
{
    return static_cast<int>(a.size()) - 1;
}

mpz_class content(ZPoly const & a)
{
    mpz_class g = 0;
    for (auto const & c : a)
        g = gcd(g, c);
    return g;
}

// lc(B)^(degA - degB + 1) A = Q B + R
ZPoly pseudo_remainder(ZPoly r, ZPoly const & b)
{
    int const n = deg(b);
    mpz_class const d = b.back();
    int e = deg(r) - n + 1;
    while (!r.empty() && deg(r) >= n) {
        mpz_class const lr = r.back();
        int const shift = deg(r) - n;
        for (auto & c : r)
            c *= d;
        for (int i = 0; i <= n; ++i)
            r[static_cast<size_t>(i + shift)] -= lr * b[static_cast<size_t>(i)];
        trim(r);
        --e;
    }
    mpz_class de;
    mpz_pow_ui(de.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(std::max(e, 0)));
    for (auto & c : r)
        c *= de;
    return r;
}

mpz_class pow(mpz_class const & b, long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

} // namespace

mpz_class resultant(IntPoly const & pa, IntPoly const & pb)
{
    ZPoly A = pa.coeffs, B = pb.coeffs;
    trim(A);
    trim(B);
    if (A.empty() || B.empty())
        return 0;
    mpz_class const a = content(A), b = content(B);
    for (auto & c : A)
        c /= a;
    for (auto & c : B)
        c /= b;
    mpz_class g = 1, h = 1;
    int s = 1;
    mpz_class const t = pow(a, deg(B)) * pow(b, deg(A));
    if (deg(A) < deg(B)) {
        std::swap(A, B);
        if (deg(A) % 2 && deg(B) % 2)
            s = -s;
    }
    while (deg(B) > 0) {
        int const delta = deg(A) - deg(B);
        if (deg(A) % 2 && deg(B) % 2)
            s = -s;
        ZPoly R = pseudo_remainder(A, B);
        if (R.empty())
            return 0;
        A = std::move(B);
        mpz_class const div = g * pow(h, delta);
        for (auto & c : R)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
        B = std::move(R);
        g = A.back();
        if (delta == 0) {
            // h unchanged
        } else {
            mpz_class num = pow(g, delta);
            mpz_class den = pow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    // deg B == 0
    mpz_class const hn = pow(B.back(), deg(A));
    mpz_class const hd = pow(h, deg(A) - 1);
    mpz_class res;
    mpz_divexact(res.get_mpz_t(), hn.get_mpz_t(), hd.get_mpz_t());
    return s * t * res;
}

mpz_class poly_discriminant(IntPoly const & H)
{
    int const n = H.degree();
    if (n < 1)
        throw InvalidArgument("discriminant of a constant polynomial");
    if (n == 1)
        return 1;
    IntPoly dH;
    for (int i = 1; i <= n; ++i)
        dH.coeffs.push_back(H.coeffs[static_cast<size_t>(i)] * i);
    mpz_class r = resultant(H, dH);
    mpz_class const lc = H.coeffs.back();
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), lc.get_mpz_t());
    if ((static_cast<long>(n) * (n - 1) / 2) % 2)
        r = -r;
    return r;
}

int ip_from_discriminant(mpz_class const & disc, i64 D, i64 p)
{
    if (D % p == 0)
        throw InvalidArgument("ip: p = " + std::to_string(p) + " divides D = " + std::to_string(D));
    if (disc == 0)
        throw InvalidArgument("ip: H_D has a repeated root over Q");
    int const v = valuation(disc, p);
    if (v % 2)
        throw OddValuation("v_" + std::to_string(p) + "(disc H_" + std::to_string(D) + ") = " + std::to_string(v)
                           + " is odd");
    return v / 2;
}

int ip(i64 D, i64 p)
{
    if (D % p == 0)
        throw InvalidArgument("ip: p = " + std::to_string(p) + " divides D = " + std::to_string(D));
    return ip_from_discriminant(poly_discriminant(hilbert_class_polynomial(D)), D, p);
}

// ---------------------------------------------------------------------------

HcpCache::HcpCache(std::filesystem::path path)
    : path_(std::move(path))
{
}

std::string HcpCache::format_record(i64 D, IntPoly const & H)
{
    if (!H.is_monic())
        throw InvalidArgument("cache records hold monic polynomials");
    std::string out = std::to_string(D) + "\t" + std::to_string(H.degree()) + "\t";
    for (int i = 0; i < H.degree(); ++i) {
        if (i)
            out += ",";
        out += H.coeffs[static_cast<size_t>(i)].get_str();
    }
    return out;
}

std::pair<i64, IntPoly> HcpCache::parse_record(std::string const & line)
{
    auto corrupt = [&](std::string const & why) {
        return CacheCorrupt("bad cache record (" + why + "): " + line.substr(0, 80));
    };
    auto const t1 = line.find('\t');
    auto const t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
        throw corrupt("expected three tab-separated fields");
    i64 D, h;
    try {
        size_t used = 0;
        D = std::stoll(line.substr(0, t1), &used);
        if (used != t1)
            throw corrupt("D");
        h = std::stoll(line.substr(t1 + 1, t2 - t1 - 1), &used);
        if (used != t2 - t1 - 1)
            throw corrupt("h");
    } catch (std::logic_error const &) {
        throw corrupt("integer field");
    }
    if (!is_valid_discriminant(D) || h < 1)
        throw corrupt("D or h out of range");
    IntPoly H;
    std::string const body = line.substr(t2 + 1);
    size_t start = 0;
    for (;;) {
        size_t comma = body.find(',', start);
        std::string tok = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        mpz_class c;
        if (tok.empty() || c.set_str(tok, 10) != 0)
            throw corrupt("coefficient");
        H.coeffs.push_back(c);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (static_cast<i64>(H.coeffs.size()) != h)
        throw corrupt("coefficient count does not match h");
    H.coeffs.emplace_back(1);
    if (format_record(D, H) != line)
        throw corrupt("record does not round-trip");
    return {D, std::move(H)};
}

void HcpCache::load()
{
    std::unique_lock lock(mutex_);
    entries_.clear();
    if (path_.empty() || !std::filesystem::exists(path_))
        return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto [D, H] = parse_record(line);
        auto [it, fresh] = entries_.emplace(D, H);
        if (!fresh && !(it->second == H))
            throw CacheCorrupt("conflicting records for D = " + std::to_string(D));
    }
}

void HcpCache::save() const
{
    if (path_.empty())
        return;
    std::shared_lock lock(mutex_);
    auto tmp = path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        // most negative D last
        for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
            out << format_record(it->first, it->second) << "\n";
    }
    std::filesystem::rename(tmp, path_);
}

std::optional<IntPoly> HcpCache::find(i64 D) const
{
    std::shared_lock lock(mutex_);
    auto it = entries_.find(D);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

void HcpCache::insert(i64 D, IntPoly const & H)
{
    std::unique_lock lock(mutex_);
    entries_.insert_or_assign(D, H);
}

IntPoly HcpCache::get(i64 D)
{
    if (auto hit = find(D))
        return *hit;
    IntPoly H = hilbert_class_polynomial(D);
    insert(D, H);
    return H;
}

size_t HcpCache::size() const
{
    std::shared_lock lock(mutex_);
    return entries_.size();
}

} // namespace hcpf
