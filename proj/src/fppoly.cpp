#include "hcpf/fppoly.hpp"

#include <algorithm>
#include <sstream>

#include "hcpf/errors.hpp"

namespace hcpf {

namespace {

u64 addm(u64 a, u64 b, u64 p)
{
    u64 s = a + b;
    return s >= p ? s - p : s;
}

u64 subm(u64 a, u64 b, u64 p)
{
    return a >= b ? a - b : a + p - b;
}

u64 inv(u64 a, u64 p)
{
    return static_cast<u64>(invmod(static_cast<i64>(a), static_cast<i64>(p)));
}

} // namespace

FpPoly::FpPoly(u64 p)
    : p_(p)
{
    if (p < 2 || !is_prime(p))
        throw InvalidArgument("FpPoly: modulus " + std::to_string(p) + " is not prime");
}

FpPoly::FpPoly(u64 p, std::vector<u64> coeffs)
    : FpPoly(p)
{
    c_ = std::move(coeffs);
    for (auto & c : c_)
        c %= p_;
    trim();
}

FpPoly FpPoly::constant(u64 p, u64 c)
{
    return FpPoly(p, {c});
}

FpPoly FpPoly::x(u64 p)
{
    return FpPoly(p, {0, 1});
}

FpPoly FpPoly::monomial(u64 p, u64 c, int degree)
{
    std::vector<u64> v(static_cast<size_t>(degree) + 1, 0);
    v.back() = c;
    return FpPoly(p, std::move(v));
}

void FpPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

FpPoly FpPoly::monic() const
{
    if (is_zero())
        return *this;
    return inv(lead(), p_) * *this;
}

FpPoly FpPoly::derivative() const
{
    FpPoly r(p_);
    if (c_.size() < 2)
        return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = mulmod(c_[i], i % p_, p_);
    r.trim();
    return r;
}

u64 FpPoly::eval(u64 x) const
{
    u64 r = 0;
    x %= p_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = addm(mulmod(r, x, p_), *it, p_);
    return r;
}

FpPoly & FpPoly::operator+=(FpPoly const & o)
{
    if (o.p_ != p_)
        throw InvalidArgument("FpPoly: mismatched moduli");
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = addm(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

FpPoly & FpPoly::operator-=(FpPoly const & o)
{
    if (o.p_ != p_)
        throw InvalidArgument("FpPoly: mismatched moduli");
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = subm(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

FpPoly operator*(FpPoly const & a, FpPoly const & b)
{
    if (a.p_ != b.p_)
        throw InvalidArgument("FpPoly: mismatched moduli");
    FpPoly r(a.p_);
    if (a.is_zero() || b.is_zero())
        return r;
    u64 const p = a.p_;
    std::vector<unsigned __int128> acc(a.c_.size() + b.c_.size() - 1, 0);
    bool const small = p <= (u64{1} << 32);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (size_t k = 0; k < b.c_.size(); ++k) {
            acc[i + k] += static_cast<unsigned __int128>(a.c_[i]) * b.c_[k];
            if (!small)
                acc[i + k] %= p;
        }
    }
    r.c_.resize(acc.size());
    for (size_t i = 0; i < acc.size(); ++i)
        r.c_[i] = static_cast<u64>(acc[i] % p);
    r.trim();
    return r;
}

FpPoly operator*(u64 s, FpPoly a)
{
    s %= a.p_;
    for (auto & c : a.c_)
        c = mulmod(c, s, a.p_);
    a.trim();
    return a;
}

std::pair<FpPoly, FpPoly> divrem(FpPoly const & a, FpPoly const & b)
{
    if (b.is_zero())
        throw InvalidArgument("FpPoly: division by zero");
    if (a.p_ != b.p_)
        throw InvalidArgument("FpPoly: mismatched moduli");
    u64 const p = a.p_;
    FpPoly q(p);
    FpPoly r = a;
    int const db = b.degree();
    if (r.degree() < db)
        return {q, r};
    u64 const li = inv(b.lead(), p);
    q.c_.assign(static_cast<size_t>(r.degree() - db + 1), 0);
    for (int i = r.degree(); i >= db; --i) {
        u64 const c = mulmod(r.c_[static_cast<size_t>(i)], li, p);
        q.c_[static_cast<size_t>(i - db)] = c;
        if (c == 0)
            continue;
        for (int k = 0; k <= db; ++k) {
            auto & t = r.c_[static_cast<size_t>(i - db + k)];
            t = subm(t, mulmod(c, b.c_[static_cast<size_t>(k)], p), p);
        }
    }
    r.trim();
    q.trim();
    return {q, r};
}

bool operator<(FpPoly const & a, FpPoly const & b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

std::string FpPoly::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        u64 const c = c_[static_cast<size_t>(i)];
        if (c == 0)
            continue;
        if (!first)
            out << " + ";
        if (c != 1 || i == 0)
            out << c;
        if (i > 0) {
            if (c != 1)
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

FpPoly gcd(FpPoly a, FpPoly b)
{
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly powmod(FpPoly base, u64 exp, FpPoly const & m)
{
    FpPoly r = FpPoly::constant(m.modulus(), 1) % m;
    base = base % m;
    while (exp) {
        if (exp & 1)
            r = (r * base) % m;
        exp >>= 1;
        if (exp)
            base = (base * base) % m;
    }
    return r;
}

FpPoly reduce_mod(IntPoly const & H, u64 p)
{
    std::vector<u64> v;
    v.reserve(H.coeffs.size());
    for (auto const & c : H.coeffs) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
        v.push_back(r.get_ui());
    }
    return FpPoly(p, std::move(v));
}

namespace {

// f has only x^(kp) terms; the p-th root over F_p keeps the coefficients
FpPoly pth_root(FpPoly const & f)
{
    u64 const p = f.modulus();
    std::vector<u64> v;
    for (size_t i = 0; i < f.coeffs().size(); i += p)
        v.push_back(f.coeffs()[i]);
    return FpPoly(p, std::move(v));
}

void squarefree_into(FpPoly const & f, int scale, std::vector<FpFactor> & out)
{
    if (f.degree() < 1)
        return;
    FpPoly const d = f.derivative();
    if (d.is_zero()) {
        squarefree_into(pth_root(f), scale * static_cast<int>(f.modulus()), out);
        return;
    }
    FpPoly c = gcd(f, d);
    FpPoly w = f / c;
    for (int i = 1; w.degree() > 0; ++i) {
        FpPoly y = gcd(w, c);
        FpPoly z = w / y;
        if (z.degree() > 0)
            out.push_back({z.monic(), i * scale});
        w = y;
        c = c / y;
    }
    if (c.degree() > 0)
        squarefree_into(pth_root(c), scale * static_cast<int>(f.modulus()), out);
}

FpPoly random_poly(u64 p, int below_degree, std::mt19937_64 & rng)
{
    std::uniform_int_distribution<u64> dist(0, p - 1);
    std::vector<u64> v(static_cast<size_t>(below_degree));
    for (auto & c : v)
        c = dist(rng);
    return FpPoly(p, std::move(v));
}

void edf_into(FpPoly const & f, int d, std::mt19937_64 & rng, std::vector<FpPoly> & out)
{
    if (f.degree() <= d) {
        if (f.degree() > 0)
            out.push_back(f.monic());
        return;
    }
    u64 const p = f.modulus();
    for (int attempt = 0; attempt < 10000; ++attempt) {
        FpPoly a = random_poly(p, f.degree(), rng);
        if (a.degree() < 1)
            continue;
        FpPoly b(p);
        if (p == 2) {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            FpPoly t = a;
            b = a;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % f;
                b += t;
            }
        } else {
            FpPoly g0 = gcd(a, f);
            if (g0.degree() > 0) {
                edf_into(g0, d, rng, out);
                edf_into(f / g0, d, rng, out);
                return;
            }
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            FpPoly t = a % f;
            FpPoly n = t;
            for (int i = 1; i < d; ++i) {
                t = powmod(t, p, f);
                n = (n * t) % f;
            }
            b = powmod(n, (p - 1) / 2, f) - FpPoly::constant(p, 1);
        }
        FpPoly g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf_into(g, d, rng, out);
            edf_into(f / g, d, rng, out);
            return;
        }
    }
    throw NonConvergence("equal-degree splitting did not find a factor");
}

} // namespace

std::vector<FpFactor> squarefree_decomposition(FpPoly const & f)
{
    std::vector<FpFactor> out;
    squarefree_into(f.monic(), 1, out);
    std::sort(out.begin(), out.end(), [](FpFactor const & a, FpFactor const & b) {
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

std::vector<std::pair<FpPoly, int>> distinct_degree_factorization(FpPoly f)
{
    u64 const p = f.modulus();
    std::vector<std::pair<FpPoly, int>> out;
    f = f.monic();
    FpPoly const x = FpPoly::x(p);
    FpPoly h = x % f;
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = powmod(h, p, f);
        FpPoly g = gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0)
        out.emplace_back(f, f.degree());
    return out;
}

std::vector<FpPoly> equal_degree_factorization(FpPoly const & f, int d, std::mt19937_64 & rng)
{
    if (f.degree() % d)
        throw InvalidArgument("equal-degree factorization: degree not divisible by d");
    std::vector<FpPoly> out;
    edf_into(f.monic(), d, rng, out);
    return out;
}

std::vector<FpFactor> factor(FpPoly const & f, u64 seed)
{
    if (f.is_zero())
        throw InvalidArgument("factor: zero polynomial");
    std::mt19937_64 rng(seed);
    std::vector<FpFactor> out;
    for (auto const & part : squarefree_decomposition(f))
        for (auto const & [g, d] : distinct_degree_factorization(part.factor))
            for (auto & irr : equal_degree_factorization(g, d, rng))
                out.push_back({std::move(irr), part.multiplicity});
    std::sort(out.begin(), out.end(), [](FpFactor const & a, FpFactor const & b) {
        if (a.factor.degree() != b.factor.degree())
            return a.factor.degree() < b.factor.degree();
        if (a.multiplicity != b.multiplicity)
            return a.multiplicity < b.multiplicity;
        return a.factor < b.factor;
    });
    return out;
}

bool is_irreducible(FpPoly const & g0)
{
    FpPoly const g = g0.monic();
    int const n = g.degree();
    if (n < 1)
        return false;
    if (n == 1)
        return true;
    u64 const p = g.modulus();
    FpPoly const x = FpPoly::x(p);
    // powers[k] = x^(p^k) mod g
    std::vector<FpPoly> powers{x % g};
    for (int k = 1; k <= n; ++k)
        powers.push_back(powmod(powers.back(), p, g));
    if (!(powers[static_cast<size_t>(n)] == x % g))
        return false;
    for (auto const & [q, e] : hcpf::factor(static_cast<i64>(n)).terms) {
        FpPoly t = gcd(powers[static_cast<size_t>(n / q)] - x, g);
        if (!t.is_one())
            return false;
    }
    return true;
}

void FactorSignature::add(int degree, int multiplicity, i64 count)
{
    if (count <= 0)
        return;
    counts[{degree, multiplicity}] += count;
}

i64 FactorSignature::total_degree() const
{
    i64 s = 0;
    for (auto const & [k, c] : counts)
        s += static_cast<i64>(k.first) * k.second * c;
    return s;
}

std::vector<std::array<i64, 3>> FactorSignature::triples() const
{
    std::vector<std::array<i64, 3>> out;
    for (auto const & [k, c] : counts)
        out.push_back({k.first, k.second, c});
    return out;
}

std::string FactorSignature::to_string() const
{
    std::ostringstream out;
    out << "[";
    bool first = true;
    for (auto const & t : triples()) {
        out << (first ? "" : ", ") << "[" << t[0] << ", " << t[1] << ", " << t[2] << "]";
        first = false;
    }
    out << "]";
    return out.str();
}

FactorSignature signature(std::vector<FpFactor> const & factors)
{
    FactorSignature s;
    for (auto const & f : factors)
        s.add(f.factor.degree(), f.multiplicity);
    return s;
}

// ---------------------------------------------------------------------------

Fp2Field::Fp2Field(u64 p)
    : p_(p)
{
    if (p < 2 || !is_prime(p))
        throw InvalidArgument("Fp2Field: " + std::to_string(p) + " is not prime");
    if (p == 2) {
        c0_ = 1;
        c1_ = 1;
        return;
    }
    u64 r = 2;
    while (legendre(static_cast<i64>(r), static_cast<i64>(p)) != -1)
        ++r;
    c0_ = r;
    c1_ = 0;
}

Fp2Element Fp2Field::add(Fp2Element a, Fp2Element b) const
{
    return {addm(a.u, b.u, p_), addm(a.v, b.v, p_)};
}

Fp2Element Fp2Field::sub(Fp2Element a, Fp2Element b) const
{
    return {subm(a.u, b.u, p_), subm(a.v, b.v, p_)};
}

Fp2Element Fp2Field::mul(Fp2Element a, Fp2Element b) const
{
    u64 const vv = mulmod(a.v, b.v, p_);
    u64 const u = addm(mulmod(a.u, b.u, p_), mulmod(c0_, vv, p_), p_);
    u64 const v = addm(addm(mulmod(a.u, b.v, p_), mulmod(a.v, b.u, p_), p_), mulmod(c1_, vv, p_), p_);
    return {u, v};
}

Fp2Element Fp2Field::pow(Fp2Element a, u64 e) const
{
    Fp2Element r{1 % p_, 0};
    while (e) {
        if (e & 1)
            r = mul(r, a);
        e >>= 1;
        if (e)
            a = mul(a, a);
    }
    return r;
}

Fp2Element Fp2Field::inv(Fp2Element a) const
{
    if (a.u == 0 && a.v == 0)
        throw InvalidArgument("Fp2Field: inverse of zero");
    // a^-1 = a^p / N(a)
    Fp2Element const conj = pow(a, p_);
    u64 const n = norm(a);
    u64 const ni = hcpf::inv(n, p_);
    return mul(conj, {ni, 0});
}

u64 Fp2Field::norm(Fp2Element a) const
{
    // (u + v t)(u + v tbar) with t + tbar = c1, t tbar = -c0
    u64 const uu = mulmod(a.u, a.u, p_);
    u64 const uv = mulmod(c1_, mulmod(a.u, a.v, p_), p_);
    u64 const vv = mulmod(c0_, mulmod(a.v, a.v, p_), p_);
    return subm(addm(uu, uv, p_), vv, p_);
}

std::string Fp2Field::to_string(Fp2Element a) const
{
    if (a.v == 0)
        return std::to_string(a.u);
    std::string out;
    if (a.u)
        out = std::to_string(a.u) + " + ";
    if (a.v != 1)
        out += std::to_string(a.v) + "*";
    return out + "t";
}

std::vector<std::pair<Fp2Element, int>> roots_in_fp2(std::vector<FpFactor> const & factors, u64 p)
{
    Fp2Field const F(p);
    std::vector<std::pair<Fp2Element, int>> out;
    for (auto const & [g, m] : factors) {
        if (g.degree() == 1) {
            // x + c
            out.push_back({{subm(0, g[0], p), 0}, m});
        } else if (g.degree() == 2) {
            if (p == 2) {
                // the only irreducible quadratic is x^2 + x + 1, with roots t, t + 1
                out.push_back({{0, 1}, m});
                out.push_back({{1, 1}, m});
                continue;
            }
            // x^2 + b x + c: roots (-b +- sqrt(delta)) / 2, sqrt(delta) = s t with s^2 = delta / r
            u64 const b = g[1], c = g[0];
            u64 const delta = subm(mulmod(b, b, p), mulmod(4, c, p), p);
            u64 const s2 = mulmod(delta, hcpf::inv(F.c0(), p), p);
            auto s = sqrt_mod(static_cast<i64>(s2), static_cast<i64>(p));
            if (!s)
                throw InvalidArgument("roots_in_fp2: quadratic factor is not irreducible");
            u64 const half = hcpf::inv(2, p);
            u64 const u = mulmod(subm(0, b, p), half, p);
            u64 const v = mulmod(static_cast<u64>(*s), half, p);
            out.push_back({{u, v}, m});
            out.push_back({{u, subm(0, v, p)}, m});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Fp2Element, int>> roots_in_fp2(FpPoly const & f)
{
    return roots_in_fp2(factor(f), f.modulus());
}

} // namespace hcpf
