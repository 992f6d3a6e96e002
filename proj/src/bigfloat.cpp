#include "hcpf/bigfloat.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace hcpf {

namespace {

// widen a to at least the precision of b, preserving its value
void widen(mpfr_ptr a, mpfr_srcptr b)
{
    if (mpfr_get_prec(b) > mpfr_get_prec(a))
        mpfr_prec_round(a, mpfr_get_prec(b), MPFR_RNDN);
}

} // namespace

BigFloat::BigFloat(mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(mpz_class const & v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat const & o)
{
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat && o) noexcept
{
    // leave o as a valid minimal-precision zero
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat & BigFloat::operator=(BigFloat const & o)
{
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat & BigFloat::operator=(BigFloat && o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat()
{
    mpfr_clear(v_);
}

BigFloat BigFloat::pi(mpfr_prec_t bits)
{
    BigFloat r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

mpz_class BigFloat::round() const
{
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

long BigFloat::exponent2() const
{
    if (mpfr_zero_p(v_))
        return std::numeric_limits<long>::min() / 2;
    return static_cast<long>(mpfr_get_exp(v_)) - 1;
}

BigFloat & BigFloat::operator+=(BigFloat const & o)
{
    widen(v_, o.v_);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat & BigFloat::operator-=(BigFloat const & o)
{
    widen(v_, o.v_);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat & BigFloat::operator*=(BigFloat const & o)
{
    widen(v_, o.v_);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat & BigFloat::operator/=(BigFloat const & o)
{
    widen(v_, o.v_);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat BigFloat::operator-() const
{
    BigFloat r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigFloat abs(BigFloat x)
{
    mpfr_abs(x.v_, x.v_, MPFR_RNDN);
    return x;
}

BigFloat sqrt(BigFloat x)
{
    mpfr_sqrt(x.v_, x.v_, MPFR_RNDN);
    return x;
}

BigFloat exp(BigFloat x)
{
    mpfr_exp(x.v_, x.v_, MPFR_RNDN);
    return x;
}

BigFloat cos(BigFloat x)
{
    mpfr_cos(x.v_, x.v_, MPFR_RNDN);
    return x;
}

BigFloat sin(BigFloat x)
{
    mpfr_sin(x.v_, x.v_, MPFR_RNDN);
    return x;
}

std::string BigFloat::to_string(int digits) const
{
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return buf.data();
}

BigComplex & BigComplex::operator+=(BigComplex const & o)
{
    re += o.re;
    im += o.im;
    return *this;
}

BigComplex & BigComplex::operator-=(BigComplex const & o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

BigComplex & BigComplex::operator*=(BigComplex const & o)
{
    BigFloat r = re * o.re - im * o.im;
    BigFloat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

BigComplex & BigComplex::operator/=(BigComplex const & o)
{
    BigFloat const n = o.norm();
    BigFloat r = (re * o.re + im * o.im) / n;
    BigFloat i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

BigFloat BigComplex::norm() const
{
    return re * re + im * im;
}

BigFloat BigComplex::abs() const
{
    return sqrt(norm());
}

} // namespace hcpf
