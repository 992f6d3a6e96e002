#pragma once

// Thin RAII value types over MPFR. Every value carries its own precision; the
// result of a binary operation takes the larger precision of its operands.

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace hcpf {

class BigFloat
{
  public:
    explicit BigFloat(mpfr_prec_t bits = 64);
    BigFloat(long v, mpfr_prec_t bits);
    BigFloat(mpz_class const & v, mpfr_prec_t bits);
    BigFloat(BigFloat const & o);
    BigFloat(BigFloat && o) noexcept;
    BigFloat & operator=(BigFloat const & o);
    BigFloat & operator=(BigFloat && o) noexcept;
    ~BigFloat();

    static BigFloat pi(mpfr_prec_t bits);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Nearest integer.
    mpz_class round() const;
    /// log2 |x| rounded down; very negative for 0.
    long exponent2() const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    BigFloat & operator+=(BigFloat const & o);
    BigFloat & operator-=(BigFloat const & o);
    BigFloat & operator*=(BigFloat const & o);
    BigFloat & operator/=(BigFloat const & o);

    friend BigFloat operator+(BigFloat a, BigFloat const & b) { return a += b; }
    friend BigFloat operator-(BigFloat a, BigFloat const & b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, BigFloat const & b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, BigFloat const & b) { return a /= b; }
    BigFloat operator-() const;

    friend bool operator<(BigFloat const & a, BigFloat const & b) { return mpfr_less_p(a.v_, b.v_) != 0; }

    friend BigFloat abs(BigFloat x);
    friend BigFloat sqrt(BigFloat x);
    friend BigFloat exp(BigFloat x);
    friend BigFloat cos(BigFloat x);
    friend BigFloat sin(BigFloat x);

    std::string to_string(int digits = 20) const;

  private:
    mpfr_t v_;
};

struct BigComplex
{
    BigFloat re;
    BigFloat im;

    explicit BigComplex(mpfr_prec_t bits = 64) : re(bits), im(bits) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t precision() const { return re.precision(); }

    BigComplex & operator+=(BigComplex const & o);
    BigComplex & operator-=(BigComplex const & o);
    BigComplex & operator*=(BigComplex const & o);
    BigComplex & operator/=(BigComplex const & o);
    friend BigComplex operator+(BigComplex a, BigComplex const & b) { return a += b; }
    friend BigComplex operator-(BigComplex a, BigComplex const & b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, BigComplex const & b) { return a *= b; }
    friend BigComplex operator/(BigComplex a, BigComplex const & b) { return a /= b; }

    BigFloat norm() const;  // |z|^2
    BigFloat abs() const;
};

} // namespace hcpf
