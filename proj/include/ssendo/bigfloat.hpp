#pragma once

// Thin RAII wrapper over mpfr_t plus a minimal complex type on top of it.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace ssendo {

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64)
    {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(mpfr_prec_t prec, long value) : BigFloat(prec) { mpfr_set_si(v_, value, MPFR_RNDN); }
    BigFloat(mpfr_prec_t prec, double value) : BigFloat(prec) { mpfr_set_d(v_, value, MPFR_RNDN); }
    BigFloat(mpfr_prec_t prec, const mpz_class& value) : BigFloat(prec)
    {
        mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_prec_t{MPFR_PREC_MIN}) { mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    static BigFloat pi(mpfr_prec_t prec)
    {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    BigFloat operator+(const BigFloat& o) const { return binop(o, mpfr_add); }
    BigFloat operator-(const BigFloat& o) const { return binop(o, mpfr_sub); }
    BigFloat operator*(const BigFloat& o) const { return binop(o, mpfr_mul); }
    BigFloat operator/(const BigFloat& o) const { return binop(o, mpfr_div); }
    BigFloat operator-() const
    {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }

    BigFloat mul_si(long k) const
    {
        BigFloat r(prec());
        mpfr_mul_si(r.v_, v_, k, MPFR_RNDN);
        return r;
    }

    BigFloat sqrt() const { return unop(mpfr_sqrt); }
    BigFloat exp() const { return unop(mpfr_exp); }
    BigFloat cos() const { return unop(mpfr_cos); }
    BigFloat sin() const { return unop(mpfr_sin); }
    BigFloat abs() const { return unop(mpfr_abs); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // log2 of |x|, or a very negative number for zero.
    double log2_abs() const
    {
        if (mpfr_zero_p(v_))
            return -1e18;
        long e;
        double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log2(std::fabs(m)) + static_cast<double>(e);
    }
    mpz_class round_to_integer() const
    {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

private:
    template <class Op>
    BigFloat binop(const BigFloat& o, Op op) const
    {
        BigFloat r(std::max(prec(), o.prec()));
        op(r.v_, v_, o.v_, MPFR_RNDN);
        return r;
    }
    template <class Op>
    BigFloat unop(Op op) const
    {
        BigFloat r(prec());
        op(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

struct BigComplex {
    BigFloat re;
    BigFloat im;

    explicit BigComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    BigComplex operator+(const BigComplex& o) const { return {re + o.re, im + o.im}; }
    BigComplex operator-(const BigComplex& o) const { return {re - o.re, im - o.im}; }
    BigComplex operator*(const BigComplex& o) const
    {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    BigComplex operator/(const BigComplex& o) const
    {
        BigFloat den = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
    }
    BigComplex mul_si(long k) const { return {re.mul_si(k), im.mul_si(k)}; }
    BigFloat norm() const { return re * re + im * im; }
};

} // namespace ssendo
