#pragma once

#include "fusionkz/linalg.hpp"
#include "fusionkz/rational.hpp"

#include <mpfr.h>

#include <algorithm>

#include <string>
#include <utility>

namespace fusionkz {

/// Binary floating-point number with a per-value mantissa length (MPFR).
///
/// Arithmetic results carry the larger precision of their operands, and a
/// default-constructed value is an exact zero at minimal precision, so
/// precision flows from the values converted in at the chosen bit count.
class Real {
  public:
    Real() {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_set_zero(v_, 1);
    }
    Real(int x) : Real(static_cast<long>(x)) {}
    Real(long x) {
        mpfr_init2(v_, 64);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(double x) {
        mpfr_init2(v_, 53);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Real(const Rational &q, mpfr_prec_t bits) {
        mpfr_init2(v_, bits);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    Real(const std::string &decimal, mpfr_prec_t bits);

    Real(const Real &o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real &&o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real &operator=(const Real &o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real &operator=(Real &&o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Decimal scientific notation with `digits` significant digits
    /// (0 selects enough digits to round-trip the mantissa).
    std::string to_string(int digits = 0) const;

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    Real &operator+=(const Real &o) { return apply(o, mpfr_add); }
    Real &operator-=(const Real &o) { return apply(o, mpfr_sub); }
    Real &operator*=(const Real &o) { return apply(o, mpfr_mul); }
    Real &operator/=(const Real &o) { return apply(o, mpfr_div); }

    Real operator-() const {
        Real r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(const Real &a, const Real &b) { return binary(a, b, mpfr_add); }
    friend Real operator-(const Real &a, const Real &b) { return binary(a, b, mpfr_sub); }
    friend Real operator*(const Real &a, const Real &b) { return binary(a, b, mpfr_mul); }
    friend Real operator/(const Real &a, const Real &b) { return binary(a, b, mpfr_div); }

    friend int compare(const Real &a, const Real &b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator==(const Real &a, const Real &b) { return mpfr_equal_p(a.v_, b.v_); }
    friend bool operator<(const Real &a, const Real &b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const Real &a, const Real &b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const Real &a, const Real &b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const Real &a, const Real &b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const Real &a, int b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator!=(const Real &a, int b) { return mpfr_cmp_si(a.v_, b) != 0; }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }

  private:
    using Op = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

    Real &apply(const Real &o, Op op) {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_))
            mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
        op(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    static Real binary(const Real &a, const Real &b, Op op) {
        Real r;
        mpfr_set_prec(r.v_, std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

Real abs(const Real &x);
Real log(const Real &x);
Real exp(const Real &x);
Real sqrt(const Real &x);
/// x^e for x > 0 and rational e, evaluated at the precision of x.
Real pow(const Real &x, const Rational &e);
Real pow(const Real &x, long e);
Real max(const Real &a, const Real &b);
/// 2^e at the given precision.
Real exp2(long e, mpfr_prec_t bits);
Real infinity(mpfr_prec_t bits = 53);

using XMatrix = Matrix<Real>;
using XVector = Vector<Real>;

XMatrix to_real(const RMatrix &m, mpfr_prec_t bits);
XVector to_real(const RVector &v, mpfr_prec_t bits);

Real norm_inf(const XVector &v);
/// Maximum absolute row sum.
Real norm_inf(const XMatrix &m);
/// Largest absolute entry.
Real max_abs(const XMatrix &m);

/// LU factorization with partial pivoting; solves a X = b for several
/// right-hand sides and applies one step of iterative refinement.
class LuSolver {
  public:
    explicit LuSolver(const XMatrix &a);

    XMatrix solve(const XMatrix &b) const;
    XVector solve(const XVector &b) const;

    /// Infinity-norm condition estimate from the explicit inverse.
    Real condition() const;
    /// Smallest |U_ii| / max |U_jj|; zero signals exact singularity.
    Real pivot_ratio() const;

  private:
    XMatrix solve_once(const XMatrix &b) const;

    XMatrix a_;
    XMatrix lu_;
    std::vector<std::size_t> perm_;
};

} // namespace fusionkz
