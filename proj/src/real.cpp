#include "fusionkz/real.hpp"

#include <cmath>
#include <vector>

namespace fusionkz {

Real::Real(const std::string &decimal, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
        throw DomainError("not a decimal number: " + decimal);
}

std::string Real::to_string(int digits) const {
    if (mpfr_zero_p(v_))
        return "0";
    if (!mpfr_number_p(v_))
        return mpfr_nan_p(v_) ? "nan" : (mpfr_sgn(v_) > 0 ? "inf" : "-inf");
    if (digits <= 0)
        digits = static_cast<int>(
                     std::ceil(static_cast<double>(precision()) * std::log10(2.0))) + 1;
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return buf.data();
}

Real abs(const Real &x) {
    Real r(x);
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real log(const Real &x) {
    Real r(x);
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real exp(const Real &x) {
    Real r(x);
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real &x) {
    Real r(x);
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real &x, const Rational &e) {
    if (is_integer(e) && e.get_num().fits_slong_p())
        return pow(x, e.get_num().get_si());
    Real exponent(e, x.precision());
    Real r(x);
    mpfr_pow(r.get(), x.get(), exponent.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real &x, long e) {
    Real r(x);
    mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

Real max(const Real &a, const Real &b) { return a < b ? b : a; }

Real exp2(long e, mpfr_prec_t bits) {
    Real r(Rational(1), bits);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

Real infinity(mpfr_prec_t bits) {
    Real r(Rational(0), bits);
    mpfr_set_inf(r.get(), 1);
    return r;
}

XMatrix to_real(const RMatrix &m, mpfr_prec_t bits) {
    XMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                out(i, j) = Real(m(i, j), bits);
    return out;
}

XVector to_real(const RVector &v, mpfr_prec_t bits) {
    XVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out[i] = Real(v[i], bits);
    return out;
}

Real norm_inf(const XVector &v) {
    Real m;
    for (const auto &x : v)
        m = max(m, abs(x));
    return m;
}

Real norm_inf(const XMatrix &m) {
    Real best;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Real s;
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += abs(m(i, j));
        best = max(best, s);
    }
    return best;
}

Real max_abs(const XMatrix &m) {
    Real best;
    for (const auto &x : m.data())
        best = max(best, abs(x));
    return best;
}

LuSolver::LuSolver(const XMatrix &a) : a_(a), lu_(a), perm_(a.rows()) {
    if (a.rows() != a.cols())
        throw DimensionError("LU of a non-square matrix");
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        Real best = abs(lu_(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            Real v = abs(lu_(r, k));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(lu_(k, c), lu_(piv, c));
            std::swap(perm_[k], perm_[piv]);
        }
        if (lu_(k, k) == 0)
            continue;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (lu_(r, k) == 0)
                continue;
            lu_(r, k) /= lu_(k, k);
            const Real f = lu_(r, k);
            for (std::size_t c = k + 1; c < n; ++c)
                lu_(r, c) -= f * lu_(k, c);
        }
    }
}

Real LuSolver::pivot_ratio() const {
    const std::size_t n = lu_.rows();
    if (n == 0)
        return Real(1);
    Real lo = abs(lu_(0, 0));
    Real hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
        Real v = abs(lu_(i, i));
        if (v < lo)
            lo = v;
        if (v > hi)
            hi = v;
    }
    if (hi == 0)
        return Real();
    return lo / hi;
}

XMatrix LuSolver::solve_once(const XMatrix &b) const {
    const std::size_t n = lu_.rows();
    if (b.rows() != n)
        throw DimensionError("right-hand side has the wrong number of rows");
    for (std::size_t i = 0; i < n; ++i)
        if (lu_(i, i) == 0)
            throw DomainError("singular matrix in LU solve");
    XMatrix x(n, b.cols());
    for (std::size_t col = 0; col < b.cols(); ++col) {
        XVector y(n);
        for (std::size_t i = 0; i < n; ++i) {
            Real s = b(perm_[i], col);
            for (std::size_t k = 0; k < i; ++k)
                s -= lu_(i, k) * y[k];
            y[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            Real s = y[ii];
            for (std::size_t k = ii + 1; k < n; ++k)
                s -= lu_(ii, k) * x(k, col);
            x(ii, col) = s / lu_(ii, ii);
        }
    }
    return x;
}

XMatrix LuSolver::solve(const XMatrix &b) const {
    XMatrix x = solve_once(b);
    XMatrix residual = b - a_ * x;
    x += solve_once(residual);
    return x;
}

XVector LuSolver::solve(const XVector &b) const {
    XMatrix bm(b.size(), 1);
    bm.set_column(0, b);
    return solve(bm).column(0);
}

Real LuSolver::condition() const {
    const std::size_t n = lu_.rows();
    if (n == 0)
        return Real(1);
    XMatrix inv = solve_once(XMatrix::identity(n));
    return norm_inf(a_) * norm_inf(inv);
}

} // namespace fusionkz
