#include "fusionkz/kz.hpp"

#include <algorithm>

namespace fusionkz {

namespace detail {

std::vector<std::vector<std::vector<RVector>>>
block_series(const std::vector<Rational> &diag, const RMatrix &other, const RVector &w0,
             const std::vector<EigenClass> &classes, std::size_t order) {
    const std::size_t m = diag.size();
    std::vector<std::vector<std::vector<RVector>>> out(classes.size());
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const auto &cls = classes[ci];
        const std::size_t top = cls.offsets.size() - 1; // J
        if (static_cast<long>(order) < cls.offsets.back())
            throw DomainError("truncation order below the largest eigenvalue offset");

        // resonance index of each component, -1 outside the class
        std::vector<long> resonance(m, -1);
        bool active = false;
        for (std::size_t c = 0; c < m; ++c) {
            const Rational shift = diag[c] - cls.base;
            if (is_integer(shift) && shift >= 0) {
                resonance[c] = shift.get_num().get_si();
                active = active || w0[c] != 0;
            }
        }
        auto &coeffs = out[ci];
        coeffs.assign(order + 1, std::vector<RVector>(top + 1, RVector(m)));
        if (!active)
            continue;

        // running sums R_j = sum_{k<i} other * w_{k,j}
        std::vector<RVector> running(top + 1, RVector(m));
        std::size_t jmax = 0;
        for (std::size_t i = 0; i <= order; ++i) {
            while (jmax < top && cls.offsets[jmax + 1] <= static_cast<long>(i))
                ++jmax;
            auto &row = coeffs[i];
            for (std::size_t c = 0; c < m; ++c) {
                if (resonance[c] == static_cast<long>(i)) {
                    if (running[jmax][c] != 0)
                        throw InternalInvariantViolation("inconsistent resonant equation");
                    row[0][c] = w0[c];
                    for (std::size_t j = 1; j <= jmax; ++j)
                        row[j][c] = -running[j - 1][c] / Rational(static_cast<long>(j));
                } else {
                    const Rational denom = cls.base + Rational(static_cast<long>(i)) - diag[c];
                    for (std::size_t jj = jmax + 1; jj-- > 0;) {
                        Rational v = -running[jj][c];
                        if (jj < jmax)
                            v -= Rational(static_cast<long>(jj + 1)) * row[jj + 1][c];
                        if (v != 0)
                            row[jj][c] = v / denom;
                    }
                }
            }
            for (std::size_t j = 0; j <= jmax; ++j) {
                if (is_zero(row[j]))
                    continue;
                const RVector inc = other * row[j];
                for (std::size_t c = 0; c < m; ++c)
                    if (inc[c] != 0)
                        running[j][c] += inc[c];
            }
        }
    }
    return out;
}

} // namespace detail

namespace {

KZSeries series_impl(const RMatrix &other, const Spectrum &spec, std::size_t dim,
                     const RVector &w, std::size_t order, Endpoint endpoint) {
    if (w.size() != dim)
        throw DimensionError("initial vector has the wrong length");
    KZSeries s;
    s.endpoint = endpoint;
    s.initial = w;
    s.order = order;
    for (const auto &cls : spec.classes) {
        KZSeries::ClassTerms t;
        t.eigen_class = cls;
        t.coeffs.assign(order + 1, std::vector<RVector>(cls.offsets.size(), RVector(dim)));
        s.classes.push_back(std::move(t));
    }
    for (const auto &blk : spec.blocks) {
        RVector local(blk.indices.size());
        bool any = false;
        for (std::size_t r = 0; r < blk.indices.size(); ++r) {
            local[r] = w[blk.indices[r]];
            any = any || local[r] != 0;
        }
        if (!any)
            continue;
        const RMatrix other_b =
            submatrix(other, std::span<const std::size_t>(blk.indices),
                      std::span<const std::size_t>(blk.indices));
        const RMatrix conj = blk.eigvecs_inv * other_b * blk.eigvecs;
        const RVector w0 = blk.eigvecs_inv * local;
        const auto terms = detail::block_series(blk.diag, conj, w0, spec.classes, order);
        for (std::size_t ci = 0; ci < terms.size(); ++ci)
            for (std::size_t i = 0; i <= order; ++i)
                for (std::size_t j = 0; j < terms[ci][i].size(); ++j) {
                    if (is_zero(terms[ci][i][j]))
                        continue;
                    const RVector v = blk.eigvecs * terms[ci][i][j];
                    auto &dst = s.classes[ci].coeffs[i][j];
                    for (std::size_t r = 0; r < blk.indices.size(); ++r)
                        dst[blk.indices[r]] = v[r];
                }
    }
    return s;
}

} // namespace

KZSeries series_at_zero(const KZSystem &sys, const RVector &w, std::size_t order) {
    return series_impl(sys.b, sys.spec_a, sys.dim, w, order, Endpoint::zero);
}

KZSeries series_at_one(const KZSystem &sys, const RVector &w, std::size_t order) {
    return series_impl(sys.a, sys.spec_b, sys.dim, w, order, Endpoint::one);
}

bool recursion_residual_is_zero(const KZSystem &sys, const KZSeries &s) {
    const RMatrix &diag_op = s.endpoint == Endpoint::zero ? sys.a : sys.b;
    const RMatrix &other = s.endpoint == Endpoint::zero ? sys.b : sys.a;
    const std::size_t n = sys.dim;
    for (const auto &ct : s.classes) {
        const std::size_t top = ct.eigen_class.offsets.size() - 1;
        for (std::size_t j = 0; j <= top; ++j) {
            RVector running(n);
            for (std::size_t i = 0; i <= s.order; ++i) {
                const RVector &w = ct.coeffs[i][j];
                RVector res = diag_op * w;
                const Rational shift = ct.eigen_class.base + Rational(static_cast<long>(i));
                for (std::size_t c = 0; c < n; ++c) {
                    res[c] = shift * w[c] - res[c] + running[c];
                    if (j < top)
                        res[c] += Rational(static_cast<long>(j + 1)) * ct.coeffs[i][j + 1][c];
                }
                if (!is_zero(res))
                    return false;
                const RVector inc = other * w;
                for (std::size_t c = 0; c < n; ++c)
                    running[c] += inc[c];
            }
        }
    }
    return true;
}

Real tail_estimate(const std::vector<Real> &terms, const Rational &x0) {
    const std::size_t count = terms.size();
    if (count == 0)
        return Real();
    const std::size_t window = std::max<std::size_t>(4, count / 8);
    Real last, previous;
    for (std::size_t i = count > window ? count - window : 0; i < count; ++i)
        last = max(last, terms[i]);
    if (last == 0)
        return Real();
    const mpfr_prec_t bits = last.precision();
    if (count < 2 * window)
        return infinity(bits);
    for (std::size_t i = count - 2 * window; i < count - window; ++i)
        previous = max(previous, terms[i]);
    if (previous == 0)
        return infinity(bits);
    // per-term ratio from the two trailing windows, never below the
    // asymptotic ratio x0 of a radius-one series
    Real ratio = pow(last / previous, Rational(1, static_cast<long>(window)));
    ratio = max(ratio, Real(x0, bits));
    const Real one(Rational(1), bits);
    if (ratio >= one)
        return infinity(bits);
    // envelope at the final index; factor 2 covers the slowly varying
    // polynomial and log prefactors
    const Real envelope = last * pow(ratio, static_cast<long>(window - 1));
    return Real(Rational(2), bits) * envelope * ratio / (one - ratio);
}

namespace detail {

SeriesValue sum_terms(const std::vector<const EigenClass *> &classes,
                      const std::vector<const std::vector<std::vector<RVector>> *> &coeffs,
                      std::size_t dim, const Rational &x0, mpfr_prec_t bits) {
    if (x0 <= 0 || x0 >= 1)
        throw DomainError("evaluation point must lie strictly inside (0, 1)");
    const Real zero(Rational(0), bits);
    SeriesValue out;
    out.value.assign(dim, zero);
    out.tail = zero;
    const Real x(x0, bits);
    const Real lx = log(x);
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const auto &table = *coeffs[ci];
        const std::size_t top = classes[ci]->offsets.size() - 1;
        std::vector<Real> log_pow(top + 1);
        log_pow[0] = Real(Rational(1), bits);
        for (std::size_t j = 1; j <= top; ++j)
            log_pow[j] = log_pow[j - 1] * lx;
        Real power = pow(x, classes[ci]->base);
        std::vector<Real> magnitudes;
        magnitudes.reserve(table.size());
        bool active = false;
        for (const auto &row : table) {
            XVector term(dim, zero);
            bool any = false;
            for (std::size_t j = 0; j <= top; ++j)
                for (std::size_t c = 0; c < dim; ++c)
                    if (row[j][c] != 0) {
                        term[c] += Real(row[j][c], bits) * log_pow[j];
                        any = true;
                    }
            Real mag = zero;
            if (any) {
                for (std::size_t c = 0; c < dim; ++c) {
                    term[c] *= power;
                    out.value[c] += term[c];
                }
                mag = norm_inf(term);
                active = true;
            }
            magnitudes.push_back(mag);
            power *= x;
        }
        if (active)
            out.tail += tail_estimate(magnitudes, x0);
    }
    return out;
}

} // namespace detail

SeriesValue evaluate_series(const KZSeries &s, const Rational &x0, mpfr_prec_t bits) {
    std::vector<const EigenClass *> classes;
    std::vector<const std::vector<std::vector<RVector>> *> coeffs;
    for (const auto &ct : s.classes) {
        classes.push_back(&ct.eigen_class);
        coeffs.push_back(&ct.coeffs);
    }
    return detail::sum_terms(classes, coeffs, s.initial.size(), x0, bits);
}

} // namespace fusionkz
