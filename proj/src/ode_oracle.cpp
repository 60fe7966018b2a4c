#include "fusionkz/ode.hpp"

#include <cmath>
#include <numbers>

namespace fusionkz {

GaussLegendre gauss_legendre(std::size_t stages, mpfr_prec_t bits) {
    if (stages == 0)
        throw DomainError("at least one stage is required");
    const Real zero(Rational(0), bits);
    const Real one(Rational(1), bits);
    const Real tiny = exp2(-static_cast<long>(bits) + 4, bits);
    const long n = static_cast<long>(stages);

    // roots of P_n on [-1, 1] by Newton iteration, largest first
    std::vector<Real> roots;
    for (long k = 1; k <= n; ++k) {
        Real x(std::cos(std::numbers::pi * (k - 0.25) / (n + 0.5)));
        x = Real(Rational(0), bits) + x;
        for (int iter = 0; iter < 200; ++iter) {
            Real p_prev = one, p = x;
            for (long j = 1; j < n; ++j) {
                Real next = (Real(Rational(2 * j + 1), bits) * x * p -
                             Real(Rational(j), bits) * p_prev) /
                            Real(Rational(j + 1), bits);
                p_prev = std::move(p);
                p = std::move(next);
            }
            if (n == 1)
                p_prev = one;
            const Real dp = Real(Rational(n), bits) * (x * p - p_prev) / (x * x - one);
            const Real dx = p / dp;
            x -= dx;
            if (abs(dx) <= tiny)
                break;
        }
        roots.push_back(std::move(x));
    }

    GaussLegendre g;
    g.stages = stages;
    g.c.resize(stages);
    for (std::size_t i = 0; i < stages; ++i)
        g.c[i] = (one - roots[i]) / Real(Rational(2), bits);

    // moment conditions: sum_j c_j^k b_j = 1/(k+1), sum_j c_j^k a_ij = c_i^(k+1)/(k+1)
    XMatrix v(stages, stages, zero);
    for (std::size_t j = 0; j < stages; ++j) {
        Real p = one;
        for (std::size_t k = 0; k < stages; ++k) {
            v(k, j) = p;
            p *= g.c[j];
        }
    }
    XMatrix rhs(stages, stages + 1, zero);
    for (std::size_t k = 0; k < stages; ++k) {
        const Real inv(Rational(1, static_cast<long>(k + 1)), bits);
        rhs(k, 0) = inv;
        for (std::size_t i = 0; i < stages; ++i)
            rhs(k, i + 1) = pow(g.c[i], static_cast<long>(k + 1)) * inv;
    }
    const XMatrix sol = LuSolver(v).solve(rhs);
    g.b = sol.column(0);
    g.a = XMatrix(stages, stages, zero);
    for (std::size_t i = 0; i < stages; ++i)
        for (std::size_t j = 0; j < stages; ++j)
            g.a(i, j) = sol(j, i + 1);
    return g;
}

namespace {

Real min_factor(const Real &f, mpfr_prec_t bits) {
    const Real lo(Rational(1, 5), bits), hi(Rational(2), bits);
    return f < lo ? lo : (f > hi ? hi : f);
}

struct BlockIntegrator {
    const GaussLegendre &scheme;
    XMatrix a, b;
    mpfr_prec_t bits;

    XMatrix field(const Real &z) const {
        const Real one(Rational(1), bits);
        const std::size_t m = a.rows();
        XMatrix f(m, m);
        const Real iz = one / z;
        const Real iy = one / (one - z);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                f(r, c) = a(r, c) * iz - b(r, c) * iy;
        return f;
    }

    /// One-step propagator from z to z + h.
    XMatrix step(const Real &z, const Real &h) const {
        const std::size_t m = a.rows();
        const std::size_t s = scheme.stages;
        const Real zero(Rational(0), bits);
        std::vector<XMatrix> f(s);
        for (std::size_t i = 0; i < s; ++i)
            f[i] = field(z + scheme.c[i] * h);
        XMatrix g(s * m, s * m, zero);
        XMatrix rhs(s * m, m, zero);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t c = 0; c < m; ++c)
                    rhs(i * m + r, c) = f[i](r, c);
                for (std::size_t j = 0; j < s; ++j) {
                    const Real ha = h * scheme.a(i, j);
                    for (std::size_t c = 0; c < m; ++c)
                        g(i * m + r, j * m + c) = -(ha * f[i](r, c));
                }
                g(i * m + r, i * m + r) += Real(Rational(1), bits);
            }
        const XMatrix k = LuSolver(g).solve(rhs);
        XMatrix out = XMatrix::identity(m);
        for (auto &x : out.data())
            x = zero + x;
        for (std::size_t i = 0; i < s; ++i) {
            const Real hb = h * scheme.b[i];
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c)
                    out(r, c) += hb * k(i * m + r, c);
        }
        return out;
    }
};

} // namespace

Transport ode_transport(const KZSystem &sys, const Rational &z_start, const Rational &z_end,
                        mpfr_prec_t bits, const OdeOptions &options) {
    for (const auto *z : {&z_start, &z_end})
        if (*z <= 0 || *z >= 1)
            throw DomainError("integration path must stay inside (0, 1)");
    const Real zero(Rational(0), bits);
    const GaussLegendre scheme = gauss_legendre(options.stages, bits);
    const Real tol = options.tolerance > 0 ? Real(Rational(options.tolerance), bits)
                                           : exp2(-static_cast<long>(bits) + 16, bits);
    const Rational exponent(1, static_cast<long>(2 * options.stages + 1));

    Transport out;
    out.matrix = XMatrix(sys.dim, sys.dim, zero);
    out.error_estimate = zero;
    const Real end(z_end, bits);
    const Real length = abs(end - Real(z_start, bits));

    for (const auto &idx : sys.blocks) {
        const std::span<const std::size_t> s(idx);
        const BlockIntegrator integ{scheme, to_real(submatrix(sys.a, s, s), bits),
                                    to_real(submatrix(sys.b, s, s), bits), bits};
        const std::size_t m = idx.size();
        XMatrix total = XMatrix::identity(m);
        for (auto &x : total.data())
            x = zero + x;
        Real z(z_start, bits);
        Real h = (end - z) / Real(Rational(8), bits);
        while (z != end) {
            if (out.steps + out.rejected >= options.max_steps)
                throw PrecisionExhausted("step budget exhausted in the integration oracle");
            const Real remaining = end - z;
            if (abs(h) >= abs(remaining))
                h = remaining;
            const Real half = h / Real(Rational(2), bits);
            const XMatrix full = integ.step(z, h);
            const XMatrix two = integ.step(z + half, half) * integ.step(z, half);
            const Real err = norm_inf(full - two);
            const Real allowed = tol * abs(h) / length;
            Real factor(Rational(2), bits);
            if (err > 0)
                factor = min_factor(Real(Rational(9, 10), bits) * pow(allowed / err, exponent), bits);
            if (err <= allowed) {
                total = two * total;
                z = abs(h) == abs(remaining) ? end : z + h;
                ++out.steps;
                out.error_estimate += err;
            } else {
                ++out.rejected;
                if (abs(h) < exp2(-static_cast<long>(bits) / 2, bits))
                    throw PrecisionExhausted("step size underflow in the integration oracle");
            }
            h *= factor;
        }
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                out.matrix(idx[r], idx[c]) = total(r, c);
    }
    return out;
}

XVector ode_oracle(const KZSystem &sys, const Rational &z_start, const Rational &z_end,
                   const XVector &initial, mpfr_prec_t bits, const OdeOptions &options) {
    if (initial.size() != sys.dim)
        throw DimensionError("initial vector has the wrong length");
    return ode_transport(sys, z_start, z_end, bits, options).matrix * initial;
}

} // namespace fusionkz
