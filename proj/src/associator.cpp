#include "fusionkz/associator.hpp"

#include <cstdlib>
#include <exception>
#include <string>

namespace fusionkz {

mpfr_prec_t default_precision_bits() {
    if (const char *env = std::getenv("FUSIONKZ_BITS")) {
        try {
            std::size_t used = 0;
            const long bits = std::stol(env, &used);
            if (used == std::string(env).size() && bits >= 53)
                return static_cast<mpfr_prec_t>(bits);
        } catch (const std::exception &) {
        }
    }
    return 128;
}

Real AssociatorParams::target() const {
    if (tail_target > 0)
        return Real(Rational(tail_target), bits);
    return exp2(-static_cast<long>(bits) + 24, bits);
}

namespace {

template <class F> void for_each_task(std::size_t count, Execution exec, F &&body) {
    std::exception_ptr failure;
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (long t = 0; t < n; ++t) {
        try {
            body(static_cast<std::size_t>(t));
        } catch (...) {
#pragma omp critical(fusionkz_task_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

FundamentalMatrix eigen_fundamental(const KZSystem &sys, Endpoint endpoint, const Rational &x0,
                                    std::size_t order, mpfr_prec_t bits, Execution exec) {
    const Spectrum &spec = endpoint == Endpoint::zero ? sys.spec_a : sys.spec_b;
    const RMatrix &other = endpoint == Endpoint::zero ? sys.b : sys.a;
    const std::size_t nb = spec.blocks.size();

    struct Task {
        std::size_t block, column;
    };
    std::vector<Task> tasks;
    std::vector<RMatrix> conj(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        const auto &blk = spec.blocks[b];
        const std::span<const std::size_t> idx(blk.indices);
        conj[b] = blk.eigvecs_inv * submatrix(other, idx, idx) * blk.eigvecs;
        for (std::size_t c = 0; c < blk.indices.size(); ++c)
            tasks.push_back({b, c});
    }
    std::vector<SeriesValue> results(tasks.size());
    for_each_task(tasks.size(), exec, [&](std::size_t t) {
        const auto &blk = spec.blocks[tasks[t].block];
        const std::size_t m = blk.indices.size();
        RVector w0(m);
        w0[tasks[t].column] = 1;
        const auto terms = detail::block_series(blk.diag, conj[tasks[t].block], w0,
                                                spec.classes, order);
        std::vector<const EigenClass *> classes;
        std::vector<const std::vector<std::vector<RVector>> *> coeffs;
        for (std::size_t c = 0; c < terms.size(); ++c) {
            classes.push_back(&spec.classes[c]);
            coeffs.push_back(&terms[c]);
        }
        results[t] = detail::sum_terms(classes, coeffs, m, x0, bits);
    });

    const Real zero(Rational(0), bits);
    FundamentalMatrix out;
    out.value = XMatrix(sys.dim, sys.dim, zero);
    out.tail = zero;
    std::size_t t = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        const auto &blk = spec.blocks[b];
        const std::size_t m = blk.indices.size();
        XMatrix e(m, m, zero);
        Real tail = zero;
        for (std::size_t c = 0; c < m; ++c, ++t) {
            e.set_column(c, results[t].value);
            tail += results[t].tail;
        }
        const XMatrix p = to_real(blk.eigvecs, bits);
        const XMatrix pinv = to_real(blk.eigvecs_inv, bits);
        const XMatrix local = p * e * pinv;
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                out.value(blk.indices[r], blk.indices[c]) = local(r, c);
        out.tail = max(out.tail, norm_inf(p) * tail * norm_inf(pinv));
    }
    return out;
}

FundamentalMatrix direct_fundamental(const KZSystem &sys, Endpoint endpoint,
                                     const Rational &x0, std::size_t order, mpfr_prec_t bits,
                                     Execution exec) {
    const Real zero(Rational(0), bits);
    std::vector<SeriesValue> columns(sys.dim);
    for_each_task(sys.dim, exec, [&](std::size_t k) {
        RVector e(sys.dim);
        e[k] = 1;
        const KZSeries s = endpoint == Endpoint::zero ? series_at_zero(sys, e, order)
                                                      : series_at_one(sys, e, order);
        columns[k] = evaluate_series(s, x0, bits);
    });
    FundamentalMatrix out;
    out.value = XMatrix(sys.dim, sys.dim, zero);
    out.tail = zero;
    for (std::size_t k = 0; k < sys.dim; ++k) {
        out.value.set_column(k, columns[k].value);
        out.tail += columns[k].tail;
    }
    return out;
}

} // namespace

FundamentalMatrix fundamental_matrix(const KZSystem &sys, Endpoint endpoint, const Rational &x0,
                                     std::size_t order, mpfr_prec_t bits, Execution exec,
                                     SeriesMethod method) {
    if (x0 <= 0 || x0 >= 1)
        throw DomainError("evaluation point must lie strictly inside (0, 1)");
    return method == SeriesMethod::eigen ? eigen_fundamental(sys, endpoint, x0, order, bits, exec)
                                         : direct_fundamental(sys, endpoint, x0, order, bits, exec);
}

AssociatorMatrix connection_matrix(std::shared_ptr<const KZSystem> sys,
                                   const AssociatorParams &params) {
    if (!sys)
        throw DomainError("missing system");
    if (params.z0 <= 0 || params.z0 >= 1)
        throw DomainError("z0 must lie strictly inside (0, 1)");
    if (params.bits < 53)
        throw DomainError("precision below 53 bits");
    const mpfr_prec_t bits = params.bits;
    const Real zero(Rational(0), bits);
    const Real target = params.target();

    std::size_t min_order = 0;
    for (const auto *spec : {&sys->spec_a, &sys->spec_b})
        for (const auto &cls : spec->classes)
            min_order = std::max<std::size_t>(min_order, cls.offsets.back());

    AssociatorMatrix out;
    out.system = sys;
    out.z0 = params.z0;
    out.bits = bits;
    std::size_t order = params.order ? params.order : params.initial_order;
    order = std::max(order, min_order);
    while (true) {
        out.orders_tried.push_back(order);
        const auto fa = fundamental_matrix(*sys, Endpoint::zero, params.z0, order, bits,
                                           params.exec, params.method);
        const auto fb = fundamental_matrix(*sys, Endpoint::one, Rational(1 - params.z0), order,
                                           bits, params.exec, params.method);
        XMatrix phi(sys->dim, sys->dim, zero);
        Real condition(Rational(1), bits);
        Real inv_norm = zero;
        for (const auto &idx : sys->blocks) {
            const std::span<const std::size_t> s(idx);
            const XMatrix mb = submatrix(fb.value, s, s);
            const LuSolver lu(mb);
            if (lu.pivot_ratio() == 0)
                throw PrecisionExhausted("fundamental matrix at one is numerically singular");
            const XMatrix local = lu.solve(submatrix(fa.value, s, s));
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t c = 0; c < idx.size(); ++c)
                    phi(idx[r], idx[c]) = local(r, c);
            const Real cond = lu.condition();
            condition = max(condition, cond);
            inv_norm = max(inv_norm, cond / norm_inf(mb));
        }
        const Real phi_norm = norm_inf(phi);
        const Real eps = exp2(-static_cast<long>(bits), bits);
        const Real rounding = condition * eps * phi_norm * Real(Rational(sys->dim + 1), bits);
        if (!(rounding < Real(Rational(params.tolerance), bits)))
            throw PrecisionExhausted("condition number " + condition.to_string(6) +
                                     " exceeds the precision budget of " +
                                     std::to_string(bits) + " bits");
        out.order = order;
        out.phi = std::move(phi);
        out.tail_zero = fa.tail;
        out.tail_one = fb.tail;
        out.condition = condition;
        out.tail_bound = inv_norm * (fa.tail + fb.tail * phi_norm) + rounding;
        out.defining_residual = norm_inf(fb.value * out.phi - fa.value);
        if (params.order || out.tail_bound <= target)
            break;
        if (order * 2 > params.max_order)
            throw PrecisionExhausted("tail bound " + out.tail_bound.to_string(6) +
                                     " above target at maximal order " + std::to_string(order));
        order *= 2;
    }
    out.phi_adjoint = transpose(out.phi);
    return out;
}

AssociatorMatrix connection_matrix(std::shared_ptr<const OmegaSystem> sys,
                                   const AssociatorParams &params) {
    if (!sys)
        throw DomainError("missing system");
    auto out = connection_matrix(std::shared_ptr<const KZSystem>(sys, &sys->kz), params);
    out.omega = std::move(sys);
    return out;
}

Real verify_equivariance(const AssociatorMatrix &assoc) {
    if (!assoc.omega)
        throw DomainError("equivariance check needs module data");
    const GModule &t = assoc.omega->triple;
    Real worst(Rational(0), assoc.bits);
    for (const auto &rho : t.action) {
        XMatrix dual = to_real(transpose(rho), assoc.bits);
        for (auto &x : dual.data())
            x = -x;
        worst = max(worst, norm_inf(assoc.phi * dual - dual * assoc.phi));
    }
    return worst;
}

SubspaceBasis right_nested_kernel(const GModulePtr &u1, const GModulePtr &u2,
                                  const GModulePtr &u3, long level) {
    const FusionProduct inner = fuse(u2, u3, level);
    const FusionProduct outer = fuse(*u1, inner.result, level);
    const RMatrix map = outer.projection * kron(RMatrix::identity(u1->dim), inner.projection);
    return make_subspace(nullspace(map), u1->dim * u2->dim * u3->dim);
}

SubspaceBasis left_nested_kernel(const GModulePtr &u1, const GModulePtr &u2,
                                 const GModulePtr &u3, long level) {
    const FusionProduct inner = fuse(u1, u2, level);
    const FusionProduct outer = fuse(inner.result, *u3, level);
    const RMatrix map = outer.projection * kron(inner.projection, RMatrix::identity(u3->dim));
    return make_subspace(nullspace(map), u1->dim * u2->dim * u3->dim);
}

QuotientAssociator evaluate_associator_on_quotients(const GModulePtr &u1, const GModulePtr &u2,
                                                    const GModulePtr &u3, long level,
                                                    const AssociatorParams &params) {
    QuotientAssociator out;
    out.omega = std::make_shared<const OmegaSystem>(build_omega_system(u1, u2, u3, level));
    out.assoc = connection_matrix(out.omega, params);
    out.source_kernel = right_nested_kernel(u1, u2, u3, level);
    out.target_kernel = left_nested_kernel(u1, u2, u3, level);

    const mpfr_prec_t bits = params.bits;
    const Real zero(Rational(0), bits);
    const Real tol(Rational(params.tolerance), bits);
    const XMatrix &phi_star = out.assoc.phi_adjoint;
    const XMatrix p_tgt = to_real(out.target_kernel.projection, bits);
    const XMatrix s_src = to_real(out.source_kernel.section, bits);

    auto &rep = out.report;
    rep.tensor_dim = out.omega->dim();
    rep.source_kernel_dim = out.source_kernel.dim();
    rep.target_kernel_dim = out.target_kernel.dim();
    rep.quotient_dim = rep.tensor_dim - rep.target_kernel_dim;
    rep.dims_equal = rep.source_kernel_dim == rep.target_kernel_dim;
    rep.tolerance = tol;

    rep.transport_residual = zero;
    for (const auto &k : out.source_kernel.vectors) {
        const XVector kv = to_real(k, bits);
        rep.transport_residual =
            max(rep.transport_residual, norm_inf(p_tgt * (phi_star * kv)) / norm_inf(kv));
    }
    rep.transport_ok = rep.dims_equal && rep.transport_residual < tol;

    out.matrix = p_tgt * phi_star * s_src;
    rep.phi_equivariance_residual = verify_equivariance(out.assoc);

    rep.equivariance_residual = zero;
    if (rep.dims_equal) {
        const GModule &t = out.omega->triple;
        const XMatrix p_src = to_real(out.source_kernel.projection, bits);
        const XMatrix s_tgt = to_real(out.target_kernel.section, bits);
        for (const auto &rho : t.action) {
            const XMatrix r = to_real(rho, bits);
            const XMatrix act_src = p_src * r * s_src;
            const XMatrix act_tgt = p_tgt * r * s_tgt;
            rep.equivariance_residual =
                max(rep.equivariance_residual,
                    norm_inf(out.matrix * act_src - act_tgt * out.matrix));
        }
    }
    rep.equivariant = rep.equivariance_residual < tol && rep.phi_equivariance_residual < tol;

    if (rep.dims_equal && rep.quotient_dim > 0) {
        const LuSolver lu(out.matrix);
        rep.pivot_ratio = lu.pivot_ratio();
        rep.condition = rep.pivot_ratio == 0 ? infinity(bits) : lu.condition();
        const Real eps = exp2(-static_cast<long>(bits), bits);
        rep.invertible = rep.pivot_ratio > tol && rep.condition * eps < tol;
    } else {
        rep.pivot_ratio = Real(Rational(1), bits);
        rep.condition = Real(Rational(1), bits);
        rep.invertible = rep.dims_equal;
    }
    return out;
}

QuotientAssociator associator_on_quotients(const GModulePtr &u1, const GModulePtr &u2,
                                           const GModulePtr &u3, long level,
                                           const AssociatorParams &params) {
    auto out = evaluate_associator_on_quotients(u1, u2, u3, level, params);
    const auto &rep = out.report;
    if (!rep.transport_ok)
        throw VerificationFailure(
            "kernel transport failed: residual " + rep.transport_residual.to_string(6) +
            ", kernel dimensions " + std::to_string(rep.source_kernel_dim) + " and " +
            std::to_string(rep.target_kernel_dim));
    return out;
}

} // namespace fusionkz
