#include "fusionkz/verify.hpp"

#include <algorithm>
#include <memory>
#include <string>

namespace fusionkz {

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
}

bool PentagonReport::passed() const {
    if (!(residual < tolerance))
        return false;
    for (std::size_t k = 0; k < 5; ++k)
        if (quotient_dims[k] != quotient_dims[0] || !associators[k].passed() ||
            !(transport[k] < tolerance))
            return false;
    return true;
}

namespace {

GModulePtr share(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

/// Bracketing of four factors; leaves are 0..3.
struct Tree {
    int leaf = -1;
    std::shared_ptr<const Tree> left, right;
};

std::shared_ptr<const Tree> leaf(int i) {
    auto t = std::make_shared<Tree>();
    t->leaf = i;
    return t;
}

std::shared_ptr<const Tree> node(std::shared_ptr<const Tree> l, std::shared_ptr<const Tree> r) {
    auto t = std::make_shared<Tree>();
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
}

struct Nested {
    GModule module;
    RMatrix projection; ///< tensor of the leaves -> module
};

Nested nest(const Tree &t, const std::array<GModulePtr, 4> &u, long level) {
    if (t.leaf >= 0)
        return {*u[t.leaf], RMatrix::identity(u[t.leaf]->dim)};
    const Nested l = nest(*t.left, u, level);
    const Nested r = nest(*t.right, u, level);
    FusionProduct fp = fuse(l.module, r.module, level);
    return {std::move(fp.result), fp.projection * kron(l.projection, r.projection)};
}

XMatrix real_identity(std::size_t n, mpfr_prec_t bits) {
    return to_real(RMatrix::identity(n), bits);
}

} // namespace

PentagonReport verify_pentagon(const GModulePtr &u1, const GModulePtr &u2, const GModulePtr &u3,
                               const GModulePtr &u4, long level,
                               const AssociatorParams &params) {
    const std::array<GModulePtr, 4> u{u1, u2, u3, u4};
    for (const auto &m : u)
        if (!in_category(*m, level))
            throw NotInCategory("factor " + m->provenance + " is not in the level " +
                                std::to_string(level) + " category");
    const mpfr_prec_t bits = params.bits;
    const std::size_t n1 = u1->dim, n2 = u2->dim, n3 = u3->dim, n4 = u4->dim;
    const std::size_t n = n1 * n2 * n3 * n4;

    PentagonReport rep;
    rep.level = level;
    rep.tensor_dim = n;
    rep.tolerance = Real(Rational(params.tolerance), bits);

    const auto l1 = leaf(0), l2 = leaf(1), l3 = leaf(2), l4 = leaf(3);
    const std::array<std::shared_ptr<const Tree>, 5> brackets{
        node(l1, node(l2, node(l3, l4))), node(node(l1, l2), node(l3, l4)),
        node(node(node(l1, l2), l3), l4), node(node(l1, node(l2, l3)), l4),
        node(l1, node(node(l2, l3), l4))};
    std::array<SubspaceBasis, 5> kernels;
    std::array<XMatrix, 5> proj, sect;
    for (std::size_t k = 0; k < 5; ++k) {
        kernels[k] = make_subspace(nullspace(nest(*brackets[k], u, level).projection), n);
        rep.quotient_dims[k] = n - kernels[k].dim();
        proj[k] = to_real(kernels[k].projection, bits);
        sect[k] = to_real(kernels[k].section, bits);
    }

    const FusionProduct f12 = fuse(u1, u2, level);
    const FusionProduct f23 = fuse(u2, u3, level);
    const FusionProduct f34 = fuse(u3, u4, level);
    const GModulePtr y12 = share(f12.result), y23 = share(f23.result), x34 = share(f34.result);

    const auto a_12_34 = evaluate_associator_on_quotients(u1, u2, x34, level, params);
    const auto a_12_3_4 = evaluate_associator_on_quotients(y12, u3, u4, level, params);
    const auto a_234 = evaluate_associator_on_quotients(u2, u3, u4, level, params);
    const auto a_1_23_4 = evaluate_associator_on_quotients(u1, y23, u4, level, params);
    const auto a_123 = evaluate_associator_on_quotients(u1, u2, u3, level, params);
    rep.associators = {a_12_34.report, a_12_3_4.report, a_234.report, a_1_23_4.report,
                       a_123.report};

    const XMatrix i1 = real_identity(n1, bits), i4 = real_identity(n4, bits);
    const XMatrix i12 = real_identity(n1 * n2, bits), i34 = real_identity(n3 * n4, bits);
    const auto lift = [&](const XMatrix &up, const XMatrix &phi, const XMatrix &down) {
        return up * phi * down;
    };
    // lifts to U1 (x) U2 (x) U3 (x) U4 of the five associativity maps
    const XMatrix m1 = lift(kron(i12, to_real(f34.section, bits)), a_12_34.assoc.phi_adjoint,
                            kron(i12, to_real(f34.projection, bits)));
    const XMatrix m2 = lift(kron(to_real(f12.section, bits), i34), a_12_3_4.assoc.phi_adjoint,
                            kron(to_real(f12.projection, bits), i34));
    const XMatrix m3 = kron(i1, a_234.assoc.phi_adjoint);
    const XMatrix m4 =
        lift(kron(kron(i1, to_real(f23.section, bits)), i4), a_1_23_4.assoc.phi_adjoint,
             kron(kron(i1, to_real(f23.projection, bits)), i4));
    const XMatrix m5 = kron(a_123.assoc.phi_adjoint, i4);

    // source and target bracketing of each lifted map
    const std::array<const XMatrix *, 5> maps{&m1, &m2, &m3, &m4, &m5};
    const std::array<std::pair<std::size_t, std::size_t>, 5> ends{
        std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {0, 4}, {4, 3}, {3, 2}};
    for (std::size_t k = 0; k < 5; ++k) {
        const auto [src, tgt] = ends[k];
        Real worst(Rational(0), bits);
        for (const auto &v : kernels[src].vectors) {
            const XVector kv = to_real(v, bits);
            worst = max(worst, norm_inf(proj[tgt] * (*maps[k] * kv)) / norm_inf(kv));
        }
        rep.transport[k] = worst;
    }

    const XMatrix lhs = proj[2] * (m2 * (m1 * sect[0]));
    const XMatrix rhs = proj[2] * (m5 * (m4 * (m3 * sect[0])));
    rep.residual = rep.quotient_dims[0] ? norm_inf(lhs - rhs) : Real(Rational(0), bits);
    return rep;
}

SuiteReport unit_suite(const RootDatumPtr &datum, long level) {
    SuiteReport rep;
    rep.suite = "unit";
    const GModulePtr unit = share(trivial_module(datum));
    const Real zero(Rational(0), 53);
    for (const auto &lambda : admissible_weights(*datum, level)) {
        const GModulePtr m = share(irreducible(datum, lambda));
        const std::string label = weight_label(lambda);
        for (const bool left : {true, false}) {
            const FusionProduct fp = left ? fuse(unit, m, level) : fuse(m, unit, level);
            Check c;
            c.name = std::string(left ? "left" : "right") + " unit " + label;
            const bool identity = fp.kernel.dim() == 0 &&
                                  fp.projection == RMatrix::identity(m->dim) &&
                                  fp.result.action == m->action && fp.result.weights == m->weights;
            c.residual = Real(Rational(static_cast<long>(fp.kernel.dim())), 53);
            c.tolerance = zero;
            c.passed = identity;
            c.detail = "kernel dimension " + std::to_string(fp.kernel.dim()) + ", module dimension " +
                       std::to_string(m->dim);
            rep.checks.push_back(std::move(c));
        }
    }
    return rep;
}

namespace {

FundamentalMatrix adaptive_fundamental(const KZSystem &sys, Endpoint endpoint,
                                       const Rational &x0, const AssociatorParams &params) {
    std::size_t order = params.order ? params.order : params.initial_order;
    const Real target = params.target();
    while (true) {
        auto f = fundamental_matrix(sys, endpoint, x0, order, params.bits, params.exec,
                                    params.method);
        if (params.order || f.tail <= target)
            return f;
        if (order * 2 > params.max_order)
            throw PrecisionExhausted("series tail above target at maximal order " +
                                     std::to_string(order));
        order *= 2;
    }
}

} // namespace

SuiteReport oracle_suite(const GModulePtr &u1, const GModulePtr &u2, const GModulePtr &u3,
                         long level, const AssociatorParams &params) {
    SuiteReport rep;
    rep.suite = "oracle";
    const OmegaSystem sys = build_omega_system(u1, u2, u3, level);
    const mpfr_prec_t bits = params.bits;
    const Rational near(3, 10), mid(1, 2), far(7, 10);
    const Real tol(Rational(params.tolerance), bits);

    const auto add = [&](const std::string &name, const FundamentalMatrix &start,
                         const FundamentalMatrix &end, const Transport &tr) {
        Check c;
        c.name = name;
        c.residual = norm_inf(tr.matrix * start.value - end.value);
        c.tolerance = tol;
        const Real combined = norm_inf(tr.matrix) * start.tail + end.tail +
                              tr.error_estimate * norm_inf(start.value);
        c.passed = c.residual < tol;
        c.detail = "series tails " + start.tail.to_string(6) + " and " + end.tail.to_string(6) +
                   ", integration error " + tr.error_estimate.to_string(6) + ", combined " +
                   combined.to_string(6) + ", steps " + std::to_string(tr.steps);
        rep.checks.push_back(std::move(c));
    };

    const auto a3 = adaptive_fundamental(sys.kz, Endpoint::zero, near, params);
    const auto a5 = adaptive_fundamental(sys.kz, Endpoint::zero, mid, params);
    add("series at zero vs integration", a3, a5, ode_transport(sys.kz, near, mid, bits));
    const auto b3 = adaptive_fundamental(sys.kz, Endpoint::one, Rational(1) - far, params);
    const auto b5 = adaptive_fundamental(sys.kz, Endpoint::one, Rational(1) - mid, params);
    add("series at one vs integration", b3, b5, ode_transport(sys.kz, far, mid, bits));
    return rep;
}

} // namespace fusionkz
