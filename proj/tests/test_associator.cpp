#include "fusionkz/associator.hpp"
#include "fusionkz/errors.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace fusionkz;

namespace {

GModulePtr share(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

std::shared_ptr<const OmegaSystem> omega(const GModulePtr &a, const GModulePtr &b,
                                         const GModulePtr &c, long level) {
    return std::make_shared<const OmegaSystem>(build_omega_system(a, b, c, level));
}

Real distance_to_identity(const XMatrix &m) {
    const mpfr_prec_t bits = m.rows() ? m(0, 0).precision() : 64;
    return norm_inf(m - to_real(RMatrix::identity(m.rows()), bits));
}

struct Sl2 {
    RootDatumPtr d = build_root_datum("A1");
    GModulePtr triv = share(trivial_module(d));
    GModulePtr v = share(defining_module(d));
    GModulePtr l2 = share(irreducible(d, {2}));
};

const Real identity_tolerance(Rational(1, 100000) * Rational(1, 100000) * Rational(1, 100000) *
                                  Rational(1, 100000) * Rational(1, 100000),
                              128); // 1e-25

} // namespace

TEST_CASE("precision default honours FUSIONKZ_BITS") {
    ::setenv("FUSIONKZ_BITS", "200", 1);
    CHECK(default_precision_bits() == 200);
    ::setenv("FUSIONKZ_BITS", "20", 1);
    CHECK(default_precision_bits() == 128);
    ::setenv("FUSIONKZ_BITS", "abc", 1);
    CHECK(default_precision_bits() == 128);
    ::unsetenv("FUSIONKZ_BITS");
    CHECK(default_precision_bits() == 128);
}

TEST_CASE("vanishing residues give the identity") {
    const KZSystem sys = make_kz_system(RMatrix(3, 3), RMatrix(3, 3), {0}, {0});
    const auto a = connection_matrix(std::make_shared<const KZSystem>(sys));
    CHECK(distance_to_identity(a.phi) == 0);
    CHECK(a.tail_bound < exp2(-100, 128));
}

TEST_CASE("a trivial factor forces the identity") {
    Sl2 s;
    for (const auto &sys : {omega(s.v, s.v, s.triv, 1), omega(s.triv, s.v, s.v, 1),
                            omega(s.v, s.triv, s.v, 1), omega(s.l2, s.v, s.triv, 2)}) {
        const auto a = connection_matrix(sys);
        CHECK(distance_to_identity(a.phi) < identity_tolerance);
    }
}

TEST_CASE("the associator does not depend on the evaluation point") {
    Sl2 s;
    const auto sys = omega(s.v, s.v, s.v, 1);
    AssociatorParams p;
    const auto half = connection_matrix(sys, p);
    for (const Rational z0 : {Rational(2, 5), Rational(3, 5)}) {
        p.z0 = z0;
        const auto other = connection_matrix(sys, p);
        CHECK(norm_inf(half.phi - other.phi) <
              Real(Rational(10), 128) * (half.tail_bound + other.tail_bound));
    }
    CHECK(half.defining_residual < half.tail_bound);
    CHECK(half.phi_adjoint == transpose(half.phi));
}

TEST_CASE("eigen and direct series paths agree") {
    Sl2 s;
    const auto sys = omega(s.v, s.l2, s.v, 2);
    AssociatorParams p;
    p.order = 96;
    const auto eig = connection_matrix(sys, p);
    p.method = SeriesMethod::direct;
    const auto dir = connection_matrix(sys, p);
    CHECK(norm_inf(eig.phi - dir.phi) < exp2(-100, 128));
}

TEST_CASE("serial and parallel kernels are bit identical") {
    Sl2 s;
    const auto sys = omega(s.v, s.l2, s.v, 2);
    AssociatorParams p;
    p.order = 64;
    const auto ser = connection_matrix(sys, p);
    p.exec = Execution::parallel;
    const auto par = connection_matrix(sys, p);
    CHECK(ser.phi == par.phi);
    CHECK(ser.tail_bound == par.tail_bound);
}

TEST_CASE("the associator commutes with the dual action") {
    Sl2 s;
    const auto a = connection_matrix(omega(s.v, s.v, s.v, 1));
    CHECK(verify_equivariance(a) < identity_tolerance);
    const KZSystem bare = make_kz_system(RMatrix(2, 2), RMatrix(2, 2), {0}, {0});
    CHECK_THROWS_AS(verify_equivariance(connection_matrix(std::make_shared<const KZSystem>(bare))),
                    DomainError);
}

TEST_CASE("order budget exhaustion") {
    Sl2 s;
    AssociatorParams p;
    p.max_order = 64;
    CHECK_THROWS_AS(connection_matrix(omega(s.v, s.v, s.v, 1), p), PrecisionExhausted);
    p.z0 = Rational(3, 2);
    CHECK_THROWS_AS(connection_matrix(omega(s.v, s.v, s.v, 1), p), DomainError);
}

TEST_CASE("associator on quotients for V V V") {
    Sl2 s;
    const auto q1 = associator_on_quotients(s.v, s.v, s.v, 1);
    CHECK(q1.report.source_kernel_dim == 6);
    CHECK(q1.report.target_kernel_dim == 6);
    CHECK(q1.matrix.rows() == 2);
    CHECK(q1.report.transport_residual < identity_tolerance);
    CHECK(q1.report.invertible);
    CHECK(q1.report.passed());

    const auto q3 = associator_on_quotients(s.v, s.v, s.v, 3);
    CHECK(q3.report.source_kernel_dim == 0);
    CHECK(q3.matrix == q3.assoc.phi_adjoint);
    CHECK(q3.report.invertible);
}

TEST_CASE("a trivial first factor gives the identity on quotients") {
    Sl2 s;
    const auto q = associator_on_quotients(s.triv, s.l2, s.v, 2);
    CHECK(q.report.source_kernel_dim == q.report.target_kernel_dim);
    CHECK(q.source_kernel.vectors == q.target_kernel.vectors);
    CHECK(distance_to_identity(q.matrix) < identity_tolerance);
}
