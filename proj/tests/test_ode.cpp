#include "fusionkz/associator.hpp"
#include "fusionkz/errors.hpp"
#include "fusionkz/ode.hpp"

#include <doctest.h>

using namespace fusionkz;

namespace {

GModulePtr share(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

} // namespace

TEST_CASE("Gauss-Legendre coefficients") {
    const GaussLegendre g = gauss_legendre(4, 128);
    Real sum(Rational(0), 128);
    for (const auto &b : g.b)
        sum += b;
    CHECK(abs(sum - Real(Rational(1), 128)) < exp2(-120, 128));
    // exact for polynomials of degree 2s - 1
    Real integral(Rational(0), 128);
    for (std::size_t i = 0; i < 4; ++i)
        integral += g.b[i] * pow(g.c[i], 7L);
    CHECK(abs(integral - Real(Rational(1, 8), 128)) < exp2(-120, 128));
    for (std::size_t i = 0; i < 4; ++i) {
        Real row(Rational(0), 128);
        for (std::size_t j = 0; j < 4; ++j)
            row += g.a(i, j);
        CHECK(abs(row - g.c[i]) < exp2(-120, 128));
    }
}

TEST_CASE("zero residues leave the vector unchanged") {
    const KZSystem sys = make_kz_system(RMatrix(2, 2), RMatrix(2, 2), {0}, {0});
    const XVector w = to_real(RVector{Rational(3), Rational(-1, 7)}, 128);
    const XVector out = ode_oracle(sys, Rational(1, 5), Rational(4, 5), w, 128);
    CHECK(abs(out[0] - w[0]) < exp2(-120, 128));
    CHECK(abs(out[1] - w[1]) < exp2(-120, 128));
}

TEST_CASE("eigenvector transport scales by the power ratio") {
    RMatrix a(2, 2);
    a(0, 0) = Rational(1, 3);
    a(1, 1) = Rational(-1, 2);
    const KZSystem sys = make_kz_system(a, RMatrix(2, 2), {Rational(1, 3), Rational(-1, 2)}, {0},
                                        {{0}, {1}});
    const XVector w = to_real(RVector{1, 1}, 128);
    const XVector out = ode_oracle(sys, Rational(3, 10), Rational(1, 2), w, 128);
    const Real ratio(Rational(5, 3), 128);
    CHECK(abs(out[0] - pow(ratio, Rational(1, 3))) < exp2(-110, 128));
    CHECK(abs(out[1] - pow(ratio, Rational(-1, 2))) < exp2(-110, 128));
}

TEST_CASE("series sums agree with integration") {
    const auto d = build_root_datum("A1");
    const auto v = share(defining_module(d));
    const auto l2 = share(irreducible(d, {2}));
    for (const auto &sys : {build_omega_system(v, v, v, 1), build_omega_system(v, l2, v, 2)}) {
        const auto f3 = fundamental_matrix(sys.kz, Endpoint::zero, Rational(3, 10), 160, 128);
        const auto f5 = fundamental_matrix(sys.kz, Endpoint::zero, Rational(1, 2), 160, 128);
        const Transport t = ode_transport(sys.kz, Rational(3, 10), Rational(1, 2), 128);
        CHECK(norm_inf(t.matrix * f3.value - f5.value) < exp2(-100, 128));
        const auto g3 = fundamental_matrix(sys.kz, Endpoint::one, Rational(3, 10), 160, 128);
        const auto g5 = fundamental_matrix(sys.kz, Endpoint::one, Rational(1, 2), 160, 128);
        const Transport u = ode_transport(sys.kz, Rational(7, 10), Rational(1, 2), 128);
        CHECK(norm_inf(u.matrix * g3.value - g5.value) < exp2(-100, 128));
    }
}

TEST_CASE("integration path restrictions") {
    const KZSystem sys = make_kz_system(RMatrix(1, 1), RMatrix(1, 1), {0}, {0});
    CHECK_THROWS_AS(ode_transport(sys, Rational(0), Rational(1, 2), 64), DomainError);
    OdeOptions tight;
    tight.max_steps = 1;
    RMatrix a(1, 1);
    a(0, 0) = 5;
    const KZSystem stiff = make_kz_system(a, a, {5}, {5});
    CHECK_THROWS_AS(ode_transport(stiff, Rational(1, 100), Rational(99, 100), 128, tight),
                    PrecisionExhausted);
}
