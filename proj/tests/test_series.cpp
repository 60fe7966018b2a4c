#include "fusionkz/errors.hpp"
#include "fusionkz/kz.hpp"

#include <doctest.h>

using namespace fusionkz;

namespace {

GModulePtr share(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

RVector ramp(std::size_t n) {
    RVector w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = make_rational(static_cast<long>(i % 5) - 2, static_cast<long>(i % 3) + 1);
    return w;
}

} // namespace

TEST_CASE("eigenvector with B = 0 gives a pure power") {
    const auto d = build_root_datum("A1");
    const auto v = share(defining_module(d));
    const OmegaSystem sys = build_omega_system(v, v, share(trivial_module(d)), 1);
    const RMatrix p = sys.kz.spec_a.projection(1, sys.dim()); // eigenvalue 1/6
    RVector w;
    for (std::size_t c = 0; c < sys.dim() && w.empty(); ++c)
        if (!is_zero(p.column(c)))
            w = p.column(c);
    const KZSeries s = series_at_zero(sys.kz, w, 10);
    for (const auto &ct : s.classes)
        for (std::size_t i = 0; i <= s.order; ++i)
            for (std::size_t j = 0; j < ct.coeffs[i].size(); ++j) {
                const bool lead = ct.eigen_class.base == Rational(1, 6) && i == 0 && j == 0;
                CHECK(ct.coeffs[i][j] == (lead ? w : RVector(sys.dim())));
            }
    const SeriesValue val = evaluate_series(s, Rational(1, 2), 128);
    CHECK(val.tail == 0);
    const Real scale = pow(Real(Rational(1, 2), 128), Rational(1, 6));
    for (std::size_t c = 0; c < sys.dim(); ++c)
        CHECK(abs(val.value[c] - Real(w[c], 128) * scale) < exp2(-125, 128));
}

TEST_CASE("B eigenvector with A = 0 gives a pure power at one") {
    const auto d = build_root_datum("A1");
    const auto v = share(defining_module(d));
    const OmegaSystem sys = build_omega_system(share(trivial_module(d)), v, v, 1);
    CHECK(is_zero(sys.a()));
    const RMatrix p = sys.kz.spec_b.projection(0, sys.dim());
    RVector w;
    for (std::size_t c = 0; c < sys.dim() && w.empty(); ++c)
        if (!is_zero(p.column(c)))
            w = p.column(c);
    REQUIRE_FALSE(w.empty());
    const KZSeries s = series_at_one(sys.kz, w, 8);
    std::size_t nonzero = 0;
    for (const auto &ct : s.classes)
        for (const auto &row : ct.coeffs)
            for (const auto &c : row)
                nonzero += !is_zero(c);
    CHECK(nonzero == 1);
    CHECK(recursion_residual_is_zero(sys.kz, s));
}

TEST_CASE("zero initial datum") {
    const auto d = build_root_datum("A1");
    const auto v = share(defining_module(d));
    const OmegaSystem sys = build_omega_system(v, v, v, 1);
    for (const Endpoint e : {Endpoint::zero, Endpoint::one}) {
        const KZSeries s = e == Endpoint::zero ? series_at_zero(sys.kz, RVector(8), 12)
                                               : series_at_one(sys.kz, RVector(8), 12);
        const SeriesValue val = evaluate_series(s, Rational(1, 3), 64);
        for (const auto &x : val.value)
            CHECK(x == 0);
        CHECK(val.tail == 0);
    }
}

TEST_CASE("recursion back-substitution on log-bearing classes") {
    const auto d = build_root_datum("A1");
    const auto l2 = share(irreducible(d, {2}));
    const OmegaSystem sys = build_omega_system(l2, l2, l2, 2);
    const RVector w = ramp(sys.dim());
    const KZSeries s0 = series_at_zero(sys.kz, w, 24);
    CHECK(recursion_residual_is_zero(sys.kz, s0));
    const KZSeries s1 = series_at_one(sys.kz, w, 24);
    CHECK(recursion_residual_is_zero(sys.kz, s1));

    bool has_log = false;
    for (const auto &ct : s0.classes)
        for (const auto &row : ct.coeffs)
            for (std::size_t j = 1; j < row.size(); ++j)
                has_log = has_log || !is_zero(row[j]);
    CHECK(has_log);

    // initial datum: leading coefficients reproduce the eigencomponents of w
    const auto &spec = sys.kz.spec_a;
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        const Rational mu = spec.eigenvalues[k];
        const std::size_t c = spec.class_of(mu);
        const auto &cls = spec.classes[c];
        const long offset = Rational(mu - cls.base).get_num().get_si();
        const RMatrix p = spec.projection(k, sys.dim());
        CHECK(p * s0.classes[c].coeffs[static_cast<std::size_t>(offset)][0] == p * w);
    }

    // corrupting one coefficient is detected
    KZSeries bad = s0;
    bad.classes[1].coeffs[3][0][0] += 1;
    CHECK_FALSE(recursion_residual_is_zero(sys.kz, bad));
}

TEST_CASE("order below the largest offset is rejected") {
    const auto d = build_root_datum("A1");
    const auto l2 = share(irreducible(d, {2}));
    const OmegaSystem sys = build_omega_system(l2, l2, l2, 2);
    CHECK_THROWS_AS(series_at_zero(sys.kz, ramp(sys.dim()), 0), DomainError);
}

TEST_CASE("doubling the order stays within the tail estimate") {
    const auto d = build_root_datum("A1");
    const auto v = share(defining_module(d));
    const OmegaSystem sys = build_omega_system(v, v, v, 1);
    const RVector w = ramp(sys.dim());
    const SeriesValue lo = evaluate_series(series_at_zero(sys.kz, w, 48), Rational(1, 2), 128);
    const SeriesValue hi = evaluate_series(series_at_zero(sys.kz, w, 96), Rational(1, 2), 128);
    CHECK(lo.tail > 0);
    CHECK(norm_inf(XVector(lo.value)) > 0);
    XVector diff(sys.dim());
    for (std::size_t c = 0; c < sys.dim(); ++c)
        diff[c] = lo.value[c] - hi.value[c];
    CHECK(norm_inf(diff) < lo.tail);
    CHECK(hi.tail < lo.tail);
}

TEST_CASE("evaluation point must be inside the unit interval") {
    const auto d = build_root_datum("A1");
    const auto v = share(defining_module(d));
    const OmegaSystem sys = build_omega_system(v, v, v, 1);
    const KZSeries s = series_at_zero(sys.kz, ramp(8), 4);
    CHECK_THROWS_AS(evaluate_series(s, Rational(1), 64), DomainError);
    CHECK_THROWS_AS(evaluate_series(s, Rational(0), 64), DomainError);
}

TEST_CASE("geometric tail extrapolation") {
    std::vector<Real> terms;
    for (long i = 0; i <= 64; ++i)
        terms.push_back(exp2(-i, 128));
    const Real t = tail_estimate(terms, Rational(1, 2));
    // true tail 2^-64, estimate doubled for safety
    CHECK(t >= exp2(-64, 128));
    CHECK(t <= exp2(-61, 128));
    CHECK(tail_estimate(std::vector<Real>(64, Real(Rational(0), 64)), Rational(1, 2)) == 0);
}
