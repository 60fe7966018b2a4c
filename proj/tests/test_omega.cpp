#include "fusionkz/errors.hpp"
#include "fusionkz/kz.hpp"

#include <doctest.h>

using namespace fusionkz;

namespace {

GModulePtr share(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

struct Sl2 {
    RootDatumPtr d = build_root_datum("A1");
    GModulePtr triv = share(trivial_module(d));
    GModulePtr v = share(defining_module(d));
    GModulePtr l2 = share(irreducible(d, {2}));
};

void check_spectrum(const RMatrix &m, const Spectrum &spec) {
    const std::size_t n = m.rows();
    RMatrix total(n, n);
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        const RMatrix p = spec.projection(k, n);
        CHECK(m * p == p * spec.eigenvalues[k]);
        for (std::size_t l = 0; l < spec.eigenvalues.size(); ++l)
            CHECK(p * spec.projection(l, n) == (k == l ? p : RMatrix(n, n)));
        total += p;
    }
    CHECK(total == RMatrix::identity(n));
}

} // namespace

TEST_CASE("residues of V V trivial at level 1") {
    Sl2 s;
    const OmegaSystem sys = build_omega_system(s.v, s.v, s.triv, 1);
    CHECK(sys.kappa == 3);
    CHECK(is_zero(sys.b()));
    CHECK(is_zero(sys.c13));
    CHECK(sys.kz.spec_a.eigenvalues == std::vector<Rational>{Rational(-1, 2), Rational(1, 6)});
    check_spectrum(sys.a(), sys.kz.spec_a);
}

TEST_CASE("log-capable classes for L2 L2 L2 at level 2") {
    Sl2 s;
    const OmegaSystem sys = build_omega_system(s.l2, s.l2, s.l2, 2);
    CHECK(sys.kz.spec_a.eigenvalues ==
          std::vector<Rational>{Rational(-1), Rational(-1, 2), Rational(1, 2)});
    REQUIRE(sys.kz.spec_a.classes.size() == 2);
    CHECK(sys.kz.spec_a.classes[0].base == -1);
    CHECK(sys.kz.spec_a.classes[0].offsets == std::vector<long>{0});
    CHECK(sys.kz.spec_a.classes[1].base == Rational(-1, 2));
    CHECK(sys.kz.spec_a.classes[1].offsets == std::vector<long>{0, 1});
    check_spectrum(sys.a(), sys.kz.spec_a);
    check_spectrum(sys.b(), sys.kz.spec_b);
}

TEST_CASE("trivial triple has vanishing residues") {
    Sl2 s;
    const OmegaSystem sys = build_omega_system(s.triv, s.triv, s.triv, 0);
    CHECK(is_zero(sys.a()));
    CHECK(is_zero(sys.b()));
    CHECK(sys.dim() == 1);
}

TEST_CASE("omega commutation identities hold exactly") {
    Sl2 s;
    const auto a2 = build_root_datum("A2");
    const auto w = share(irreducible(a2, {1, 0}));
    const auto wb = share(irreducible(a2, {0, 1}));
    const std::vector<OmegaSystem> systems{build_omega_system(s.v, s.l2, s.v, 2),
                                           build_omega_system(s.l2, s.l2, s.l2, 2),
                                           build_omega_system(w, wb, w, 1)};
    for (const auto &sys : systems) {
        const RMatrix &o12 = sys.omega12, &o23 = sys.omega23, &o13 = sys.omega13;
        CHECK(is_zero(commutator(o12, RMatrix(o13 + o23))));
        CHECK(is_zero(commutator(o13, RMatrix(o12 + o23))));
        CHECK(is_zero(commutator(o23, RMatrix(o12 + o13))));
        CHECK(transpose(sys.a()) * sys.kappa == o12);
        CHECK(transpose(sys.b()) * sys.kappa == o23);
        check_spectrum(sys.a(), sys.kz.spec_a);
        check_spectrum(sys.b(), sys.kz.spec_b);
    }
}

TEST_CASE("membership is enforced") {
    Sl2 s;
    CHECK_THROWS_AS(build_omega_system(s.l2, s.v, s.v, 1), NotInCategory);
}

TEST_CASE("wrong eigenvalue candidates are rejected") {
    RMatrix a(2, 2);
    a(0, 0) = 1;
    a(1, 1) = 2;
    CHECK_THROWS_AS(make_kz_system(a, RMatrix(2, 2), {Rational(1)}, {Rational(0)}),
                    InternalInvariantViolation);
    const KZSystem ok = make_kz_system(a, RMatrix(2, 2), {1, 2, 3}, {0});
    CHECK(ok.spec_a.eigenvalues == std::vector<Rational>{1, 2});
    CHECK(ok.spec_a.classes.size() == 1);
    CHECK(ok.spec_a.classes[0].offsets == std::vector<long>{0, 1});
}
