#include "fusionkz/errors.hpp"
#include "fusionkz/lie_core.hpp"

#include <doctest.h>

using namespace fusionkz;

TEST_CASE("type A root data") {
    const auto a1 = build_root_datum("A", 1);
    CHECK(a1->h_dual == 2);
    CHECK(a1->theta == Weight{2});
    CHECK(a1->dim() == 3);
    const auto a2 = build_root_datum("A2");
    CHECK(a2->h_dual == 3);
    CHECK(a2->theta == Weight{1, 1});
    CHECK(a2->dim() == 8);
    // dual Coxeter number from <rho, theta> + 1
    for (std::size_t r = 1; r <= 5; ++r) {
        const auto d = build_root_datum("A", r);
        CHECK(weight_pairing(*d, d->rho, d->theta) + 1 == Rational(static_cast<long>(r + 1)));
    }
}

TEST_CASE("unsupported algebras") {
    CHECK_THROWS_AS(build_root_datum("E", 9), UnsupportedAlgebra);
    CHECK_THROWS_AS(build_root_datum("B2"), UnsupportedAlgebra);
    CHECK_THROWS_AS(build_root_datum("A0"), UnsupportedAlgebra);
    CHECK_THROWS_AS(build_root_datum("1A"), UnsupportedAlgebra);
}

TEST_CASE("weight pairing") {
    const auto a1 = build_root_datum("A1");
    const auto a2 = build_root_datum("A2");
    CHECK(weight_pairing(*a1, {1}, {1}) == Rational(1, 2));
    CHECK(weight_pairing(*a2, {1, 0}, {1, 0}) == Rational(2, 3));
    CHECK(weight_pairing(*a2, {1, 0}, {0, 1}) == Rational(1, 3));
    CHECK(weight_pairing(*a2, {0, 0}, {3, 5}) == 0);
    CHECK_THROWS_AS(weight_pairing(*a2, {1}, {1, 0}), DimensionError);
}

TEST_CASE("casimir eigenvalues and conformal weights") {
    const auto a1 = build_root_datum("A1");
    CHECK(casimir_eigenvalue(*a1, {1}) == Rational(3, 2));
    CHECK(casimir_eigenvalue(*a1, {2}) == 4);
    CHECK(casimir_eigenvalue(*a1, {0}) == 0);
    CHECK(lowest_conformal_weight(*a1, {1}, 1) == Rational(1, 4));
    CHECK(lowest_conformal_weight(*a1, {2}, 2) == Rational(1, 2));
    CHECK(lowest_conformal_weight(*a1, {0}, 5) == 0);
    CHECK_THROWS_AS(casimir_eigenvalue(*a1, {-1}), DomainError);
    const auto a2 = build_root_datum("A2");
    // adjoint acts by 2 h_dual
    CHECK(casimir_eigenvalue(*a2, {1, 1}) == 6);
}

TEST_CASE("admissible weights") {
    const auto a1 = build_root_datum("A1");
    CHECK(admissible_weights(*a1, 2) == std::vector<Weight>{{0}, {1}, {2}});
    CHECK(admissible_weights(*a1, 0) == std::vector<Weight>{{0}});
    const auto a2 = build_root_datum("A2");
    CHECK(admissible_weights(*a2, 1) == std::vector<Weight>{{0, 0}, {1, 0}, {0, 1}});
    CHECK(admissible_weights(*a2, 2).size() == 6);
    CHECK(theta_pairing(*a2, {2, 1}) == 3);
}

TEST_CASE("weight labels") {
    CHECK(weight_label({1, 0}) == "1_0");
    CHECK(weight_label({3}) == "3");
}

TEST_CASE("dual basis pairs with the basis") {
    for (const char *label : {"A1", "A2", "A3"}) {
        const auto d = build_root_datum(label);
        for (std::size_t a = 0; a < d->dim(); ++a)
            for (std::size_t b = 0; b < d->dim(); ++b)
                CHECK(d->form(d->algebra_basis[a], d->dual_basis[b]) == (a == b ? 1 : 0));
    }
}
