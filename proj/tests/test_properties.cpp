#include "fusionkz/associator.hpp"

#include <doctest.h>

#include <random>

using namespace fusionkz;

namespace {

GModulePtr share(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

RVector random_vector(std::mt19937 &rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    RVector v(n);
    for (auto &x : v)
        x = make_rational(num(rng), den(rng));
    return v;
}

Weight random_admissible(std::mt19937 &rng, const RootDatum &d, long level) {
    const auto all = admissible_weights(d, level);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
}

} // namespace

TEST_CASE("random A1 and A2 triples: exact structure") {
    std::mt19937 rng(20240611);
    for (const char *label : {"A1", "A2"}) {
        const auto d = build_root_datum(label);
        const long max_level = d->rank == 1 ? 3 : 1;
        for (int trial = 0; trial < 6; ++trial) {
            const long level = 1 + static_cast<long>(rng() % max_level);
            const auto u1 = share(irreducible(d, random_admissible(rng, *d, level)));
            const auto u2 = share(irreducible(d, random_admissible(rng, *d, level)));
            const auto u3 = share(irreducible(d, random_admissible(rng, *d, level)));
            if (u1->dim * u2->dim * u3->dim > 64)
                continue;
            CAPTURE(label);
            CAPTURE(level);
            const OmegaSystem sys = build_omega_system(u1, u2, u3, level);
            CHECK(satisfies_brackets(sys.triple));
            CHECK(is_zero(commutator(sys.omega12, RMatrix(sys.omega13 + sys.omega23))));
            CHECK(is_zero(commutator(sys.omega23, RMatrix(sys.omega12 + sys.omega13))));
            const RVector w = random_vector(rng, sys.dim());
            CHECK(recursion_residual_is_zero(sys.kz, series_at_zero(sys.kz, w, 12)));
            CHECK(recursion_residual_is_zero(sys.kz, series_at_one(sys.kz, w, 12)));
            // the residues commute with the diagonal action
            for (const auto &rho : sys.triple.action)
                CHECK(is_zero(commutator(sys.omega12, rho)));
        }
    }
}

TEST_CASE("random fusion products: kernels are invariant and dimensions add up") {
    std::mt19937 rng(7);
    const auto d = build_root_datum("A2");
    for (int trial = 0; trial < 6; ++trial) {
        const long level = 1 + static_cast<long>(rng() % 2);
        const auto u1 = share(irreducible(d, random_admissible(rng, *d, level)));
        const auto u2 = share(irreducible(d, random_admissible(rng, *d, level)));
        const FusionProduct fp = fuse(u1, u2, level);
        CHECK(is_invariant(fp.tensor, fp.kernel));
        CHECK(fp.kernel.dim() + fp.result.dim == u1->dim * u2->dim);
        CHECK(in_category(fp.result, level));
        CHECK(is_homomorphism(fp.projection, fp.tensor, fp.result));
        std::size_t total = 0;
        for (const auto &[nu, mult] : decompose(fp.result)) {
            CHECK(theta_pairing(*d, nu) <= level);
            total += mult * irreducible(d, nu).dim;
        }
        CHECK(total == fp.result.dim);
    }
}

TEST_CASE("associator matrix properties across evaluation points") {
    const auto d = build_root_datum("A1");
    const auto v = share(defining_module(d));
    const auto l2 = share(irreducible(d, {2}));
    const auto sys = std::make_shared<const OmegaSystem>(build_omega_system(l2, v, v, 2));
    AssociatorParams p;
    p.z0 = Rational(1, 2);
    const auto ref = connection_matrix(sys, p);
    for (const Rational z0 : {Rational(2, 5), Rational(3, 5), Rational(9, 20)}) {
        p.z0 = z0;
        const auto other = connection_matrix(sys, p);
        CHECK(norm_inf(ref.phi - other.phi) <
              Real(Rational(10), 128) * (ref.tail_bound + other.tail_bound));
        CHECK(verify_equivariance(other) < exp2(-90, 128));
    }
}
