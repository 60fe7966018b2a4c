#include "fusionkz/errors.hpp"
#include "fusionkz/fusion.hpp"

#include <doctest.h>

using namespace fusionkz;

namespace {

GModulePtr share(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

/// Truncated Clebsch-Gordan multiplicities, independent of the library oracle.
std::map<Weight, std::size_t> truncated_cg(long level, long a, long b) {
    std::map<Weight, std::size_t> out;
    for (long c = std::abs(a - b); c <= std::min(a + b, 2 * level - a - b); c += 2)
        out[{c}] = 1;
    return out;
}

} // namespace

TEST_CASE("level membership") {
    const auto a1 = build_root_datum("A1");
    CHECK_FALSE(in_category(irreducible(a1, {2}), 1));
    CHECK(in_category(irreducible(a1, {2}), 2));
    CHECK(in_category(trivial_module(a1), 0));
    const auto a2 = build_root_datum("A2");
    for (long level = 0; level <= 2; ++level)
        for (const auto &l : admissible_weights(*a2, level))
            CHECK(in_category(irreducible(a2, l), level));
}

TEST_CASE("fusion kernels") {
    const auto a1 = build_root_datum("A1");
    const GModule v = defining_module(a1);
    const SubspaceBasis k = fusion_kernel(v, v, 1);
    CHECK(k.dim() == 3);
    CHECK(k.vectors[0][0] == 1);
    CHECK(fusion_kernel(v, v, 2).dim() == 0);
    CHECK(fusion_kernel(trivial_module(a1), v, 1).dim() == 0);
    CHECK_THROWS_AS(fusion_kernel(irreducible(a1, {2}), v, 1), NotInCategory);
}

TEST_CASE("fusion products of sl2 modules") {
    const auto a1 = build_root_datum("A1");
    const auto v = share(defining_module(a1));
    const auto l2 = share(irreducible(a1, {2}));
    const FusionProduct vv1 = fuse(v, v, 1);
    CHECK(vv1.result.dim == 1);
    CHECK(decompose(vv1.result) == std::map<Weight, std::size_t>{{{0}, 1}});
    CHECK(vv1.projection * vv1.section == RMatrix::identity(1));
    CHECK(decompose(fuse(l2, l2, 2).result) == std::map<Weight, std::size_t>{{{0}, 1}});
    for (long level = 2; level <= 4; ++level) {
        const FusionProduct fp = fuse(v, v, level);
        CHECK(fp.kernel.dim() == 0);
        CHECK(decompose(fp.result) == std::map<Weight, std::size_t>{{{2}, 1}, {{0}, 1}});
    }
    CHECK(is_homomorphism(vv1.projection, vv1.tensor, vv1.result));
}

TEST_CASE("closed-form sl2 oracle") {
    CHECK(sl2_fusion_oracle(1, 1, 1) == std::set<long>{0});
    CHECK(sl2_fusion_oracle(2, 1, 1) == std::set<long>{0, 2});
    CHECK(sl2_fusion_oracle(3, 0, 2) == std::set<long>{2});
    CHECK_THROWS_AS(sl2_fusion_oracle(1, 2, 0), DomainError);
}

TEST_CASE("fusion tables agree with truncated Clebsch-Gordan") {
    const auto a1 = build_root_datum("A1");
    for (long level = 0; level <= 4; ++level) {
        const FusionTable t = fusion_table(a1, level);
        REQUIRE(t.weights.size() == static_cast<std::size_t>(level + 1));
        for (std::size_t i = 0; i < t.weights.size(); ++i)
            for (std::size_t j = 0; j < t.weights.size(); ++j)
                CHECK(t.entries[i][j] == truncated_cg(level, t.weights[i][0], t.weights[j][0]));
    }
}

TEST_CASE("fusion table of A2 at level 1 is the Z3 group") {
    const auto a2 = build_root_datum("A2");
    const FusionTable t = fusion_table(a2, 1);
    REQUIRE(t.weights.size() == 3);
    using Cell = std::map<Weight, std::size_t>;
    CHECK(t.entries[1][1] == Cell{{{0, 1}, 1}});
    CHECK(t.entries[1][2] == Cell{{{0, 0}, 1}});
    CHECK(t.entries[2][2] == Cell{{{1, 0}, 1}});
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(t.entries[0][j] == Cell{{t.weights[j], 1}});
    const FusionTable par = fusion_table(a2, 2, Execution::parallel);
    CHECK(par.entries == fusion_table(a2, 2).entries);
}

TEST_CASE("induced morphisms") {
    const auto a1 = build_root_datum("A1");
    const auto v = share(defining_module(a1));
    const auto l2 = share(irreducible(a1, {2}));
    const FusionProduct fp = fuse(v, l2, 2);
    const RMatrix id = induced_morphism(fp, fp, RMatrix::identity(2), RMatrix::identity(3));
    CHECK(id == RMatrix::identity(fp.result.dim));
    CHECK(is_zero(induced_morphism(fp, fp, RMatrix(2, 2), RMatrix::identity(3))));
    const RMatrix scaled =
        induced_morphism(fp, fp, RMatrix::identity(2) * Rational(2), RMatrix::identity(3));
    CHECK(rank(scaled) == fp.result.dim);
    RMatrix swap(2, 2);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    CHECK_THROWS_AS(induced_morphism(fp, fp, swap, RMatrix::identity(3)), NotAMorphism);
}
