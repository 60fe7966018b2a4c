#include "fusionkz/fusion.hpp"

#include <algorithm>
#include <cstdlib>

namespace fusionkz {

bool in_category(const GModule &m, long level) {
    if (level < 0)
        return false;
    if (m.dim == 0)
        return true;
    return is_zero(power(m.x_theta(), static_cast<unsigned>(level + 1)));
}

SubspaceBasis fusion_kernel(const GModule &u1, const GModule &u2, long level) {
    if (!in_category(u1, level) || !in_category(u2, level))
        throw NotInCategory("fusion factors must satisfy x_theta^(l+1) = 0 at level " +
                            std::to_string(level));
    const auto &d = *u1.datum;
    std::vector<RVector> seeds;
    for (const auto &[lambda, vs] : singular_vectors(u1)) {
        const long exponent = level - theta_pairing(d, lambda) + 1;
        if (exponent < 1)
            throw InternalInvariantViolation("highest weight exceeds the level");
        const RMatrix xp = power(u2.x_theta(), static_cast<unsigned>(exponent));
        for (std::size_t w = 0; w < u2.dim; ++w) {
            const RVector img = xp.column(w);
            if (is_zero(img))
                continue;
            for (const auto &v : vs) {
                RVector seed(u1.dim * u2.dim);
                for (std::size_t i = 0; i < u1.dim; ++i)
                    if (v[i] != 0)
                        for (std::size_t j = 0; j < u2.dim; ++j)
                            if (img[j] != 0)
                                seed[i * u2.dim + j] = v[i] * img[j];
                seeds.push_back(std::move(seed));
            }
        }
    }
    const GModule t = tensor(u1, u2);
    return submodule_closure(t, seeds);
}

FusionProduct fuse(const GModulePtr &u1, const GModulePtr &u2, long level) {
    FusionProduct fp;
    fp.first = u1;
    fp.second = u2;
    fp.level = level;
    fp.kernel = fusion_kernel(*u1, *u2, level);
    fp.tensor = tensor(*u1, *u2);
    auto q = quotient(fp.tensor, fp.kernel);
    fp.result = std::move(q.module);
    fp.result.provenance = "fusion(" + u1->provenance + ", " + u2->provenance +
                           ", level " + std::to_string(level) + ")";
    fp.projection = std::move(q.projection);
    fp.section = std::move(q.section);
    if (!in_category(fp.result, level))
        throw InternalInvariantViolation("fusion product left the category");
    return fp;
}

FusionProduct fuse(const GModule &u1, const GModule &u2, long level) {
    return fuse(std::make_shared<const GModule>(u1), std::make_shared<const GModule>(u2),
                level);
}

std::set<long> sl2_fusion_oracle(long level, long a, long b) {
    if (level < 0 || a < 0 || b < 0 || a > level || b > level)
        throw DomainError("sl2 labels must lie in 0..level");
    std::set<long> out;
    const long hi = std::min(a + b, 2 * level - a - b);
    for (long c = std::labs(a - b); c <= hi; c += 2)
        out.insert(c);
    return out;
}

FusionTable fusion_table(const RootDatumPtr &datum, long level, Execution exec) {
    FusionTable t;
    t.level = level;
    t.weights = admissible_weights(*datum, level);
    const std::size_t n = t.weights.size();
    std::vector<GModulePtr> irr(n);
    for (std::size_t i = 0; i < n; ++i)
        irr[i] = std::make_shared<const GModule>(irreducible(datum, t.weights[i]));
    t.entries.assign(n, std::vector<std::map<Weight, std::size_t>>(n));
    const long cells = static_cast<long>(n * n);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (long c = 0; c < cells; ++c) {
        const std::size_t i = static_cast<std::size_t>(c) / n;
        const std::size_t j = static_cast<std::size_t>(c) % n;
        t.entries[i][j] = decompose(fuse(irr[i], irr[j], level).result);
    }
    return t;
}

RMatrix induced_morphism(const FusionProduct &source, const FusionProduct &target,
                         const RMatrix &f1, const RMatrix &f2) {
    if (!is_homomorphism(f1, *source.first, *target.first) ||
        !is_homomorphism(f2, *source.second, *target.second))
        throw NotAMorphism("factor maps must intertwine the module actions");
    if (source.level != target.level)
        throw DomainError("fusion products at different levels");
    const RMatrix f = kron(f1, f2);
    EchelonBasis target_kernel(target.tensor.dim);
    for (const auto &v : target.kernel.vectors)
        target_kernel.insert(v);
    for (const auto &v : source.kernel.vectors)
        if (!target_kernel.contains(f * v))
            throw InternalInvariantViolation("f1 (x) f2 does not preserve fusion kernels");
    return target.projection * (f * source.section);
}

} // namespace fusionkz
