#include "fusionkz/fusion.hpp"
#include "fusionkz/kz.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fusionkz {

namespace {

std::vector<Rational> sorted_unique(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<Rational> casimir_catalog(const GModule &x, const GModule &y,
                                      const Rational &kappa) {
    const auto &d = *x.datum;
    std::vector<Rational> out;
    const auto cx = decompose(x);
    const auto cy = decompose(y);
    const auto cxy = decompose(tensor(x, y));
    for (const auto &[nu, m0] : cxy)
        for (const auto &[a, m1] : cx)
            for (const auto &[b, m2] : cy)
                out.push_back((casimir_eigenvalue(d, nu) - casimir_eigenvalue(d, a) -
                               casimir_eigenvalue(d, b)) /
                              (2 * kappa));
    return sorted_unique(std::move(out));
}

bool block_diagonal(const RMatrix &m, const std::vector<std::vector<std::size_t>> &blocks) {
    std::vector<std::size_t> owner(m.rows());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (auto i : blocks[b])
            owner[i] = b;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0 && owner[i] != owner[j])
                return false;
    return true;
}

} // namespace

RMatrix Spectrum::projection(std::size_t k, std::size_t dim) const {
    RMatrix p(dim, dim);
    for (const auto &blk : blocks)
        for (std::size_t r = 0; r < blk.indices.size(); ++r)
            for (std::size_t c = 0; c < blk.indices.size(); ++c)
                p(blk.indices[r], blk.indices[c]) = blk.projections[k](r, c);
    return p;
}

std::size_t Spectrum::class_of(const Rational &mu) const {
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (is_integer(mu - classes[c].base))
            return c;
    throw InternalInvariantViolation("value " + to_string(mu) + " lies in no eigenvalue class");
}

Spectrum certify_spectrum(const RMatrix &m, const std::vector<Rational> &candidates_in,
                          const std::vector<std::vector<std::size_t>> &blocks) {
    const auto candidates = sorted_unique(candidates_in);
    if (!block_diagonal(m, blocks))
        throw InternalInvariantViolation("operator is not block diagonal");
    Spectrum spec;
    std::set<Rational> present;
    std::vector<std::vector<RMatrix>> block_proj(blocks.size());
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto &idx = blocks[bi];
        const std::size_t n = idx.size();
        const RMatrix mb = submatrix(m, std::span<const std::size_t>(idx),
                                     std::span<const std::size_t>(idx));
        const RMatrix id = RMatrix::identity(n);
        std::vector<RMatrix> shifted;
        RMatrix annihilator = id;
        for (const auto &mu : candidates) {
            shifted.push_back(mb - id * mu);
            annihilator = annihilator * shifted.back();
        }
        if (!is_zero(annihilator))
            throw InternalInvariantViolation(
                "candidate eigenvalues do not annihilate the operator");
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            RMatrix p = id;
            for (std::size_t l = 0; l < candidates.size(); ++l)
                if (l != k)
                    p = p * shifted[l] * Rational(1 / (candidates[k] - candidates[l]));
            if (!is_zero(p))
                present.insert(candidates[k]);
            block_proj[bi].push_back(std::move(p));
        }
    }
    spec.eigenvalues.assign(present.begin(), present.end());

    std::map<Rational, std::vector<Rational>> by_fraction;
    for (const auto &mu : spec.eigenvalues)
        by_fraction[mu - floor_of(mu)].push_back(mu);
    for (auto &[frac, members] : by_fraction) {
        EigenClass c;
        c.base = members.front();
        for (const auto &mu : members)
            c.offsets.push_back(Rational(mu - c.base).get_num().get_si());
        spec.classes.push_back(std::move(c));
    }
    std::sort(spec.classes.begin(), spec.classes.end(),
              [](const EigenClass &x, const EigenClass &y) { return x.base < y.base; });

    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        Spectrum::Block blk;
        blk.indices = blocks[bi];
        const std::size_t n = blk.indices.size();
        std::vector<RVector> columns;
        for (const auto &mu : spec.eigenvalues) {
            const std::size_t k = static_cast<std::size_t>(
                std::lower_bound(candidates.begin(), candidates.end(), mu) -
                candidates.begin());
            const RMatrix &p = block_proj[bi][k];
            blk.projections.push_back(p);
            const auto basis = span_basis(
                [&] {
                    std::vector<RVector> cols;
                    for (std::size_t c = 0; c < n; ++c)
                        cols.push_back(p.column(c));
                    return cols;
                }(),
                n);
            for (const auto &v : basis) {
                columns.push_back(v);
                blk.diag.push_back(mu);
            }
        }
        if (columns.size() != n)
            throw InternalInvariantViolation("operator is not diagonalizable on a block");
        blk.eigvecs = from_columns(columns, n);
        blk.eigvecs_inv = inverse(blk.eigvecs);
        spec.blocks.push_back(std::move(blk));
    }
    return spec;
}

KZSystem make_kz_system(RMatrix a, RMatrix b, const std::vector<Rational> &candidates_a,
                        const std::vector<Rational> &candidates_b,
                        std::vector<std::vector<std::size_t>> blocks) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw DimensionError("residue matrices must be square of equal size");
    KZSystem sys;
    sys.dim = a.rows();
    if (blocks.empty()) {
        std::vector<std::size_t> all(sys.dim);
        for (std::size_t i = 0; i < sys.dim; ++i)
            all[i] = i;
        if (sys.dim > 0)
            blocks.push_back(std::move(all));
    }
    sys.spec_a = certify_spectrum(a, candidates_a, blocks);
    sys.spec_b = certify_spectrum(b, candidates_b, blocks);
    sys.a = std::move(a);
    sys.b = std::move(b);
    sys.blocks = std::move(blocks);
    return sys;
}

OmegaSystem build_omega_system(const GModulePtr &u1, const GModulePtr &u2,
                               const GModulePtr &u3, long level) {
    for (const auto *u : {u1.get(), u2.get(), u3.get()})
        if (!in_category(*u, level))
            throw NotInCategory("module " + u->provenance + " is not in the category at level " +
                                std::to_string(level));
    const auto &d = *u1->datum;
    OmegaSystem sys;
    sys.u1 = u1;
    sys.u2 = u2;
    sys.u3 = u3;
    sys.level = level;
    sys.kappa = Rational(level + d.h_dual);
    sys.triple = tensor(tensor(*u1, *u2), *u3);

    const std::size_t n1 = u1->dim, n2 = u2->dim, n3 = u3->dim;
    const std::size_t n = n1 * n2 * n3;
    const auto i1 = RMatrix::identity(n1);
    const auto i2 = RMatrix::identity(n2);
    const auto i3 = RMatrix::identity(n3);
    sys.omega12 = RMatrix(n, n);
    sys.omega23 = RMatrix(n, n);
    sys.omega13 = RMatrix(n, n);
    for (std::size_t a = 0; a < d.dim(); ++a) {
        const RMatrix &x1 = u1->action[a];
        const RMatrix &x2 = u2->action[a];
        const RMatrix y2 = u2->act_dual(a);
        const RMatrix y3 = u3->act_dual(a);
        sys.omega12 += kron(kron(x1, y2), i3);
        sys.omega23 += kron(i1, kron(x2, y3));
        sys.omega13 += kron(kron(x1, i2), y3);
    }
    const Rational inv_kappa = 1 / sys.kappa;
    sys.c13 = transpose(sys.omega13) * inv_kappa;

    std::map<Weight, std::vector<std::size_t>> by_weight;
    for (std::size_t i = 0; i < n; ++i)
        by_weight[sys.triple.weights[i]].push_back(i);
    std::vector<std::vector<std::size_t>> blocks;
    for (auto &[w, idx] : by_weight)
        blocks.push_back(std::move(idx));

    sys.kz = make_kz_system(transpose(sys.omega12) * inv_kappa,
                            transpose(sys.omega23) * inv_kappa,
                            casimir_catalog(*u1, *u2, sys.kappa),
                            casimir_catalog(*u2, *u3, sys.kappa), std::move(blocks));
    return sys;
}

OmegaSystem build_omega_system(const GModule &u1, const GModule &u2, const GModule &u3,
                               long level) {
    return build_omega_system(std::make_shared<const GModule>(u1),
                              std::make_shared<const GModule>(u2),
                              std::make_shared<const GModule>(u3), level);
}

} // namespace fusionkz
