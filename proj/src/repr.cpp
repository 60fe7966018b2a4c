#include "fusionkz/repr.hpp"

#include <algorithm>
#include <deque>

namespace fusionkz {

namespace {

std::vector<Weight> weights_from_cartan(const RootDatum &d,
                                        const std::vector<RMatrix> &action) {
    const std::size_t dim = action.empty() ? 0 : action.front().rows();
    std::vector<Weight> w(dim, Weight(d.rank, 0));
    for (std::size_t i = 0; i < d.rank; ++i) {
        const RMatrix &h = action[d.h_index[i]];
        for (std::size_t p = 0; p < dim; ++p) {
            for (std::size_t q = 0; q < dim; ++q)
                if (p != q && h(p, q) != 0)
                    throw InternalInvariantViolation("basis is not made of weight vectors");
            if (!is_integer(h(p, p)))
                throw InternalInvariantViolation("non-integral weight");
            w[p][i] = h(p, p).get_num().get_si();
        }
    }
    return w;
}

std::vector<const RMatrix *> generators(const GModule &m) {
    std::vector<const RMatrix *> g;
    const auto &d = *m.datum;
    for (auto i : d.e_index)
        g.push_back(&m.action[i]);
    for (auto i : d.f_index)
        g.push_back(&m.action[i]);
    for (auto i : d.h_index)
        g.push_back(&m.action[i]);
    return g;
}

// sign of the permutation sorting `v`, or 0 if it has repeats; sorts in place
int sort_with_sign(std::vector<std::size_t> &v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
            if (v[j - 1] == v[j])
                return 0;
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

} // namespace

RMatrix GModule::act(const RVector &coords) const {
    RMatrix out(dim, dim);
    for (std::size_t a = 0; a < coords.size(); ++a)
        if (coords[a] != 0)
            out += action[a] * coords[a];
    return out;
}

RMatrix GModule::act_dual(std::size_t a) const { return act(datum->dual_coords[a]); }

SubspaceBasis make_subspace(const std::vector<RVector> &vectors, std::size_t n) {
    SubspaceBasis s;
    s.ambient_dim = n;
    s.vectors = span_basis(vectors, n);
    std::vector<bool> is_pivot(n, false);
    for (const auto &v : s.vectors) {
        std::size_t p = 0;
        while (v[p] == 0)
            ++p;
        s.pivots.push_back(p);
        is_pivot[p] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!is_pivot[i])
            s.complement.push_back(i);
    const std::size_t q = s.complement.size();
    std::vector<long> position(n, -1);
    for (std::size_t t = 0; t < q; ++t)
        position[s.complement[t]] = static_cast<long>(t);
    s.projection = RMatrix(q, n);
    s.section = RMatrix(n, q);
    for (std::size_t t = 0; t < q; ++t) {
        s.projection(t, s.complement[t]) = 1;
        s.section(s.complement[t], t) = 1;
    }
    for (std::size_t r = 0; r < s.vectors.size(); ++r)
        for (std::size_t t = 0; t < q; ++t) {
            const auto &x = s.vectors[r][s.complement[t]];
            if (x != 0)
                s.projection(t, s.pivots[r]) = -x;
        }
    return s;
}

GModule trivial_module(const RootDatumPtr &datum) {
    GModule m;
    m.datum = datum;
    m.dim = 1;
    m.weights = {Weight(datum->rank, 0)};
    m.action.assign(datum->dim(), RMatrix(1, 1));
    m.provenance = "trivial";
    return m;
}

GModule defining_module(const RootDatumPtr &datum) {
    GModule m;
    m.datum = datum;
    m.dim = datum->defining_dim();
    m.action = datum->algebra_basis;
    m.weights = weights_from_cartan(*datum, m.action);
    m.provenance = "defining";
    return m;
}

GModule fundamental_module(const RootDatumPtr &datum, std::size_t k) {
    if (datum->series != "A")
        throw UnsupportedAlgebra("fundamental modules are built in for type A only");
    if (k < 1 || k > datum->rank)
        throw DomainError("fundamental index " + std::to_string(k) + " outside 1.." +
                          std::to_string(datum->rank));
    const std::size_t n = datum->defining_dim();
    // k-subsets of {0..n-1} in lexicographic order
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i)
        cur[i] = i;
    while (true) {
        subsets.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t s = 0; s < subsets.size(); ++s)
        index[subsets[s]] = s;

    GModule m;
    m.datum = datum;
    m.dim = subsets.size();
    for (const auto &x : datum->algebra_basis) {
        RMatrix a(m.dim, m.dim);
        for (std::size_t col = 0; col < subsets.size(); ++col)
            for (std::size_t slot = 0; slot < k; ++slot) {
                const auto src = subsets[col][slot];
                for (std::size_t p = 0; p < n; ++p) {
                    if (x(p, src) == 0)
                        continue;
                    auto img = subsets[col];
                    img[slot] = p;
                    const int sign = sort_with_sign(img);
                    if (sign == 0)
                        continue;
                    a(index[img], col) += x(p, src) * sign;
                }
            }
        m.action.push_back(std::move(a));
    }
    m.weights = weights_from_cartan(*datum, m.action);
    m.provenance = "exterior_power(" + std::to_string(k) + ")";
    return m;
}

GModule tensor(const GModule &m1, const GModule &m2, Execution exec) {
    if (m1.datum != m2.datum && m1.datum->label() != m2.datum->label())
        throw DomainError("tensor factors belong to different algebras");
    GModule m;
    m.datum = m1.datum;
    m.dim = m1.dim * m2.dim;
    m.weights.resize(m.dim);
    for (std::size_t i = 0; i < m1.dim; ++i)
        for (std::size_t j = 0; j < m2.dim; ++j) {
            Weight w = m1.weights[i];
            for (std::size_t r = 0; r < w.size(); ++r)
                w[r] += m2.weights[j][r];
            m.weights[i * m2.dim + j] = std::move(w);
        }
    const auto i1 = RMatrix::identity(m1.dim);
    const auto i2 = RMatrix::identity(m2.dim);
    const long count = static_cast<long>(m1.action.size());
    m.action.resize(m1.action.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (long a = 0; a < count; ++a)
        m.action[a] = kron(m1.action[a], i2) + kron(i1, m2.action[a]);
    m.provenance = "tensor(" + m1.provenance + ", " + m2.provenance + ")";
    return m;
}

std::map<Weight, std::vector<RVector>> singular_vectors(const GModule &m) {
    std::map<Weight, std::vector<std::size_t>> spaces;
    for (std::size_t p = 0; p < m.dim; ++p)
        spaces[m.weights[p]].push_back(p);
    std::map<Weight, std::vector<RVector>> out;
    const auto &d = *m.datum;
    for (const auto &[w, idx] : spaces) {
        // stack e_i restricted to the weight space
        RMatrix stacked(d.rank * m.dim, idx.size());
        for (std::size_t i = 0; i < d.rank; ++i) {
            const RMatrix &e = m.action[d.e_index[i]];
            for (std::size_t r = 0; r < m.dim; ++r)
                for (std::size_t c = 0; c < idx.size(); ++c)
                    stacked(i * m.dim + r, c) = e(r, idx[c]);
        }
        auto kernel = nullspace(stacked);
        if (kernel.empty())
            continue;
        std::vector<RVector> full;
        for (const auto &k : kernel) {
            RVector v(m.dim);
            for (std::size_t c = 0; c < idx.size(); ++c)
                v[idx[c]] = k[c];
            full.push_back(std::move(v));
        }
        out[w] = std::move(full);
    }
    return out;
}

std::map<Weight, std::size_t> decompose(const GModule &m) {
    std::map<Weight, std::size_t> out;
    for (const auto &[w, vs] : singular_vectors(m))
        out[w] = vs.size();
    return out;
}

SubspaceBasis submodule_closure(const GModule &m, const std::vector<RVector> &seeds) {
    EchelonBasis basis(m.dim);
    std::deque<RVector> queue;
    for (const auto &s : seeds) {
        if (s.size() != m.dim)
            throw DimensionError("seed vector has the wrong length");
        auto rem = basis.reduce(s);
        if (!is_zero(rem) && basis.insert(rem))
            queue.push_back(std::move(rem));
    }
    const auto gens = generators(m);
    while (!queue.empty()) {
        const RVector v = std::move(queue.front());
        queue.pop_front();
        for (const RMatrix *g : gens) {
            auto img = basis.reduce(*g * v);
            if (!is_zero(img) && basis.insert(img))
                queue.push_back(std::move(img));
        }
    }
    return make_subspace(basis.reduced_rows(), m.dim);
}

GModule restrict_to(const GModule &m, const SubspaceBasis &s) {
    if (!is_invariant(m, s))
        throw InvarianceError("subspace is not invariant");
    GModule r;
    r.datum = m.datum;
    r.dim = s.dim();
    for (const auto &a : m.action) {
        RMatrix induced(r.dim, r.dim);
        for (std::size_t k = 0; k < r.dim; ++k) {
            const RVector img = a * s.vectors[k];
            for (std::size_t t = 0; t < r.dim; ++t)
                induced(t, k) = img[s.pivots[t]];
        }
        r.action.push_back(std::move(induced));
    }
    r.weights = weights_from_cartan(*m.datum, r.action);
    r.provenance = "submodule(" + m.provenance + ")";
    return r;
}

GModule irreducible(const RootDatumPtr &datum, const Weight &lambda) {
    if (lambda.size() != datum->rank)
        throw DimensionError("weight length differs from rank");
    if (!is_dominant(lambda))
        throw DomainError("weight " + weight_label(lambda) + " is not dominant");
    if (std::all_of(lambda.begin(), lambda.end(), [](long x) { return x == 0; })) {
        auto t = trivial_module(datum);
        t.provenance = "irreducible(" + weight_label(lambda) + ")";
        return t;
    }
    GModule host;
    bool first = true;
    for (std::size_t k = 1; k <= datum->rank; ++k)
        for (long c = 0; c < lambda[k - 1]; ++c) {
            auto f = fundamental_module(datum, k);
            host = first ? std::move(f) : tensor(host, f);
            first = false;
        }
    const auto sing = singular_vectors(host);
    const auto it = sing.find(lambda);
    if (it == sing.end() || it->second.size() != 1)
        throw InternalInvariantViolation("highest-weight vector of the Cartan component is not unique");
    const auto sub = submodule_closure(host, it->second);
    GModule irr = restrict_to(host, sub);
    irr.provenance = "irreducible(" + weight_label(lambda) + ")";
    return irr;
}

bool is_invariant(const GModule &m, const SubspaceBasis &s) {
    EchelonBasis basis(m.dim);
    for (const auto &v : s.vectors)
        basis.insert(v);
    for (const RMatrix *g : generators(m))
        for (const auto &v : s.vectors)
            if (!basis.contains(*g * v))
                return false;
    return true;
}

Quotient quotient(const GModule &m, const SubspaceBasis &s) {
    if (s.ambient_dim != m.dim)
        throw DimensionError("subspace lives in a different space");
    if (!is_invariant(m, s))
        throw InvarianceError("cannot take the quotient by a non-invariant subspace");
    Quotient q;
    q.projection = s.projection;
    q.section = s.section;
    q.module.datum = m.datum;
    q.module.dim = s.complement.size();
    for (const auto &a : m.action)
        q.module.action.push_back(s.projection * (a * s.section));
    for (auto c : s.complement)
        q.module.weights.push_back(m.weights[c]);
    q.module.provenance = "quotient(" + m.provenance + ")";
    return q;
}

RMatrix casimir_matrix(const GModule &m) {
    RMatrix c(m.dim, m.dim);
    for (std::size_t a = 0; a < m.action.size(); ++a)
        c += m.action[a] * m.act_dual(a);
    return c;
}

bool satisfies_brackets(const GModule &m) {
    const auto &d = *m.datum;
    for (std::size_t a = 0; a < d.dim(); ++a)
        for (std::size_t b = a + 1; b < d.dim(); ++b)
            if (!(commutator(m.action[a], m.action[b]) == m.act(d.structure[a][b])))
                return false;
    return true;
}

bool is_homomorphism(const RMatrix &f, const GModule &m, const GModule &n) {
    if (f.rows() != n.dim || f.cols() != m.dim)
        return false;
    for (std::size_t a = 0; a < m.action.size(); ++a)
        if (!(f * m.action[a] == n.action[a] * f))
            return false;
    return true;
}

} // namespace fusionkz
