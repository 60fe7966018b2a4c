#include "fusionkz/lie_core.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace fusionkz {

namespace {

RMatrix elementary(std::size_t n, std::size_t i, std::size_t j) {
    RMatrix m(n, n);
    m(i, j) = 1;
    return m;
}

Rational trace_of_product(const RMatrix &x, const RMatrix &y) {
    Rational t;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k)
            if (x(i, k) != 0 && y(k, i) != 0)
                t += x(i, k) * y(k, i);
    return t;
}

RootDatum type_a(std::size_t r) {
    const std::size_t n = r + 1;
    RootDatum d;
    d.series = "A";
    d.rank = r;
    d.cartan = Matrix<long>(r, r, 0);
    RMatrix cartan_q(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        d.cartan(i, i) = 2;
        if (i + 1 < r) {
            d.cartan(i, i + 1) = -1;
            d.cartan(i + 1, i) = -1;
        }
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            cartan_q(i, j) = d.cartan(i, j);
    // simply laced with <alpha, alpha> = 2: <omega_i, omega_j> = (C^{-1})_ij
    d.gram = inverse(cartan_q);
    d.theta = Weight(r, 0);
    d.theta.front() += 1;
    d.theta.back() += 1;
    d.rho = Weight(r, 1);
    d.h_dual = static_cast<long>(n);
    d.trace_scale = 1;

    // Cartan part: h_i = E_ii - E_{i+1,i+1}; dual h^i = sum_j (C^{-1})_ij h_j
    std::vector<RMatrix> h(r);
    for (std::size_t i = 0; i < r; ++i)
        h[i] = elementary(n, i, i) - elementary(n, i + 1, i + 1);
    for (std::size_t i = 0; i < r; ++i) {
        RMatrix dual(n, n);
        for (std::size_t j = 0; j < r; ++j)
            if (d.gram(i, j) != 0)
                dual += h[j] * d.gram(i, j);
        d.h_index.push_back(d.algebra_basis.size());
        d.algebra_basis.push_back(h[i]);
        d.dual_basis.push_back(dual);
    }
    // root vectors E_ij (i < j) then E_ji; dual of E_ij is E_ji
    for (int upper = 1; upper >= 0; --upper)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto a = upper ? i : j;
                const auto b = upper ? j : i;
                if (j == i + 1)
                    (upper ? d.e_index : d.f_index).push_back(d.algebra_basis.size());
                if (upper && i == 0 && j == n - 1)
                    d.x_theta = d.algebra_basis.size();
                d.algebra_basis.push_back(elementary(n, a, b));
                d.dual_basis.push_back(elementary(n, b, a));
            }
    return d;
}

} // namespace

Rational RootDatum::form(const RMatrix &x, const RMatrix &y) const {
    return trace_scale * trace_of_product(x, y);
}

RVector RootDatum::coordinates(const RMatrix &x) const {
    RVector c(dim());
    for (std::size_t a = 0; a < dim(); ++a)
        c[a] = form(x, dual_basis[a]);
    return c;
}

void finalize_root_datum(RootDatum &d) {
    const auto fail = [&](const std::string &what) {
        throw InternalInvariantViolation(d.label() + ": " + what);
    };
    if (d.dual_basis.size() != d.algebra_basis.size())
        fail("basis and dual basis differ in length");
    const std::size_t dim = d.dim();
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t c = 0; c < dim; ++c)
            if (d.form(d.algebra_basis[a], d.dual_basis[c]) != (a == c ? 1 : 0))
                fail("dual-basis pairing is not the identity");
    for (std::size_t i = 0; i < d.rank; ++i)
        for (std::size_t j = 0; j < d.rank; ++j)
            if (d.gram(i, j) != d.gram(j, i))
                fail("gram matrix is not symmetric");
    if (weight_pairing(d, d.theta, d.theta) != 2)
        fail("<theta, theta> != 2");
    if (weight_pairing(d, d.rho, d.theta) != d.h_dual - 1)
        fail("<rho, theta> != h_dual - 1");

    d.dual_coords.clear();
    for (std::size_t a = 0; a < dim; ++a)
        d.dual_coords.push_back(d.coordinates(d.dual_basis[a]));

    d.structure.assign(dim, std::vector<RVector>(dim));
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) {
            const RMatrix br = commutator(d.algebra_basis[a], d.algebra_basis[b]);
            d.structure[a][b] = d.coordinates(br);
            RMatrix back(br.rows(), br.cols());
            for (std::size_t c = 0; c < dim; ++c)
                if (d.structure[a][b][c] != 0)
                    back += d.algebra_basis[c] * d.structure[a][b][c];
            if (!(back == br))
                fail("algebra basis is not closed under the bracket");
        }

    const std::size_t n = d.defining_dim();
    RMatrix cas(n, n);
    for (std::size_t a = 0; a < dim; ++a)
        cas += d.algebra_basis[a] * d.dual_basis[a];
    const Rational scalar = cas(0, 0);
    if (!(cas == RMatrix::identity(n) * scalar))
        fail("Casimir is not scalar on the defining realization");
}

RootDatumPtr build_root_datum(const std::string &series, std::size_t rank) {
    if (series != "A" || rank == 0 || rank > 16)
        throw UnsupportedAlgebra(series + std::to_string(rank) +
                                 " has no built-in realization");
    auto d = type_a(rank);
    finalize_root_datum(d);
    return std::make_shared<const RootDatum>(std::move(d));
}

RootDatumPtr build_root_datum(const std::string &label) {
    std::size_t split = 0;
    while (split < label.size() && std::isalpha(static_cast<unsigned char>(label[split])))
        ++split;
    if (split == 0 || split == label.size())
        throw UnsupportedAlgebra("cannot parse algebra label '" + label + "'");
    std::size_t rank = 0;
    for (std::size_t i = split; i < label.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(label[i])))
            throw UnsupportedAlgebra("cannot parse algebra label '" + label + "'");
        rank = rank * 10 + static_cast<std::size_t>(label[i] - '0');
    }
    return build_root_datum(label.substr(0, split), rank);
}

Rational weight_pairing(const RootDatum &d, const Weight &lambda, const Weight &mu) {
    if (lambda.size() != d.rank || mu.size() != d.rank)
        throw DimensionError("weight length differs from rank " + std::to_string(d.rank));
    Rational s;
    for (std::size_t i = 0; i < d.rank; ++i) {
        if (lambda[i] == 0)
            continue;
        for (std::size_t j = 0; j < d.rank; ++j)
            if (mu[j] != 0)
                s += d.gram(i, j) * lambda[i] * mu[j];
    }
    return s;
}

bool is_dominant(const Weight &lambda) {
    return std::all_of(lambda.begin(), lambda.end(), [](long x) { return x >= 0; });
}

Rational casimir_eigenvalue(const RootDatum &d, const Weight &lambda) {
    if (!is_dominant(lambda))
        throw DomainError("weight " + weight_label(lambda) + " is not dominant");
    Weight shifted(lambda);
    if (shifted.size() != d.rank)
        throw DimensionError("weight length differs from rank");
    for (std::size_t i = 0; i < d.rank; ++i)
        shifted[i] += 2 * d.rho[i];
    return weight_pairing(d, lambda, shifted);
}

Rational lowest_conformal_weight(const RootDatum &d, const Weight &lambda, long level) {
    if (level + d.h_dual == 0)
        throw DomainError("critical level");
    return casimir_eigenvalue(d, lambda) / Rational(2 * (level + d.h_dual));
}

long theta_pairing(const RootDatum &d, const Weight &lambda) {
    const Rational p = weight_pairing(d, lambda, d.theta);
    if (!is_integer(p))
        throw InternalInvariantViolation("<lambda, theta> is not integral");
    return p.get_num().get_si();
}

std::vector<Weight> admissible_weights(const RootDatum &d, long level) {
    std::vector<Weight> out;
    if (level < 0)
        return out;
    // every coordinate is bounded by the level since theta's coefficients on
    // the fundamental coweights are positive integers
    Weight w(d.rank, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == d.rank) {
            if (theta_pairing(d, w) <= level)
                out.push_back(w);
            return;
        }
        for (long a = 0; a <= level; ++a) {
            w[i] = a;
            rec(i + 1);
        }
        w[i] = 0;
    };
    rec(0);
    std::stable_sort(out.begin(), out.end(), [&](const Weight &a, const Weight &b) {
        const long ta = theta_pairing(d, a);
        const long tb = theta_pairing(d, b);
        if (ta != tb)
            return ta < tb;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    return out;
}

std::string weight_label(const Weight &w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += '_';
        s += std::to_string(w[i]);
    }
    return s;
}

} // namespace fusionkz
