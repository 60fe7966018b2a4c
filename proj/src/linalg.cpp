#include "fusionkz/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace fusionkz {

Echelon rref(RMatrix m) {
    Echelon out;
    std::size_t row = 0;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && m(piv, col) == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != row)
            for (std::size_t c = 0; c < cols; ++c)
                std::swap(m(piv, c), m(row, c));
        const Rational inv = 1 / Rational(m(row, col));
        for (std::size_t c = col; c < cols; ++c)
            m(row, c) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m(r, col) == 0)
                continue;
            const Rational factor = m(r, col);
            for (std::size_t c = col; c < cols; ++c)
                m(r, c) -= factor * m(row, c);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = RMatrix(row, cols);
    for (std::size_t r = 0; r < row; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out.reduced(r, c) = m(r, c);
    return out;
}

std::size_t rank(const RMatrix &m) { return rref(m).pivots.size(); }

std::vector<RVector> nullspace(const RMatrix &m) {
    const auto e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<RVector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        RVector v(n);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return span_basis(basis, n);
}

std::vector<RVector> span_basis(const std::vector<RVector> &vectors,
                                std::size_t dim) {
    if (vectors.empty())
        return {};
    RMatrix m(vectors.size(), dim);
    for (std::size_t r = 0; r < vectors.size(); ++r)
        for (std::size_t c = 0; c < dim; ++c)
            m(r, c) = vectors[r][c];
    const auto e = rref(std::move(m));
    std::vector<RVector> out;
    for (std::size_t r = 0; r < e.reduced.rows(); ++r) {
        auto row = e.reduced.row(r);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

RMatrix inverse(const RMatrix &m) {
    if (m.rows() != m.cols())
        throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto e = rref(std::move(aug));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        throw DomainError("matrix is singular");
    RMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

RVector EchelonBasis::reduce(RVector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const auto p = pivots_[r];
        if (v[p] == 0)
            continue;
        const Rational factor = v[p];
        const auto &row = rows_[r];
        for (std::size_t c = 0; c < dim_; ++c)
            if (row[c] != 0)
                v[c] -= factor * row[c];
    }
    return v;
}

bool EchelonBasis::insert(const RVector &v) {
    auto rem = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && rem[p] == 0)
        ++p;
    if (p == dim_)
        return false;
    const Rational inv = 1 / Rational(rem[p]);
    for (auto &x : rem)
        x *= inv;
    // keep existing rows reduced with respect to the new pivot
    for (auto &row : rows_) {
        if (row[p] == 0)
            continue;
        const Rational factor = row[p];
        for (std::size_t c = 0; c < dim_; ++c)
            if (rem[c] != 0)
                row[c] -= factor * rem[c];
    }
    rows_.push_back(std::move(rem));
    pivots_.push_back(p);
    return true;
}

std::vector<RVector> EchelonBasis::reduced_rows() const {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
    std::vector<RVector> out;
    out.reserve(order.size());
    for (auto i : order)
        out.push_back(rows_[i]);
    return out;
}

std::vector<std::size_t> EchelonBasis::sorted_pivots() const {
    auto p = pivots_;
    std::sort(p.begin(), p.end());
    return p;
}

} // namespace fusionkz
