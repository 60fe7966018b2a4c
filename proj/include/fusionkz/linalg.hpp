#pragma once

#include "fusionkz/matrix.hpp"
#include "fusionkz/rational.hpp"

#include <cstddef>
#include <vector>

namespace fusionkz {

using RMatrix = Matrix<Rational>;
using RVector = Vector<Rational>;

struct Echelon {
    RMatrix reduced;                 ///< reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; ///< pivot column of each row
};

/// Gauss-Jordan elimination with pivots taken in column order.
Echelon rref(RMatrix m);

std::size_t rank(const RMatrix &m);

/// Canonical basis of {x : m x = 0}: the reduced echelon form of any kernel
/// basis, so every vector has a leading 1.
std::vector<RVector> nullspace(const RMatrix &m);

/// Canonical basis (reduced echelon rows) of the span of `vectors`.
std::vector<RVector> span_basis(const std::vector<RVector> &vectors,
                                std::size_t dim);

RMatrix inverse(const RMatrix &m);

/// Incrementally maintained reduced echelon basis of a growing subspace.
class EchelonBasis {
  public:
    explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

    /// Reduces `v` against the basis; returns the (possibly zero) remainder.
    RVector reduce(RVector v) const;

    /// Adds `v` if it is not already in the span. Returns true if added.
    bool insert(const RVector &v);

    bool contains(const RVector &v) const { return is_zero(reduce(v)); }

    std::size_t size() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

    /// Rows in reduced echelon form, sorted by pivot column.
    std::vector<RVector> reduced_rows() const;
    std::vector<std::size_t> sorted_pivots() const;

  private:
    std::size_t dim_;
    std::vector<RVector> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace fusionkz
