#pragma once

#include "fusionkz/linalg.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace fusionkz {

/// Integer coordinates in the fundamental-weight basis.
using Weight = std::vector<long>;

/// Root and invariant-form data of a simple Lie algebra together with a
/// matrix realization. The form is normalized so that long roots have
/// squared length 2; the pair (algebra_basis, dual_basis) is dual under it.
struct RootDatum {
    std::string series;
    std::size_t rank = 0;
    Matrix<long> cartan;
    RMatrix gram; ///< <omega_i, omega_j>
    Weight theta;
    Weight rho;
    long h_dual = 0;

    std::vector<RMatrix> algebra_basis;
    std::vector<RMatrix> dual_basis;
    /// Normalization of the invariant form against the trace form of the
    /// defining realization: <x, y> = trace_scale * tr(xy).
    Rational trace_scale = 1;

    std::vector<std::size_t> e_index, f_index, h_index; ///< Chevalley generators
    std::size_t x_theta = 0;

    /// structure[a][b] = coefficients of [b_a, b_b] in algebra_basis.
    std::vector<std::vector<RVector>> structure;
    /// dual_coords[a] = coordinates of dual_basis[a] in algebra_basis.
    std::vector<RVector> dual_coords;

    std::size_t dim() const { return algebra_basis.size(); }
    std::size_t defining_dim() const {
        return algebra_basis.empty() ? 0 : algebra_basis.front().rows();
    }
    std::string label() const { return series + std::to_string(rank); }

    /// <x, y> on matrices of the defining realization.
    Rational form(const RMatrix &x, const RMatrix &y) const;
    /// Coordinates of a defining-realization matrix in algebra_basis.
    RVector coordinates(const RMatrix &x) const;
};

using RootDatumPtr = std::shared_ptr<const RootDatum>;

/// Type A is built in; other series come from data files.
RootDatumPtr build_root_datum(const std::string &series, std::size_t rank);

/// Parses labels like "A1" or "A2".
RootDatumPtr build_root_datum(const std::string &label);

/// Fills structure constants and checks every datum invariant. Throws
/// InternalInvariantViolation on failure.
void finalize_root_datum(RootDatum &datum);

Rational weight_pairing(const RootDatum &datum, const Weight &lambda,
                        const Weight &mu);

bool is_dominant(const Weight &lambda);

/// <lambda, lambda + 2 rho>.
Rational casimir_eigenvalue(const RootDatum &datum, const Weight &lambda);

/// <lambda, lambda + 2 rho> / (2 (level + h_dual)).
Rational lowest_conformal_weight(const RootDatum &datum, const Weight &lambda,
                                 long level);

/// <lambda, theta> for integral lambda (an integer).
long theta_pairing(const RootDatum &datum, const Weight &lambda);

/// {lambda dominant : <lambda, theta> <= level}, graded-lexicographic order
/// (by <lambda, theta>, then by coordinates).
std::vector<Weight> admissible_weights(const RootDatum &datum, long level);

std::string weight_label(const Weight &w);

} // namespace fusionkz
