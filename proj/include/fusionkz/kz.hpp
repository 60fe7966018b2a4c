#pragma once

#include "fusionkz/real.hpp"
#include "fusionkz/repr.hpp"

#include <memory>
#include <vector>

namespace fusionkz {

/// Eigenvalues lambda + N_0 < ... < lambda + N_J of one congruence class
/// modulo the integers; N_0 = 0.
struct EigenClass {
    Rational base;
    std::vector<long> offsets;
};

/// Exact spectral data of a diagonalizable operator that is block diagonal
/// with respect to a fixed coordinate partition.
struct Spectrum {
    std::vector<Rational> eigenvalues; ///< ascending, each actually occurring
    std::vector<EigenClass> classes;   ///< ascending by base

    struct Block {
        std::vector<std::size_t> indices;
        RMatrix eigvecs;             ///< columns are eigenvectors
        RMatrix eigvecs_inv;
        std::vector<Rational> diag;  ///< eigenvalue of each column
        /// Projection onto each eigenvalue restricted to the block, indexed
        /// like `eigenvalues` (zero when absent from the block).
        std::vector<RMatrix> projections;
    };
    std::vector<Block> blocks;

    /// Full-size projection onto the eigenspace of eigenvalues[k].
    RMatrix projection(std::size_t k, std::size_t dim) const;
    std::size_t class_of(const Rational &mu) const;
};

/// The residue pair (A, B) of dphi/dz = (A/z - B/(1-z)) phi on a space
/// split into invariant coordinate blocks.
struct KZSystem {
    std::size_t dim = 0;
    RMatrix a, b;
    Spectrum spec_a, spec_b;
    std::vector<std::vector<std::size_t>> blocks;
};

/// Builds the spectral data of `m` from candidate eigenvalues, certifying
/// prod (m - mu) = 0 exactly on every block.
Spectrum certify_spectrum(const RMatrix &m, const std::vector<Rational> &candidates,
                          const std::vector<std::vector<std::size_t>> &blocks);

/// System from explicit matrices; blocks default to a single block.
KZSystem make_kz_system(RMatrix a, RMatrix b, const std::vector<Rational> &candidates_a,
                        const std::vector<Rational> &candidates_b,
                        std::vector<std::vector<std::size_t>> blocks = {});

/// Omega operators of a triple tensor product on its dual space.
struct OmegaSystem {
    GModulePtr u1, u2, u3;
    long level = 0;
    Rational kappa;
    GModule triple;                     ///< U1 (x) U2 (x) U3
    RMatrix omega12, omega23, omega13;  ///< module side, sum_a b_a (x) b^a
    RMatrix c13;                        ///< dual side Omega13 / kappa
    KZSystem kz;                        ///< A = omega12^T / kappa, B = omega23^T / kappa

    const RMatrix &a() const { return kz.a; }
    const RMatrix &b() const { return kz.b; }
    std::size_t dim() const { return kz.dim; }
};

OmegaSystem build_omega_system(const GModulePtr &u1, const GModulePtr &u2,
                               const GModulePtr &u3, long level);
OmegaSystem build_omega_system(const GModule &u1, const GModule &u2, const GModule &u3,
                               long level);

enum class Endpoint { zero, one };

/// Formal solution sum_class sum_{i,j} w_{i,j} x^{base+i} (log x)^j around
/// one singular point, with exact coefficients. At Endpoint::one the roles
/// of A and B are exchanged and x stands for 1 - z.
struct KZSeries {
    Endpoint endpoint = Endpoint::zero;
    RVector initial;
    std::size_t order = 0;

    struct ClassTerms {
        EigenClass eigen_class;
        /// coeffs[i][j], i = 0..order, j = 0..J; full-length vectors
        std::vector<std::vector<RVector>> coeffs;
    };
    std::vector<ClassTerms> classes;
};

KZSeries series_at_zero(const KZSystem &sys, const RVector &w, std::size_t order);
KZSeries series_at_one(const KZSystem &sys, const RVector &w, std::size_t order);

/// Exact residual of the coefficient recursion
/// (base+i-A) w_{i,j} + (j+1) w_{i,j+1} + sum_{k<i} B w_{k,j}
/// over every computed index; zero for a correct series.
bool recursion_residual_is_zero(const KZSystem &sys, const KZSeries &s);

struct SeriesValue {
    XVector value;
    Real tail; ///< truncation estimate from the trailing terms
};

/// Sums the series at x0 in (0, 1); x0 is the local variable (z0 at zero,
/// 1 - z0 at one).
SeriesValue evaluate_series(const KZSeries &s, const Rational &x0, mpfr_prec_t bits);

/// Geometric extrapolation of the tail from the magnitudes of the computed
/// terms t_0..t_M of a series with radius of convergence 1 evaluated at x0.
Real tail_estimate(const std::vector<Real> &terms, const Rational &x0);

namespace detail {

/// Coefficients of one block in eigen-coordinates (diag = residue
/// eigenvalues, other = the second residue conjugated into the eigenbasis).
/// Result[c][i][j] for each class c of `classes`.
std::vector<std::vector<std::vector<RVector>>>
block_series(const std::vector<Rational> &diag, const RMatrix &other, const RVector &w0,
             const std::vector<EigenClass> &classes, std::size_t order);

/// Sums coefficient tables coeffs[c][i][j] of length-dim vectors at x0.
SeriesValue sum_terms(const std::vector<const EigenClass *> &classes,
                      const std::vector<const std::vector<std::vector<RVector>> *> &coeffs,
                      std::size_t dim, const Rational &x0, mpfr_prec_t bits);

} // namespace detail

} // namespace fusionkz
