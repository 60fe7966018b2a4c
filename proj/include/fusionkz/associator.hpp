#pragma once

#include "fusionkz/execution.hpp"
#include "fusionkz/fusion.hpp"
#include "fusionkz/kz.hpp"

#include <memory>
#include <optional>

namespace fusionkz {

/// 128 unless FUSIONKZ_BITS holds an integer >= 53.
mpfr_prec_t default_precision_bits();

enum class SeriesMethod {
    eigen,  ///< one series per residue eigenvector, recombined per block
    direct, ///< one series per standard basis vector
};

struct AssociatorParams {
    Rational z0{1, 2};
    mpfr_prec_t bits = default_precision_bits();
    std::size_t order = 0; ///< 0 selects adaptive doubling
    std::size_t initial_order = 64;
    std::size_t max_order = 4096;
    double tolerance = 1e-20;
    double tail_target = 0; ///< 0 selects 2^-(bits-24)
    Execution exec = Execution::serial;
    SeriesMethod method = SeriesMethod::eigen;

    Real target() const;
};

/// Fundamental matrix of one endpoint: column k is the sum at x0 of the
/// series with initial datum e_k.
struct FundamentalMatrix {
    XMatrix value;
    Real tail; ///< bound on the infinity norm of the truncation error
};

FundamentalMatrix fundamental_matrix(const KZSystem &sys, Endpoint endpoint,
                                     const Rational &x0, std::size_t order, mpfr_prec_t bits,
                                     Execution exec = Execution::serial,
                                     SeriesMethod method = SeriesMethod::eigen);

struct AssociatorMatrix {
    std::shared_ptr<const KZSystem> system;
    std::shared_ptr<const OmegaSystem> omega; ///< null for bare systems
    Rational z0;
    mpfr_prec_t bits = 0;
    std::size_t order = 0;
    std::vector<std::size_t> orders_tried;
    XMatrix phi;         ///< on the dual space
    XMatrix phi_adjoint; ///< transpose, acting on U1 (x) U2 (x) U3
    Real tail_bound;
    Real tail_zero, tail_one;
    Real condition;        ///< of the fundamental matrix at one
    Real defining_residual; ///< |M_B phi - M_A|
};

AssociatorMatrix connection_matrix(std::shared_ptr<const KZSystem> sys,
                                   const AssociatorParams &params = {});
AssociatorMatrix connection_matrix(std::shared_ptr<const OmegaSystem> sys,
                                   const AssociatorParams &params = {});

/// max_b |phi rho*(b) - rho*(b) phi| over the algebra basis, rho* the dual
/// diagonal action; needs module data.
Real verify_equivariance(const AssociatorMatrix &assoc);

struct QuotientReport {
    std::size_t tensor_dim = 0;
    std::size_t source_kernel_dim = 0; ///< kernel of U1 (x) U2 (x) U3 -> U1 [x] (U2 [x] U3)
    std::size_t target_kernel_dim = 0; ///< kernel of U1 (x) U2 (x) U3 -> (U1 [x] U2) [x] U3
    std::size_t quotient_dim = 0;
    Real transport_residual;
    Real phi_equivariance_residual;
    Real equivariance_residual; ///< of the induced map between quotient modules
    Real pivot_ratio;
    Real condition;
    Real tolerance;
    bool dims_equal = false;
    bool transport_ok = false;
    bool equivariant = false;
    bool invertible = false;

    bool passed() const { return dims_equal && transport_ok && equivariant && invertible; }
};

struct QuotientAssociator {
    std::shared_ptr<const OmegaSystem> omega;
    AssociatorMatrix assoc;
    SubspaceBasis source_kernel;
    SubspaceBasis target_kernel;
    XMatrix matrix; ///< induced map on complement coordinates
    QuotientReport report;
};

/// Kernel of U1 (x) U2 (x) U3 -> U1 [x] (U2 [x] U3).
SubspaceBasis right_nested_kernel(const GModulePtr &u1, const GModulePtr &u2,
                                  const GModulePtr &u3, long level);
/// Kernel of U1 (x) U2 (x) U3 -> (U1 [x] U2) [x] U3.
SubspaceBasis left_nested_kernel(const GModulePtr &u1, const GModulePtr &u2,
                                 const GModulePtr &u3, long level);

/// Computes the induced map and the full report without throwing on a
/// failed check.
QuotientAssociator evaluate_associator_on_quotients(const GModulePtr &u1, const GModulePtr &u2,
                                                    const GModulePtr &u3, long level,
                                                    const AssociatorParams &params = {});

/// As above; throws VerificationFailure when kernel transport fails.
QuotientAssociator associator_on_quotients(const GModulePtr &u1, const GModulePtr &u2,
                                           const GModulePtr &u3, long level,
                                           const AssociatorParams &params = {});

} // namespace fusionkz
